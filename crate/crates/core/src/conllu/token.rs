use super::features::Features;
use super::morph::MorphSegmentation;

/// One word row of an extended CoNLL-U sentence.
///
/// The four morphological layers map onto columns as follows: surface form
/// in FORM, lemma in LEMMA, segmentation in the MISC keys `MSeg`/`MGloss`,
/// feature bundle in FEATS. The main POS tag lives in UPOS and the optional
/// subcategory bracket (`N[+pern]`) in XPOS.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub id: usize,
    pub form: String,
    pub lemma: String,
    pub pos: String,
    pub pos_sub: Option<String>,
    pub feats: Features,
    pub head: usize,
    pub deprel: String,
    /// Raw DEPS column, kept verbatim.
    pub deps: Option<String>,
    pub mseg: Option<MorphSegmentation>,
    /// Residual MISC entries in input order; bare entries have no value.
    pub misc: Vec<(String, Option<String>)>,
}

impl Token {
    pub fn new(
        id: usize,
        form: impl Into<String>,
        pos: impl Into<String>,
        head: usize,
        deprel: impl Into<String>,
    ) -> Self {
        Token {
            id,
            form: form.into(),
            lemma: "_".to_owned(),
            pos: pos.into(),
            pos_sub: None,
            feats: Features::new(),
            head,
            deprel: deprel.into(),
            deps: None,
            mseg: None,
            misc: Vec::new(),
        }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = lemma.into();
        self
    }

    pub fn with_feat(mut self, key: &str, value: &str) -> Self {
        self.feats.insert(key, value);
        self
    }

    pub fn is_root(&self) -> bool {
        self.head == 0
    }

    /// True when the segmentation, if present, starts with the lemma.
    pub fn mseg_matches_lemma(&self) -> bool {
        self.mseg
            .as_ref()
            .is_none_or(|m| m.root() == self.lemma)
    }
}

/// Kind of a non-word row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialKind {
    /// Multiword token range `i-j`.
    Range { start: usize, end: usize },
    /// Empty node `i.j`.
    Empty { major: usize, minor: usize },
}

/// A multiword-token range line or empty-node line, kept verbatim.
///
/// `position` counts the word rows preceding it, so the line is written back
/// in the same place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecialLine {
    pub kind: SpecialKind,
    pub position: usize,
    pub columns: Vec<String>,
}

impl SpecialLine {
    /// True when the HEAD or DEPREL column carries an arc.
    pub fn carries_arc(&self) -> bool {
        self.columns.get(6).is_some_and(|c| c != "_") || self.columns.get(7).is_some_and(|c| c != "_")
    }
}
