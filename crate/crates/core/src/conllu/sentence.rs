use super::token::{SpecialLine, Token};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sentence {
    pub sent_id: Option<String>,
    pub text: Option<String>,
    /// Remaining comment lines, without the leading `#`.
    pub comments: Vec<String>,
    pub tokens: Vec<Token>,
    pub special: Vec<SpecialLine>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence {
            tokens,
            ..Sentence::default()
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.sent_id = Some(id.into());
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Looks a token up by its 1-based id.
    pub fn token(&self, id: usize) -> Option<&Token> {
        id.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn token_mut(&mut self, id: usize) -> Option<&mut Token> {
        id.checked_sub(1).and_then(move |i| self.tokens.get_mut(i))
    }

    /// Head of every token, in token order.
    pub fn heads(&self) -> Vec<usize> {
        self.tokens.iter().map(|t| t.head).collect()
    }

    pub fn forms(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.form.as_str())
    }

    /// Ids of the tokens attached directly to `head`, in surface order.
    pub fn dependents(&self, head: usize) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(move |t| t.head == head)
    }

    /// The sentence id, or a positional fallback (`#<index>`, 1-based).
    pub fn label(&self, index: usize) -> String {
        self.sent_id
            .clone()
            .unwrap_or_else(|| format!("#{}", index + 1))
    }

    /// True when `ancestor` dominates `id` (following heads, cycle-safe).
    pub fn dominates(&self, ancestor: usize, id: usize) -> bool {
        let mut cur = id;
        for _ in 0..=self.tokens.len() {
            match self.token(cur) {
                Some(t) if t.head == ancestor => return true,
                Some(t) if t.head != 0 => cur = t.head,
                _ => return false,
            }
        }
        false
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Treebank {
    pub sentences: Vec<Sentence>,
    pub source: Option<String>,
}

impl Treebank {
    pub fn new(sentences: Vec<Sentence>) -> Self {
        Treebank {
            sentences,
            source: None,
        }
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

impl FromIterator<Sentence> for Treebank {
    fn from_iter<T: IntoIterator<Item = Sentence>>(iter: T) -> Self {
        Treebank::new(iter.into_iter().collect())
    }
}
