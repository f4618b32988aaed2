use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::relation::{builtin_relations, RelationLabel};
use crate::conllu::{canonical_value, Token};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("E_UNKNOWN_LABEL: `{0}` is not in the relation inventory")]
    UnknownLabel(String),
    #[error("E_CONFIG: line {line}: {message}")]
    Config { line: usize, message: String },
}

impl SchemaError {
    pub fn code(&self) -> &'static str {
        match self {
            SchemaError::UnknownLabel(_) => "E_UNKNOWN_LABEL",
            SchemaError::Config { .. } => "E_CONFIG",
        }
    }
}

/// Relation sets used by the morphology-aware attachment score.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalSets {
    pub content: BTreeSet<String>,
    pub function: BTreeSet<String>,
    pub features: Vec<String>,
}

impl Default for EvalSets {
    fn default() -> Self {
        let content = [
            "root",
            "nsubj",
            "obj",
            "advcl",
            "amod",
            "advmod",
            "nmod",
            "nummod",
            "appos",
            "conj",
            "det",
            "discourse",
            "fixed",
            "case:abl",
            "case:loc",
            "case:dat",
            "case:poss",
            "instr:case=loc",
            "instr:case=dat",
            "instr:case=post",
        ];
        let function = ["aux", "cc", "cop", "cop:zero", "post", "punct"];
        EvalSets {
            content: content.iter().map(|s| s.to_string()).collect(),
            function: function.iter().map(|s| s.to_string()).collect(),
            features: ["Case", "Number", "Person", "Tense"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

/// Label, tag and feature inventories plus the small lexicons the
/// converter consults. Immutable once built; share it by reference.
#[derive(Clone, Debug)]
pub struct SchemaRegistry {
    relations: Vec<RelationLabel>,
    aliases: BTreeMap<String, String>,
    feat_vocab: BTreeMap<String, BTreeSet<String>>,
    fixed_lexicon: Vec<(String, String)>,
    postposition_labels: BTreeMap<String, String>,
    quotative_lemmas: BTreeSet<String>,
    quotative_forms: BTreeSet<String>,
    eval: EvalSets,
}

impl Default for SchemaRegistry {
    fn default() -> Self {
        let strs = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        let mut feat_vocab = BTreeMap::new();
        feat_vocab.insert("Case".to_owned(), strs(&["ABL", "LOC", "DAT", "POSS", "GEN"]));
        feat_vocab.insert("Tense".to_owned(), strs(&["Past", "Pres", "Fut"]));
        feat_vocab.insert("Number".to_owned(), strs(&["Sing", "Plur"]));
        feat_vocab.insert("Person".to_owned(), strs(&["1", "2", "3"]));

        let aliases = [
            ("instr:post", "instr:case=post"),
            ("instr:loc", "instr:case=loc"),
            ("instr:dat", "instr:case=dat"),
            ("case:gen", "case:poss"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();

        let fixed_lexicon = [("sewr", "qil"), ("həyran", "bol"), ("jaxfi", "kör")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();

        let postposition_labels = ["bilən", "bilen", "arqiliq"]
            .iter()
            .map(|p| (p.to_string(), "instr:case=post".to_owned()))
            .collect();

        SchemaRegistry {
            relations: builtin_relations(),
            aliases,
            feat_vocab,
            fixed_lexicon,
            postposition_labels,
            quotative_lemmas: strs(&["de"]),
            quotative_forms: strs(&["dəp", "dep"]),
            eval: EvalSets::default(),
        }
    }
}

impl SchemaRegistry {
    pub fn relations(&self) -> &[RelationLabel] {
        &self.relations
    }

    pub fn relation(&self, label: &str) -> Option<&RelationLabel> {
        self.relations.iter().find(|r| r.label == label)
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    pub fn feat_vocab(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.feat_vocab
    }

    pub fn fixed_lexicon(&self) -> &[(String, String)] {
        &self.fixed_lexicon
    }

    pub fn eval_sets(&self) -> &EvalSets {
        &self.eval
    }

    /// Resolves a raw label to its canonical registry entry.
    pub fn normalize_label(&self, raw: &str) -> Result<&RelationLabel, SchemaError> {
        let key = raw.trim().to_lowercase();
        if let Some(r) = self.relation(&key) {
            return Ok(r);
        }
        self.aliases
            .get(&key)
            .and_then(|target| self.relation(target))
            .ok_or_else(|| SchemaError::UnknownLabel(raw.to_owned()))
    }

    /// Canonical spelling of `raw` when it is known, otherwise `raw` itself.
    pub fn canonical_or_raw<'a>(&'a self, raw: &'a str) -> &'a str {
        self.normalize_label(raw).map_or(raw, |r| r.as_str())
    }

    /// True when `raw` normalises to `canonical`.
    pub fn is_label(&self, raw: &str, canonical: &str) -> bool {
        self.normalize_label(raw)
            .is_ok_and(|r| r.label == canonical)
    }

    /// The relation a postposition's phrase takes when attached to its
    /// predicate: instrumental postpositions get `instr:case=post`.
    pub fn postposition_label(&self, token: &Token) -> &str {
        let by = |w: &str| self.postposition_labels.get(&w.to_lowercase());
        by(&token.lemma)
            .or_else(|| by(&token.form))
            .map_or("post", String::as_str)
    }

    pub fn is_quotative(&self, token: &Token) -> bool {
        self.quotative_lemmas.contains(&token.lemma.to_lowercase())
            || self.quotative_forms.contains(&token.form.to_lowercase())
    }

    /// True when the ordered pair `(first, second)` is a lexicalised
    /// multiword predicate. Matching is on lemmas.
    pub fn is_fixed_pair(&self, first: &Token, second: &Token) -> bool {
        let a = first.lemma.to_lowercase();
        let b = second.lemma.to_lowercase();
        self.fixed_lexicon.iter().any(|(x, y)| *x == a && *y == b)
    }

    /// Loads a registry from the defaults plus a plain-text override file.
    /// Keys and values are separated by a single tab.
    ///
    /// ```text
    /// [aliases]
    /// instr:bilen    instr:case=post
    /// [features]
    /// Case    INS
    /// [fixed]
    /// qayil    bol
    /// [instrumental]
    /// arqiliq    instr:case=post
    /// [quotative]
    /// form    dep
    /// [mlas]
    /// content    obl
    /// ```
    pub fn from_config(text: &str) -> Result<Self, SchemaError> {
        let mut reg = SchemaRegistry::default();
        reg.apply_config(text)?;
        Ok(reg)
    }

    pub fn apply_config(&mut self, text: &str) -> Result<(), SchemaError> {
        let mut section: Option<String> = None;
        let mut replaced: BTreeSet<&'static str> = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let err = |message: String| SchemaError::Config {
                line: line_no,
                message,
            };
            if let Some(name) = line.trim().strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = Some(name.trim().to_owned());
                continue;
            }
            let (key, value) = line
                .split_once('\t')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected `key<TAB>value`, got `{}`", line)))?;
            if key.is_empty() || value.is_empty() {
                return Err(err("empty key or value".to_owned()));
            }
            match section.as_deref() {
                Some("aliases") => {
                    let target = self
                        .relation(&value.to_lowercase())
                        .ok_or_else(|| err(format!("alias target `{}` is not registered", value)))?
                        .label
                        .clone();
                    self.aliases.insert(key.to_lowercase(), target);
                }
                Some("features") => {
                    self.feat_vocab
                        .entry(key.to_owned())
                        .or_default()
                        .insert(canonical_value(key, value));
                }
                Some("fixed") => {
                    self.fixed_lexicon
                        .push((key.to_lowercase(), value.to_lowercase()));
                }
                Some("instrumental") => {
                    let label = self
                        .normalize_label(value)
                        .map_err(|_| err(format!("unknown relation `{}`", value)))?
                        .label
                        .clone();
                    self.postposition_labels.insert(key.to_lowercase(), label);
                }
                Some("quotative") => match key {
                    "lemma" => {
                        self.quotative_lemmas.insert(value.to_lowercase());
                    }
                    "form" => {
                        self.quotative_forms.insert(value.to_lowercase());
                    }
                    _ => return Err(err(format!("unknown quotative key `{}`", key))),
                },
                Some("mlas") => {
                    let slot = match key {
                        "content" => "content",
                        "function" => "function",
                        "feature" => "feature",
                        _ => return Err(err(format!("unknown mlas key `{}`", key))),
                    };
                    // the first entry of a set replaces the built-in default
                    let fresh = replaced.insert(slot);
                    match slot {
                        "content" => {
                            if fresh {
                                self.eval.content.clear();
                            }
                            self.eval.content.insert(value.to_owned());
                        }
                        "function" => {
                            if fresh {
                                self.eval.function.clear();
                            }
                            self.eval.function.insert(value.to_owned());
                        }
                        _ => {
                            if fresh {
                                self.eval.features.clear();
                            }
                            self.eval.features.push(value.to_owned());
                        }
                    }
                }
                Some(other) => return Err(err(format!("unknown section `[{}]`", other))),
                None => return Err(err("entry before any [section] header".to_owned())),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    const TABLE_THREE: [&str; 26] = [
        "advcl",
        "appos",
        "aux",
        "case:abl",
        "case:loc",
        "case:dat",
        "case:poss",
        "cc",
        "conj",
        "cop",
        "cop:zero",
        "det",
        "discourse",
        "fixed",
        "instr:case=loc",
        "instr:case=dat",
        "instr:case=post",
        "advmod",
        "amod",
        "nmod",
        "nsubj",
        "nummod",
        "obj",
        "post",
        "punct",
        "root",
    ];

    #[test]
    fn inventory_is_exactly_the_twenty_six_labels() {
        let reg = SchemaRegistry::default();
        assert_eq!(reg.relations().len(), 26);
        let mut got: Vec<_> = reg.relations().iter().map(|r| r.label.as_str()).collect();
        let mut want = TABLE_THREE.to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn main_categories_partition_the_inventory() {
        let reg = SchemaRegistry::default();
        let mut groups: BTreeMap<&str, usize> = BTreeMap::new();
        for r in reg.relations() {
            *groups.entry(r.main_category.as_str()).or_default() += 1;
        }
        assert_eq!(groups.values().sum::<usize>(), 26);
        assert_eq!(groups.len(), 20);
        let structural = reg
            .relations()
            .iter()
            .filter(|r| r.kind == super::super::RelationKind::Structural)
            .count();
        assert_eq!(groups.len() - structural, 18);
    }

    #[test]
    fn normalize_examples() {
        let reg = SchemaRegistry::default();
        assert_eq!(reg.normalize_label("instr:post").unwrap().label, "instr:case=post");
        assert_eq!(reg.normalize_label("nsubj").unwrap().label, "nsubj");
        assert_eq!(
            reg.normalize_label("obl"),
            Err(SchemaError::UnknownLabel("obl".to_owned()))
        );
        assert_eq!(reg.normalize_label("obl").unwrap_err().code(), "E_UNKNOWN_LABEL");
    }

    #[test]
    fn normalize_is_idempotent() {
        let reg = SchemaRegistry::default();
        for raw in TABLE_THREE.iter().chain(["instr:post", "case:gen", "NSUBJ"].iter()) {
            let once = reg.normalize_label(raw).unwrap().label.clone();
            let twice = reg.normalize_label(&once).unwrap().label.clone();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn config_overrides() {
        let reg = SchemaRegistry::from_config(
            "# local additions\n[aliases]\ninstr:bilen\tinstr:case=post\n[features]\nCase\tins\n[fixed]\nqayil\tbol\n[instrumental]\nbilən\tpost\n[mlas]\ncontent\tobl\ncontent\tnsubj\n",
        )
        .unwrap();
        assert_eq!(reg.normalize_label("instr:bilen").unwrap().label, "instr:case=post");
        assert!(reg.feat_vocab()["Case"].contains("INS"));
        assert_eq!(reg.fixed_lexicon().len(), 4);
        assert_eq!(reg.eval_sets().content.len(), 2);
        let bilen = Token::new(1, "bilən", "Post", 0, "root").with_lemma("bilən");
        assert_eq!(reg.postposition_label(&bilen), "post");
    }

    #[test]
    fn config_errors() {
        for bad in [
            "[aliases]\nfoo\tobl\n",
            "[nope]\na\tb\n",
            "a\tb\n",
            "[fixed]\nsewr qil\n",
            "[mlas]\nbogus\tx\n",
        ] {
            let err = SchemaRegistry::from_config(bad).unwrap_err();
            assert_eq!(err.code(), "E_CONFIG", "{bad:?}");
        }
    }

    #[test]
    fn fixed_lexicon_ships_three_entries() {
        let reg = SchemaRegistry::default();
        assert_eq!(reg.fixed_lexicon().len(), 3);
        let sewr = Token::new(1, "sewr", "N", 2, "compound").with_lemma("sewr");
        let qilip = Token::new(2, "qilip", "V", 0, "root").with_lemma("qil");
        assert!(reg.is_fixed_pair(&sewr, &qilip));
        assert!(!reg.is_fixed_pair(&qilip, &sewr));
    }
}
