use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    CoreArgument,
    Modifier,
    Function,
    Structural,
}

impl RelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::CoreArgument => "core-argument",
            RelationKind::Modifier => "modifier",
            RelationKind::Function => "function",
            RelationKind::Structural => "structural",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationLabel {
    pub label: String,
    pub main_category: String,
    pub kind: RelationKind,
}

impl RelationLabel {
    fn builtin(label: &str, kind: RelationKind) -> Self {
        RelationLabel {
            label: label.to_owned(),
            main_category: main_category_of(label).to_owned(),
            kind,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.label
    }
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Grouping key: the part before the first `:`.
pub fn main_category_of(label: &str) -> &str {
    label.split(':').next().unwrap_or(label)
}

pub(crate) fn builtin_relations() -> Vec<RelationLabel> {
    use RelationKind::*;
    [
        ("advcl", Modifier),
        ("appos", Modifier),
        ("aux", Function),
        ("case:abl", Modifier),
        ("case:loc", Modifier),
        ("case:dat", Modifier),
        ("case:poss", Modifier),
        ("cc", Function),
        ("conj", Modifier),
        ("cop", Function),
        ("cop:zero", Function),
        ("det", Modifier),
        ("discourse", Modifier),
        ("fixed", Function),
        ("instr:case=loc", Modifier),
        ("instr:case=dat", Modifier),
        ("instr:case=post", Modifier),
        ("advmod", Modifier),
        ("amod", Modifier),
        ("nmod", Modifier),
        ("nsubj", CoreArgument),
        ("nummod", Modifier),
        ("obj", CoreArgument),
        ("post", Function),
        ("punct", Structural),
        ("root", Structural),
    ]
    .into_iter()
    .map(|(l, k)| RelationLabel::builtin(l, k))
    .collect()
}
