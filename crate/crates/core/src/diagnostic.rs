//! Machine-readable findings shared by the schema and validator modules.

use std::fmt;

use serde::Serialize;

/// Stable identifier of a check. The string forms are a public contract:
/// downstream tooling greps TSV reports for them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckCode {
    /// Every token is attached to the tree.
    P1,
    /// Exactly one root, labelled `root`.
    P2,
    /// No second basic head smuggled in through DEPS.
    P3,
    /// Non-crossing arcs.
    P4,
    /// Well-formed, directed head field.
    P5,
    /// The root is a predicate-capable word.
    P6,
    /// Arcs join whole words only.
    P7,
    /// The lexical verb heads its auxiliaries.
    P8,
    /// Informational: the construction checks involve a semantic judgement.
    P9,
    /// `cop:zero` hangs off a non-verbal root.
    C1,
    /// Coordination chains point rightwards.
    C2,
    /// Punctuation attachment.
    C3,
    /// Case-bearing relations agree with the Case feature.
    C4,
    /// Postpositions head their nominal complement.
    C5,
    /// `fixed` dependents precede their head.
    C6,
    /// Discourse elements attach to the root or a predicate.
    C7,
    PosUnknown,
    PosSub,
    LabelUnknown,
    FeatKey,
    FeatValue,
    /// A parse error surfaced as a diagnostic in lenient mode.
    Parse,
}

impl CheckCode {
    pub const ALL: [CheckCode; 22] = [
        CheckCode::P1,
        CheckCode::P2,
        CheckCode::P3,
        CheckCode::P4,
        CheckCode::P5,
        CheckCode::P6,
        CheckCode::P7,
        CheckCode::P8,
        CheckCode::P9,
        CheckCode::C1,
        CheckCode::C2,
        CheckCode::C3,
        CheckCode::C4,
        CheckCode::C5,
        CheckCode::C6,
        CheckCode::C7,
        CheckCode::PosUnknown,
        CheckCode::PosSub,
        CheckCode::LabelUnknown,
        CheckCode::FeatKey,
        CheckCode::FeatValue,
        CheckCode::Parse,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckCode::P1 => "P1",
            CheckCode::P2 => "P2",
            CheckCode::P3 => "P3",
            CheckCode::P4 => "P4",
            CheckCode::P5 => "P5",
            CheckCode::P6 => "P6",
            CheckCode::P7 => "P7",
            CheckCode::P8 => "P8",
            CheckCode::P9 => "P9",
            CheckCode::C1 => "C1",
            CheckCode::C2 => "C2",
            CheckCode::C3 => "C3",
            CheckCode::C4 => "C4",
            CheckCode::C5 => "C5",
            CheckCode::C6 => "C6",
            CheckCode::C7 => "C7",
            CheckCode::PosUnknown => "E_POS_UNKNOWN",
            CheckCode::PosSub => "E_POS_SUB",
            CheckCode::LabelUnknown => "E_UNKNOWN_LABEL",
            CheckCode::FeatKey => "E_FEAT_KEY",
            CheckCode::FeatValue => "E_FEAT_VALUE",
            CheckCode::Parse => "E_PARSE",
        }
    }

    pub fn from_code(code: &str) -> Option<CheckCode> {
        CheckCode::ALL.iter().copied().find(|c| c.as_str() == code)
    }

    pub fn is_principle(self) -> bool {
        matches!(
            self,
            CheckCode::P1
                | CheckCode::P2
                | CheckCode::P3
                | CheckCode::P4
                | CheckCode::P5
                | CheckCode::P6
                | CheckCode::P7
                | CheckCode::P8
                | CheckCode::P9
        )
    }

    pub fn is_construction(self) -> bool {
        matches!(
            self,
            CheckCode::C1
                | CheckCode::C2
                | CheckCode::C3
                | CheckCode::C4
                | CheckCode::C5
                | CheckCode::C6
                | CheckCode::C7
        )
    }
}

impl fmt::Display for CheckCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Severity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    #[serde(serialize_with = "serialize_code")]
    pub code: CheckCode,
    pub severity: Severity,
    pub token_ids: Vec<usize>,
    pub message: String,
}

fn serialize_code<S: serde::Serializer>(code: &CheckCode, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(code.as_str())
}

impl Diagnostic {
    pub fn new(
        code: CheckCode,
        severity: Severity,
        token_ids: Vec<usize>,
        message: impl Into<String>,
    ) -> Self {
        Diagnostic {
            code,
            severity,
            token_ids,
            message: message.into(),
        }
    }

    pub fn error(code: CheckCode, token_ids: Vec<usize>, message: impl Into<String>) -> Self {
        Self::new(code, Severity::Error, token_ids, message)
    }

    pub fn warning(code: CheckCode, token_ids: Vec<usize>, message: impl Into<String>) -> Self {
        Self::new(code, Severity::Warning, token_ids, message)
    }

    pub fn info(code: CheckCode, token_ids: Vec<usize>, message: impl Into<String>) -> Self {
        Self::new(code, Severity::Info, token_ids, message)
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.code, self.severity)?;
        if !self.token_ids.is_empty() {
            write!(f, " tokens {}", join_ids(&self.token_ids))?;
        }
        write!(f, ": {}", self.message)
    }
}

pub(crate) fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip_through_strings() {
        for code in CheckCode::ALL {
            assert_eq!(CheckCode::from_code(code.as_str()), Some(code));
        }
        assert_eq!(CheckCode::from_code("P10"), None);
    }

    #[test]
    fn principle_and_construction_partition() {
        for code in CheckCode::ALL {
            assert!(!(code.is_principle() && code.is_construction()));
        }
        assert_eq!(CheckCode::ALL.iter().filter(|c| c.is_principle()).count(), 9);
    }
}
