use std::fmt;

use crate::conllu::Token;

/// The thirteen main part-of-speech tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosTag {
    N,
    A,
    Num,
    M,
    Adv,
    Pron,
    Onom,
    V,
    Post,
    Conj,
    Part,
    Intj,
    Aux,
}

impl PosTag {
    pub const ALL: [PosTag; 13] = [
        PosTag::N,
        PosTag::A,
        PosTag::Num,
        PosTag::M,
        PosTag::Adv,
        PosTag::Pron,
        PosTag::Onom,
        PosTag::V,
        PosTag::Post,
        PosTag::Conj,
        PosTag::Part,
        PosTag::Intj,
        PosTag::Aux,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PosTag::N => "N",
            PosTag::A => "A",
            PosTag::Num => "Num",
            PosTag::M => "M",
            PosTag::Adv => "Adv",
            PosTag::Pron => "Pron",
            PosTag::Onom => "Onom",
            PosTag::V => "V",
            PosTag::Post => "Post",
            PosTag::Conj => "Conj",
            PosTag::Part => "Part",
            PosTag::Intj => "Intj",
            PosTag::Aux => "Aux",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PosTag::N => "Noun",
            PosTag::A => "Adjective",
            PosTag::Num => "Numeral",
            PosTag::M => "Measure",
            PosTag::Adv => "Adverb",
            PosTag::Pron => "Pronoun",
            PosTag::Onom => "Onomatopoeia",
            PosTag::V => "Verb",
            PosTag::Post => "Postposition",
            PosTag::Conj => "Conjunction",
            PosTag::Part => "Particle",
            PosTag::Intj => "Interjection",
            PosTag::Aux => "Auxiliary Verb",
        }
    }

    pub fn from_code(code: &str) -> Option<PosTag> {
        PosTag::ALL.iter().copied().find(|t| t.code() == code)
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, PosTag::V | PosTag::Aux)
    }

    /// Tags that can head a zero-copula predication.
    pub fn is_nonverbal_predicate(self) -> bool {
        matches!(self, PosTag::N | PosTag::A | PosTag::Num | PosTag::Pron)
    }

    /// Tags that form noun phrases a postposition can take as complement.
    pub fn is_nominal(self) -> bool {
        matches!(self, PosTag::N | PosTag::Pron | PosTag::Num)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Parses the UPOS column of a token.
pub fn pos_of(raw: &str) -> Option<PosTag> {
    PosTag::from_code(raw)
}

/// Verbal token in converb form (`VerbForm=Conv`, or the `-p` ending).
pub fn is_converb(t: &Token) -> bool {
    pos_of(&t.pos).is_some_and(PosTag::is_verbal)
        && (t.feats.get("VerbForm") == Some("Conv") || t.form.to_lowercase().ends_with('p'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirteen_distinct_codes() {
        let mut codes: Vec<_> = PosTag::ALL.iter().map(|t| t.code()).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 13);
        for t in PosTag::ALL {
            assert_eq!(PosTag::from_code(t.code()), Some(t));
        }
        assert_eq!(PosTag::from_code("X"), None);
        assert_eq!(PosTag::from_code("NOUN"), None);
    }
}
