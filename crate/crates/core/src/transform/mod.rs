//! Rule-based conversion of UD-style annotation into MUDT.
//!
//! Each rule is a pure sentence-to-sentence rewrite that only touches HEAD
//! and DEPREL. [`apply_all`] runs the enabled rules in a fixed order until
//! nothing changes and records every arc edit in a [`TransformTrace`].

mod rules;
mod trace;

pub use trace::{Application, TraceNote, TransformTrace};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::conllu::{build_tree, Sentence, TreeError};
use crate::schema::SchemaRegistry;
use crate::validator::{crossing_arcs, validate_sentence};
use rules::Editor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

/// Static description of a rewrite rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: RuleId,
    pub name: &'static str,
    pub description: &'static str,
}

pub const RULES: [RewriteRule; 7] = [
    RewriteRule {
        id: RuleId::R1,
        name: "refine_case",
        description: "obl with a Case feature becomes case:dat/loc/abl/poss",
    },
    RewriteRule {
        id: RuleId::R2,
        name: "reroot_compound",
        description: "a converb under an auxiliary root becomes the root; the auxiliary attaches as aux",
    },
    RewriteRule {
        id: RuleId::R3,
        name: "lexicalize_fixed",
        description: "lexicon word pairs are bound with fixed, the second word heading",
    },
    RewriteRule {
        id: RuleId::R4,
        name: "restructure_quotative",
        description: "the quoted clause becomes obj of the quotative, which becomes advcl of the speech verb",
    },
    RewriteRule {
        id: RuleId::R5,
        name: "rehead_postposition",
        description: "a postposition under its complement becomes the head of the phrase",
    },
    RewriteRule {
        id: RuleId::R6,
        name: "relabel_zero_copula",
        description: "nsubj of a non-verbal root without copula becomes cop:zero",
    },
    RewriteRule {
        id: RuleId::R7,
        name: "chain_coordination",
        description: "conjuncts attached to the first one are rewritten as a rightward chain",
    },
];

/// Order in which [`apply_all`] runs the rules.
pub const RULE_ORDER: [RuleId; 7] = [
    RuleId::R7,
    RuleId::R5,
    RuleId::R2,
    RuleId::R4,
    RuleId::R3,
    RuleId::R1,
    RuleId::R6,
];

const MAX_PASSES: usize = 16;

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
        }
    }

    pub fn rule(self) -> &'static RewriteRule {
        RULES.iter().find(|r| r.id == self).expect("every id has a rule")
    }

    fn run(self, s: &mut Sentence, reg: &SchemaRegistry, ed: &mut Editor) {
        match self {
            RuleId::R1 => rules::refine_case(s, ed),
            RuleId::R2 => rules::reroot_compound(s, reg, ed),
            RuleId::R3 => rules::lexicalize_fixed(s, reg, ed),
            RuleId::R4 => rules::restructure_quotative(s, reg, ed),
            RuleId::R5 => rules::rehead_postposition(s, reg, ed),
            RuleId::R6 => rules::relabel_zero_copula(s, reg, ed),
            RuleId::R7 => rules::chain_coordination(s, reg, ed),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RULES
            .iter()
            .map(|r| r.id)
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| TransformError::UnknownRule(s.to_owned()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("E_TREE: input tree is malformed: {0}")]
    Tree(#[from] TreeError),
    #[error("E_RULE: unknown rule `{0}`")]
    UnknownRule(String),
}

impl TransformError {
    pub fn code(&self) -> &'static str {
        match self {
            TransformError::Tree(_) => "E_TREE",
            TransformError::UnknownRule(_) => "E_RULE",
        }
    }
}

/// Which rules [`apply_all`] may run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSet {
    enabled: [bool; 7],
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet { enabled: [true; 7] }
    }
}

impl RuleSet {
    pub fn all() -> Self {
        RuleSet::default()
    }

    pub fn none() -> Self {
        RuleSet { enabled: [false; 7] }
    }

    pub fn only(ids: &[RuleId]) -> Self {
        let mut set = RuleSet::none();
        for &id in ids {
            set.enable(id);
        }
        set
    }

    /// Parses `R1,R5,R7`.
    pub fn parse(list: &str) -> Result<Self, TransformError> {
        let ids = list
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<RuleId>, _>>()?;
        Ok(RuleSet::only(&ids))
    }

    pub fn enable(&mut self, id: RuleId) {
        self.enabled[id as usize] = true;
    }

    pub fn disable(&mut self, id: RuleId) {
        self.enabled[id as usize] = false;
    }

    pub fn contains(&self, id: RuleId) -> bool {
        self.enabled[id as usize]
    }
}

/// Runs one rule once, without safety checks.
fn run_rule(id: RuleId, s: &Sentence, reg: &SchemaRegistry) -> Sentence {
    let mut out = s.clone();
    id.run(&mut out, reg, &mut Editor::new(id));
    out
}

pub fn refine_case(s: &Sentence) -> Sentence {
    run_rule(RuleId::R1, s, &SchemaRegistry::default())
}

pub fn reroot_compound(s: &Sentence) -> Sentence {
    run_rule(RuleId::R2, s, &SchemaRegistry::default())
}

pub fn lexicalize_fixed(s: &Sentence, reg: &SchemaRegistry) -> Sentence {
    run_rule(RuleId::R3, s, reg)
}

pub fn restructure_quotative(s: &Sentence) -> Sentence {
    run_rule(RuleId::R4, s, &SchemaRegistry::default())
}

pub fn rehead_postposition(s: &Sentence) -> Sentence {
    run_rule(RuleId::R5, s, &SchemaRegistry::default())
}

pub fn relabel_zero_copula(s: &Sentence) -> Sentence {
    run_rule(RuleId::R6, s, &SchemaRegistry::default())
}

pub fn chain_coordination(s: &Sentence) -> Sentence {
    run_rule(RuleId::R7, s, &SchemaRegistry::default())
}

/// Converts a sentence with every rule enabled.
pub fn apply_all(s: &Sentence, reg: &SchemaRegistry) -> Result<(Sentence, TransformTrace), TransformError> {
    apply_rules(s, reg, RuleSet::all())
}

/// Converts a sentence with the given rules.
///
/// A rule run whose result is not a tree, or introduces crossing arcs into a
/// projective input, is rolled back and noted in the trace.
pub fn apply_rules(
    s: &Sentence,
    reg: &SchemaRegistry,
    rules: RuleSet,
) -> Result<(Sentence, TransformTrace), TransformError> {
    build_tree(s)?;
    let projective = crossing_arcs(&s.heads()).is_empty();
    let mut trace = TransformTrace::new(s.label(0));
    let mut current = s.clone();

    for _ in 0..MAX_PASSES {
        let mut changed = false;
        for id in RULE_ORDER.into_iter().filter(|&id| rules.contains(id)) {
            let mut candidate = current.clone();
            let mut ed = Editor::new(id);
            id.run(&mut candidate, reg, &mut ed);
            for note in ed.notes.drain(..) {
                if !trace.notes.contains(&note) {
                    trace.notes.push(note);
                }
            }
            if ed.edits.is_empty() {
                continue;
            }
            let problem = match build_tree(&candidate) {
                Err(e) => Some(format!("result is not a tree ({}); rolled back", e)),
                Ok(_) if projective && !crossing_arcs(&candidate.heads()).is_empty() => {
                    Some("result has crossing arcs; rolled back".to_owned())
                }
                Ok(_) => None,
            };
            if let Some(message) = problem {
                let note = TraceNote {
                    rule: id,
                    token_ids: ed.edits.iter().map(|a| a.token).collect(),
                    message,
                };
                if !trace.notes.contains(&note) {
                    trace.notes.push(note);
                }
                continue;
            }
            trace.applications.append(&mut ed.edits);
            current = candidate;
            changed = true;
        }
        if !changed {
            break;
        }
    }

    trace.residual = validate_sentence(&current, reg)
        .diagnostics
        .into_iter()
        .filter(|d| d.is_error())
        .collect();
    Ok((current, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::Token;

    fn tok(id: usize, form: &str, lemma: &str, pos: &str, head: usize, rel: &str) -> Token {
        Token::new(id, form, pos, head, rel).with_lemma(lemma)
    }

    fn arcs(s: &Sentence) -> Vec<(usize, &str)> {
        s.tokens.iter().map(|t| (t.head, t.deprel.as_str())).collect()
    }

    #[test]
    fn r1_refines_obl_by_case() {
        let s = Sentence::new(vec![
            tok(1, "U", "u", "Pron", 3, "nsubj"),
            tok(2, "jerdin", "jer", "N", 3, "obl").with_feat("Case", "ABL"),
            tok(3, "keldi", "kel", "V", 0, "root"),
        ]);
        assert_eq!(refine_case(&s).tokens[1].deprel, "case:abl");
    }

    #[test]
    fn r1_skips_obl_without_case() {
        let s = Sentence::new(vec![
            tok(1, "öygə", "öy", "N", 2, "obl"),
            tok(2, "bardi", "bar", "V", 0, "root"),
        ]);
        let (out, trace) = apply_all(&s, &SchemaRegistry::default()).unwrap();
        assert_eq!(out, s);
        assert!(trace.applications.is_empty());
        assert_eq!(trace.notes.len(), 1);
        assert_eq!(trace.notes[0].rule, RuleId::R1);
    }

    #[test]
    fn r2_unwinds_stacked_auxiliaries() {
        // oqup(V) advcl-> bolup(Aux) advcl-> qaldi(Aux, root)
        let s = Sentence::new(vec![
            tok(1, "U", "u", "Pron", 4, "nsubj"),
            tok(2, "oqup", "oqu", "V", 3, "advcl"),
            tok(3, "bolup", "bol", "Aux", 4, "advcl"),
            tok(4, "qaldi", "qal", "Aux", 0, "root"),
            tok(5, ".", ".", "_", 4, "punct"),
        ]);
        let (out, trace) = apply_all(&s, &SchemaRegistry::default()).unwrap();
        assert_eq!(
            arcs(&out),
            vec![(2, "nsubj"), (0, "root"), (2, "aux"), (2, "aux"), (2, "punct")]
        );
        assert!(trace.residual.is_empty(), "{:?}", trace.residual);
    }

    #[test]
    fn r3_binds_light_verb() {
        let s = Sentence::new(vec![
            tok(1, "həyran", "həyran", "N", 2, "compound"),
            tok(2, "bolup", "bol", "V", 0, "root"),
        ]);
        let out = lexicalize_fixed(&s, &SchemaRegistry::default());
        assert_eq!(arcs(&out), vec![(2, "fixed"), (0, "root")]);
        let miss = Sentence::new(vec![
            tok(1, "kitab", "kitab", "N", 2, "obj"),
            tok(2, "oqudi", "oqu", "V", 0, "root"),
        ]);
        assert_eq!(lexicalize_fixed(&miss, &SchemaRegistry::default()), miss);
    }

    #[test]
    fn r4_without_clause_notes_and_keeps() {
        let s = Sentence::new(vec![
            tok(1, "dəp", "de", "V", 2, "advcl"),
            tok(2, "soridi", "sora", "V", 0, "root"),
        ]);
        let (out, trace) = apply_all(&s, &SchemaRegistry::default()).unwrap();
        assert_eq!(out, s);
        assert!(trace.notes.iter().any(|n| n.rule == RuleId::R4));
    }

    #[test]
    fn r5_keeps_correct_postposition() {
        let s = Sentence::new(vec![
            tok(1, "U", "u", "Pron", 4, "nsubj"),
            tok(2, "kitab", "kitab", "N", 3, "obj"),
            tok(3, "üčün", "üčün", "Post", 4, "post"),
            tok(4, "keldi", "kel", "V", 0, "root"),
        ]);
        assert_eq!(rehead_postposition(&s), s);
    }

    #[test]
    fn r6_zero_copula_and_overt_copula() {
        let s = Sentence::new(vec![
            tok(1, "U", "u", "Pron", 2, "nsubj"),
            tok(2, "oqutqufi", "oqutqufi", "N", 0, "root"),
        ]);
        assert_eq!(relabel_zero_copula(&s).tokens[0].deprel, "cop:zero");
        let verbal = Sentence::new(vec![
            tok(1, "U", "u", "Pron", 2, "nsubj"),
            tok(2, "keldi", "kel", "V", 0, "root"),
        ]);
        assert_eq!(relabel_zero_copula(&verbal), verbal);
    }

    #[test]
    fn r7_bouquet_to_chain() {
        let s = Sentence::new(vec![
            tok(1, "Men", "men", "Pron", 7, "nsubj"),
            tok(2, "alma", "alma", "N", 7, "obj"),
            tok(3, ",", ",", "_", 4, "punct"),
            tok(4, "anar", "anar", "N", 2, "conj"),
            tok(5, ",", ",", "_", 6, "punct"),
            tok(6, "nefpyt", "nefpyt", "N", 2, "conj"),
            tok(7, "jedim", "je", "V", 0, "root"),
        ]);
        let out = chain_coordination(&s);
        assert_eq!(
            arcs(&out),
            vec![
                (7, "nsubj"),
                (4, "conj"),
                (4, "punct"),
                (6, "conj"),
                (6, "punct"),
                (7, "obj"),
                (0, "root")
            ]
        );
        let two = Sentence::new(vec![
            tok(1, "A", "a", "N", 3, "obj"),
            tok(2, "B", "b", "N", 1, "conj"),
            tok(3, "V", "v", "V", 0, "root"),
        ]);
        assert_eq!(arcs(&chain_coordination(&two)), vec![(2, "conj"), (3, "obj"), (0, "root")]);
    }

    #[test]
    fn malformed_input_is_e_tree() {
        let s = Sentence::new(vec![tok(1, "a", "a", "N", 2, "nmod"), tok(2, "b", "b", "N", 1, "nmod")]);
        let err = apply_all(&s, &SchemaRegistry::default()).unwrap_err();
        assert_eq!(err.code(), "E_TREE");
    }

    #[test]
    fn rule_set_parsing() {
        let set = RuleSet::parse("R1, r5").unwrap();
        assert!(set.contains(RuleId::R1) && set.contains(RuleId::R5));
        assert!(!set.contains(RuleId::R2));
        assert_eq!(RuleSet::parse("R9").unwrap_err().code(), "E_RULE");
    }

    #[test]
    fn disabled_rules_do_not_fire() {
        let s = Sentence::new(vec![
            tok(1, "U", "u", "Pron", 2, "nsubj"),
            tok(2, "oqutqufi", "oqutqufi", "N", 0, "root"),
        ]);
        let (out, _) = apply_rules(&s, &SchemaRegistry::default(), RuleSet::only(&[RuleId::R1])).unwrap();
        assert_eq!(out, s);
    }
}
