//! Annotation-principle (P1-P9) and construction (C1-C7) checks.
//!
//! Everything here is a pure function of the sentence and the registry; the
//! validator reports and never repairs.

mod projectivity;
mod report;

pub use projectivity::{check_projectivity, crossing_arcs, Arc};
pub use report::{reports_to_json, reports_to_tsv, ValidationReport};

use std::collections::BTreeSet;

use crate::conllu::{build_tree, Sentence, Token, Treebank};
use crate::diagnostic::{CheckCode, Diagnostic};
use crate::schema::{is_converb, is_punctuation, validate_assignment, PosTag, SchemaRegistry};

/// POS tags allowed on the sentence root.
const ROOT_POS: [PosTag; 7] = [
    PosTag::V,
    PosTag::Aux,
    PosTag::N,
    PosTag::A,
    PosTag::Num,
    PosTag::Pron,
    PosTag::Adv,
];

pub fn validate_sentence(s: &Sentence, reg: &SchemaRegistry) -> ValidationReport {
    validate_sentence_at(s, reg, 0)
}

/// As [`validate_sentence`], with the sentence's position in its treebank
/// used as the id when it has no `sent_id`.
pub fn validate_sentence_at(s: &Sentence, reg: &SchemaRegistry, index: usize) -> ValidationReport {
    let mut diags = Vec::new();
    let cx = Context { s, reg };

    let malformed = cx.check_directed(&mut diags);
    cx.check_attached(&malformed, &mut diags);
    cx.check_root(&mut diags);
    cx.check_single_head(&mut diags);
    cx.check_crossing(&mut diags);
    cx.check_root_pos(&mut diags);
    cx.check_whole_words(&mut diags);
    cx.check_complex_predicates(&mut diags);

    let before = diags.len();
    cx.check_zero_copula(&mut diags);
    cx.check_conj_chain(&mut diags);
    cx.check_punct(&mut diags);
    cx.check_case_agreement(&mut diags);
    cx.check_postpositions(&mut diags);
    cx.check_fixed(&mut diags);
    cx.check_discourse(&mut diags);
    if diags.len() > before {
        let ids: BTreeSet<usize> = diags[before..]
            .iter()
            .flat_map(|d| d.token_ids.iter().copied())
            .collect();
        diags.push(Diagnostic::info(
            CheckCode::P9,
            ids.into_iter().collect(),
            "construction findings may rest on a lexical-semantic judgement; review manually",
        ));
    }

    for t in &s.tokens {
        diags.extend(validate_assignment(t, reg));
    }

    ValidationReport::new(s.label(index), diags)
}

pub fn validate_treebank(tb: &Treebank, reg: &SchemaRegistry) -> Vec<ValidationReport> {
    tb.sentences
        .iter()
        .enumerate()
        .map(|(i, s)| validate_sentence_at(s, reg, i))
        .collect()
}

struct Context<'a> {
    s: &'a Sentence,
    reg: &'a SchemaRegistry,
}

impl Context<'_> {
    fn rel<'t>(&'t self, t: &'t Token) -> &'t str {
        self.reg.canonical_or_raw(&t.deprel)
    }

    fn pos(&self, t: &Token) -> Option<PosTag> {
        PosTag::from_code(&t.pos)
    }

    fn head_of(&self, t: &Token) -> Option<&Token> {
        self.s.token(t.head)
    }

    fn is_root_token(&self, id: usize) -> bool {
        self.s.token(id).is_some_and(|t| t.head == 0)
    }

    fn is_predicate(&self, t: &Token) -> bool {
        t.head == 0 || self.pos(t).is_some_and(PosTag::is_verbal)
    }

    /// P5. Returns the ids with unusable heads.
    fn check_directed(&self, diags: &mut Vec<Diagnostic>) -> BTreeSet<usize> {
        let n = self.s.len();
        let mut bad = BTreeSet::new();
        for t in &self.s.tokens {
            if t.head == t.id {
                diags.push(Diagnostic::error(
                    CheckCode::P5,
                    vec![t.id],
                    "token is its own head",
                ));
                bad.insert(t.id);
            } else if t.head > n {
                diags.push(Diagnostic::error(
                    CheckCode::P5,
                    vec![t.id],
                    format!("head {} is outside the sentence", t.head),
                ));
                bad.insert(t.id);
            }
        }
        bad
    }

    /// P1: every token reaches a root. Tokens already reported by P5 are not
    /// reported again.
    fn check_attached(&self, malformed: &BTreeSet<usize>, diags: &mut Vec<Diagnostic>) {
        let n = self.s.len();
        let detached: Vec<usize> = self
            .s
            .tokens
            .iter()
            .filter(|t| !malformed.contains(&t.id))
            .filter(|t| {
                let mut cur = t.id;
                for _ in 0..=n {
                    match self.s.token(cur) {
                        Some(x) if x.head == 0 => return false,
                        Some(x) if x.head != x.id => cur = x.head,
                        _ => return true,
                    }
                }
                true
            })
            .map(|t| t.id)
            .collect();
        if !detached.is_empty() {
            diags.push(Diagnostic::error(
                CheckCode::P1,
                detached,
                "tokens are not connected to the root",
            ));
        }
    }

    /// P2: exactly one root, and `root` labels exactly the root.
    fn check_root(&self, diags: &mut Vec<Diagnostic>) {
        let roots: Vec<usize> = self.s.tokens.iter().filter(|t| t.head == 0).map(|t| t.id).collect();
        if roots.len() != 1 {
            diags.push(Diagnostic::error(
                CheckCode::P2,
                roots.clone(),
                format!("expected exactly one root, found {}", roots.len()),
            ));
        }
        for t in &self.s.tokens {
            let labelled_root = self.rel(t) == "root";
            if t.head == 0 && !labelled_root {
                diags.push(Diagnostic::error(
                    CheckCode::P2,
                    vec![t.id],
                    format!("root token is labelled `{}`", t.deprel),
                ));
            } else if t.head != 0 && labelled_root {
                diags.push(Diagnostic::error(
                    CheckCode::P2,
                    vec![t.id],
                    "`root` label on a non-root token",
                ));
            }
        }
    }

    /// P3: DEPS may only restate the basic head. Empty-node heads in DEPS
    /// are left to P7.
    fn check_single_head(&self, diags: &mut Vec<Diagnostic>) {
        for t in &self.s.tokens {
            let Some(deps) = &t.deps else { continue };
            for entry in deps.split('|') {
                let Some((h, _)) = entry.split_once(':') else {
                    diags.push(Diagnostic::error(
                        CheckCode::P3,
                        vec![t.id],
                        format!("malformed DEPS entry `{}`", entry),
                    ));
                    continue;
                };
                if h.contains('.') {
                    continue;
                }
                if h.parse::<usize>().ok() != Some(t.head) {
                    diags.push(Diagnostic::error(
                        CheckCode::P3,
                        vec![t.id],
                        format!("DEPS gives a second head `{}` besides {}", h, t.head),
                    ));
                }
            }
        }
    }

    /// P4, only when the tree is well formed.
    fn check_crossing(&self, diags: &mut Vec<Diagnostic>) {
        if build_tree(self.s).is_err() {
            return;
        }
        for (a, b) in crossing_arcs(&self.s.heads()) {
            diags.push(Diagnostic::error(
                CheckCode::P4,
                vec![a.dep, b.dep],
                format!(
                    "arc {}->{} crosses arc {}->{}",
                    a.head, a.dep, b.head, b.dep
                ),
            ));
        }
    }

    /// P6: the root must be a predicate-capable word.
    fn check_root_pos(&self, diags: &mut Vec<Diagnostic>) {
        for t in self.s.tokens.iter().filter(|t| t.head == 0) {
            if !self.pos(t).is_some_and(|p| ROOT_POS.contains(&p)) {
                diags.push(Diagnostic::error(
                    CheckCode::P6,
                    vec![t.id],
                    format!("root has POS `{}`, which cannot be the main predicate", t.pos),
                ));
            }
        }
    }

    /// P7: arcs on range lines, empty nodes, or DEPS heads pointing at
    /// empty nodes.
    fn check_whole_words(&self, diags: &mut Vec<Diagnostic>) {
        for line in self.s.special.iter().filter(|l| l.carries_arc()) {
            let ids = match line.kind {
                crate::conllu::SpecialKind::Range { start, end } => (start..=end).collect(),
                crate::conllu::SpecialKind::Empty { major, .. } => vec![major],
            };
            diags.push(Diagnostic::error(
                CheckCode::P7,
                ids,
                format!("`{}` is not a word but carries an arc", line.columns[0]),
            ));
        }
        for t in &self.s.tokens {
            let Some(deps) = &t.deps else { continue };
            if deps
                .split('|')
                .filter_map(|e| e.split_once(':'))
                .any(|(h, _)| h.contains('.'))
            {
                diags.push(Diagnostic::error(
                    CheckCode::P7,
                    vec![t.id],
                    "DEPS attaches the word to an empty node",
                ));
            }
        }
    }

    /// P8: an auxiliary is a verb form attached to the lexical verb.
    fn check_complex_predicates(&self, diags: &mut Vec<Diagnostic>) {
        for t in self.s.tokens.iter().filter(|t| self.rel(t) == "aux") {
            if !self.pos(t).is_some_and(PosTag::is_verbal) {
                diags.push(Diagnostic::error(
                    CheckCode::P8,
                    vec![t.id],
                    format!("auxiliary has POS `{}`", t.pos),
                ));
            }
            let head_pos = self.head_of(t).and_then(|h| self.pos(h));
            if head_pos != Some(PosTag::V) {
                diags.push(Diagnostic::error(
                    CheckCode::P8,
                    vec![t.id, t.head],
                    "auxiliary must depend on the lexical verb",
                ));
            }
        }
        // the UD-style inverse: an auxiliary heading its lexical verb
        for aux in self.s.tokens.iter().filter(|t| self.pos(t) == Some(PosTag::Aux)) {
            let governed: Vec<usize> = self
                .s
                .dependents(aux.id)
                .filter(|d| d.id < aux.id && self.rel(d) == "advcl" && is_converb(d))
                .map(|d| d.id)
                .collect();
            if !governed.is_empty() {
                diags.push(Diagnostic::error(
                    CheckCode::P8,
                    [vec![aux.id], governed].concat(),
                    "auxiliary heads a converb; the lexical verb should head the predicate",
                ));
            }
        }
    }

    /// C1
    fn check_zero_copula(&self, diags: &mut Vec<Diagnostic>) {
        for t in self.s.tokens.iter().filter(|t| self.rel(t) == "cop:zero") {
            let ok = self
                .head_of(t)
                .is_some_and(|h| h.head == 0 && self.pos(h).is_some_and(PosTag::is_nonverbal_predicate));
            if !ok {
                diags.push(Diagnostic::error(
                    CheckCode::C1,
                    vec![t.id, t.head],
                    "cop:zero must attach to a non-verbal root",
                ));
            }
        }
    }

    /// C2: each conjunct depends on the one that follows it.
    fn check_conj_chain(&self, diags: &mut Vec<Diagnostic>) {
        for t in self.s.tokens.iter().filter(|t| self.rel(t) == "conj") {
            if t.head == 0 || t.head < t.id {
                diags.push(Diagnostic::error(
                    CheckCode::C2,
                    vec![t.id, t.head],
                    "conjunct must precede the conjunct it depends on",
                ));
            }
        }
    }

    /// C3: sentence-final punctuation on the root; punctuation between
    /// conjuncts on the next conjunct.
    fn check_punct(&self, diags: &mut Vec<Diagnostic>) {
        if let Some(last) = self.s.tokens.last() {
            let malformed = last.head == last.id || last.head > self.s.len();
            if is_punctuation(last) && !malformed && !self.is_root_token(last.head) {
                diags.push(Diagnostic::error(
                    CheckCode::C3,
                    vec![last.id],
                    "sentence-final punctuation must depend on the root",
                ));
            }
        }
        for chain in self.conj_chains() {
            let (lo, hi) = (chain[0], chain[chain.len() - 1]);
            for p in self
                .s
                .tokens
                .iter()
                .filter(|t| is_punctuation(t) && t.id > lo && t.id < hi && !chain.contains(&t.id))
            {
                let next = *chain.iter().find(|&&c| c > p.id).expect("p < hi");
                if p.head != next {
                    diags.push(Diagnostic::error(
                        CheckCode::C3,
                        vec![p.id, next],
                        format!("punctuation inside coordination must depend on the following conjunct {}", next),
                    ));
                }
            }
        }
    }

    /// Members of each conj-connected component, sorted, size >= 2.
    fn conj_chains(&self) -> Vec<Vec<usize>> {
        let n = self.s.len();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let mut members = BTreeSet::new();
        for t in self.s.tokens.iter().filter(|t| self.rel(t) == "conj") {
            if t.head == 0 || t.head > n {
                continue;
            }
            let (a, b) = (find(&mut parent, t.id), find(&mut parent, t.head));
            parent[a] = b;
            members.insert(t.id);
            members.insert(t.head);
        }
        let mut chains: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for m in members {
            let r = find(&mut parent, m);
            chains.entry(r).or_default().push(m);
        }
        chains.into_values().filter(|c| c.len() >= 2).collect()
    }

    /// C4
    fn check_case_agreement(&self, diags: &mut Vec<Diagnostic>) {
        for t in &self.s.tokens {
            let rel = self.rel(t);
            let expected: &[&str] = match rel {
                "case:abl" => &["ABL"],
                "case:loc" | "instr:case=loc" => &["LOC"],
                "case:dat" | "instr:case=dat" => &["DAT"],
                "case:poss" => &["GEN", "POSS"],
                "post" | "instr:case=post" => {
                    if self.pos(t) != Some(PosTag::Post) {
                        diags.push(Diagnostic::error(
                            CheckCode::C4,
                            vec![t.id],
                            format!("`{}` dependent must be a postposition, found `{}`", rel, t.pos),
                        ));
                    }
                    continue;
                }
                _ => continue,
            };
            match t.feats.case() {
                None => diags.push(Diagnostic::warning(
                    CheckCode::C4,
                    vec![t.id],
                    format!("`{}` dependent has no Case feature", rel),
                )),
                Some(c) if !expected.contains(&c) => diags.push(Diagnostic::error(
                    CheckCode::C4,
                    vec![t.id],
                    format!("`{}` requires Case={}, found Case={}", rel, expected.join("/"), c),
                )),
                Some(_) => {}
            }
        }
    }

    /// C5: the postposition heads its nominal complement via `obj` and
    /// attaches to a predicate.
    fn check_postpositions(&self, diags: &mut Vec<Diagnostic>) {
        for p in self.s.tokens.iter().filter(|t| self.pos(t) == Some(PosTag::Post)) {
            for d in self.s.dependents(p.id) {
                if self.pos(d).is_some_and(PosTag::is_nominal) && self.rel(d) != "obj" {
                    diags.push(Diagnostic::error(
                        CheckCode::C5,
                        vec![d.id, p.id],
                        format!("nominal complement of a postposition is labelled `{}`, not obj", d.deprel),
                    ));
                }
            }
            if let Some(h) = self.head_of(p) {
                if !self.is_predicate(h) {
                    diags.push(Diagnostic::error(
                        CheckCode::C5,
                        vec![p.id, h.id],
                        "postposition must attach to a predicate",
                    ));
                }
            }
        }
    }

    /// C6: the second element of a fixed expression is the head.
    fn check_fixed(&self, diags: &mut Vec<Diagnostic>) {
        for t in self.s.tokens.iter().filter(|t| self.rel(t) == "fixed") {
            if t.head == 0 || t.head < t.id {
                diags.push(Diagnostic::error(
                    CheckCode::C6,
                    vec![t.id, t.head],
                    "fixed dependent must precede its head",
                ));
            }
        }
    }

    /// C7: discourse elements hang off the root (or at least a predicate).
    fn check_discourse(&self, diags: &mut Vec<Diagnostic>) {
        for t in self.s.tokens.iter().filter(|t| self.rel(t) == "discourse") {
            if let Some(h) = self.head_of(t) {
                if !self.is_predicate(h) {
                    diags.push(Diagnostic::error(
                        CheckCode::C7,
                        vec![t.id, h.id],
                        "discourse element must depend on the root",
                    ));
                }
            }
        }
    }
}
