use super::trace::{Application, TraceNote};
use super::RuleId;
use crate::conllu::{Sentence, Token};
use crate::schema::{is_converb, is_punctuation, PosTag, SchemaRegistry};

/// Relations that follow the lexical verb when a compound predicate is
/// re-rooted. `aux` is included so stacked auxiliaries end up on the verb.
const REROOT_RELS: [&str; 5] = ["nsubj", "advmod", "obj", "discourse", "aux"];

/// Collects the edits and notes of one rule run.
pub(crate) struct Editor {
    rule: RuleId,
    pub(crate) edits: Vec<Application>,
    pub(crate) notes: Vec<TraceNote>,
}

impl Editor {
    pub(crate) fn new(rule: RuleId) -> Self {
        Editor {
            rule,
            edits: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn set(&mut self, s: &mut Sentence, id: usize, head: usize, rel: &str) {
        let t = s.token_mut(id).expect("rule edits an existing token");
        if t.head == head && t.deprel == rel {
            return;
        }
        self.edits.push(Application {
            rule: self.rule,
            token: id,
            before: (t.head, t.deprel.clone()),
            after: (head, rel.to_owned()),
        });
        t.head = head;
        t.deprel = rel.to_owned();
    }

    fn relabel(&mut self, s: &mut Sentence, id: usize, rel: &str) {
        let head = s.token(id).expect("existing token").head;
        self.set(s, id, head, rel);
    }

    fn note(&mut self, token_ids: Vec<usize>, message: impl Into<String>) {
        self.notes.push(TraceNote {
            rule: self.rule,
            token_ids,
            message: message.into(),
        });
    }
}

fn pos(t: &Token) -> Option<PosTag> {
    PosTag::from_code(&t.pos)
}

fn is(reg: &SchemaRegistry, t: &Token, label: &str) -> bool {
    reg.is_label(&t.deprel, label)
}

fn dependent_ids(s: &Sentence, head: usize) -> Vec<usize> {
    s.dependents(head).map(|t| t.id).collect()
}

/// R1: `obl` carrying a Case feature becomes the matching `case:*` label.
pub(crate) fn refine_case(s: &mut Sentence, ed: &mut Editor) {
    for i in 0..s.len() {
        let t = &s.tokens[i];
        if t.deprel != "obl" {
            continue;
        }
        let id = t.id;
        let label = match t.feats.case() {
            Some("DAT") => "case:dat",
            Some("LOC") => "case:loc",
            Some("ABL") => "case:abl",
            Some("GEN" | "POSS") => "case:poss",
            Some(other) => {
                let msg = format!("obl with Case={} has no case:* counterpart; left as is", other);
                ed.note(vec![id], msg);
                continue;
            }
            None => {
                ed.note(vec![id], "obl without a Case feature; left as is");
                continue;
            }
        };
        ed.relabel(s, id, label);
    }
}

/// R2: an auxiliary root with a converb `advcl` to its left hands the root
/// over to the converb. Repeats so stacked auxiliaries unwind innermost
/// last and all end up on the lexical verb.
pub(crate) fn reroot_compound(s: &mut Sentence, reg: &SchemaRegistry, ed: &mut Editor) {
    for _ in 0..s.len() {
        let roots: Vec<usize> = s.tokens.iter().filter(|t| t.head == 0).map(|t| t.id).collect();
        let [root] = roots[..] else { return };
        if pos(&s.tokens[root - 1]) != Some(PosTag::Aux) {
            return;
        }
        let Some(conv) = s
            .dependents(root)
            .filter(|t| t.id < root && is(reg, t, "advcl") && is_converb(t))
            .map(|t| t.id)
            .max()
        else {
            return;
        };

        let last = s.len();
        for d in dependent_ids(s, root) {
            if d == conv {
                continue;
            }
            let t = &s.tokens[d - 1];
            let moves = REROOT_RELS.iter().any(|r| is(reg, t, r)) || (d == last && is_punctuation(t));
            if moves {
                let rel = t.deprel.clone();
                ed.set(s, d, conv, &rel);
            }
        }
        ed.set(s, conv, 0, "root");
        ed.set(s, root, conv, "aux");
    }
}

/// R3: adjacent lexicon pairs are bound with `fixed`, the second word
/// heading the first.
pub(crate) fn lexicalize_fixed(s: &mut Sentence, reg: &SchemaRegistry, ed: &mut Editor) {
    for first in 1..s.len() {
        let second = first + 1;
        let (a, b) = (&s.tokens[first - 1], &s.tokens[second - 1]);
        if !reg.is_fixed_pair(a, b) {
            continue;
        }
        if a.head == second && a.deprel == "fixed" {
            continue;
        }
        if b.head == first {
            let (head, rel) = (a.head, a.deprel.clone());
            ed.set(s, second, head, &rel);
        }
        ed.set(s, first, second, "fixed");
    }
}

/// R4: the clause introduced by a quotative becomes the quotative's `obj`,
/// and the quotative an `advcl` of the speech verb.
pub(crate) fn restructure_quotative(s: &mut Sentence, reg: &SchemaRegistry, ed: &mut Editor) {
    for q in 1..=s.len() {
        if !reg.is_quotative(&s.tokens[q - 1]) {
            continue;
        }
        if s.dependents(q).any(|t| is(reg, t, "obj")) {
            continue;
        }
        let found = s
            .tokens
            .iter()
            .filter(|v| v.id > q && pos(v) == Some(PosTag::V))
            .find_map(|v| {
                s.dependents(v.id)
                    .filter(|c| c.id < q && is(reg, c, "advcl"))
                    .map(|c| c.id)
                    .max()
                    .map(|c| (v.id, c))
            });
        match found {
            Some((verb, clause)) if !s.dominates(q, verb) && q != verb => {
                ed.set(s, clause, q, "obj");
                ed.set(s, q, verb, "advcl");
            }
            Some((verb, _)) => ed.note(
                vec![q, verb],
                "quotative dominates the speech verb; left as is",
            ),
            None => ed.note(
                vec![q],
                "quotative without a preceding clausal dependent of a speech verb; left as is",
            ),
        }
    }
}

/// R5: a postposition hanging under its complement is made the head of the
/// phrase.
pub(crate) fn rehead_postposition(s: &mut Sentence, reg: &SchemaRegistry, ed: &mut Editor) {
    for p in 1..=s.len() {
        let post = &s.tokens[p - 1];
        if pos(post) != Some(PosTag::Post)
            || is(reg, post, "post")
            || is(reg, post, "instr:case=post")
        {
            continue;
        }
        let Some(noun) = s.token(post.head) else { continue };
        if !pos(noun).is_some_and(PosTag::is_nominal) || noun.head == 0 {
            continue;
        }
        let (n, outer) = (noun.id, noun.head);
        let label = reg.postposition_label(post).to_owned();
        ed.set(s, n, p, "obj");
        ed.set(s, p, outer, &label);
    }
}

/// R6: the subject of a non-verbal root without an overt copula is marked
/// `cop:zero`.
pub(crate) fn relabel_zero_copula(s: &mut Sentence, reg: &SchemaRegistry, ed: &mut Editor) {
    let Some(root) = s.tokens.iter().find(|t| t.head == 0) else { return };
    if !pos(root).is_some_and(PosTag::is_nonverbal_predicate) {
        return;
    }
    let root = root.id;
    if s.dependents(root).any(|t| is(reg, t, "cop")) {
        return;
    }
    let subjects: Vec<usize> = s
        .dependents(root)
        .filter(|t| is(reg, t, "nsubj"))
        .map(|t| t.id)
        .collect();
    for id in subjects {
        ed.relabel(s, id, "cop:zero");
    }
}

/// R7: a bouquet of conjuncts on the first one becomes a rightward chain.
pub(crate) fn chain_coordination(s: &mut Sentence, reg: &SchemaRegistry, ed: &mut Editor) {
    let limit = s.len() * s.len() + 1;
    for _ in 0..limit {
        let Some(first) = s.tokens.iter().map(|t| t.id).find(|&f| {
            s.dependents(f).any(|d| d.id > f && is(reg, d, "conj"))
        }) else {
            return;
        };
        let mut members = vec![first];
        members.extend(
            s.dependents(first)
                .filter(|d| d.id > first && is(reg, d, "conj"))
                .map(|d| d.id),
        );
        let last = *members.last().expect("at least two members");
        let (ext_head, ext_rel) = {
            let f = &s.tokens[first - 1];
            (f.head, f.deprel.clone())
        };

        let glue: Vec<usize> = s
            .tokens
            .iter()
            .filter(|t| {
                t.id > first
                    && t.id < last
                    && members.contains(&t.head)
                    && (is(reg, t, "cc") || is_punctuation(t))
            })
            .map(|t| t.id)
            .collect();

        ed.set(s, last, ext_head, &ext_rel);
        for w in members.windows(2) {
            ed.set(s, w[0], w[1], "conj");
        }
        for g in glue {
            let next = *members.iter().find(|&&m| m > g).expect("g < last");
            let rel = s.tokens[g - 1].deprel.clone();
            ed.set(s, g, next, &rel);
        }
    }
    ed.note(Vec::new(), "coordination rewrite did not settle; stopped");
}
