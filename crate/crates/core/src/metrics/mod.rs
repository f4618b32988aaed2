//! Attachment scores (UAS, LAS, MLAS, BLEX), per-label breakdowns and
//! categorised divergence between two annotations of the same text.
//!
//! Scores are F1 over gold and predicted token sets, computed on exact
//! integer counts and rendered to two decimals with round-half-up.

mod align;
mod divergence;

pub use align::{align_tokens, Alignment};
pub use divergence::{divergence, Category, DivergenceEvent, DivergenceReport};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::conllu::{Sentence, Token, Treebank};
use crate::schema::SchemaRegistry;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("E_PAIRING: gold has {gold} sentences, prediction has {pred}")]
    Pairing { gold: usize, pred: usize },
}

impl MetricsError {
    pub fn code(&self) -> &'static str {
        "E_PAIRING"
    }
}

/// Correct / gold / predicted counts for one metric.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub correct: usize,
    pub gold: usize,
    pub pred: usize,
}

impl Tally {
    pub fn add(&mut self, other: Tally) {
        self.correct += other.correct;
        self.gold += other.gold;
        self.pred += other.pred;
    }

    pub fn precision(&self) -> f64 {
        ratio(self.correct, self.pred)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.correct, self.gold)
    }

    /// F1 as a percentage. Two empty sets agree perfectly.
    pub fn f1(&self) -> f64 {
        if self.gold + self.pred == 0 {
            return 100.0;
        }
        200.0 * self.correct as f64 / (self.gold + self.pred) as f64
    }

    /// F1 in hundredths of a percent, rounded half-up on exact integers.
    pub fn f1_hundredths(&self) -> u64 {
        let den = (self.gold + self.pred) as u64;
        if den == 0 {
            return 10_000;
        }
        percent_hundredths(2 * self.correct as u64, den)
    }

    pub fn render(&self) -> String {
        render_hundredths(self.f1_hundredths())
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        100.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

/// `100 * num / den` in hundredths, half-up.
pub(crate) fn percent_hundredths(num: u64, den: u64) -> u64 {
    (2 * 10_000 * num + den) / (2 * den)
}

pub(crate) fn render_hundredths(h: u64) -> String {
    format!("{}.{:02}", h / 100, h % 100)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LabelScore {
    pub tally: Tally,
}

impl LabelScore {
    pub fn precision(&self) -> f64 {
        self.tally.precision()
    }

    pub fn recall(&self) -> f64 {
        self.tally.recall()
    }

    pub fn f1(&self) -> f64 {
        self.tally.f1()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EvalScores {
    pub uas: Tally,
    pub las: Tally,
    pub mlas: Tally,
    pub blex: Tally,
    /// Aligned token pairs.
    pub matched: usize,
    pub gold_tokens: usize,
    pub pred_tokens: usize,
    pub per_label: BTreeMap<String, LabelScore>,
}

impl EvalScores {
    pub fn uas_f1(&self) -> f64 {
        self.uas.f1()
    }

    pub fn las_f1(&self) -> f64 {
        self.las.f1()
    }

    pub fn mlas(&self) -> f64 {
        self.mlas.f1()
    }

    pub fn blex(&self) -> f64 {
        self.blex.f1()
    }

    fn rows(&self) -> [(&'static str, &Tally); 4] {
        [
            ("UAS", &self.uas),
            ("LAS", &self.las),
            ("MLAS", &self.mlas),
            ("BLEX", &self.blex),
        ]
    }

    /// `metric<TAB>value` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (name, t) in self.rows() {
            out.push_str(&format!("{}\t{}\n", name, t.render()));
        }
        out.push_str(&format!("tokens_gold\t{}\n", self.gold_tokens));
        out.push_str(&format!("tokens_pred\t{}\n", self.pred_tokens));
        out.push_str(&format!("tokens_matched\t{}\n", self.matched));
        out
    }

    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("scores serialise");
        for (name, t) in self.rows() {
            value[name.to_lowercase() + "_f1"] = serde_json::Value::String(t.render());
        }
        serde_json::to_string_pretty(&value).expect("scores serialise")
    }

    pub fn per_label_table(&self) -> String {
        let mut out = String::from("label\tprecision\trecall\tf1\tgold\tpred\tcorrect\n");
        for (label, s) in &self.per_label {
            out.push_str(&format!(
                "{}\t{:.2}\t{:.2}\t{}\t{}\t{}\t{}\n",
                label,
                s.precision(),
                s.recall(),
                s.tally.render(),
                s.tally.gold,
                s.tally.pred,
                s.tally.correct
            ));
        }
        out
    }
}

impl fmt::Display for EvalScores {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Metric     | Precision |    Recall |  F1 Score")?;
        writeln!(f, "-----------+-----------+-----------+----------")?;
        for (name, t) in self.rows() {
            writeln!(
                f,
                "{:<10} | {:>9.2} | {:>9.2} | {:>9}",
                name,
                t.precision(),
                t.recall(),
                t.render()
            )?;
        }
        write!(
            f,
            "tokens: gold {}, predicted {}, aligned {}",
            self.gold_tokens, self.pred_tokens, self.matched
        )
    }
}

/// Per-sentence view used by both scoring and divergence: gold-side
/// labels and heads of aligned predicted tokens.
pub(crate) struct Paired<'a> {
    pub gold: &'a Sentence,
    pub pred: &'a Sentence,
    pub alignment: Alignment,
    /// pred id -> gold id
    pub to_gold: Vec<Option<usize>>,
}

impl<'a> Paired<'a> {
    pub fn new(gold: &'a Sentence, pred: &'a Sentence) -> Self {
        let alignment = align_tokens(gold, pred);
        let mut to_gold = vec![None; pred.len() + 1];
        for &(g, p) in &alignment.pairs {
            to_gold[p] = Some(g);
        }
        Paired {
            gold,
            pred,
            alignment,
            to_gold,
        }
    }

    /// The predicted head expressed as a gold id (0 for the root).
    pub fn pred_head(&self, p: &Token) -> Option<usize> {
        if p.head == 0 {
            Some(0)
        } else {
            self.to_gold.get(p.head).copied().flatten()
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&'a Token, &'a Token)> + '_ {
        self.alignment
            .pairs
            .iter()
            .map(|&(g, p)| (&self.gold.tokens[g - 1], &self.pred.tokens[p - 1]))
    }
}

fn check_pairing(gold: &Treebank, pred: &Treebank) -> Result<(), MetricsError> {
    if gold.len() != pred.len() {
        return Err(MetricsError::Pairing {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    Ok(())
}

pub fn score(gold: &Treebank, pred: &Treebank, reg: &SchemaRegistry) -> Result<EvalScores, MetricsError> {
    check_pairing(gold, pred)?;
    let mut total = EvalScores::default();
    for (g, p) in gold.sentences.iter().zip(&pred.sentences) {
        let s = score_sentence(g, p, reg);
        total.uas.add(s.uas);
        total.las.add(s.las);
        total.mlas.add(s.mlas);
        total.blex.add(s.blex);
        total.matched += s.matched;
        total.gold_tokens += s.gold_tokens;
        total.pred_tokens += s.pred_tokens;
        for (label, ls) in s.per_label {
            total.per_label.entry(label).or_default().tally.add(ls.tally);
        }
    }
    Ok(total)
}

/// Scores one sentence pair.
pub fn score_sentence(gold: &Sentence, pred: &Sentence, reg: &SchemaRegistry) -> EvalScores {
    let pair = Paired::new(gold, pred);
    let sets = reg.eval_sets();
    let label = |t: &Token| reg.canonical_or_raw(&t.deprel).to_owned();
    let is_content = |t: &Token| sets.content.contains(reg.canonical_or_raw(&t.deprel));
    let is_function = |t: &Token| sets.function.contains(reg.canonical_or_raw(&t.deprel));

    let mut out = EvalScores {
        matched: pair.alignment.pairs.len(),
        gold_tokens: gold.len(),
        pred_tokens: pred.len(),
        ..EvalScores::default()
    };
    out.uas.gold = gold.len();
    out.uas.pred = pred.len();
    out.las.gold = gold.len();
    out.las.pred = pred.len();
    let gold_content = gold.tokens.iter().filter(|t| is_content(t)).count();
    let pred_content = pred.tokens.iter().filter(|t| is_content(t)).count();
    out.mlas.gold = gold_content;
    out.mlas.pred = pred_content;
    out.blex.gold = gold_content;
    out.blex.pred = pred_content;

    for t in &gold.tokens {
        out.per_label.entry(label(t)).or_default().tally.gold += 1;
    }
    for t in &pred.tokens {
        out.per_label.entry(label(t)).or_default().tally.pred += 1;
    }

    let function_children = |s: &Sentence, id: usize, to_gold: &dyn Fn(usize) -> Option<usize>| {
        s.dependents(id)
            .filter(|c| is_function(c))
            .map(|c| (to_gold(c.id), reg.canonical_or_raw(&c.deprel).to_owned()))
            .collect::<BTreeSet<_>>()
    };

    for (g, p) in pair.pairs() {
        if pair.pred_head(p) != Some(g.head) {
            continue;
        }
        out.uas.correct += 1;
        let (gl, pl) = (label(g), label(p));
        if gl != pl {
            continue;
        }
        out.las.correct += 1;
        out.per_label.entry(gl).or_default().tally.correct += 1;
        if !is_content(g) {
            continue;
        }
        if g.lemma == p.lemma {
            out.blex.correct += 1;
        }
        let feats_match = sets
            .features
            .iter()
            .all(|k| g.feats.get(k) == p.feats.get(k));
        let gold_fc = function_children(gold, g.id, &|id| Some(id));
        let pred_fc = function_children(pred, p.id, &|id| pair.to_gold[id]);
        if g.pos == p.pos && feats_match && gold_fc == pred_fc {
            out.mlas.correct += 1;
        }
    }
    out
}
