use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{check_pairing, percent_hundredths, render_hundredths, MetricsError, Paired};
use crate::conllu::{Token, Treebank};
use crate::schema::{PosTag, SchemaRegistry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    CaseRelations,
    CompoundPredicates,
    FixedExpressions,
    Quotative,
    PostpositionHeadedness,
    Other,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::CaseRelations,
        Category::CompoundPredicates,
        Category::FixedExpressions,
        Category::Quotative,
        Category::PostpositionHeadedness,
        Category::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::CaseRelations => "case-relations",
            Category::CompoundPredicates => "compound-predicates",
            Category::FixedExpressions => "fixed-expressions",
            Category::Quotative => "quotative",
            Category::PostpositionHeadedness => "postposition-headedness",
            Category::Other => "other",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One classified disagreement; `token_ids` are gold ids of every
/// disagreeing token it accounts for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivergenceEvent {
    pub sent_id: String,
    pub category: Category,
    pub token_ids: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivergenceReport {
    /// (gold label, predicted label) -> aligned tokens.
    pub confusion: BTreeMap<(String, String), usize>,
    /// Events per category.
    pub categories: BTreeMap<Category, usize>,
    /// Disagreeing tokens per category.
    pub category_tokens: BTreeMap<Category, usize>,
    pub events: Vec<DivergenceEvent>,
    pub aligned: usize,
    /// Aligned tokens with the same head and label.
    pub agreeing: usize,
}

impl DivergenceReport {
    /// LAS over aligned tokens, in hundredths of a percent.
    pub fn agreement_hundredths(&self) -> u64 {
        if self.aligned == 0 {
            return 10_000;
        }
        percent_hundredths(self.agreeing as u64, self.aligned as u64)
    }

    pub fn agreement_rate(&self) -> String {
        render_hundredths(self.agreement_hundredths())
    }

    pub fn disagreeing(&self) -> usize {
        self.aligned - self.agreeing
    }

    /// Confusion triples `gold<TAB>pred<TAB>count`, then a category block.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("gold\tpred\tcount\n");
        for ((g, p), n) in &self.confusion {
            out.push_str(&format!("{}\t{}\t{}\n", g, p, n));
        }
        out.push_str("\ncategory\tevents\ttokens\n");
        for c in Category::ALL {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                c,
                self.categories.get(&c).copied().unwrap_or(0),
                self.category_tokens.get(&c).copied().unwrap_or(0)
            ));
        }
        out.push_str(&format!("\nagreement_rate\t{}\n", self.agreement_rate()));
        out.push_str(&format!("aligned\t{}\n", self.aligned));
        out
    }

    pub fn to_json(&self) -> String {
        let confusion: Vec<_> = self
            .confusion
            .iter()
            .map(|((g, p), n)| serde_json::json!({"gold": g, "pred": p, "count": n}))
            .collect();
        let value = serde_json::json!({
            "confusion": confusion,
            "categories": self.categories,
            "category_tokens": self.category_tokens,
            "events": self.events,
            "aligned": self.aligned,
            "agreement_rate": self.agreement_rate(),
        });
        serde_json::to_string_pretty(&value).expect("report serialises")
    }
}

impl fmt::Display for DivergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "agreement {} ({} of {} aligned tokens)",
            self.agreement_rate(),
            self.agreeing,
            self.aligned
        )?;
        for c in Category::ALL {
            writeln!(
                f,
                "  {:<24} {:>4} events {:>5} tokens",
                c.as_str(),
                self.categories.get(&c).copied().unwrap_or(0),
                self.category_tokens.get(&c).copied().unwrap_or(0)
            )?;
        }
        writeln!(f, "disagreements (gold -> predicted):")?;
        for ((g, p), n) in self.confusion.iter().filter(|((g, p), _)| g != p) {
            writeln!(f, "  {:<18} {:<18} {}", g, p, n)?;
        }
        Ok(())
    }
}

const CASE_LABELS: [&str; 4] = ["case:abl", "case:loc", "case:dat", "case:poss"];

/// Classifies every aligned disagreement. Detectors run in a fixed order
/// and each token is claimed by at most one event.
pub fn divergence(gold: &Treebank, pred: &Treebank, reg: &SchemaRegistry) -> Result<DivergenceReport, MetricsError> {
    check_pairing(gold, pred)?;
    let mut report = DivergenceReport::default();
    for (i, (g, p)) in gold.sentences.iter().zip(&pred.sentences).enumerate() {
        let pair = Paired::new(g, p);
        SentenceDiff::new(&pair, reg).classify(g.label(i), &mut report);
    }
    for c in Category::ALL {
        report.categories.entry(c).or_insert(0);
        report.category_tokens.entry(c).or_insert(0);
    }
    Ok(report)
}

/// Gold-indexed view of one aligned sentence pair.
struct SentenceDiff<'a> {
    gold: Vec<&'a Token>,
    /// Per gold id (index id-1): predicted (head in gold ids, label).
    pred: Vec<Option<(Option<usize>, String)>>,
    gold_rel: Vec<String>,
    reg: &'a SchemaRegistry,
}

impl<'a> SentenceDiff<'a> {
    fn new(pair: &Paired<'a>, reg: &'a SchemaRegistry) -> Self {
        let gold: Vec<&Token> = pair.gold.tokens.iter().collect();
        let mut pred = vec![None; gold.len()];
        for (g, p) in pair.pairs() {
            pred[g.id - 1] = Some((pair.pred_head(p), reg.canonical_or_raw(&p.deprel).to_owned()));
        }
        let gold_rel = gold
            .iter()
            .map(|t| reg.canonical_or_raw(&t.deprel).to_owned())
            .collect();
        SentenceDiff {
            gold,
            pred,
            gold_rel,
            reg,
        }
    }

    fn grel(&self, id: usize) -> &str {
        &self.gold_rel[id - 1]
    }

    fn ghead(&self, id: usize) -> usize {
        self.gold[id - 1].head
    }

    fn prel(&self, id: usize) -> Option<&str> {
        self.pred[id - 1].as_ref().map(|(_, r)| r.as_str())
    }

    fn phead(&self, id: usize) -> Option<usize> {
        self.pred[id - 1].as_ref().and_then(|(h, _)| *h)
    }

    fn differs(&self, id: usize) -> bool {
        match &self.pred[id - 1] {
            None => false,
            Some((h, r)) => *h != Some(self.ghead(id)) || r != self.grel(id),
        }
    }

    fn pos(&self, id: usize) -> Option<PosTag> {
        PosTag::from_code(&self.gold[id - 1].pos)
    }

    fn ids(&self) -> impl Iterator<Item = usize> {
        1..=self.gold.len()
    }

    fn classify(&self, sent_id: String, report: &mut DivergenceReport) {
        for id in self.ids() {
            if let Some(p) = self.prel(id) {
                report.aligned += 1;
                *report
                    .confusion
                    .entry((self.grel(id).to_owned(), p.to_owned()))
                    .or_insert(0) += 1;
                if !self.differs(id) {
                    report.agreeing += 1;
                }
            }
        }

        let mut claimed = BTreeSet::new();
        let mut emit = |category: Category, tokens: Vec<usize>, claimed: &mut BTreeSet<usize>| {
            let tokens: Vec<usize> = tokens
                .into_iter()
                .filter(|&t| self.differs(t) && claimed.insert(t))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if tokens.is_empty() {
                return;
            }
            *report.categories.entry(category).or_insert(0) += 1;
            *report.category_tokens.entry(category).or_insert(0) += tokens.len();
            report.events.push(DivergenceEvent {
                sent_id: sent_id.clone(),
                category,
                token_ids: tokens,
            });
        };

        // Compound predicates: gold aux(L -> A), predicted advcl(A -> L).
        for a in self.ids() {
            if self.grel(a) != "aux" || claimed.contains(&a) {
                continue;
            }
            let l = self.ghead(a);
            if l == 0 || self.prel(l) != Some("advcl") || self.phead(l) != Some(a) {
                continue;
            }
            let mut tokens = vec![a, l];
            tokens.extend(
                self.ids()
                    .filter(|&t| t != a && self.ghead(t) == l && self.phead(t) == Some(a)),
            );
            emit(Category::CompoundPredicates, tokens, &mut claimed);
        }

        // Quotative: gold obj of the quotative, predicted advcl.
        for c in self.ids() {
            if claimed.contains(&c) || self.grel(c) != "obj" || self.prel(c) != Some("advcl") {
                continue;
            }
            let q = self.ghead(c);
            if q == 0 || !self.reg.is_quotative(self.gold[q - 1]) {
                continue;
            }
            emit(Category::Quotative, vec![c, q], &mut claimed);
        }

        // Postposition headedness: gold Post heads N via obj, predicted the
        // other way round.
        for p in self.ids() {
            if claimed.contains(&p)
                || self.pos(p) != Some(PosTag::Post)
                || !matches!(self.grel(p), "post" | "instr:case=post")
            {
                continue;
            }
            for n in self.ids().filter(|&n| self.ghead(n) == p && self.grel(n) == "obj") {
                if self.phead(p) == Some(n) {
                    emit(Category::PostpositionHeadedness, vec![p, n], &mut claimed);
                    break;
                }
            }
        }

        for t in self.ids() {
            if self.grel(t) == "fixed" && self.prel(t) == Some("compound") {
                emit(Category::FixedExpressions, vec![t], &mut claimed);
            }
        }

        for t in self.ids() {
            if CASE_LABELS.contains(&self.grel(t)) && self.prel(t) == Some("obl") {
                emit(Category::CaseRelations, vec![t], &mut claimed);
            }
        }

        for t in self.ids() {
            emit(Category::Other, vec![t], &mut claimed);
        }
    }
}
