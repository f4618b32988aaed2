//! Corpus statistics: label and feature distributions, projectivity, depth.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::conllu::{build_tree, Treebank};
use crate::metrics::{percent_hundredths, render_hundredths};
use crate::validator::crossing_arcs;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub sentences: usize,
    pub tokens: usize,
    /// Sentences whose heads form a tree.
    pub well_formed: usize,
    pub projective: usize,
    /// Sum of per-sentence maximum depths over well-formed sentences.
    pub depth_total: usize,
    pub labels: BTreeMap<String, usize>,
    pub pos: BTreeMap<String, usize>,
    /// `Key=Value` -> tokens.
    pub feats: BTreeMap<String, usize>,
}

impl CorpusStats {
    pub fn projectivity_rate(&self) -> String {
        rate(self.projective, self.well_formed)
    }

    /// Mean maximum tree depth, two decimals.
    pub fn mean_depth(&self) -> String {
        if self.well_formed == 0 {
            return "0.00".to_owned();
        }
        let (num, den) = (self.depth_total as u64, self.well_formed as u64);
        render_hundredths((200 * num + den) / (2 * den))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("sentences\t{}\n", self.sentences));
        out.push_str(&format!("tokens\t{}\n", self.tokens));
        out.push_str(&format!("well_formed\t{}\n", self.well_formed));
        out.push_str(&format!("projectivity_rate\t{}\n", self.projectivity_rate()));
        out.push_str(&format!("mean_depth\t{}\n", self.mean_depth()));
        for (k, v) in &self.labels {
            out.push_str(&format!("label:{}\t{}\n", k, v));
        }
        for (k, v) in &self.pos {
            out.push_str(&format!("pos:{}\t{}\n", k, v));
        }
        for (k, v) in &self.feats {
            out.push_str(&format!("feat:{}\t{}\n", k, v));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("stats serialise");
        value["projectivity_rate"] = self.projectivity_rate().into();
        value["mean_depth"] = self.mean_depth().into();
        serde_json::to_string_pretty(&value).expect("stats serialise")
    }
}

fn rate(num: usize, den: usize) -> String {
    if den == 0 {
        return "100.00".to_owned();
    }
    render_hundredths(percent_hundredths(num as u64, den as u64))
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sentences          {}", self.sentences)?;
        writeln!(f, "tokens             {}", self.tokens)?;
        writeln!(f, "well-formed trees  {}", self.well_formed)?;
        writeln!(f, "projectivity rate  {}%", self.projectivity_rate())?;
        writeln!(f, "mean tree depth    {}", self.mean_depth())?;
        let sections = [("relations", &self.labels), ("POS", &self.pos), ("features", &self.feats)];
        for (name, map) in sections {
            writeln!(f, "\n{}:", name)?;
            let mut rows: Vec<_> = map.iter().collect();
            rows.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
            for (k, v) in rows {
                writeln!(f, "  {:<20} {}", k, v)?;
            }
        }
        Ok(())
    }
}

pub fn corpus_stats(tb: &Treebank) -> CorpusStats {
    let mut st = CorpusStats {
        sentences: tb.len(),
        ..CorpusStats::default()
    };
    for s in &tb.sentences {
        st.tokens += s.len();
        for t in &s.tokens {
            *st.labels.entry(t.deprel.clone()).or_insert(0) += 1;
            *st.pos.entry(t.pos.clone()).or_insert(0) += 1;
            for (k, v) in &t.feats {
                *st.feats.entry(format!("{}={}", k, v)).or_insert(0) += 1;
            }
        }
        if let Ok(tree) = build_tree(s) {
            st.well_formed += 1;
            st.depth_total += tree.max_depth();
            if crossing_arcs(&s.heads()).is_empty() {
                st.projective += 1;
            }
        }
    }
    st
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::{Sentence, Token};

    #[test]
    fn counts_and_rates() {
        let proj = Sentence::new(vec![
            Token::new(1, "U", "Pron", 2, "nsubj").with_feat("Case", "gen"),
            Token::new(2, "keldi", "V", 0, "root"),
        ]);
        let nonproj = Sentence::new(
            [3, 4, 0, 3]
                .iter()
                .enumerate()
                .map(|(i, &h)| Token::new(i + 1, "w", "N", h, if h == 0 { "root" } else { "nmod" }))
                .collect(),
        );
        let st = corpus_stats(&Treebank::new(vec![proj, nonproj]));
        assert_eq!(st.tokens, 6);
        assert_eq!(st.projectivity_rate(), "50.00");
        assert_eq!(st.feats["Case=GEN"], 1);
        assert_eq!(st.labels["root"], 2);
        // depths: 2 and 3 (root counts as depth 1)
        assert_eq!(st.depth_total, 5);
        assert_eq!(st.mean_depth(), "2.50");
    }
}
