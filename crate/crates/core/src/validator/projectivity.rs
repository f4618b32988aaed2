use std::collections::BTreeSet;

use crate::conllu::{build_tree, Sentence, TreeError};

/// A head-to-dependent arc between two words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub head: usize,
    pub dep: usize,
}

impl Arc {
    pub fn span(self) -> (usize, usize) {
        (self.head.min(self.dep), self.head.max(self.dep))
    }
}

/// Every pair of crossing arcs in a well-formed tree.
///
/// Arcs from the artificial root are not drawn and never cross anything.
pub fn check_projectivity(s: &Sentence) -> Result<Vec<(Arc, Arc)>, TreeError> {
    build_tree(s)?;
    Ok(crossing_arcs(&s.heads()))
}

/// Crossing pairs for an arbitrary head vector (`heads[i]` heads token
/// `i + 1`). Heads outside the sentence are ignored.
///
/// For each arc, looks at the arcs incident to the positions strictly inside
/// its span; one whose far endpoint lies strictly outside the span crosses
/// it. Pairs are ordered by dependent id.
pub fn crossing_arcs(heads: &[usize]) -> Vec<(Arc, Arc)> {
    let n = heads.len();
    let arcs: Vec<Arc> = heads
        .iter()
        .enumerate()
        .filter(|&(i, &h)| h != 0 && h <= n && h != i + 1)
        .map(|(i, &h)| Arc { head: h, dep: i + 1 })
        .collect();

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (k, a) in arcs.iter().enumerate() {
        incident[a.head].push(k);
        incident[a.dep].push(k);
    }

    let mut pairs = BTreeSet::new();
    for (k, a) in arcs.iter().enumerate() {
        let (l, r) = a.span();
        for (p, inside) in incident.iter().enumerate().take(r).skip(l + 1) {
            for &m in inside {
                let b = arcs[m];
                let far = if b.head == p { b.dep } else { b.head };
                if far < l || far > r {
                    pairs.insert((k.min(m), k.max(m)));
                }
            }
        }
    }
    pairs.into_iter().map(|(i, j)| (arcs[i], arcs[j])).collect()
}
