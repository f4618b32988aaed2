use serde::Serialize;

use crate::conllu::Sentence;

/// Order-preserving token correspondence, by 1-based ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Alignment {
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_gold: Vec<usize>,
    pub unmatched_pred: Vec<usize>,
}

/// Identity when the form sequences agree, otherwise a longest common
/// subsequence over surface forms.
pub fn align_tokens(gold: &Sentence, pred: &Sentence) -> Alignment {
    let g: Vec<&str> = gold.forms().collect();
    let p: Vec<&str> = pred.forms().collect();
    if g == p {
        return Alignment {
            pairs: (1..=g.len()).map(|i| (i, i)).collect(),
            ..Alignment::default()
        };
    }

    let (n, m) = (g.len(), p.len());
    // lcs[i][j] = LCS length of g[i..] and p[j..]
    let mut lcs = vec![vec![0u32; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            lcs[i][j] = if g[i] == p[j] {
                lcs[i + 1][j + 1] + 1
            } else {
                lcs[i + 1][j].max(lcs[i][j + 1])
            };
        }
    }

    let mut out = Alignment::default();
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        if g[i] == p[j] {
            out.pairs.push((i + 1, j + 1));
            i += 1;
            j += 1;
        } else if lcs[i + 1][j] >= lcs[i][j + 1] {
            out.unmatched_gold.push(i + 1);
            i += 1;
        } else {
            out.unmatched_pred.push(j + 1);
            j += 1;
        }
    }
    out.unmatched_gold.extend(i + 1..=n);
    out.unmatched_pred.extend(j + 1..=m);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::Token;

    fn sent(forms: &[&str]) -> Sentence {
        Sentence::new(
            forms
                .iter()
                .enumerate()
                .map(|(i, f)| Token::new(i + 1, *f, "N", 0, "root"))
                .collect(),
        )
    }

    #[test]
    fn identity() {
        let a = align_tokens(&sent(&["a", "b", "c"]), &sent(&["a", "b", "c"]));
        assert_eq!(a.pairs, vec![(1, 1), (2, 2), (3, 3)]);
        assert!(a.unmatched_gold.is_empty() && a.unmatched_pred.is_empty());
    }

    #[test]
    fn deletion() {
        let a = align_tokens(&sent(&["a", "b", "c"]), &sent(&["a", "c"]));
        assert_eq!(a.pairs, vec![(1, 1), (3, 2)]);
        assert_eq!(a.unmatched_gold, vec![2]);
        assert!(a.unmatched_pred.is_empty());
    }

    #[test]
    fn disjoint() {
        let a = align_tokens(&sent(&["a", "b"]), &sent(&["c"]));
        assert!(a.pairs.is_empty());
        assert_eq!(a.unmatched_gold, vec![1, 2]);
        assert_eq!(a.unmatched_pred, vec![1]);
    }

    #[test]
    fn pairs_are_strictly_increasing() {
        let a = align_tokens(
            &sent(&["x", "a", "b", "a", "c", "b"]),
            &sent(&["a", "b", "c", "a", "b"]),
        );
        assert_eq!(a.pairs.len(), 4);
        for w in a.pairs.windows(2) {
            assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1);
        }
    }
}
