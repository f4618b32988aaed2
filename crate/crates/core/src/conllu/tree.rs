use super::error::TreeError;
use super::sentence::Sentence;

/// Children-adjacency view of a well-formed dependency tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyTree {
    root: usize,
    /// `children[h]` lists the dependents of `h` in surface order; index 0 is
    /// the artificial root.
    children: Vec<Vec<usize>>,
}

impl DependencyTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.children.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn children(&self, head: usize) -> &[usize] {
        self.children.get(head).map_or(&[], Vec::as_slice)
    }

    /// Depth of every token (root = 1), indexed by id; index 0 is unused.
    pub fn depths(&self) -> Vec<usize> {
        let mut depths = vec![0; self.children.len()];
        let mut stack = vec![(self.root, 1)];
        while let Some((node, d)) = stack.pop() {
            depths[node] = d;
            stack.extend(self.children[node].iter().map(|&c| (c, d + 1)));
        }
        depths
    }

    pub fn max_depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }
}

pub fn build_tree(s: &Sentence) -> Result<DependencyTree, TreeError> {
    build_tree_from_heads(&s.heads())
}

/// Builds a tree from a head vector (`heads[i]` is the head of token `i + 1`).
///
/// Cycles are reported before the root count: a vector without any root
/// always contains a cycle, and the cycle is the more useful diagnosis.
pub fn build_tree_from_heads(heads: &[usize]) -> Result<DependencyTree, TreeError> {
    let n = heads.len();
    for (i, &h) in heads.iter().enumerate() {
        if h > n {
            return Err(TreeError::HeadOutOfRange {
                id: i + 1,
                head: h,
                len: n,
            });
        }
    }
    if let Some(cycle) = find_cycle(heads) {
        return Err(TreeError::Cycle(cycle));
    }
    let roots: Vec<usize> = (1..=n).filter(|&id| heads[id - 1] == 0).collect();
    if roots.len() != 1 {
        return Err(TreeError::RootCount(roots.len()));
    }
    let mut children = vec![Vec::new(); n + 1];
    for (i, &h) in heads.iter().enumerate() {
        children[h].push(i + 1);
    }
    Ok(DependencyTree {
        root: roots[0],
        children,
    })
}

/// Returns the ids on the first cycle found, in ascending order.
fn find_cycle(heads: &[usize]) -> Option<Vec<usize>> {
    let n = heads.len();
    // 0 = unvisited, otherwise the walk that first reached the node
    let mut walk = vec![0usize; n + 1];
    for start in 1..=n {
        if walk[start] != 0 {
            continue;
        }
        let mut cur = start;
        while cur != 0 && walk[cur] == 0 {
            walk[cur] = start;
            cur = heads[cur - 1];
        }
        if cur != 0 && walk[cur] == start {
            let mut cycle = vec![cur];
            let mut next = heads[cur - 1];
            while next != cur {
                cycle.push(next);
                next = heads[next - 1];
            }
            cycle.sort_unstable();
            return Some(cycle);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_keldi() {
        let tree = build_tree_from_heads(&[2, 0, 2]).unwrap();
        assert_eq!(tree.root(), 2);
        assert_eq!(tree.children(2), [1, 3]);
        assert_eq!(tree.max_depth(), 2);
    }

    #[test]
    fn single_token() {
        let tree = build_tree_from_heads(&[0]).unwrap();
        assert_eq!(tree.root(), 1);
        assert!(tree.children(1).is_empty());
    }

    #[test]
    fn two_cycle() {
        assert_eq!(build_tree_from_heads(&[2, 1]), Err(TreeError::Cycle(vec![1, 2])));
    }

    #[test]
    fn self_loop_is_a_cycle() {
        assert_eq!(build_tree_from_heads(&[0, 2]), Err(TreeError::Cycle(vec![2])));
    }

    #[test]
    fn root_counts() {
        assert_eq!(build_tree_from_heads(&[0, 0]), Err(TreeError::RootCount(2)));
        assert_eq!(build_tree_from_heads(&[]), Err(TreeError::RootCount(0)));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            build_tree_from_heads(&[0, 7]),
            Err(TreeError::HeadOutOfRange { id: 2, head: 7, len: 2 })
        ));
    }

    /// Reachability oracle: every token reaches 0 in at most n steps, and
    /// exactly one token has head 0.
    fn oracle(heads: &[usize]) -> bool {
        let n = heads.len();
        let roots = heads.iter().filter(|&&h| h == 0).count();
        let all_reach = (1..=n).all(|start| {
            let mut cur = start;
            for _ in 0..=n {
                if cur == 0 {
                    return true;
                }
                cur = heads[cur - 1];
            }
            cur == 0
        });
        roots == 1 && all_reach
    }

    #[test]
    fn agrees_with_reachability_oracle_up_to_five_tokens() {
        let mut checked = 0;
        for n in 1..=5usize {
            let total = (n + 1).pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let heads: Vec<usize> = (0..n)
                    .map(|_| {
                        let h = c % (n + 1);
                        c /= n + 1;
                        h
                    })
                    .collect();
                assert_eq!(
                    build_tree_from_heads(&heads).is_ok(),
                    oracle(&heads),
                    "heads {heads:?}"
                );
                checked += 1;
            }
        }
        assert_eq!(checked, 2 + 9 + 64 + 625 + 7776);
    }
}
