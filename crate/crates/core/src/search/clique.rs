//! Branch-and-bound maximum clique over bitset adjacency.
//!
//! Candidates are tried in ascending order with inclusion first, and the
//! incumbent only changes on a strictly larger clique, so the result is the
//! lexicographically least maximum clique.

use super::solver::Budget;
use super::SearchError;

struct Bb<'a> {
    adj: &'a [Vec<u64>],
    best: Vec<usize>,
    target: Option<usize>,
    budget: &'a mut Budget,
}

fn first_one(set: &[u64]) -> Option<usize> {
    set.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

impl Bb<'_> {
    /// Number of color classes in a greedy sequential coloring of `set`.
    fn color_bound(&self, set: &[u64]) -> usize {
        let mut left = set.to_vec();
        let mut classes = 0;
        while left.iter().any(|&w| w != 0) {
            classes += 1;
            let mut avail = left.clone();
            while let Some(v) = first_one(&avail) {
                left[v / 64] &= !(1 << (v % 64));
                avail[v / 64] &= !(1 << (v % 64));
                for (a, n) in avail.iter_mut().zip(&self.adj[v]) {
                    *a &= !n;
                }
            }
        }
        classes
    }

    fn done(&self) -> bool {
        self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Vec<u64>) -> Result<(), SearchError> {
        self.budget.tick()?;
        if current.len() > self.best.len() {
            self.best = current.clone();
            if self.done() {
                return Ok(());
            }
        }
        while let Some(v) = first_one(&cand) {
            let size = current.len();
            if size + count(&cand) <= self.best.len() || size + self.color_bound(&cand) <= self.best.len() {
                return Ok(());
            }
            cand[v / 64] &= !(1 << (v % 64));
            let next: Vec<u64> = cand.iter().zip(&self.adj[v]).map(|(c, n)| c & n).collect();
            current.push(v);
            let r = self.expand(current, next);
            current.pop();
            r?;
            if self.done() {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Lexicographically least maximum clique of the graph on `0..adj.len()`.
/// With `target`, stops as soon as a clique of that size is found. On
/// budget exhaustion returns the best clique so far and `false`.
pub fn max_clique(adj: &[Vec<u64>], target: Option<usize>, budget: &mut Budget) -> (Vec<usize>, bool) {
    let n = adj.len();
    let mut all = vec![0u64; n.div_ceil(64)];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut bb = Bb { adj, best: Vec::new(), target, budget };
    let ok = bb.expand(&mut Vec::new(), all).is_ok();
    (bb.best, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u64>> {
        let mut adj = vec![vec![0u64; n.div_ceil(64)]; n];
        for &(a, b) in edges {
            adj[a][b / 64] |= 1 << (b % 64);
            adj[b][a / 64] |= 1 << (a % 64);
        }
        adj
    }

    #[test]
    fn picks_lex_least_among_maximum() {
        // two triangles {1,2,3} and {0,4,5}
        let g = graph(6, &[(1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5)]);
        assert_eq!(max_clique(&g, None, &mut Budget::unlimited()).0, vec![0, 4, 5]);
    }

    #[test]
    fn empty_and_edgeless() {
        assert_eq!(max_clique(&[], None, &mut Budget::unlimited()).0, Vec::<usize>::new());
        assert_eq!(max_clique(&graph(3, &[]), None, &mut Budget::unlimited()).0, vec![0]);
    }

    #[test]
    fn budget_returns_partial() {
        let n = 40;
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|(a, b)| (a + b) % 3 != 0).collect();
        let (best, done) = max_clique(&graph(n, &edges), None, &mut Budget::new(Some(5)));
        assert!(!done);
        assert!(best.len() <= n);
    }
}
