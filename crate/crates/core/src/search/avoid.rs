//! Avoidance backtracking: colorings of `[1..N]` with no block-monochromatic
//! witness, and the least `N` at which none exist.

use std::collections::BTreeSet;

use super::compiled::Compiled;
use super::solver::{BlockRule, Budget, Plan};
use super::SearchError;
use crate::coloring::Coloring;
use crate::config::Configuration;

/// Every solution in `[1..n]`, as per-block sets of values, grouped by the
/// largest value involved.
struct Obstructions {
    by_max: Vec<Vec<Vec<Vec<u64>>>>,
}

impl Obstructions {
    fn new(c: &Configuration, n: u64, budget: &mut Budget) -> Result<Self, SearchError> {
        let compiled = Compiled::new(c);
        let plan = Plan::new(&compiled, &[], &[]);
        let rules = vec![BlockRule::Free; c.blocks.len()];
        let block_of = c.block_of();
        let mut seen = BTreeSet::new();
        plan.for_each(n, None, &rules, &[], budget, &mut |vals| {
            let mut sets = vec![BTreeSet::new(); c.blocks.len()];
            for (i, &v) in vals.iter().enumerate() {
                sets[block_of[i]].insert(v);
            }
            let sets: Vec<Vec<u64>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
            seen.insert(sets);
            true
        })?;
        let mut by_max = vec![Vec::new(); n as usize + 1];
        for sets in seen {
            let m = sets.iter().flatten().copied().max().unwrap_or(0);
            by_max[m as usize].push(sets);
        }
        Ok(Obstructions { by_max })
    }

    /// True when assigning the last entry of `colors` completes a
    /// block-monochromatic solution.
    fn violated(&self, colors: &[u32]) -> bool {
        let col = |v: u64| colors[v as usize - 1];
        self.by_max[colors.len()]
            .iter()
            .any(|sets| sets.iter().all(|s| s.iter().all(|&v| col(v) == col(s[0]))))
    }
}

/// Depth-first canonical search. Returns the longest avoiding prefix
/// length, and the first full-length avoider if one exists.
fn explore(
    obs: &Obstructions,
    r: u32,
    n: u64,
    budget: &mut Budget,
) -> Result<(u64, Option<Vec<u32>>), SearchError> {
    let mut colors: Vec<u32> = Vec::with_capacity(n as usize);
    // Per depth: next color to try and the number of colors used below.
    let mut next: Vec<u32> = vec![0];
    let mut used: Vec<u32> = vec![0];
    let mut deepest = 0u64;
    while let Some(&c) = next.last() {
        let depth = colors.len();
        let limit = (used[depth] + 1).min(r);
        if c >= limit || (depth == 0 && c > 0) {
            next.pop();
            used.pop();
            if colors.pop().is_none() {
                break;
            }
            continue;
        }
        *next.last_mut().unwrap() = c + 1;
        budget.tick()?;
        colors.push(c);
        if obs.violated(&colors) {
            colors.pop();
            continue;
        }
        deepest = deepest.max(colors.len() as u64);
        if colors.len() as u64 == n {
            return Ok((deepest, Some(colors)));
        }
        used.push(used[depth].max(c + 1));
        next.push(0);
    }
    Ok((deepest, None))
}

fn check_r(r: u32) -> Result<(), SearchError> {
    if r == 0 {
        return Err(SearchError::Precondition("at least one color is required".into()));
    }
    Ok(())
}

/// Least `N <= n_max` such that every `r`-coloring of `[1..N]` has a
/// block-monochromatic witness in `[1..N]`.
pub fn forcing_number(
    c: &Configuration,
    r: u32,
    n_max: u64,
    budget: &mut Budget,
) -> Result<Option<u64>, SearchError> {
    check_r(r)?;
    let obs = Obstructions::new(c, n_max, budget)?;
    let (deepest, full) = explore(&obs, r, n_max, budget)?;
    Ok(if full.is_some() { None } else { Some(deepest + 1) })
}

/// Lexicographically least canonical `r`-coloring of `[1..n]` avoiding
/// every block-monochromatic witness.
pub fn avoiding_coloring(
    c: &Configuration,
    r: u32,
    n: u64,
    budget: &mut Budget,
) -> Result<Option<Coloring>, SearchError> {
    check_r(r)?;
    if n == 0 {
        return Err(SearchError::Precondition("the bound must be positive".into()));
    }
    let obs = Obstructions::new(c, n, budget)?;
    let (_, full) = explore(&obs, r, n, budget)?;
    full.map(|t| Coloring::explicit(t, Some(r)).map_err(SearchError::from)).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::catalog_entry;

    #[test]
    fn schur_two_colors() {
        let c = catalog_entry("schur-classical").unwrap();
        assert_eq!(forcing_number(&c, 2, 10, &mut Budget::unlimited()).unwrap(), Some(5));
        let a = avoiding_coloring(&c, 2, 4, &mut Budget::unlimited()).unwrap().unwrap();
        assert_eq!(a.table(), &[0, 1, 1, 0]);
        assert!(avoiding_coloring(&c, 2, 5, &mut Budget::unlimited()).unwrap().is_none());
    }

    #[test]
    fn one_color_cannot_avoid() {
        let c = catalog_entry("schur-classical").unwrap();
        assert_eq!(forcing_number(&c, 1, 10, &mut Budget::unlimited()).unwrap(), Some(2));
        assert!(avoiding_coloring(&c, 1, 2, &mut Budget::unlimited()).unwrap().is_none());
        assert!(avoiding_coloring(&c, 1, 1, &mut Budget::unlimited()).unwrap().is_some());
    }

    #[test]
    fn absent_when_bound_too_small() {
        let c = catalog_entry("schur-classical").unwrap();
        assert_eq!(forcing_number(&c, 2, 4, &mut Budget::unlimited()).unwrap(), None);
    }
}
