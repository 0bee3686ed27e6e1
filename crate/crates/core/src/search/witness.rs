use indexmap::IndexMap;

use super::compiled::Compiled;
use super::solver::{BlockRule, Budget, Palette, Plan};
use super::SearchError;
use crate::coloring::Coloring;
use crate::config::{Configuration, Witness};

pub(crate) fn make_witness(c: &Configuration, col: &Coloring, vals: &[u64]) -> Witness {
    let block_of = c.block_of();
    let mut block_colors = vec![0; c.blocks.len()];
    for (i, &v) in vals.iter().enumerate() {
        block_colors[block_of[i]] = col.table()[v as usize - 1];
    }
    Witness {
        assignment: c.vars.iter().cloned().zip(vals.iter().copied()).collect::<IndexMap<_, _>>(),
        block_colors,
    }
}

pub(crate) fn check_cover(col: &Coloring, n: u64) -> Result<(), SearchError> {
    if col.bound() < n {
        return Err(SearchError::Precondition(format!(
            "coloring covers [1..{}] but the bound is {n}",
            col.bound()
        )));
    }
    Ok(())
}

/// Lexicographically least witness with every value in `[1..n]` and each
/// block monochromatic.
pub fn find_witness(
    c: &Configuration,
    col: &Coloring,
    n: u64,
    budget: &mut Budget,
) -> Result<Option<Witness>, SearchError> {
    asymmetric_witness(c, col, n, &[], budget)
}

/// [`find_witness`] with extra constraints `value(a) > factor * value(b)`.
pub fn asymmetric_witness(
    c: &Configuration,
    col: &Coloring,
    n: u64,
    ratios: &[(String, String, u64)],
    budget: &mut Budget,
) -> Result<Option<Witness>, SearchError> {
    check_cover(col, n)?;
    let idx = |v: &str| {
        c.var_index(v)
            .ok_or_else(|| SearchError::Precondition(format!("ratio mentions unknown variable `{v}`")))
    };
    let ratios = ratios
        .iter()
        .map(|(a, b, f)| Ok((idx(a)?, idx(b)?, *f)))
        .collect::<Result<Vec<_>, SearchError>>()?;
    let compiled = Compiled::new(c);
    let plan = Plan::new(&compiled, &[], &ratios);
    let palette = Palette::new(col.table(), col.num_colors());
    let rules = vec![BlockRule::Free; c.blocks.len()];
    let found = plan.first(n, Some(&palette), &rules, &[], budget)?;
    Ok(found.map(|vals| make_witness(c, col, &vals)))
}
