//! Independent re-checks of search output. Everything here evaluates the
//! configuration through its expression trees and the coloring's lookup,
//! never through the search engine.

use indexmap::IndexMap;

use crate::coloring::Coloring;
use crate::config::{Configuration, Witness};
use crate::search::{Mode, RamseySetReport};

/// Why a search output was rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unsound output: {0}")]
pub struct Unsound(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, Unsound> {
    Err(Unsound(msg.into()))
}

pub fn check_witness(c: &Configuration, col: &Coloring, n: u64, w: &Witness) -> Result<(), Unsound> {
    if w.assignment.keys().ne(c.vars.iter()) {
        return fail("witness variables differ from the configuration's");
    }
    if w.block_colors.len() != c.blocks.len() {
        return fail("one block color per block expected");
    }
    for (v, &x) in &w.assignment {
        if x == 0 || x > n {
            return fail(format!("{v}={x} is outside [1..{n}]"));
        }
    }
    match c.holds_assignment(&w.assignment) {
        Ok(true) => {}
        Ok(false) => return fail("formula does not hold"),
        Err(e) => return fail(format!("formula cannot be evaluated: {e}")),
    }
    for (bi, block) in c.blocks.iter().enumerate() {
        for v in block {
            let color = col.color_of(w.assignment[v]).map_err(|e| Unsound(e.to_string()))?;
            if color != w.block_colors[bi] {
                return fail(format!("{v} has color {color}, block {bi} claims {}", w.block_colors[bi]));
            }
        }
    }
    Ok(())
}

pub fn check_ramsey_report(c: &Configuration, col: &Coloring, rep: &RamseySetReport) -> Result<(), Unsound> {
    let h = &rep.best_h;
    if h.len() != rep.size || h.windows(2).any(|p| p[0] >= p[1]) {
        return fail("best_H must be strictly increasing with size entries");
    }
    for &x in h {
        if col.color_of(x).ok() != Some(rep.home_color) {
            return fail(format!("{x} is not in the home color class"));
        }
    }
    let Some((rx, ry)) = &c.ramsey else { return fail("configuration has no ramsey pair") };
    let pairs: Vec<(u64, u64)> = h.iter().enumerate().flat_map(|(i, &a)| h[i + 1..].iter().map(move |&b| (a, b))).collect();
    if pairs.len() != rep.certificates.len() {
        return fail("one certificate per pair expected");
    }
    match (rep.mode, &rep.aux_colors) {
        (Mode::Uniform, None) => return fail("uniform reports carry auxiliary colors"),
        (Mode::PerPair, Some(_)) => return fail("per-pair reports carry no auxiliary colors"),
        _ => {}
    }
    for (&(a, b), w) in pairs.iter().zip(&rep.certificates) {
        check_witness(c, col, rep.n, w)?;
        if w.assignment[rx] != a || w.assignment[ry] != b {
            return fail(format!("certificate for ({a},{b}) substitutes other values"));
        }
        if w.block_colors[0] != rep.home_color {
            return fail("ramsey block must take the home color");
        }
        if let Some(aux) = &rep.aux_colors {
            for (&j, &color) in aux {
                if w.block_colors.get(j) != Some(&color) {
                    return fail(format!("block {j} deviates from the shared color {color}"));
                }
            }
        }
    }
    Ok(())
}

/// Outcome of an exhaustive check that may be too large to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checked {
    Verified,
    TooLarge,
}

/// Confirms that no assignment in `[1..n]` is a block-monochromatic witness,
/// by plain enumeration when at most `limit` assignments exist.
pub fn check_avoider(c: &Configuration, col: &Coloring, n: u64, limit: u64) -> Result<Checked, Unsound> {
    let k = c.vars.len() as u32;
    if (n as u128).checked_pow(k).is_none_or(|t| t > limit as u128) {
        return Ok(Checked::TooLarge);
    }
    let block_of = c.block_of();
    let mut vals = vec![1u64; c.vars.len()];
    loop {
        let mono = block_of.iter().enumerate().all(|(i, &b)| {
            let first = block_of.iter().position(|&bb| bb == b).expect("own block");
            col.color_of(vals[i]).ok() == col.color_of(vals[first]).ok()
        });
        if mono {
            let asg: IndexMap<String, u64> = c.vars.iter().cloned().zip(vals.iter().copied()).collect();
            if c.holds_assignment(&asg).unwrap_or(false) {
                return fail(format!("{asg:?} is a monochromatic witness"));
            }
        }
        let mut i = vals.len();
        loop {
            if i == 0 {
                return Ok(Checked::Verified);
            }
            i -= 1;
            if vals[i] < n {
                vals[i] += 1;
                break;
            }
            vals[i] = 1;
        }
    }
}
