//! Bounded backtracking over variable assignments.
//!
//! Variables are assigned in declaration order with ascending candidate
//! values, so the first solution of a conjunction is its lexicographically
//! least one. An equation that is linear in the current variable and whose
//! other variables are already assigned is solved for it directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::compiled::{CAtom, Compiled, Diff};
use super::SearchError;

/// Node counter with an optional hard limit.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(None)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), SearchError> {
        self.used += 1;
        match self.limit {
            Some(l) if self.used > l => Err(SearchError::BudgetExceeded { nodes: self.used }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BlockRule {
    /// Monochromatic in a color of the search's choosing.
    Free,
    Fixed(u32),
}

/// Colors of `[1..len]`, plus optional per-color member lists used to
/// enumerate only values of the required color.
pub(crate) struct Palette<'a> {
    pub colors: &'a [u32],
    classes: Option<Vec<Vec<u64>>>,
}

impl<'a> Palette<'a> {
    pub(crate) fn new(colors: &'a [u32], num_colors: u32) -> Self {
        let mut classes = vec![Vec::new(); num_colors as usize];
        for (i, &c) in colors.iter().enumerate() {
            classes[c as usize].push(i as u64 + 1);
        }
        Palette { colors, classes: Some(classes) }
    }

    #[inline]
    fn color(&self, n: u64) -> Option<u32> {
        self.colors.get((n as usize).wrapping_sub(1)).copied()
    }
}

/// Precomputed traversal for a fixed set of pre-assigned variables.
pub(crate) struct Plan<'c> {
    compiled: &'c Compiled,
    fixed: Vec<usize>,
    order: Vec<usize>,
    /// Per conjunction: atoms to check once `order[pos]` is assigned, and
    /// atoms fully determined by the fixed variables.
    check_at: Vec<Vec<Vec<usize>>>,
    check_first: Vec<Vec<usize>>,
    /// `(i, j, f)`: value(i) > f * value(j), checked at position.
    ratios_at: Vec<Vec<(usize, usize, u64)>>,
    ratios_first: Vec<(usize, usize, u64)>,
}

impl<'c> Plan<'c> {
    pub(crate) fn new(compiled: &'c Compiled, fixed: &[usize], ratios: &[(usize, usize, u64)]) -> Self {
        let order: Vec<usize> = (0..compiled.nvars).filter(|v| !fixed.contains(v)).collect();
        let pos_of = |mask: u64| -> Option<usize> {
            order.iter().rposition(|&v| mask >> v & 1 == 1)
        };
        let mut check_at = Vec::new();
        let mut check_first = Vec::new();
        for conj in &compiled.conjs {
            let mut at = vec![Vec::new(); order.len()];
            let mut first = Vec::new();
            for (k, a) in conj.iter().enumerate() {
                match pos_of(a.mask) {
                    Some(p) => at[p].push(k),
                    None => first.push(k),
                }
            }
            check_at.push(at);
            check_first.push(first);
        }
        let mut ratios_at = vec![Vec::new(); order.len()];
        let mut ratios_first = Vec::new();
        for &r in ratios {
            match pos_of(1 << r.0 | 1 << r.1) {
                Some(p) => ratios_at[p].push(r),
                None => ratios_first.push(r),
            }
        }
        Plan { compiled, fixed: fixed.to_vec(), order, check_at, check_first, ratios_at, ratios_first }
    }

    /// Lexicographically least solution over all conjunctions.
    pub(crate) fn first(
        &self,
        bound: u64,
        palette: Option<&Palette>,
        blocks: &[BlockRule],
        fixed_vals: &[u64],
        budget: &mut Budget,
    ) -> Result<Option<Vec<u64>>, SearchError> {
        let mut best: Option<Vec<u64>> = None;
        for ci in 0..self.compiled.conjs.len() {
            let mut found = None;
            self.run(ci, bound, palette, blocks, fixed_vals, budget, &mut |vals| {
                found = Some(vals.to_vec());
                false
            })?;
            if let Some(f) = found {
                if best.as_ref().is_none_or(|b| f < *b) {
                    best = Some(f);
                }
            }
        }
        Ok(best)
    }

    /// Visits every solution of every conjunction; a solution satisfying
    /// several conjunctions is visited once per conjunction.
    pub(crate) fn for_each(
        &self,
        bound: u64,
        palette: Option<&Palette>,
        blocks: &[BlockRule],
        fixed_vals: &[u64],
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> Result<(), SearchError> {
        for ci in 0..self.compiled.conjs.len() {
            if !self.run(ci, bound, palette, blocks, fixed_vals, budget, visit)? {
                break;
            }
        }
        Ok(())
    }

    /// Returns false if `visit` asked to stop.
    #[allow(clippy::too_many_arguments)]
    fn run(
        &self,
        ci: usize,
        bound: u64,
        palette: Option<&Palette>,
        blocks: &[BlockRule],
        fixed_vals: &[u64],
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> Result<bool, SearchError> {
        let c = self.compiled;
        let mut st = State { vals: [0; 64], assigned: 0, block_color: [None; 64] };
        for (&v, &x) in self.fixed.iter().zip(fixed_vals) {
            if x == 0 || x > bound {
                return Ok(true);
            }
            if let Some(p) = palette {
                let Some(col) = p.color(x) else { return Ok(true) };
                if !st.admit_color(c.block_of[v], col, blocks) {
                    return Ok(true);
                }
            }
            st.vals[v] = x;
            st.assigned |= 1 << v;
        }
        let conj = &c.conjs[ci];
        for &k in &self.check_first[ci] {
            if !conj[k].holds(&st.vals)? {
                return Ok(true);
            }
        }
        if !ratios_ok(&self.ratios_first, &st.vals) {
            return Ok(true);
        }
        let mut dfs = Dfs { plan: self, ci, conj, bound, palette, blocks, budget, visit };
        dfs.go(0, &mut st)
    }
}

fn ratios_ok(rs: &[(usize, usize, u64)], vals: &[u64]) -> bool {
    rs.iter().all(|&(i, j, f)| (vals[i] as u128) > f as u128 * vals[j] as u128)
}

/// Fixed-size buffers: configurations have at most 64 variables.
struct State {
    vals: [u64; 64],
    assigned: u64,
    block_color: [Option<u32>; 64],
}

impl State {
    fn admit_color(&mut self, block: usize, col: u32, rules: &[BlockRule]) -> bool {
        if let BlockRule::Fixed(f) = rules[block] {
            if f != col {
                return false;
            }
        }
        match self.block_color[block] {
            Some(b) => b == col,
            None => {
                self.block_color[block] = Some(col);
                true
            }
        }
    }
}

struct Dfs<'a, 'p> {
    plan: &'a Plan<'p>,
    ci: usize,
    conj: &'a [CAtom],
    bound: u64,
    palette: Option<&'a Palette<'a>>,
    blocks: &'a [BlockRule],
    budget: &'a mut Budget,
    visit: &'a mut dyn FnMut(&[u64]) -> bool,
}

enum Candidates {
    None,
    One(u64),
    All,
}

impl Dfs<'_, '_> {
    fn go(&mut self, pos: usize, st: &mut State) -> Result<bool, SearchError> {
        if pos == self.plan.order.len() {
            return Ok((self.visit)(&st.vals[..self.plan.compiled.nvars]));
        }
        let v = self.plan.order[pos];
        let block = self.plan.compiled.block_of[v];
        match self.candidates(v, st)? {
            Candidates::None => Ok(true),
            Candidates::One(x) => self.try_value(pos, v, block, x, st),
            Candidates::All => {
                let required = match self.blocks.get(block) {
                    Some(BlockRule::Fixed(f)) if self.palette.is_some() => Some(*f),
                    _ => st.block_color[block],
                };
                let class = match (self.palette, required) {
                    (Some(p), Some(col)) => p.classes.as_ref().map(|cl| &cl[col as usize]),
                    _ => None,
                };
                if let Some(class) = class {
                    let bound = self.bound;
                    for &x in class.iter().take_while(|&&x| x <= bound) {
                        if !self.try_value(pos, v, block, x, st)? {
                            return Ok(false);
                        }
                    }
                } else {
                    for x in 1..=self.bound {
                        if !self.try_value(pos, v, block, x, st)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
        }
    }

    fn try_value(&mut self, pos: usize, v: usize, block: usize, x: u64, st: &mut State) -> Result<bool, SearchError> {
        self.budget.tick()?;
        let saved_color = st.block_color[block];
        if let Some(p) = self.palette {
            let Some(col) = p.color(x) else { return Ok(true) };
            if !st.admit_color(block, col, self.blocks) {
                st.block_color[block] = saved_color;
                return Ok(true);
            }
        }
        st.vals[v] = x;
        st.assigned |= 1 << v;
        let mut ok = ratios_ok(&self.plan.ratios_at[pos], &st.vals);
        if ok {
            for &k in &self.plan.check_at[self.ci][pos] {
                if !self.conj[k].holds(&st.vals)? {
                    ok = false;
                    break;
                }
            }
        }
        let cont = if ok { self.go(pos + 1, st)? } else { true };
        st.assigned &= !(1 << v);
        st.vals[v] = 0;
        st.block_color[block] = saved_color;
        Ok(cont)
    }

    fn candidates(&self, v: usize, st: &mut State) -> Result<Candidates, SearchError> {
        let others_done = |a: &CAtom| a.mask & !st.assigned & !(1u64 << v) == 0;
        for a in self.conj {
            if a.kind != crate::config::AtomKind::Eq || a.mask >> v & 1 == 0 || !a.linear_in[v] || !others_done(a) {
                continue;
            }
            st.vals[v] = 0;
            let d0 = a.diff(&st.vals)?;
            st.vals[v] = 1;
            let d1 = a.diff(&st.vals)?;
            st.vals[v] = 0;
            // D(v) = d0 + (d1 - d0) v
            let root = match (d0, d1) {
                (Diff::Small(d0), Diff::Small(d1)) => match d1.checked_sub(d0) {
                    Some(0) if d0 == 0 => continue,
                    Some(0) => return Ok(Candidates::None),
                    Some(c) => {
                        if d0 % c != 0 {
                            return Ok(Candidates::None);
                        }
                        d0.checked_div(c).and_then(i128::checked_neg).and_then(|q| q.to_u64())
                    }
                    None => match big_root(&BigInt::from(d0), &BigInt::from(d1)) {
                        Some(r) => r,
                        None => continue,
                    },
                },
                (d0, d1) => match big_root(&d0.to_big(), &d1.to_big()) {
                    Some(r) => r,
                    None => continue,
                },
            };
            return Ok(match root {
                Some(x) if x >= 1 && x <= self.bound => Candidates::One(x),
                _ => Candidates::None,
            });
        }
        Ok(Candidates::All)
    }
}

/// Nonnegative integer root of `d0 + (d1 - d0) v`. `None` when the
/// function vanishes identically, `Some(None)` when no root qualifies.
fn big_root(d0: &BigInt, d1: &BigInt) -> Option<Option<u64>> {
    let c = d1 - d0;
    if c.is_zero() {
        return if d0.is_zero() { None } else { Some(None) };
    }
    let (q, r) = (-d0).div_rem(&c);
    Some(if r.is_zero() { q.to_u64() } else { None })
}
