//! Brute-force oracles used by several test binaries. They go through the
//! formula evaluator only, never through the search engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexMap;
use num_bigint::BigInt;
use rpr_core::coloring::Coloring;
use rpr_core::config::Configuration;

/// Every solution with all values in `[1..n]`, in the configuration's
/// variable order.
pub fn solutions(c: &Configuration, n: u64) -> Vec<Vec<u64>> {
    let k = c.vars.len();
    let mut out = Vec::new();
    let mut vals = vec![1u64; k];
    loop {
        let a: IndexMap<String, u64> = c.vars.iter().cloned().zip(vals.iter().copied()).collect();
        if c.holds_assignment(&a).unwrap_or(false) {
            out.push(vals.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
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

/// Variable indices of each block.
pub fn block_members(c: &Configuration) -> Vec<Vec<usize>> {
    c.blocks.iter().map(|b| b.iter().map(|v| c.var_index(v).unwrap()).collect()).collect()
}

/// The color shared by every variable of the block, if there is one.
fn block_color(table: &[u32], members: &[usize], s: &[u64]) -> Option<u32> {
    let first = table[s[members[0]] as usize - 1];
    members.iter().all(|&i| table[s[i] as usize - 1] == first).then_some(first)
}

/// Whether some solution has every block monochromatic.
pub fn has_block_mono(blocks: &[Vec<usize>], sols: &[Vec<u64>], table: &[u32]) -> bool {
    sols.iter().any(|s| s.iter().all(|&v| (v as usize) <= table.len()) && blocks.iter().all(|b| block_color(table, b, s).is_some()))
}

/// Least `N <= n_max` at which every 2-coloring of `[1..N]` contains a
/// block-monochromatic solution, by listing all `2^N` colorings.
pub fn forcing_by_enumeration(c: &Configuration, n_max: u64) -> Option<u64> {
    let blocks = block_members(c);
    let all = solutions(c, n_max);
    for n in 1..=n_max {
        let sols: Vec<Vec<u64>> = all.iter().filter(|s| s.iter().all(|&v| v <= n)).cloned().collect();
        let escapes = (0u64..1 << n).any(|mask| {
            let table: Vec<u32> = (0..n).map(|i| (mask >> i & 1) as u32).collect();
            !has_block_mono(&blocks, &sols, &table)
        });
        if !escapes {
            return Some(n);
        }
    }
    None
}

/// Result of the subset oracle: size, lexicographically least best set,
/// its home color and (Uniform) auxiliary colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteRamsey {
    pub size: usize,
    pub best: Vec<u64>,
    pub home: u32,
    pub aux: Option<BTreeMap<usize, u32>>,
    pub h_cap: u64,
}

/// Solutions indexed by their Ramsey pair values.
pub struct PairIndex {
    by_pair: HashMap<(u64, u64), Vec<Vec<u64>>>,
    blocks: Vec<Vec<usize>>,
}

impl PairIndex {
    pub fn new(c: &Configuration, sols: &[Vec<u64>]) -> PairIndex {
        let (x, y) = c.ramsey.as_ref().unwrap();
        let (xi, yi) = (c.var_index(x).unwrap(), c.var_index(y).unwrap());
        let mut by_pair: HashMap<(u64, u64), Vec<Vec<u64>>> = HashMap::new();
        for s in sols {
            by_pair.entry((s[xi], s[yi])).or_default().push(s.clone());
        }
        PairIndex { by_pair, blocks: block_members(c) }
    }

    fn within(&self, a: u64, b: u64, n: u64) -> impl Iterator<Item = &Vec<u64>> {
        self.by_pair.get(&(a, b)).into_iter().flatten().filter(move |s| s.iter().all(|&v| v <= n))
    }

    /// Largest `h` with a solution through `(h-1, h)` inside `[1..n]`.
    pub fn h_cap(&self, n: u64) -> u64 {
        (2..=n).rev().find(|&h| self.within(h - 1, h, n).next().is_some()).unwrap_or(0)
    }

    /// Whether the pair `(a, b)` is certified: block 0 in `home`, block `j`
    /// in `aux[j-1]`, or any single color per block when `aux` is `None`.
    pub fn good(&self, table: &[u32], n: u64, home: u32, aux: Option<&[u32]>, a: u64, b: u64) -> bool {
        self.within(a, b, n).any(|s| {
            self.blocks.iter().enumerate().all(|(j, members)| match (j, block_color(table, members, s)) {
                (_, None) => false,
                (0, Some(col)) => col == home,
                (j, Some(col)) => aux.is_none_or(|aux| aux[j - 1] == col),
            })
        })
    }
}

/// Largest, then lexicographically least, clique by listing every clique.
fn best_clique(vertices: &[u64], edge: &dyn Fn(u64, u64) -> bool) -> Vec<u64> {
    fn grow(
        vertices: &[u64],
        from: usize,
        current: &mut Vec<u64>,
        best: &mut Vec<u64>,
        edge: &dyn Fn(u64, u64) -> bool,
    ) {
        if current.len() > best.len() || (current.len() == best.len() && *current < *best) {
            *best = current.clone();
        }
        for i in from..vertices.len() {
            let v = vertices[i];
            if current.iter().all(|&u| edge(u, v)) {
                current.push(v);
                grow(vertices, i + 1, current, best, edge);
                current.pop();
            }
        }
    }
    let mut best = Vec::new();
    grow(vertices, 0, &mut Vec::new(), &mut best, edge);
    best
}

fn aux_tuples(r: u32, len: usize) -> Vec<Vec<u32>> {
    (0..(r as u64).pow(len as u32))
        .map(|mut code| {
            let mut t = vec![0; len];
            for slot in t.iter_mut().rev() {
                *slot = (code % r as u64) as u32;
                code /= r as u64;
            }
            t
        })
        .collect()
}

/// Maximum finite Ramsey set by exhaustive clique listing over every home
/// color and, in Uniform mode, every auxiliary color tuple.
pub fn brute_ramsey(index: &PairIndex, col: &Coloring, n: u64, uniform: bool) -> BruteRamsey {
    let table = col.table();
    let cap = index.h_cap(n);
    let r = col.num_colors();
    let mut best: Option<BruteRamsey> = None;
    for home in 0..r {
        let auxes: Vec<Option<Vec<u32>>> = if uniform {
            aux_tuples(r, index.blocks.len() - 1).into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for aux in auxes {
            let vertices: Vec<u64> = (1..=cap).filter(|&h| table[h as usize - 1] == home).collect();
            let edge = |a: u64, b: u64| index.good(table, n, home, aux.as_deref(), a, b);
            let clique = best_clique(&vertices, &edge);
            let better = best.as_ref().is_none_or(|b| clique.len() > b.size || (clique.len() == b.size && clique < b.best));
            if better {
                best = Some(BruteRamsey {
                    size: clique.len(),
                    best: clique,
                    home,
                    aux: aux.map(|t| t.into_iter().enumerate().map(|(j, c)| (j + 1, c)).collect()),
                    h_cap: cap,
                });
            }
        }
    }
    best.unwrap()
}

/// Fixed test set of colorings of `[1..n]`, at most three colors each.
pub fn twelve_colorings(n: u64) -> Vec<(String, Coloring)> {
    [
        "mono",
        "parity",
        "random:0:2",
        "random:1:2",
        "random:2:2",
        "random:3:3",
        "random:4:3",
        "inv:res(3)",
        "inv:vp(2,2)",
        "inv:lm(2,2)",
        "inv:smod(3)",
        "inv:postmod(tuple(lm(2,2),smod(3)),3)",
    ]
    .iter()
    .map(|s| (s.to_string(), Coloring::from_spec(s, n).unwrap()))
    .collect()
}

/// Horner evaluation, constant term first.
fn eval(coeffs: &[i64], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::from(0), |acc, &c| acc * x + c)
}

/// Largest `s` with `lq s^d <= lp b^d`, by bisection.
fn root(lp: i64, lq: i64, d: u32, b: u64) -> BigInt {
    let target = BigInt::from(lp) * BigInt::from(b).pow(d);
    let (mut lo, mut hi) = (BigInt::from(0), BigInt::from(b) * (lp / lq + 2) + 2);
    while &lo + 1 < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        if BigInt::from(lq) * mid.pow(d) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `Q(s - n) <= P(b) <= Q(s + n)` with `s` the scaled root of `b`.
pub fn sandwich_holds(p: &[i64], q: &[i64], b: u64, n: u64) -> bool {
    let d = (p.len() - 1) as u32;
    let s = root(*p.last().unwrap(), *q.last().unwrap(), d, b);
    let pb = eval(p, &BigInt::from(b));
    let n = BigInt::from(n);
    eval(q, &(&s - &n)) <= pb && pb <= eval(q, &(&s + &n))
}
