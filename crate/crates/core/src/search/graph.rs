//! Good-pair graphs: which pairs of one color class admit a witness with
//! the Ramsey pair substituted.

use serde::{Deserialize, Serialize};

use super::compiled::Compiled;
use super::solver::{BlockRule, Budget, Palette, Plan};
use super::witness::{check_cover, make_witness};
use super::SearchError;
use crate::coloring::Coloring;
use crate::config::{Configuration, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One color per auxiliary block, shared by every pair.
    Uniform,
    /// Each pair picks its own auxiliary colors.
    PerPair,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" => Ok(Mode::Uniform),
            "perpair" | "per-pair" | "per_pair" => Ok(Mode::PerPair),
            _ => Err(format!("unknown mode `{s}` (expected uniform or perpair)")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Uniform => "uniform",
            Mode::PerPair => "perpair",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: u64,
    pub b: u64,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodPairGraph {
    pub home_color: u32,
    pub h_cap: u64,
    pub vertices: Vec<u64>,
    /// Sorted by `(a, b)` with `a < b`.
    pub edges: Vec<Edge>,
    #[serde(skip)]
    pub(crate) adj: Vec<Vec<u64>>,
}

impl GoodPairGraph {
    pub fn has_edge(&self, a: u64, b: u64) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search_by(|e| (e.a, e.b).cmp(&(a, b))).is_ok()
    }

    pub fn certificate(&self, a: u64, b: u64) -> Option<&Witness> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search_by(|e| (e.a, e.b).cmp(&(a, b))).ok().map(|i| &self.edges[i].witness)
    }
}

/// Indices of the Ramsey pair, which validation places first in the first
/// block.
pub(crate) fn ramsey_indices(c: &Configuration) -> Result<(usize, usize), SearchError> {
    let (x, y) = c
        .ramsey
        .as_ref()
        .ok_or_else(|| SearchError::Precondition("configuration has no ramsey pair".into()))?;
    Ok((c.var_index(x).expect("validated"), c.var_index(y).expect("validated")))
}

/// Largest `h <= n` such that `(h - 1, h)` extends to a solution in
/// `[1..n]`, colors ignored; 0 if there is none.
pub fn h_cap(c: &Configuration, n: u64, budget: &mut Budget) -> Result<u64, SearchError> {
    let (xi, yi) = ramsey_indices(c)?;
    let compiled = Compiled::new(c);
    let plan = Plan::new(&compiled, &[xi, yi], &[]);
    let rules = vec![BlockRule::Free; c.blocks.len()];
    for h in (2..=n).rev() {
        if plan.first(n, None, &rules, &[h - 1, h], budget)?.is_some() {
            return Ok(h);
        }
    }
    Ok(0)
}

pub(crate) struct Edges<'c> {
    pub compiled: &'c Compiled,
    pub plan: Plan<'c>,
    pub x: usize,
    pub y: usize,
}

impl<'c> Edges<'c> {
    pub(crate) fn new(c: &Configuration, compiled: &'c Compiled) -> Result<Self, SearchError> {
        let (xi, yi) = ramsey_indices(c)?;
        Ok(Edges { compiled, plan: Plan::new(compiled, &[xi, yi], &[]), x: xi, y: yi })
    }

    /// Rules for the blocks: the Ramsey block takes the home color, the rest
    /// follow `aux` (Uniform) or are free.
    pub(crate) fn rules(&self, home: u32, aux: Option<&[u32]>) -> Vec<BlockRule> {
        (0..self.compiled.nblocks)
            .map(|j| match (j, aux) {
                (0, _) => BlockRule::Fixed(home),
                (j, Some(aux)) => BlockRule::Fixed(aux[j - 1]),
                _ => BlockRule::Free,
            })
            .collect()
    }

    pub(crate) fn certify(
        &self,
        n: u64,
        palette: &Palette,
        rules: &[BlockRule],
        a: u64,
        b: u64,
        budget: &mut Budget,
    ) -> Result<Option<Vec<u64>>, SearchError> {
        self.plan.first(n, Some(palette), rules, &[a, b], budget)
    }
}

/// Graph on `home` class members in `[1..h_cap]`; `aux` fixes the colors of
/// blocks `1..` in Uniform mode.
#[allow(clippy::too_many_arguments)]
pub fn good_pair_graph(
    c: &Configuration,
    col: &Coloring,
    n: u64,
    home: u32,
    aux: Option<&[u32]>,
    cap: Option<u64>,
    budget: &mut Budget,
) -> Result<GoodPairGraph, SearchError> {
    check_cover(col, n)?;
    if home >= col.num_colors() {
        return Err(SearchError::Precondition(format!("home color {home} is not below {}", col.num_colors())));
    }
    if let Some(aux) = aux {
        if aux.len() + 1 != c.blocks.len() || aux.iter().any(|&a| a >= col.num_colors()) {
            return Err(SearchError::Precondition("one valid color is needed per auxiliary block".into()));
        }
    }
    let cap = match cap {
        Some(h) => h.min(n),
        None => h_cap(c, n, budget)?,
    };
    let compiled = Compiled::new(c);
    let edges = Edges::new(c, &compiled)?;
    let palette = Palette::new(col.table(), col.num_colors());
    let rules = edges.rules(home, aux);
    build(c, col, n, home, cap, &edges, &palette, &rules, budget)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn build(
    c: &Configuration,
    col: &Coloring,
    n: u64,
    home: u32,
    cap: u64,
    edges: &Edges,
    palette: &Palette,
    rules: &[BlockRule],
    budget: &mut Budget,
) -> Result<GoodPairGraph, SearchError> {
    let vertices: Vec<u64> = (1..=cap).filter(|&h| col.table()[h as usize - 1] == home).collect();
    let words = vertices.len().div_ceil(64);
    let mut adj = vec![vec![0u64; words]; vertices.len()];
    let mut list = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if let Some(vals) = edges.certify(n, palette, rules, vertices[i], vertices[j], budget)? {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
                list.push(Edge { a: vertices[i], b: vertices[j], witness: make_witness(c, col, &vals) });
            }
        }
    }
    Ok(GoodPairGraph { home_color: home, h_cap: cap, vertices, edges: list, adj })
}
