//! Largest finite Ramsey sets: maximum cliques of good-pair graphs over all
//! home colors and, in Uniform mode, all auxiliary color tuples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::clique::max_clique;
use super::compiled::Compiled;
use super::graph::{build, h_cap, Edges, GoodPairGraph, Mode};
use super::solver::{BlockRule, Budget, Palette, Plan};
use super::witness::check_cover;
use super::{par_map, SearchError};
use crate::coloring::Coloring;
use crate::config::{Configuration, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyOptions {
    pub mode: Mode,
    /// Overrides the computed vertex cap.
    pub h_cap: Option<u64>,
    /// Node limit per subproblem (one home color and auxiliary tuple).
    pub budget: Option<u64>,
    pub workers: usize,
}

impl Default for RamseyOptions {
    fn default() -> Self {
        RamseyOptions { mode: Mode::Uniform, h_cap: None, budget: None, workers: 1 }
    }
}

impl RamseyOptions {
    pub fn with_mode(mode: Mode) -> Self {
        RamseyOptions { mode, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseySetReport {
    pub mode: Mode,
    #[serde(rename = "best_H")]
    pub best_h: Vec<u64>,
    pub size: usize,
    pub home_color: u32,
    /// Block index to color, Uniform mode only.
    pub aux_colors: Option<BTreeMap<usize, u32>>,
    #[serde(rename = "N")]
    pub n: u64,
    pub h_cap: u64,
    pub exhausted: bool,
    pub nodes: u64,
    /// One witness per pair of `best_H`, pairs in lexicographic order.
    pub certificates: Vec<Witness>,
}

struct Sub {
    home: u32,
    aux: Option<Vec<u32>>,
    clique: Vec<u64>,
    certificates: Vec<Witness>,
    exhausted: bool,
    nodes: u64,
}

/// Every tuple in `[0, r)^len`, lexicographic.
fn tuples(r: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..r).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

fn clique_of(g: &GoodPairGraph, target: Option<usize>, budget: &mut Budget) -> (Vec<u64>, bool) {
    let (idx, done) = max_clique(&g.adj, target, budget);
    (idx.into_iter().map(|i| g.vertices[i]).collect(), done)
}

pub fn max_ramsey_set(
    c: &Configuration,
    col: &Coloring,
    n: u64,
    opts: &RamseyOptions,
) -> Result<RamseySetReport, SearchError> {
    check_cover(col, n)?;
    let r = col.num_colors();
    let mut cap_budget = Budget::new(opts.budget);
    let cap = match opts.h_cap {
        Some(h) => Ok(h.min(n)),
        None => h_cap(c, n, &mut cap_budget),
    };
    let cap = match cap {
        Ok(h) => h,
        Err(SearchError::BudgetExceeded { nodes }) => {
            return Ok(RamseySetReport {
                mode: opts.mode,
                best_h: Vec::new(),
                size: 0,
                home_color: 0,
                aux_colors: (opts.mode == Mode::Uniform).then(BTreeMap::new),
                n,
                h_cap: 0,
                exhausted: false,
                nodes,
                certificates: Vec::new(),
            })
        }
        Err(e) => return Err(e),
    };
    let compiled = Compiled::new(c);
    let edges = Edges::new(c, &compiled)?;
    let palette = Palette::new(col.table(), r);
    let mut jobs = Vec::new();
    for home in 0..r {
        match opts.mode {
            Mode::Uniform => {
                for aux in tuples(r, c.blocks.len() - 1) {
                    jobs.push((home, Some(aux)));
                }
            }
            Mode::PerPair => jobs.push((home, None)),
        }
    }
    let results = par_map(opts.workers, jobs, |(home, aux): (u32, Option<Vec<u32>>)| -> Result<Sub, SearchError> {
        let mut budget = Budget::new(opts.budget);
        let rules = edges.rules(home, aux.as_deref());
        let mut sub = Sub { home, aux, clique: Vec::new(), certificates: Vec::new(), exhausted: false, nodes: 0 };
        match build(c, col, n, home, cap, &edges, &palette, &rules, &mut budget) {
            Ok(g) => {
                let (clique, done) = clique_of(&g, None, &mut budget);
                sub.exhausted = done;
                for (i, &a) in clique.iter().enumerate() {
                    for &b in &clique[i + 1..] {
                        sub.certificates.push(g.certificate(a, b).expect("clique edge").clone());
                    }
                }
                sub.clique = clique;
            }
            Err(SearchError::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        sub.nodes = budget.used();
        Ok(sub)
    });
    let mut best: Option<Sub> = None;
    let mut exhausted = true;
    let mut nodes = cap_budget.used();
    for sub in results {
        let sub = sub?;
        exhausted &= sub.exhausted;
        nodes += sub.nodes;
        let better = match &best {
            None => true,
            Some(b) => sub.clique.len() > b.clique.len() || (sub.clique.len() == b.clique.len() && sub.clique < b.clique),
        };
        if better {
            best = Some(sub);
        }
    }
    let best = best.expect("at least one color");
    Ok(RamseySetReport {
        mode: opts.mode,
        size: best.clique.len(),
        best_h: best.clique,
        home_color: best.home,
        aux_colors: best.aux.map(|a| a.into_iter().enumerate().map(|(j, c)| (j + 1, c)).collect()),
        n,
        h_cap: cap,
        exhausted,
        nodes,
        certificates: best.certificates,
    })
}

/// Edge sets over values `1..=n_max` for one subproblem, as bit rows of
/// `width` words stored contiguously.
#[derive(Clone)]
struct Incremental {
    home: u32,
    rules: Vec<BlockRule>,
    width: usize,
    adj: Vec<u64>,
}

impl Incremental {
    fn row(&self, v: u64) -> &[u64] {
        &self.adj[v as usize * self.width..(v as usize + 1) * self.width]
    }

    fn has(&self, a: u64, b: u64) -> bool {
        get_bit(self.row(a), b)
    }

    fn link(&mut self, a: u64, b: u64) {
        let w = self.width;
        set_bit(&mut self.adj[a as usize * w..], b);
        set_bit(&mut self.adj[b as usize * w..], a);
    }

    fn vertices(&self) -> u64 {
        (self.adj.len() / self.width) as u64
    }
}

fn set_bit(row: &mut [u64], i: u64) {
    row[i as usize / 64] |= 1 << (i % 64);
}

fn get_bit(row: &[u64], i: u64) -> bool {
    row[i as usize / 64] >> (i % 64) & 1 == 1
}

struct Threshold<'c> {
    c: &'c Configuration,
    edges: Edges<'c>,
    /// Plans with one non-Ramsey variable and `x` fixed.
    pinned: Vec<Plan<'c>>,
    caps: Vec<u64>,
    target: usize,
}

impl Threshold<'_> {
    /// Adds the edges that appear when the prefix grows to `colors.len()`,
    /// returning the new ones.
    fn extend(
        &self,
        sub: &mut Incremental,
        colors: &[u32],
        palette: &Palette,
        budget: &mut Budget,
    ) -> Result<Vec<(u64, u64)>, SearchError> {
        let l = colors.len() as u64;
        let cap = self.caps[l as usize].min(l);
        let prev_cap = self.caps[l as usize - 1].min(l - 1);
        let home_color = sub.home;
        let home = |v: u64| colors[v as usize - 1] == home_color;
        let mut fresh = Vec::new();
        let add = |sub: &mut Incremental, a: u64, b: u64, fresh: &mut Vec<(u64, u64)>| {
            if !sub.has(a, b) {
                sub.link(a, b);
                fresh.push((a, b));
            }
        };
        // pairs touching a vertex admitted at this length
        for b in prev_cap + 1..=cap {
            if !home(b) {
                continue;
            }
            for a in 1..b {
                if home(a) && self.edges.certify(l, palette, &sub.rules, a, b, budget)?.is_some() {
                    add(sub, a, b, &mut fresh);
                }
            }
        }
        // older pairs whose first certificate uses the value l elsewhere
        for plan in &self.pinned {
            for a in (1..=prev_cap.min(cap)).filter(|&a| home(a)) {
                let mut found = Vec::new();
                plan.for_each(l, Some(palette), &sub.rules, &[l, a], budget, &mut |vals| {
                    found.push(vals[self.edges.y]);
                    true
                })?;
                for b in found {
                    if b > a && b <= prev_cap {
                        add(sub, a, b, &mut fresh);
                    }
                }
            }
        }
        Ok(fresh)
    }

    /// True when a new edge lies in a clique of the target size.
    fn hit(&self, sub: &Incremental, fresh: &[(u64, u64)], budget: &mut Budget) -> Result<bool, SearchError> {
        for &(a, b) in fresh {
            let common: Vec<u64> = sub.row(a).iter().zip(sub.row(b)).map(|(x, y)| x & y).collect();
            let members: Vec<u64> = (1..sub.vertices()).filter(|&v| get_bit(&common, v)).collect();
            if members.len() + 2 < self.target {
                continue;
            }
            let words = members.len().div_ceil(64);
            let local: Vec<Vec<u64>> = members
                .iter()
                .map(|&u| {
                    let mut row = vec![0u64; words];
                    for (j, &w) in members.iter().enumerate() {
                        if sub.has(u, w) {
                            row[j / 64] |= 1 << (j % 64);
                        }
                    }
                    row
                })
                .collect();
            let need = self.target - 2;
            let (clique, done) = max_clique(&local, Some(need), budget);
            if !done {
                return Err(SearchError::BudgetExceeded { nodes: budget.used() });
            }
            if clique.len() >= need {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn trivially_hit(&self, subs: &[Incremental], colors: &[u32]) -> bool {
        let l = colors.len() as u64;
        let cap = self.caps[l as usize].min(l);
        match self.target {
            0 => true,
            1 => subs.iter().any(|s| (1..=cap).any(|v| colors[v as usize - 1] == s.home)),
            _ => false,
        }
    }
}

/// Least `N <= n_max` such that every `r`-coloring of `[1..N]` has a finite
/// Ramsey set of size `target`; `None` if some coloring of `[1..n_max]`
/// escapes. Colorings are enumerated canonically (color of 1 is 0, new
/// colors appear in order), and a prefix is abandoned once it is hit. Good-
/// pair graphs only gain edges as the prefix grows, so each step looks for
/// certificates that use the newest value and cliques through new edges.
pub fn ramsey_threshold(
    c: &Configuration,
    r: u32,
    target: usize,
    n_max: u64,
    mode: Mode,
    budget: &mut Budget,
) -> Result<Option<u64>, SearchError> {
    if r == 0 {
        return Err(SearchError::Precondition("at least one color is required".into()));
    }
    let compiled = Compiled::new(c);
    let edges = Edges::new(c, &compiled)?;
    let (xi, yi) = (edges.x, edges.y);
    let pinned = (0..compiled.nvars)
        .filter(|&v| v != xi && v != yi)
        .map(|v| Plan::new(&compiled, &[v, xi], &[]))
        .collect();
    let mut caps = vec![0u64; n_max as usize + 1];
    for l in 1..=n_max {
        caps[l as usize] = h_cap(c, l, budget)?;
    }
    let th = Threshold { c, edges, pinned, caps, target };
    let width = (n_max as usize + 1).div_ceil(64);
    let mut initial = Vec::new();
    for home in 0..r {
        let auxes: Vec<Option<Vec<u32>>> = match mode {
            Mode::Uniform => tuples(r, th.c.blocks.len() - 1).into_iter().map(Some).collect(),
            Mode::PerPair => vec![None],
        };
        for aux in auxes {
            let rules = th.edges.rules(home, aux.as_deref());
            initial.push(Incremental { home, rules, width, adj: vec![0u64; width * (n_max as usize + 1)] });
        }
    }
    let mut colors: Vec<u32> = Vec::new();
    let mut next: Vec<u32> = vec![0];
    let mut used: Vec<u32> = vec![0];
    let mut states: Vec<Vec<Incremental>> = vec![initial];
    let mut deepest = 0u64;
    while let Some(&k) = next.last() {
        let depth = colors.len();
        let limit = (used[depth] + 1).min(r);
        if k >= limit || (depth == 0 && k > 0) {
            next.pop();
            used.pop();
            states.pop();
            if colors.pop().is_none() {
                break;
            }
            continue;
        }
        *next.last_mut().unwrap() = k + 1;
        budget.tick()?;
        colors.push(k);
        let mut subs = states[depth].clone();
        let mut hit = th.trivially_hit(&subs, &colors);
        let palette = Palette::new(&colors, r);
        for sub in subs.iter_mut() {
            if hit {
                break;
            }
            let fresh = th.extend(sub, &colors, &palette, budget)?;
            hit = th.hit(sub, &fresh, budget)?;
        }
        if hit {
            colors.pop();
            continue;
        }
        let l = colors.len() as u64;
        deepest = deepest.max(l);
        if l == n_max {
            return Ok(None);
        }
        used.push(used[depth].max(k + 1));
        next.push(0);
        states.push(subs);
    }
    Ok(Some(deepest + 1))
}
