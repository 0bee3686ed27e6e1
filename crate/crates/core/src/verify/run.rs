//! Runs corpus entries and compares the finite evidence with the published
//! verdict.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::corpus::{Corpus, CorpusEntry, CurveSpec, Experiment};
use super::soundness::{check_ramsey_report, Unsound};
use crate::coloring::{Coloring, InvariantDescriptor};
use crate::config::{parse_expr, resolve_config, Configuration};
use crate::decide::{decide_equation, Status, Verdict};
use crate::registry;
use crate::search::{
    default_family, forcing_number, max_ramsey_set, par_map, Budget, RamseyOptions, SearchError,
    SeparatorReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Flag {
    Consistent,
    Inconsistent,
    Inconclusive,
    /// The paper leaves the question open; evidence only.
    Open,
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flag::Consistent => "CONSISTENT",
            Flag::Inconsistent => "INCONSISTENT",
            Flag::Inconclusive => "INCONCLUSIVE",
            Flag::Open => "OPEN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(rename = "N")]
    pub n: u64,
    pub h_cap: u64,
    /// Coloring spec per run, in seed order.
    pub colorings: Vec<String>,
    pub sizes: Vec<usize>,
    /// Lower median of `sizes`.
    pub median: usize,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Classify { verdict: Option<Verdict>, error: Option<String> },
    ForcingNumber { colors: u32, n_max: u64, forcing_number: Option<u64>, exhausted: bool },
    RamseySetCurve { points: Vec<CurvePoint> },
    SeparatorHunt { report: SeparatorReport, points: Vec<CurvePoint> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub config: String,
    pub paper_verdict: Status,
    pub citation: String,
    pub statement: String,
    pub flag: Flag,
    pub evidence: Evidence,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub flat_ratio: u64,
    pub entries: Vec<EntryReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RunOptions {
    /// Node limit per search.
    pub budget: Option<u64>,
    pub workers: usize,
    /// Restrict to the entry with this name.
    pub only: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("entry `{entry}` cites unknown anchor `{slug}`")]
    DanglingCitation { entry: String, slug: String },
    #[error("entry `{entry}`: {msg}")]
    Invalid { entry: String, msg: String },
    #[error("no entry named `{0}`")]
    NoSuchEntry(String),
    #[error("entry `{entry}`: {source}")]
    Unsound { entry: String, source: Unsound },
}

/// Everything an entry needs, resolved before any search starts.
struct Prepared<'a> {
    entry: &'a CorpusEntry,
    config: Configuration,
    family: Vec<InvariantDescriptor>,
}

fn invalid(entry: &CorpusEntry, msg: impl std::fmt::Display) -> VerifyError {
    VerifyError::Invalid { entry: entry.name.clone(), msg: msg.to_string() }
}

fn prepare(entry: &CorpusEntry) -> Result<Prepared<'_>, VerifyError> {
    if registry::lookup(&entry.citation).is_none() {
        return Err(VerifyError::DanglingCitation { entry: entry.name.clone(), slug: entry.citation.clone() });
    }
    let config = resolve_config(&entry.config).map_err(|e| invalid(entry, e))?;
    let mut family = Vec::new();
    match &entry.experiment {
        Experiment::Classify { .. } => {}
        Experiment::ForcingNumber { colors, .. } => {
            if *colors == 0 {
                return Err(invalid(entry, "at least one color is required"));
            }
        }
        Experiment::RamseySetCurve { coloring, seeds, curve } => {
            check_curve(entry, &config, curve)?;
            for seed in seeds.iter().copied().chain(seeds.is_empty().then_some(0)) {
                Coloring::from_spec(&expand_seed(coloring, seed), 1).map_err(|e| invalid(entry, e))?;
            }
        }
        Experiment::SeparatorHunt { f, g, family: fam, curve, .. } => {
            parse_expr(f).map_err(|e| invalid(entry, e))?;
            parse_expr(g).map_err(|e| invalid(entry, e))?;
            family = match fam {
                None => default_family(),
                Some(list) => list
                    .iter()
                    .map(|d| d.parse::<InvariantDescriptor>().map_err(|e| invalid(entry, e)))
                    .collect::<Result<_, _>>()?,
            };
            if let Some(curve) = curve {
                check_curve(entry, &config, curve)?;
            }
        }
    }
    Ok(Prepared { entry, config, family })
}

fn check_curve(entry: &CorpusEntry, c: &Configuration, curve: &CurveSpec) -> Result<(), VerifyError> {
    if c.ramsey.is_none() {
        return Err(invalid(entry, "curves need a configuration with a ramsey pair"));
    }
    if curve.ns.is_empty() || curve.ns.windows(2).any(|w| w[0] >= w[1]) || curve.ns[0] == 0 {
        return Err(invalid(entry, "bounds must be positive and strictly increasing"));
    }
    Ok(())
}

fn expand_seed(spec: &str, seed: u64) -> String {
    spec.replace("{seed}", &seed.to_string())
}

fn lower_median(sizes: &[usize]) -> usize {
    let mut s = sizes.to_vec();
    s.sort_unstable();
    s.get(s.len().saturating_sub(1) / 2).copied().unwrap_or(0)
}

/// Sizes per bound under a family of colorings of `[1..N]`.
fn curve_points(
    p: &Prepared,
    curve: &CurveSpec,
    colorings: &dyn Fn(u64) -> Result<Vec<(String, Coloring)>, VerifyError>,
    opts: &RunOptions,
    nodes: &mut u64,
) -> Result<Vec<CurvePoint>, VerifyError> {
    let mut points = Vec::new();
    for &n in &curve.ns {
        let ropts = RamseyOptions { mode: curve.mode, h_cap: curve.h_cap.resolve(n), budget: opts.budget, workers: 1 };
        let mut sizes = Vec::new();
        let mut exhausted = true;
        let mut cap = 0;
        let mut labels = Vec::new();
        for (label, col) in colorings(n)? {
            let rep = max_ramsey_set(&p.config, &col, n, &ropts).map_err(|e| invalid(p.entry, e))?;
            check_ramsey_report(&p.config, &col, &rep)
                .map_err(|source| VerifyError::Unsound { entry: p.entry.name.clone(), source })?;
            *nodes += rep.nodes;
            exhausted &= rep.exhausted;
            cap = rep.h_cap;
            sizes.push(rep.size);
            labels.push(label);
        }
        points.push(CurvePoint { n, h_cap: cap, colorings: labels, median: lower_median(&sizes), sizes, exhausted });
    }
    Ok(points)
}

fn curve_flag(paper: Status, points: &[CurvePoint], flat_ratio: u64) -> Flag {
    if points.iter().any(|p| !p.exhausted) {
        return Flag::Inconclusive;
    }
    let med: Vec<usize> = points.iter().map(|p| p.median).collect();
    let spans = match (points.first(), points.last()) {
        (Some(a), Some(b)) => b.n >= a.n.saturating_mul(flat_ratio),
        _ => false,
    };
    if paper.is_negative() && spans && med.windows(2).all(|w| w[1] <= w[0]) {
        Flag::Consistent
    } else if paper.is_positive() && med.windows(2).all(|w| w[1] >= w[0]) && med.last() > med.first() {
        Flag::Consistent
    } else {
        Flag::Inconclusive
    }
}

fn run_entry(p: &Prepared, flat_ratio: u64, opts: &RunOptions) -> Result<EntryReport, VerifyError> {
    let e = p.entry;
    let mut nodes = 0;
    let (evidence, flag) = match &e.experiment {
        Experiment::Classify { equation, question } => match decide_equation(equation, *question) {
            Ok(v) => {
                let flag = if v.status == e.paper_verdict { Flag::Consistent } else { Flag::Inconsistent };
                (Evidence::Classify { verdict: Some(v), error: None }, flag)
            }
            Err(err) => (Evidence::Classify { verdict: None, error: Some(err.to_string()) }, Flag::Inconclusive),
        },
        Experiment::ForcingNumber { colors, n_max } => {
            let mut budget = Budget::new(opts.budget);
            let (fnum, exhausted) = match forcing_number(&p.config, *colors, *n_max, &mut budget) {
                Ok(v) => (v, true),
                Err(SearchError::BudgetExceeded { .. }) => (None, false),
                Err(err) => return Err(invalid(e, err)),
            };
            nodes += budget.used();
            let flag = if e.paper_verdict.is_positive() && fnum.is_some() { Flag::Consistent } else { Flag::Inconclusive };
            (Evidence::ForcingNumber { colors: *colors, n_max: *n_max, forcing_number: fnum, exhausted }, flag)
        }
        Experiment::RamseySetCurve { coloring, seeds, curve } => {
            let seeds: Vec<u64> = if seeds.is_empty() { vec![0] } else { seeds.clone() };
            let make = |n: u64| {
                seeds
                    .iter()
                    .map(|&s| {
                        let spec = expand_seed(coloring, s);
                        let col = Coloring::from_spec(&spec, n).map_err(|err| invalid(e, err))?;
                        Ok((spec, col))
                    })
                    .collect()
            };
            let points = curve_points(p, curve, &make, opts, &mut nodes)?;
            let flag = curve_flag(e.paper_verdict, &points, flat_ratio);
            (Evidence::RamseySetCurve { points }, flag)
        }
        Experiment::SeparatorHunt { f, g, samples, curve, .. } => {
            let f = parse_expr(f).map_err(|err| invalid(e, err))?;
            let g = parse_expr(g).map_err(|err| invalid(e, err))?;
            let report = crate::search::separator_search(&f, &g, &p.config.functions, &p.family, samples, 1)
                .map_err(|err| invalid(e, err))?;
            let mut points = Vec::new();
            if let (Some(curve), Some(best)) = (curve, report.best.clone()) {
                let make = |n: u64| {
                    let col = Coloring::from_invariant(best.clone(), n).map_err(|err| invalid(e, err))?;
                    Ok(vec![(format!("inv:{best}"), col)])
                };
                points = curve_points(p, curve, &make, opts, &mut nodes)?;
            }
            let flag = if !e.paper_verdict.is_negative() {
                Flag::Inconclusive
            } else if report.separator.is_some() {
                Flag::Consistent
            } else if !points.is_empty() {
                curve_flag(e.paper_verdict, &points, flat_ratio)
            } else {
                Flag::Inconclusive
            };
            (Evidence::SeparatorHunt { report, points }, flag)
        }
    };
    // open questions never count as confirmed
    let flag = if e.paper_verdict == Status::OpenInPaper { Flag::Open } else { flag };
    Ok(EntryReport {
        name: e.name.clone(),
        config: p.config.name.clone().unwrap_or_else(|| e.config.clone()),
        paper_verdict: e.paper_verdict,
        citation: e.citation.clone(),
        statement: registry::lookup(&e.citation).map(|t| t.statement.to_string()).unwrap_or_default(),
        flag,
        evidence,
        nodes,
        note: e.note.clone(),
    })
}

/// Validates every entry first, then runs them on `opts.workers` threads;
/// the report keeps corpus order.
pub fn run_corpus(corpus: &Corpus, opts: &RunOptions) -> Result<CorpusReport, VerifyError> {
    let selected: Vec<&CorpusEntry> = match &opts.only {
        Some(name) => {
            let hit: Vec<_> = corpus.entries.iter().filter(|e| &e.name == name).collect();
            if hit.is_empty() {
                return Err(VerifyError::NoSuchEntry(name.clone()));
            }
            hit
        }
        None => corpus.entries.iter().collect(),
    };
    let prepared = selected.into_iter().map(prepare).collect::<Result<Vec<_>, _>>()?;
    let results = par_map(opts.workers, prepared, |p| run_entry(&p, corpus.flat_ratio, opts));
    Ok(CorpusReport { flat_ratio: corpus.flat_ratio, entries: results.into_iter().collect::<Result<_, _>>()? })
}

fn summary(ev: &Evidence) -> String {
    let medians = |pts: &[CurvePoint]| {
        pts.iter().map(|p| format!("{}:{}", p.n, p.median)).collect::<Vec<_>>().join(" ")
    };
    match ev {
        Evidence::Classify { verdict: Some(v), .. } => format!("classifier {}", v.status),
        Evidence::Classify { error: Some(e), .. } => format!("classifier declined: {e}"),
        Evidence::Classify { .. } => String::new(),
        Evidence::ForcingNumber { colors, n_max, forcing_number, exhausted } => match (forcing_number, exhausted) {
            (Some(f), _) => format!("forced at N={f} with {colors} colors"),
            (None, true) => format!("avoidable up to {n_max} with {colors} colors"),
            (None, false) => "budget exhausted".into(),
        },
        Evidence::RamseySetCurve { points } => format!("median |H| {}", medians(points)),
        Evidence::SeparatorHunt { report, points } => {
            let head = match (&report.separator, &report.best) {
                (Some(d), _) => format!("separated by {d}"),
                (None, Some(d)) => format!("best {d} fails {}/{}", report.best_failures.len(), report.samples),
                (None, None) => "empty family".into(),
            };
            if points.is_empty() {
                head
            } else {
                format!("{head}; median |H| {}", medians(points))
            }
        }
    }
}

/// Plain-text table, one line per entry.
pub fn render_table(report: &CorpusReport) -> String {
    let rows: Vec<[String; 4]> = report
        .entries
        .iter()
        .map(|e| [e.name.clone(), e.paper_verdict.to_string(), e.flag.to_string(), summary(&e.evidence)])
        .collect();
    let head = ["entry", "paper", "flag", "evidence"];
    let mut width = head.map(str::len);
    for r in &rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(head.map(String::from)).chain(rows) {
        let _ = writeln!(
            out,
            "{:<w0$}  {:<w1$}  {:<w2$}  {}",
            r[0],
            r[1],
            r[2],
            r[3],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2]
        );
    }
    out
}
