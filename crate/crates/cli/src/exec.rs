//! One function per subcommand. Each returns the result payload plus its
//! text and CSV renderings; emission happens in the caller.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rpr_core::coloring::{Coloring, InvariantDescriptor};
use rpr_core::config::{parse_expr, Configuration, FnRegistry};
use rpr_core::decide::decide_equation;
use rpr_core::search::{
    asymmetric_witness, avoiding_coloring, default_family, forcing_number, max_ramsey_set, ramsey_threshold,
    separator_search, Budget, Mode, RamseyOptions, SearchError,
};
use rpr_core::verify::{
    check_avoider, check_ramsey_report, check_witness, render_table, run_corpus, Checked, Corpus, Evidence,
    RunOptions, VerifyError, CORPUS_SCHEMA_VERSION,
};
use serde_json::{json, Value};

use crate::run_config::{expand_seed, RunConfig, SubcommandKind};

/// Enumeration limit when re-checking an avoiding coloring.
const AVOIDER_CHECK_LIMIT: u64 = 20_000_000;

#[derive(Debug)]
pub enum Failure {
    /// Bad input or a violated precondition.
    User(String),
    /// The verifier rejected a search result.
    Unsound(String),
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Table {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Outcome {
    /// 0, or 2 when a budget ran out.
    pub code: i32,
    pub result: Value,
    pub citations: Vec<String>,
    pub nodes: Vec<(String, u64)>,
    pub text: String,
    pub table: Table,
}

impl Outcome {
    fn new(result: Value, text: String, table: Table) -> Outcome {
        Outcome { code: 0, result, citations: Vec::new(), nodes: Vec::new(), text, table }
    }
}

fn user(e: impl std::fmt::Display) -> Failure {
    Failure::User(e.to_string())
}

fn unsound(e: impl std::fmt::Display) -> Failure {
    Failure::Unsound(e.to_string())
}

fn config_of(rc: &RunConfig) -> Result<Configuration, Failure> {
    rc.config.as_ref().ok_or_else(|| user("a configuration is required"))?.load().map_err(Failure::User)
}

fn bound_of(rc: &RunConfig) -> Result<u64, Failure> {
    match rc.bounds.as_slice() {
        [n] => Ok(*n),
        _ => Err(user("exactly one bound is required")),
    }
}

fn budget_exceeded(rc: &RunConfig, nodes: u64) -> Outcome {
    let mut o = Outcome::new(
        json!({ "status": "budget_exceeded", "nodes": nodes, "budget": rc.budget }),
        format!("budget of {} nodes exceeded\n", rc.budget.unwrap_or(0)),
        Table { header: vec!["status".into(), "nodes".into()], rows: vec![vec!["budget_exceeded".into(), nodes.to_string()]] },
    );
    o.code = 2;
    o.nodes.push(("search".into(), nodes));
    o
}

pub fn execute(rc: &RunConfig) -> Result<Outcome, Failure> {
    match rc.subcommand {
        SubcommandKind::Decide => decide(rc),
        SubcommandKind::Witness => witness(rc),
        SubcommandKind::Force => force(rc),
        SubcommandKind::Avoid => avoid(rc),
        SubcommandKind::RamseyH if rc.threshold.is_some() => threshold(rc),
        SubcommandKind::RamseyH => ramsey_h(rc),
        SubcommandKind::Separate => separate(rc),
        SubcommandKind::Verify => verify(rc),
    }
}

fn decide(rc: &RunConfig) -> Result<Outcome, Failure> {
    let eq = rc.equation.as_deref().ok_or_else(|| user("--equation is required"))?;
    let q = rc.question.ok_or_else(|| user("--question is required"))?;
    let v = decide_equation(eq, q).map_err(user)?;
    let mut table = Table::new(&["status", "citation", "reason"]);
    table.push(vec![v.status.to_string(), v.citation.clone(), v.reason.clone()]);
    let text = format!("{} [{}] {}\n", v.status, v.citation, v.reason);
    let mut o = Outcome::new(serde_json::to_value(&v).expect("serializable"), text, table);
    o.citations.push(v.citation);
    Ok(o)
}

fn witness(rc: &RunConfig) -> Result<Outcome, Failure> {
    let c = config_of(rc)?;
    let n = bound_of(rc)?;
    let spec = rc.coloring.as_deref().ok_or_else(|| user("--coloring is required"))?;
    let col = Coloring::from_spec(spec, n).map_err(user)?;
    let ratios: Vec<(String, String, u64)> =
        rc.ratios.iter().map(|r| (r.big.clone(), r.small.clone(), r.factor)).collect();
    let mut budget = Budget::new(rc.budget);
    let found = match asymmetric_witness(&c, &col, n, &ratios, &mut budget) {
        Ok(w) => w,
        Err(SearchError::BudgetExceeded { nodes }) => return Ok(budget_exceeded(rc, nodes)),
        Err(e) => return Err(user(e)),
    };
    let mut table = Table::new(&["status", "assignment", "block_colors"]);
    let mut o = match found {
        Some(w) => {
            check_witness(&c, &col, n, &w).map_err(unsound)?;
            for (big, small, f) in &ratios {
                let (b, s) = (w.value(big).unwrap_or(0), w.value(small).unwrap_or(0));
                if (b as u128) <= *f as u128 * s as u128 {
                    return Err(unsound(format!("witness violates {big} > {f}*{small}")));
                }
            }
            let assignment: Vec<String> = w.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let colors: Vec<String> = w.block_colors.iter().map(u32::to_string).collect();
            table.push(vec!["found".into(), assignment.join(" "), colors.join(" ")]);
            let text = format!("{} (block colors {})\n", assignment.join(" "), colors.join(" "));
            Outcome::new(json!({ "status": "found", "witness": w }), text, table)
        }
        None => {
            table.push(vec!["absent".into(), String::new(), String::new()]);
            Outcome::new(json!({ "status": "absent", "witness": null }), "no witness\n".into(), table)
        }
    };
    o.nodes.push(("search".into(), budget.used()));
    Ok(o)
}

fn force(rc: &RunConfig) -> Result<Outcome, Failure> {
    let c = config_of(rc)?;
    let n = bound_of(rc)?;
    let r = rc.colors.ok_or_else(|| user("--colors is required"))?;
    let mut budget = Budget::new(rc.budget);
    let f = match forcing_number(&c, r, n, &mut budget) {
        Ok(f) => f,
        Err(SearchError::BudgetExceeded { nodes }) => return Ok(budget_exceeded(rc, nodes)),
        Err(e) => return Err(user(e)),
    };
    let status = if f.is_some() { "found" } else { "absent" };
    let mut table = Table::new(&["status", "colors", "n_max", "forcing_number"]);
    table.push(vec![status.into(), r.to_string(), n.to_string(), f.map(|f| f.to_string()).unwrap_or_default()]);
    let text = match f {
        Some(f) => format!("{f}\n"),
        None => format!("no forcing number up to {n}: some {r}-coloring of [1..{n}] avoids the configuration\n"),
    };
    let mut o = Outcome::new(
        json!({ "status": status, "colors": r, "n_max": n, "forcing_number": f }),
        text,
        table,
    );
    o.nodes.push(("search".into(), budget.used()));
    Ok(o)
}

fn avoid(rc: &RunConfig) -> Result<Outcome, Failure> {
    let c = config_of(rc)?;
    let n = bound_of(rc)?;
    let r = rc.colors.ok_or_else(|| user("--colors is required"))?;
    let mut budget = Budget::new(rc.budget);
    let found = match avoiding_coloring(&c, r, n, &mut budget) {
        Ok(f) => f,
        Err(SearchError::BudgetExceeded { nodes }) => return Ok(budget_exceeded(rc, nodes)),
        Err(e) => return Err(user(e)),
    };
    let mut table = Table::new(&["status", "coloring", "checked"]);
    let mut o = match found {
        Some(col) => {
            let checked = match check_avoider(&c, &col, n, AVOIDER_CHECK_LIMIT).map_err(unsound)? {
                Checked::Verified => "verified",
                Checked::TooLarge => "too_large",
            };
            let digits: Vec<String> = col.table().iter().map(u32::to_string).collect();
            table.push(vec!["found".into(), digits.join(" "), checked.into()]);
            let text = format!("{}\n", digits.join(" "));
            Outcome::new(json!({ "status": "found", "coloring": col, "checked": checked }), text, table)
        }
        None => {
            table.push(vec!["absent".into(), String::new(), String::new()]);
            let text = format!("every {r}-coloring of [1..{n}] contains a solution\n");
            Outcome::new(json!({ "status": "absent", "coloring": null }), text, table)
        }
    };
    o.nodes.push(("search".into(), budget.used()));
    Ok(o)
}

fn threshold(rc: &RunConfig) -> Result<Outcome, Failure> {
    let c = config_of(rc)?;
    let n_max = *rc.bounds.last().ok_or_else(|| user("--bound is required"))?;
    let r = rc.colors.ok_or_else(|| user("--colors is required"))?;
    let target = rc.threshold.expect("dispatched on threshold");
    let mode = rc.mode.unwrap_or(Mode::Uniform);
    let mut budget = Budget::new(rc.budget);
    let t = match ramsey_threshold(&c, r, target, n_max, mode, &mut budget) {
        Ok(t) => t,
        Err(SearchError::BudgetExceeded { nodes }) => return Ok(budget_exceeded(rc, nodes)),
        Err(e) => return Err(user(e)),
    };
    let status = if t.is_some() { "found" } else { "absent" };
    let mut table = Table::new(&["status", "colors", "target", "mode", "n_max", "threshold"]);
    table.push(vec![
        status.into(),
        r.to_string(),
        target.to_string(),
        mode.to_string(),
        n_max.to_string(),
        t.map(|t| t.to_string()).unwrap_or_default(),
    ]);
    let text = match t {
        Some(t) => format!("{t}\n"),
        None => format!("some {r}-coloring of [1..{n_max}] has no Ramsey set of size {target}\n"),
    };
    let mut o = Outcome::new(
        json!({ "status": status, "colors": r, "target": target, "mode": mode, "n_max": n_max, "threshold": t }),
        text,
        table,
    );
    o.nodes.push(("search".into(), budget.used()));
    Ok(o)
}

fn ramsey_h(rc: &RunConfig) -> Result<Outcome, Failure> {
    let c = config_of(rc)?;
    let spec = rc.coloring.as_deref().ok_or_else(|| user("--coloring is required"))?;
    let mode = rc.mode.unwrap_or(Mode::Uniform);
    let rule = rc.h_cap.unwrap_or_default();
    let name = c.name.clone().unwrap_or_default();
    let mut runs = Vec::new();
    let mut nodes = Vec::new();
    let mut text = String::new();
    let mut table = Table::new(&[
        "config", "N", "seed", "coloring", "mode", "size", "home_color", "h_cap", "exhausted", "nodes", "best_H",
    ]);
    let mut complete = true;
    for &n in &rc.bounds {
        for seed in rc.seed_list() {
            let this = expand_seed(spec, seed);
            let col = Coloring::from_spec(&this, n).map_err(user)?;
            let opts = RamseyOptions { mode, h_cap: rule.resolve(n), budget: rc.budget, workers: rc.workers };
            let rep = max_ramsey_set(&c, &col, n, &opts).map_err(user)?;
            check_ramsey_report(&c, &col, &rep).map_err(unsound)?;
            complete &= rep.exhausted;
            let h: Vec<String> = rep.best_h.iter().map(u64::to_string).collect();
            let _ = writeln!(
                text,
                "N={n} seed={seed} |H|={} H={{{}}} home={}{}",
                rep.size,
                h.join(","),
                rep.home_color,
                if rep.exhausted { "" } else { " (partial)" }
            );
            table.push(vec![
                name.clone(),
                n.to_string(),
                seed.to_string(),
                this.clone(),
                mode.to_string(),
                rep.size.to_string(),
                rep.home_color.to_string(),
                rep.h_cap.to_string(),
                rep.exhausted.to_string(),
                rep.nodes.to_string(),
                h.join(" "),
            ]);
            nodes.push((format!("N={n} seed={seed}"), rep.nodes));
            runs.push(json!({ "N": n, "seed": seed, "coloring": this, "report": rep }));
        }
    }
    let mut o = Outcome::new(json!({ "runs": runs }), text, table);
    o.nodes = nodes;
    if !complete {
        o.code = 2;
    }
    Ok(o)
}

fn separate(rc: &RunConfig) -> Result<Outcome, Failure> {
    let s = rc.separate.as_ref().ok_or_else(|| user("separator arguments are required"))?;
    let funcs = match &rc.config {
        Some(src) => src.load().map_err(Failure::User)?.functions,
        None => FnRegistry::new(),
    };
    let f = parse_expr(&s.f).map_err(user)?;
    let g = parse_expr(&s.g).map_err(user)?;
    let family: Vec<InvariantDescriptor> = match &s.family {
        Some(list) => list.iter().map(|d| d.parse()).collect::<Result<_, _>>().map_err(user)?,
        None => default_family(),
    };
    let rep = separator_search(&f, &g, &funcs, &family, &s.samples, rc.workers).map_err(user)?;
    let mut table = Table::new(&["descriptor", "failures", "samples"]);
    for t in &rep.tallies {
        table.push(vec![t.descriptor.to_string(), t.failures.to_string(), rep.samples.to_string()]);
    }
    let text = match (&rep.separator, &rep.best) {
        (Some(d), _) => format!("separated by {d} on {} samples\n", rep.samples),
        (None, Some(d)) => {
            let fails: Vec<String> = rep.best_failures.iter().map(|(a, b)| format!("({a},{b})")).collect();
            format!(
                "no separator; best {d} fails on {}/{} samples: {}\n",
                rep.best_failures.len(),
                rep.samples,
                fails.join(" ")
            )
        }
        (None, None) => "empty family\n".into(),
    };
    Ok(Outcome::new(serde_json::to_value(&rep).expect("serializable"), text, table))
}

fn verify(rc: &RunConfig) -> Result<Outcome, Failure> {
    let corpus = match &rc.corpus {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| user(format!("cannot read {}: {e}", path.display())))?;
            Corpus::from_json(&src).map_err(|e| user(format!("corpus {}: {e}", path.display())))?
        }
        None => Corpus::builtin(),
    };
    if corpus.schema_version != CORPUS_SCHEMA_VERSION {
        return Err(user(format!(
            "corpus schema version {} is not supported (expected {CORPUS_SCHEMA_VERSION})",
            corpus.schema_version
        )));
    }
    let opts = RunOptions { budget: rc.budget, workers: rc.workers, only: rc.only.clone() };
    let report = run_corpus(&corpus, &opts).map_err(|e| match e {
        VerifyError::Unsound { .. } => unsound(e),
        e => user(e),
    })?;
    let mut table = Table::new(&["entry", "paper_verdict", "flag", "N", "coloring", "size", "exhausted"]);
    let mut complete = true;
    let mut citations = BTreeSet::new();
    let mut nodes = Vec::new();
    for e in &report.entries {
        citations.insert(e.citation.clone());
        nodes.push((e.name.clone(), e.nodes));
        let points = match &e.evidence {
            Evidence::RamseySetCurve { points } | Evidence::SeparatorHunt { points, .. } => points.as_slice(),
            Evidence::ForcingNumber { exhausted, .. } => {
                complete &= exhausted;
                &[]
            }
            Evidence::Classify { .. } => &[],
        };
        let head = [e.name.clone(), e.paper_verdict.to_string(), e.flag.to_string()];
        if points.is_empty() {
            table.push(head.iter().cloned().chain(std::iter::repeat_n(String::new(), 4)).collect());
        }
        for p in points {
            complete &= p.exhausted;
            for (label, size) in p.colorings.iter().zip(&p.sizes) {
                let mut row = head.to_vec();
                row.extend([p.n.to_string(), label.clone(), size.to_string(), p.exhausted.to_string()]);
                table.push(row);
            }
        }
    }
    let mut o = Outcome::new(serde_json::to_value(&report).expect("serializable"), render_table(&report), table);
    o.citations = citations.into_iter().collect();
    o.nodes = nodes;
    if !complete {
        o.code = 2;
    }
    Ok(o)
}
