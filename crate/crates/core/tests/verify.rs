mod common;

use common::sandwich_holds as bounded;
use proptest::prelude::*;
use rpr_core::coloring::Coloring;
use rpr_core::config::catalog_entry;
use rpr_core::poly::Poly;
use rpr_core::search::{find_witness, max_ramsey_set, Budget, Mode, RamseyOptions};
use rpr_core::verify::{
    check_ramsey_report, check_witness, run_corpus, sandwich_bound_check, Corpus, Evidence, Flag, RunOptions,
};

fn poly_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (2usize..5).prop_flat_map(|d| {
        let lower = proptest::collection::vec(-5i64..=5, d);
        (lower.clone(), 1i64..5, lower, 1i64..5).prop_map(|(mut p, lp, mut q, lq)| {
            p.push(lp);
            q.push(lq);
            (p, q)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sandwich_bound_is_least_and_holds((p, q) in poly_pair()) {
        let hi = 300;
        let rep = sandwich_bound_check(&Poly::new(p.clone()), &Poly::new(q.clone()), 1, hi, 200).unwrap();
        match rep.least_n {
            Some(n) => {
                prop_assert!((1..=hi).all(|b| bounded(&p, &q, b, n)));
                prop_assert!((1..n).all(|m| (1..=hi).any(|b| !bounded(&p, &q, b, m))));
            }
            // small beta can push s - n below zero where Q is not monotone
            None => prop_assert!((1..=200).all(|m| (1..=hi).any(|b| !bounded(&p, &q, b, m)))),
        }
    }
}

#[test]
fn tampered_witnesses_are_rejected() {
    let c = catalog_entry("schur").unwrap();
    let col = Coloring::parity(20);
    let w = find_witness(&c, &col, 20, &mut Budget::unlimited()).unwrap().unwrap();
    check_witness(&c, &col, 20, &w).unwrap();
    let mut bad = w.clone();
    bad.assignment["z"] += 2;
    assert!(check_witness(&c, &col, 20, &bad).is_err());
    let mut bad = w.clone();
    bad.block_colors[0] ^= 1;
    assert!(check_witness(&c, &col, 20, &bad).is_err());
    assert!(check_witness(&c, &col, 3, &w).is_err());
}

#[test]
fn tampered_ramsey_reports_are_rejected() {
    let c = catalog_entry("schur").unwrap();
    let col = Coloring::random(3, 2, 60).unwrap();
    let rep = max_ramsey_set(&c, &col, 60, &RamseyOptions::with_mode(Mode::Uniform)).unwrap();
    check_ramsey_report(&c, &col, &rep).unwrap();
    assert!(rep.size >= 3);
    let mut bad = rep.clone();
    bad.best_h.swap(0, 1);
    assert!(check_ramsey_report(&c, &col, &bad).is_err());
    let mut bad = rep.clone();
    bad.certificates.pop();
    assert!(check_ramsey_report(&c, &col, &bad).is_err());
    let mut bad = rep.clone();
    bad.mode = Mode::PerPair;
    assert!(check_ramsey_report(&c, &col, &bad).is_err());
    let mut bad = rep;
    bad.home_color ^= 1;
    assert!(check_ramsey_report(&c, &col, &bad).is_err());
}

#[test]
fn corpus_round_trips_and_runs_selected_entries() {
    let corpus = Corpus::builtin();
    assert_eq!(Corpus::from_json(&corpus.to_json()).unwrap(), corpus);
    for name in ["forcing/schur r=2", "theorem-b/x+y=z", "rado/x+y=3*z"] {
        let opts = RunOptions { only: Some(name.into()), workers: 1, budget: None };
        let rep = run_corpus(&corpus, &opts).unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert_eq!(rep.entries[0].flag, Flag::Consistent, "{name}");
    }
    let opts = RunOptions { only: Some("forcing/schur r=2".into()), workers: 1, budget: None };
    let rep = run_corpus(&corpus, &opts).unwrap();
    assert!(matches!(rep.entries[0].evidence, Evidence::ForcingNumber { forcing_number: Some(5), .. }));
    assert!(run_corpus(&corpus, &RunOptions { only: Some("missing".into()), ..opts }).is_err());
}
