mod common;

use common::{block_members, brute_ramsey, has_block_mono, solutions, PairIndex};
use proptest::prelude::*;
use rpr_core::coloring::Coloring;
use rpr_core::config::{builtin_catalog, catalog_entry, parse_config, Configuration};
use rpr_core::search::{
    asymmetric_witness, avoiding_coloring, find_witness, forcing_number, good_pair_graph, max_ramsey_set, Budget,
    Mode, RamseyOptions,
};
use rpr_core::verify::{check_avoider, check_ramsey_report, check_witness, Checked};

fn ramsey_configs() -> Vec<(String, Configuration)> {
    builtin_catalog().into_iter().filter(|(_, c)| c.ramsey.is_some()).collect()
}

fn small_case() -> impl Strategy<Value = (String, u64, Coloring)> {
    let names: Vec<String> = ramsey_configs().into_iter().map(|(n, _)| n).collect();
    (proptest::sample::select(names), 4u64..18, any::<u64>(), 1u32..4)
        .prop_map(|(name, n, seed, r)| (name, n, Coloring::random(seed, r, n).unwrap()))
}

fn budget() -> Budget {
    Budget::unlimited()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn per_pair_dominates_uniform((name, n, col) in small_case()) {
        let c = catalog_entry(&name).unwrap();
        let u = max_ramsey_set(&c, &col, n, &RamseyOptions::with_mode(Mode::Uniform)).unwrap();
        let p = max_ramsey_set(&c, &col, n, &RamseyOptions::with_mode(Mode::PerPair)).unwrap();
        prop_assert!(u.size <= p.size, "{}: uniform {} > perpair {}", name, u.size, p.size);
        check_ramsey_report(&c, &col, &u).unwrap();
        check_ramsey_report(&c, &col, &p).unwrap();
    }

    #[test]
    fn cliques_match_subset_enumeration((name, n, col) in small_case(), uniform in any::<bool>()) {
        let c = catalog_entry(&name).unwrap();
        let index = PairIndex::new(&c, &solutions(&c, n));
        let want = brute_ramsey(&index, &col, n, uniform);
        let mode = if uniform { Mode::Uniform } else { Mode::PerPair };
        let got = max_ramsey_set(&c, &col, n, &RamseyOptions::with_mode(mode)).unwrap();
        prop_assert_eq!((got.size, &got.best_h, got.home_color, &got.aux_colors, got.h_cap), (want.size, &want.best, want.home, &want.aux, want.h_cap));
    }

    #[test]
    fn witnesses_are_lex_least((name, n, col) in small_case()) {
        let c = catalog_entry(&name).unwrap();
        let blocks = block_members(&c);
        let want = solutions(&c, n).into_iter().find(|s| has_block_mono(&blocks, std::slice::from_ref(s), col.table()));
        let got = find_witness(&c, &col, n, &mut budget()).unwrap();
        if let Some(w) = &got {
            check_witness(&c, &col, n, w).unwrap();
        }
        prop_assert_eq!(got.map(|w| w.assignment.values().copied().collect::<Vec<_>>()), want);
    }

    #[test]
    fn ratio_constraints_filter_the_lex_order(n in 6u64..30, seed in any::<u64>(), factor in 0u64..6) {
        let c = parse_config("config a { vars x y z; blocks (x y z); formula x+2*y=z; }").unwrap();
        let col = Coloring::random(seed, 2, n).unwrap();
        let blocks = block_members(&c);
        let want = solutions(&c, n)
            .into_iter()
            .find(|s| s[0] > factor * s[1] && has_block_mono(&blocks, std::slice::from_ref(s), col.table()));
        let ratios = [("x".to_string(), "y".to_string(), factor)];
        let got = asymmetric_witness(&c, &col, n, &ratios, &mut budget()).unwrap();
        prop_assert_eq!(got.map(|w| w.assignment.values().copied().collect::<Vec<_>>()), want);
    }

    #[test]
    fn workers_do_not_change_reports((name, n, col) in small_case()) {
        let c = catalog_entry(&name).unwrap();
        let one = RamseyOptions { workers: 1, ..RamseyOptions::with_mode(Mode::Uniform) };
        let four = RamseyOptions { workers: 4, ..one.clone() };
        let a = serde_json::to_string(&max_ramsey_set(&c, &col, n, &one).unwrap()).unwrap();
        let b = serde_json::to_string(&max_ramsey_set(&c, &col, n, &four).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn avoiders_exist_exactly_below_the_forcing_number() {
    for (name, r, n_max) in [("schur-classical", 2, 10), ("3ap-distinct", 2, 12), ("schur", 2, 12)] {
        let c = catalog_entry(name).unwrap();
        let f = forcing_number(&c, r, n_max, &mut budget()).unwrap().expect("forced within range");
        for n in 1..=n_max {
            let avoider = avoiding_coloring(&c, r, n, &mut budget()).unwrap();
            assert_eq!(avoider.is_some(), n < f, "{name} N={n} f={f}");
            if let Some(a) = avoider {
                assert_eq!(check_avoider(&c, &a, n, 1 << 24).unwrap(), Checked::Verified);
                assert!(!has_block_mono(&block_members(&c), &solutions(&c, n), a.table()));
            }
        }
    }
}

#[test]
fn three_color_schur_avoider_at_thirteen() {
    let c = catalog_entry("schur-classical").unwrap();
    let a = avoiding_coloring(&c, 3, 13, &mut budget()).unwrap().expect("13 is avoidable");
    assert!(!has_block_mono(&block_members(&c), &solutions(&c, 13), a.table()));
    assert!(avoiding_coloring(&c, 3, 14, &mut budget()).unwrap().is_none());
}

#[test]
fn good_pair_graph_examples() {
    let c = catalog_entry("schur").unwrap();
    let g = good_pair_graph(&c, &Coloring::mono(12), 12, 0, Some(&[]), None, &mut budget()).unwrap();
    assert_eq!(g.vertices, (1..=6).collect::<Vec<u64>>());
    for a in 1..=6u64 {
        for b in a + 1..=6 {
            assert_eq!(g.has_edge(a, b), a + b <= 12, "({a},{b})");
        }
    }
    let g = good_pair_graph(&c, &Coloring::parity(20), 20, 1, Some(&[]), None, &mut budget()).unwrap();
    for e in &g.edges {
        assert!(e.a % 2 == 0 && e.b % 2 == 0 && e.a + e.b <= 20);
    }
    let psp = catalog_entry("pairwise-sum-product").unwrap();
    let g = good_pair_graph(&psp, &Coloring::parity(100), 100, 1, None, None, &mut budget()).unwrap();
    let w = g.certificate(2, 6).expect("edge (2,6)");
    assert_eq!((w.value("z"), w.value("t")), (Some(8), Some(12)));
}

#[test]
fn ramsey_examples() {
    let c = catalog_entry("schur").unwrap();
    let r = max_ramsey_set(&c, &Coloring::mono(12), 12, &RamseyOptions::default()).unwrap();
    assert_eq!(r.size, 6);
    let r = max_ramsey_set(&c, &Coloring::parity(20), 20, &RamseyOptions::default()).unwrap();
    assert_eq!((r.best_h.clone(), r.home_color), (vec![2, 4, 6, 8, 10], 1));
    let psp = catalog_entry("pairwise-sum-product").unwrap();
    let r = max_ramsey_set(&psp, &Coloring::mono(2), 2, &RamseyOptions::with_mode(Mode::PerPair)).unwrap();
    assert!(r.size <= 1);
}

#[test]
fn truncation_is_reported() {
    let c = catalog_entry("schur").unwrap();
    let col = Coloring::random(9, 2, 120).unwrap();
    let opts = RamseyOptions { budget: Some(200), ..RamseyOptions::default() };
    let r = max_ramsey_set(&c, &col, 120, &opts).unwrap();
    assert!(!r.exhausted);
    check_ramsey_report(&c, &col, &r).unwrap();
    assert!(forcing_number(&catalog_entry("schur-classical").unwrap(), 3, 20, &mut Budget::new(Some(50))).is_err());
}
