use proptest::prelude::*;
use rpr_cli::{run, ConfigSource, Format, Ratio, RunConfig, SeparateSpec, SubcommandKind};
use rpr_core::decide::Question;
use rpr_core::search::{Mode, Regime, SampleSpec};
use rpr_core::verify::HCapRule;
use serde_json::Value;

fn rpr(args: &[&str]) -> rpr_cli::Invocation {
    run(std::iter::once("rpr").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = rpr(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn decide_schur_equation() {
    let v = json(&["decide", "--equation", "1x+1y=1z"]);
    assert_eq!(v["result"]["status"], "PR");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["citations"][0], v["result"]["citation"]);
    assert_eq!(v["run_config"]["equation"], "1x+1y=1z");
}

#[test]
fn force_classical_schur() {
    let v = json(&["force", "--config", "schur-classical", "--colors", "2", "--bound", "10"]);
    assert_eq!(v["result"]["forcing_number"], 5);
    let text = rpr(&["force", "--config", "schur-classical", "--colors", "2", "--bound", "10", "--format", "text"]);
    assert_eq!(text.stdout, "5\n");
}

#[test]
fn absent_witness_is_success() {
    let out = rpr(&["witness", "--config", "schur", "--coloring", "parity", "--bound", "3", "--format", "text"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "no witness\n");
    let v = json(&["witness", "--config", "schur", "--coloring", "parity", "--bound", "3"]);
    assert_eq!(v["result"]["status"], "absent");
}

#[test]
fn asymmetric_witness_from_cli() {
    let v = json(&[
        "witness",
        "--config",
        "config a { vars x y z; blocks (x y z); formula x+2*y=z; }",
        "--coloring",
        "parity",
        "--bound",
        "20",
        "--ratio",
        "x:y:5",
    ]);
    let w = &v["result"]["witness"]["assignment"];
    assert_eq!((w["x"].as_u64(), w["y"].as_u64(), w["z"].as_u64()), (Some(7), Some(1), Some(9)));
}

#[test]
fn user_errors_are_one_line_with_pointer() {
    for args in [
        vec!["witness", "--config", "config q { vars x; blocks (x; formula x=1; }", "--coloring", "mono", "--bound", "3"],
        vec!["witness", "--config", "schur", "--coloring", "stripes", "--bound", "3"],
        vec!["decide", "--equation", "x+y=z", "--question", "maybe"],
        vec!["force", "--config", "schur", "--colors", "0", "--bound", "5"],
        vec!["frobnicate"],
        vec!["witness", "--config", "schur"],
    ] {
        let out = rpr(&args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty());
        assert_eq!(out.stderr.lines().count(), 1, "{}", out.stderr);
        assert!(out.stderr.contains("docs/grammar.md"), "{}", out.stderr);
    }
}

#[test]
fn budget_exhaustion_exits_two_with_partial_report() {
    let out = rpr(&["ramsey-h", "--config", "pythagorean", "--coloring", "random:1:2", "--bound", "200", "--budget", "100"]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["runs"][0]["report"]["exhausted"], false);
    let out = rpr(&["force", "--config", "schur-classical", "--colors", "3", "--bound", "20", "--budget", "50"]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["status"], "budget_exceeded");
}

#[test]
fn ramsey_csv_has_one_row_per_bound_and_seed() {
    let out = rpr(&[
        "ramsey-h", "--config", "schur", "--coloring", "random:{seed}:2", "--bound", "20,40", "--seed", "3,4", "--format",
        "csv",
    ]);
    assert_eq!(out.code, 0);
    let mut r = csv::Reader::from_reader(out.stdout.as_bytes());
    let header = r.headers().unwrap().clone();
    assert_eq!(&header[1], "N");
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    let keys: Vec<(&str, &str, &str)> = rows.iter().map(|r| (&r[1], &r[2], &r[3])).collect();
    assert_eq!(
        keys,
        [("20", "3", "random:3:2"), ("20", "4", "random:4:2"), ("40", "3", "random:3:2"), ("40", "4", "random:4:2")]
    );
}

#[test]
fn threshold_subcommand() {
    let v = json(&["ramsey-h", "--config", "schur", "--threshold", "2", "--colors", "2", "--bound", "40"]);
    assert_eq!(v["result"]["status"], "found");
    assert!(v["result"]["threshold"].as_u64().unwrap() <= 40);
}

#[test]
fn avoid_and_separate() {
    let v = json(&["avoid", "--config", "schur-classical", "--colors", "2", "--bound", "4"]);
    assert_eq!(v["result"]["checked"], "verified");
    let v = json(&["avoid", "--config", "schur-classical", "--colors", "2", "--bound", "5"]);
    assert_eq!(v["result"]["status"], "absent");
    let v = json(&["separate", "--f", "x+y", "--g", "x*y", "--hi", "12", "--family", "res(2);smod(3)"]);
    assert_eq!(v["result"]["tallies"].as_array().unwrap().len(), 2);
}

#[test]
fn output_file_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    std::fs::write(&cfg, "config s { vars x y z; blocks (x y z); formula x+y=z; }").unwrap();
    let report = dir.path().join("out.json");
    let out = rpr(&[
        "witness",
        "--config",
        cfg.to_str().unwrap(),
        "--coloring",
        "mono",
        "--bound",
        "5",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["run_config"]["config"]["file"]["text"].as_str().unwrap().contains("x+y=z"));
    assert_eq!(v["result"]["witness"]["assignment"]["z"], 2);
}

#[test]
fn verify_single_entry_and_bad_entry() {
    let v = json(&["verify", "--only", "forcing/schur r=2"]);
    assert_eq!(v["result"]["entries"][0]["flag"], "CONSISTENT");
    assert_eq!(v["citations"], serde_json::json!(["schur"]));
    let out = rpr(&["verify", "--only", "nope"]);
    assert_eq!(out.code, 1);
}

#[test]
fn workers_do_not_change_results() {
    let base = ["ramsey-h", "--config", "schur", "--coloring", "random:{seed}:2", "--bound", "30,60", "--seed", "0,1,2"];
    let one = json(&[&base[..], &["--workers", "1"]].concat());
    let four = json(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one["result"], four["result"]);
    assert_eq!(one["nodes"], four["nodes"]);
}

#[test]
fn report_replays_from_its_run_config() {
    let v = json(&["ramsey-h", "--config", "difference", "--coloring", "parity", "--bound", "24", "--mode", "perpair"]);
    let rc: RunConfig = serde_json::from_value(v["run_config"].clone()).unwrap();
    let again = rpr_cli::run_config(&rc);
    assert_eq!(again.code, 0);
    let w: Value = serde_json::from_str(&again.stdout).unwrap();
    assert_eq!(v, w);
}

fn arb_run_config() -> impl Strategy<Value = RunConfig> {
    let sub = prop_oneof![
        Just(SubcommandKind::Decide),
        Just(SubcommandKind::Witness),
        Just(SubcommandKind::Force),
        Just(SubcommandKind::Avoid),
        Just(SubcommandKind::RamseyH),
        Just(SubcommandKind::Separate),
        Just(SubcommandKind::Verify),
    ];
    let source = prop_oneof![
        Just(None),
        "[a-z-]{1,12}".prop_map(|s| Some(ConfigSource::Catalog(s))),
        ".{0,40}".prop_map(|s| Some(ConfigSource::Inline(s))),
        ("[a-z/]{1,10}", ".{0,40}").prop_map(|(p, t)| Some(ConfigSource::File { path: p.into(), text: t })),
    ];
    let hcap = prop_oneof![Just(None), Just(Some(HCapRule::Auto)), Just(Some(HCapRule::Full)), any::<u64>().prop_map(|h| Some(HCapRule::Fixed(h)))];
    let regime = prop_oneof![
        Just(Regime::All),
        Just(Regime::Exp2),
        any::<u32>().prop_map(|k| Regime::Power { k }),
        any::<u64>().prop_map(|k| Regime::Linear { k }),
    ];
    let separate = proptest::option::of((".{0,8}", ".{0,8}", any::<u64>(), any::<u64>(), regime, proptest::option::of(proptest::collection::vec(".{0,6}", 0..3))))
        .prop_map(|o| o.map(|(f, g, lo, hi, regime, family)| SeparateSpec { f, g, samples: SampleSpec::new(lo, hi, regime), family }));
    let format = prop_oneof![Just(Format::Json), Just(Format::Csv), Just(Format::Text)];
    (
        (sub, source, proptest::option::of(".{0,20}"), proptest::option::of(prop_oneof![Just(Question::Pr), Just(Question::Ramsey), Just(Question::RamseySeparate)]), proptest::option::of(".{0,20}")),
        (proptest::collection::vec(any::<u64>(), 0..4), proptest::option::of(any::<u32>()), proptest::option::of(prop_oneof![Just(Mode::Uniform), Just(Mode::PerPair)]), hcap, proptest::option::of(any::<usize>())),
        (proptest::collection::vec(("[a-z]{1,3}", "[a-z]{1,3}", any::<u64>()).prop_map(|(big, small, factor)| Ratio { big, small, factor }), 0..3), separate, proptest::option::of("[a-z/.]{1,12}"), proptest::option::of(".{0,10}")),
        (proptest::option::of(any::<u64>()), proptest::collection::vec(any::<u64>(), 0..4), 1..16usize, format, proptest::option::of("[a-z/.]{1,12}")),
    )
        .prop_map(|((subcommand, config, equation, question, coloring), (bounds, colors, mode, h_cap, threshold), (ratios, separate, corpus, only), (budget, seeds, workers, format, output))| RunConfig {
            subcommand,
            config,
            equation,
            question,
            coloring,
            bounds,
            colors,
            mode,
            h_cap,
            threshold,
            ratios,
            separate,
            corpus: corpus.map(Into::into),
            only,
            budget,
            seeds,
            workers,
            format,
            output: output.map(Into::into),
        })
}

proptest! {
    #[test]
    fn run_config_round_trips(rc in arb_run_config()) {
        let text = serde_json::to_string(&rc).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &rc);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
