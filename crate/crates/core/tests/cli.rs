use std::path::PathBuf;
use std::process::{Command, Output};

use expressive_choice::deterministic::{
    build_groves_queueing, validate_witness, verify_prop4_witness,
};
use expressive_choice::io::{parse_document, witness_from_doc, Document, WitnessDoc};
use expressive_choice::queueing::QueueingParams;
use expressive_choice::rational::{parse_rational_list, Rational};
use expressive_choice::stochastic::validate_prob_witness;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expressive"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("expressive-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn built(name: &str) -> String {
    let o = run(&["build", name]);
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn validate_accepts_and_rejects() {
    let good = scratch("ex1.json", &built("example1"));
    assert_eq!(
        run(&["validate", good.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let mut doc: Value = serde_json::from_str(&built("example1")).unwrap();
    doc["distributions"][1] = serde_json::json!(["1/2", "1/3"]);
    let bad = scratch("sum.json", &doc.to_string());
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("probabilities must sum to 1"));

    let mut doc: Value = serde_json::from_str(&built("example1")).unwrap();
    doc["environment"]["domains"][0]["orderings"][0][0]
        .as_array_mut()
        .unwrap()
        .pop();
    let bad = scratch("partition.json", &doc.to_string());
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("partition incomplete"));

    let bad = scratch("broken.json", "{not json");
    assert_eq!(
        run(&["validate", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["analyze", "--builder", "nope"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["analyze", "--builder", "referendum", "--domains", "odd"])
            .status
            .code(),
        Some(1)
    );
    // Probabilistic input without --prob is a usage error.
    assert_eq!(
        run(&["analyze", "--builder", "example1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "analyze",
            "--builder",
            "groves",
            "--domains",
            "unrestricted",
            "--strict-iii"
        ])
        .status
        .code(),
        Some(3)
    );
    let o = run(&[
        "analyze",
        "--builder",
        "referendum",
        "--m",
        "1",
        "--domains",
        "unrestricted",
        "--cap",
        "4",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "uniform generated domains fall back to the characterization"
    );
    assert_eq!(json(&o)["method"], "characterization");
    let o = run(&[
        "analyze",
        "--prob",
        "--builder",
        "relfreq",
        "--domains",
        "strict",
        "--cap",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceed"));
}

#[test]
fn referendum_report() {
    let o = run(&[
        "analyze",
        "--builder",
        "referendum",
        "--m",
        "1",
        "--domains",
        "unrestricted",
    ]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["verdict"], "BA");
    assert_eq!(r["method"], "search");
    assert_eq!(r["witness_valid"], true);
    let count = |key: &str| {
        r["witness"][key]
            .as_array()
            .unwrap()
            .iter()
            .filter(|v| *v == "leave")
            .count()
    };
    assert_eq!((count("a_minus"), count("b_minus")), (0, 1));
}

#[test]
fn groves_report_matches_constructive_witness() {
    let o = run(&[
        "analyze",
        "--builder",
        "groves",
        "--grid",
        "0,1/4,1/2,3/4",
        "--domains",
        "explicit:prop4",
        "--theta1",
        "1/2",
    ]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["verdict"], "BA");
    let params = QueueingParams::new(
        [Rational::new(1, 2), Rational::new(1, 2)],
        QueueingParams::default_u_bar(),
        parse_rational_list("0,1/4,1/2,3/4").unwrap(),
    )
    .unwrap();
    let f = build_groves_queueing(&params).unwrap();
    let expected = verify_prop4_witness(&params).unwrap();
    let doc: WitnessDoc = serde_json::from_value(r["witness"].clone()).unwrap();
    let found = witness_from_doc(f.env(), &doc).unwrap();
    // Same agent, actions, opponent report at b and ordering; the search
    // reaches a_2 = 0 before the largest grid point below theta1.
    assert_eq!(
        (
            found.agent,
            found.r,
            found.l,
            &found.b_minus,
            &found.ordering
        ),
        (
            expected.agent,
            expected.r,
            expected.l,
            &expected.b_minus,
            &expected.ordering
        )
    );
    assert!(found.a_minus.0[0] < found.l);
    validate_witness(&f, &found, false).unwrap();
}

#[test]
fn relative_frequency_is_anomaly_free() {
    let o = run(&[
        "analyze",
        "--prob",
        "--builder",
        "relfreq",
        "--n",
        "2",
        "--m",
        "2",
        "--domains",
        "strict",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["verdict"], "NBA");
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "analyze",
        "--builder",
        "plurality",
        "--n",
        "2",
        "--m",
        "2",
        "--domains",
        "weak_only",
    ];
    let a = run(&args);
    let b = run(&args);
    let c = run(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let timed = json(&run(&[&args[..], &["--timing"]].concat()));
    assert!(timed["duration_ms"].is_u64());
    assert!(json(&a).get("duration_ms").is_none());
}

#[test]
fn witness_round_trips_through_files() {
    let mech = scratch("ex1-rt.json", &built("example1"));
    let o = run(&["analyze", "--prob", "--mech", mech.to_str().unwrap()]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["verdict"], "BA");
    let Document::Probabilistic(f) =
        parse_document(&std::fs::read_to_string(&mech).unwrap()).unwrap()
    else {
        panic!("expected a probabilistic mechanism");
    };
    let doc: WitnessDoc = serde_json::from_value(r["witness"].clone()).unwrap();
    let w = witness_from_doc(f.env(), &doc).unwrap();
    validate_prob_witness(&f, &w).unwrap();
    assert!(w.ordering_in(f.env().domain(w.agent)));
}

#[test]
fn domain_file_and_text_report() {
    let domains = scratch(
        "domains.json",
        r#"[{"kind": "strict"}, {"kind": "weak_only"}, {"kind": "unrestricted"}]"#,
    );
    let spec = format!("file:{}", domains.display());
    let o = run(&[
        "analyze",
        "--builder",
        "referendum",
        "--domains",
        &spec,
        "--report",
        "text",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("verdict:   BA"), "{text}");
    assert!(
        text.contains("domains:   strict, weak_only, unrestricted"),
        "{text}"
    );
}

#[test]
fn verify_paper_passes_and_is_seed_independent() {
    let verdicts = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| l.split(':').next().unwrap().to_string())
            .collect()
    };
    let default = run(&["verify-paper"]);
    assert!(default.status.success(), "{}", stdout(&default));
    assert!(stdout(&default).contains("9/9 claims pass"));
    let seeded = run(&["verify-paper", "--seed", "7"]);
    assert!(seeded.status.success());
    assert_eq!(verdicts(&default), verdicts(&seeded));
}
