use std::path::{Path, PathBuf};
use std::process::Command;

use fitting_res::scenario::{bundled, run_source, Outcome, ReportFormat, RunOptions, BUNDLED};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn fitres(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fitres")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn bundled_scenarios_pass() {
    for (name, src) in BUNDLED {
        let report = run_source(src, RunOptions::default()).unwrap();
        assert_eq!(report.outcome(), Outcome::Pass, "{name}\n{}", report.render(ReportFormat::Text));
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["property_suites", "two_variable_alternation"] {
        let src = bundled(name).unwrap();
        let opts = RunOptions { seed: Some(99), cap: None };
        let a = run_source(src, opts).unwrap().render(ReportFormat::Structured);
        let b = run_source(src, opts).unwrap().render(ReportFormat::Structured);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn seed_reaches_the_reproducer() {
    let src = bundled("property_suites").unwrap();
    let text = run_source(src, RunOptions { seed: Some(5), cap: None }).unwrap().render(ReportFormat::Text);
    assert!(text.contains("seed: 5"));
    assert!(text.contains("with seed 5, case 0"), "{text}");
}

#[test]
fn cli_matches_golden_reports() {
    let (code, out, _) = fitres(&["run", "cubic_truncation", "--report", "structured"]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(data("golden/cubic_truncation.tsv")).unwrap());
    let (code, out, _) = fitres(&["run", "socle_splice"]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(data("golden/socle_splice.txt")).unwrap());
}

#[test]
fn structured_report_has_fixed_columns() {
    let (_, out, _) = fitres(&["run", "node_alternation", "--report", "structured"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("task\tn\tr\tverdict\tflag\twitness"));
    assert!(lines.clone().all(|l| l.split('\t').count() == 6));
    assert!(lines.any(|l| l == "alternation\t2\t1\t(y)\tup to degree 14\tx"), "{out}");
}

#[test]
fn exit_codes_follow_the_outcome() {
    let file = |n: &str| data(&format!("data/{n}.scn")).to_string_lossy().into_owned();
    let (code, out, _) = fitres(&["run", &file("truncated_evidence")]);
    assert_eq!(code, 2, "{out}");
    let (code, out, _) = fitres(&["run", &file("wrong_cycle")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("check cycle: fail"));
    let (code, _, err) = fitres(&["run", &file("parse_error")]);
    assert_eq!(code, 1);
    assert!(err.contains("parse error at 4:39"), "{err}");
}

#[test]
fn cap_flag_overrides_the_file() {
    let (code, out, _) = fitres(&["run", &data("data/truncated_evidence.scn").to_string_lossy(), "--cap", "9"]);
    assert_eq!(code, 2);
    assert!(out.contains("[up to degree 9]"), "{out}");
}

#[test]
fn check_all_summarizes_every_scenario() {
    let (code, out, _) = fitres(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), BUNDLED.len());
    let (code, out, _) = fitres(&["check-all"]);
    assert_eq!(code, 0);
    for (name, _) in BUNDLED {
        assert!(out.contains(&format!("\n{name}: pass")), "{name}");
    }
}
