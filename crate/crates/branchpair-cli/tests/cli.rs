//! End-to-end checks of the binary: exit-code contract, transcript
//! prefixes, formats, and root resolution by label.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn branchpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchpair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn branchpair_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_branchpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn family_emits_labeled_text_that_analyze_accepts() {
    let family = branchpair(&["family", "w"]);
    assert_eq!(family.status.code(), Some(0));
    let text = stdout(&family);
    assert!(text.starts_with("digraph\n8\n"), "{text}");
    assert!(text.contains("# label 6 c2"));

    let analyze = branchpair_stdin(&["analyze", "-"], &text);
    assert_eq!(analyze.status.code(), Some(0));
    let report = stdout(&analyze);
    assert!(report.contains("STAT lambda=2"), "{report}");
    assert!(report.contains("STAT alpha=2"), "{report}");
    assert!(report.contains("co-bipartite=true"), "{report}");
}

#[test]
fn family_list_names_everything() {
    let out = branchpair(&["family", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["w", "h4", "e4", "badmulti", "glued-triple"] {
        assert!(text.lines().any(|l| l == name), "missing {name}");
    }
}

#[test]
fn solve_w_with_label_roots_reports_exhaustion() {
    let w = stdout(&branchpair(&["family", "w"]));
    let out = branchpair_stdin(&["solve", "-", "--root-in", "c1", "--root-out", "c2"], &w);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("CERT kind=exhausted-search"), "{text}");
}

#[test]
fn solve_f4_finds_a_pair_and_colors_dot_output() {
    let f4 = stdout(&branchpair(&["family", "f4"]));
    let out = branchpair_stdin(&["solve", "-", "--format", "dot"], &f4);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("CERT kind=pair-found"), "{text}");
    assert!(text.contains("digraph G {"), "{text}");
    assert!(text.contains("color=red"), "{text}");
    assert!(text.contains("color=blue"), "{text}");
}

#[test]
fn solve_e4_reports_no_pair() {
    let e4 = stdout(&branchpair(&["family", "e4"]));
    let out = branchpair_stdin(&["solve", "-"], &e4);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exhausted-search"));
}

#[test]
fn solve_badmulti_rooted_at_s() {
    let bad = stdout(&branchpair(&["family", "badmulti"]));
    let out = branchpair_stdin(&["solve", "-", "--root-in", "s", "--root-out", "s"], &bad);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exhausted-search"));
}

#[test]
fn verify_paper_rejects_unknown_claims() {
    let out = branchpair(&["verify-paper", "--claims", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_paper_single_claim_confirms() {
    let out = branchpair(&["verify-paper", "--claims", "e4-f4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("CLAIM e4-f4"), "{text}");
    assert!(text.contains("STATUS confirmed"), "{text}");
}

#[test]
fn enumerate_reports_counterexamples_with_exit_two() {
    // Order-2 digraphs without a good pair exist (anything but the
    // 2-cycle), so the unfiltered predicate sweep must refute.
    let out = branchpair(&["enumerate", "--n", "2", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("CERT counterexample"), "{text}");
}

#[test]
fn enumerate_clean_run_exits_zero() {
    let out = branchpair(&[
        "enumerate",
        "--n",
        "4",
        "--mode",
        "exhaustive",
        "--delta0-min",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failed=0"));
}

#[test]
fn enumerate_zero_budget_exits_three() {
    let out = branchpair(&[
        "enumerate",
        "--n",
        "6",
        "--mode",
        "sampled",
        "--count",
        "100000",
        "--budget-secs",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cross_validate_small_op() {
    let out = branchpair(&[
        "cross-validate",
        "--op",
        "small",
        "--count",
        "50",
        "--n-min",
        "2",
        "--n-max",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mismatches=0"));
}

#[test]
fn conjecture_probe_on_badmulti_fails_outside_hypotheses() {
    let bad = stdout(&branchpair(&["family", "badmulti"]));
    std::fs::write("/tmp/badmulti.dg", &bad).unwrap();
    let out = branchpair(&[
        "conjecture-search",
        "--conjecture",
        "same-root-alpha2",
        "--input",
        "/tmp/badmulti.dg",
    ]);
    // The conclusion fails at s but the digraph is a multidigraph, so it
    // is no counterexample: exit 0.
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("hypotheses-met=false"), "{text}");
    assert!(text.contains("failing-roots s=s t=s"), "{text}");
}

#[test]
fn conjecture_probe_on_w_below_lambda_three() {
    let w = stdout(&branchpair(&["family", "w"]));
    std::fs::write("/tmp/w.dg", &w).unwrap();
    let out = branchpair(&[
        "conjecture-search",
        "--conjecture",
        "prescribed-roots-3arc",
        "--input",
        "/tmp/w.dg",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("hypotheses-met=false"), "{text}");
    assert!(text.contains("failing-roots s=c2 t=c1"), "{text}");
}

#[test]
fn conjecture_sampling_run_exits_zero() {
    let out = branchpair(&[
        "conjecture-search",
        "--conjecture",
        "same-root-alpha2",
        "--count",
        "20",
        "--n-min",
        "6",
        "--n-max",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("counterexamples=0"));
}

#[test]
fn parse_errors_exit_one() {
    let out = branchpair_stdin(&["solve", "-"], "digraph\n2\n0 2\n");
    assert_eq!(out.status.code(), Some(1));
}
