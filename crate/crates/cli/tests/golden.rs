//! Golden transcripts for the documented invocations, plus the exact
//! output lines the tool promises to keep stable.

mod common;

use common::{golden_path, run, CASES};

#[test]
fn transcripts_match_golden_files() {
    for (name, args, want_code) in CASES {
        let got = run(args);
        let want = std::fs::read_to_string(golden_path(name))
            .unwrap_or_else(|e| panic!("{name}: missing golden file: {e}"));
        assert_eq!(got.stdout, want, "{name}: transcript drifted");
        assert_eq!(got.code, *want_code, "{name}: exit code");
    }
}

#[test]
fn pinned_lines_hold() {
    assert_eq!(run(&["ord", "cmp", "w*2+3", "w^2"]).stdout, "Less\n");
    assert_eq!(run(&["ord", "fund", "w^2", "3"]).stdout, "w*3\n");
    assert_eq!(
        run(&["space", "info", "[0,w]"]).stdout,
        "P-number: aleph0; non-isolated points in sample: {w}\n"
    );
    assert_eq!(
        run(&["verify", "[0,w]", "--suite", "axioms", "--samples", "30", "--seed", "0"]).stdout,
        "A1..A5: 0 violations\n"
    );
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(run(&["ord", "cmp", "w**2", "w"]).code, 2);
    assert_eq!(run(&["space", "info", "(w,0]"]).code, 2);
    assert_eq!(run(&["ord", "fund", "w+1", "3"]).code, 2);
    assert_eq!(run(&["order", "cmp", "[0,w]", "w*2", "0"]).code, 2);
    assert_eq!(run(&["basis", "validate", "tests/fixtures/no_such_file.basis"]).code, 2);
    assert_eq!(run(&["nonsense"]).code, 2);
}

#[test]
fn unresolved_is_exit_3_only_in_strict_mode() {
    let strict = run(&["order", "cmp", "[0,w^2]", "w*20+1", "w*20+2", "--stages", "5"]);
    assert_eq!(strict.code, 3);
    let loose = run(&[
        "order", "cmp", "[0,w^2]", "w*20+1", "w*20+2", "--stages", "5", "--permissive",
    ]);
    assert_eq!(loose.code, 0);
    assert_eq!(loose.stdout, "Unresolved (6 stages tried)\n");
}

#[test]
fn synth_output_round_trips_through_validate() {
    let synth = run(&["basis", "synth", "[0,w^2]", "--depth", "5"]);
    assert_eq!(synth.code, 0);
    let dir = std::env::temp_dir().join("gospace-roundtrip.basis");
    std::fs::write(&dir, &synth.stdout).expect("fixture writes");
    let validate = run(&["basis", "validate", dir.to_str().expect("utf8 path")]);
    assert_eq!(validate.code, 0, "synthesized stages validate: {}", validate.stdout);
}

#[test]
fn echoed_space_expressions_reparse_to_the_same_space() {
    use gospace::OrdinalSubspace;
    for expr in ["[0,w^2]", "{0}|(w,w*2]", "[0,w*3]\\{w,w*2}"] {
        let out = run(&["order", "sort", expr, "--budget", "6"]);
        assert_eq!(out.code, 0);
        let first = out.stdout.lines().next().expect("header line");
        let echoed = first.strip_prefix("space: ").expect("echo prefix");
        let original: OrdinalSubspace = expr.parse().expect("input parses");
        let reparsed: OrdinalSubspace = echoed.parse().expect("echo parses");
        assert_eq!(original.carrier(), reparsed.carrier(), "echo of {expr}");
    }
}
