//! Acceptance gate for the command-line tool: every documented invocation
//! is byte-identical across two runs and matches its frozen transcript.

mod common;

use common::{golden_path, run, CASES};

#[test]
fn c9_documented_invocations_are_deterministic() {
    let mut checked = 0usize;
    for (name, args, want_code) in CASES {
        let first = run(args);
        let second = run(args);
        let ok = first.stdout == second.stdout
            && first.code == second.code
            && first.code == *want_code;
        if !ok {
            println!(
                "acceptance 9: FAIL ({name}: codes {}/{} want {want_code}, outputs {})",
                first.code,
                second.code,
                if first.stdout == second.stdout { "stable" } else { "drifted between runs" },
            );
            panic!("acceptance 9: {name}");
        }
        let golden = std::fs::read_to_string(golden_path(name))
            .unwrap_or_else(|e| panic!("{name}: missing golden file: {e}"));
        if first.stdout != golden {
            println!("acceptance 9: FAIL ({name}: transcript drifted from golden file)");
            panic!("acceptance 9: {name}");
        }
        checked += 1;
    }
    println!(
        "acceptance 9: PASS ({checked} invocations byte-identical across runs and golden files)"
    );
}
