use std::process::Command;

pub struct RunResult {
    pub stdout: String,
    pub code: i32,
}

pub fn run(args: &[&str]) -> RunResult {
    let out = Command::new(env!("CARGO_BIN_EXE_gospace"))
        .args(args)
        .output()
        .expect("the binary runs");
    RunResult {
        stdout: String::from_utf8(out.stdout).expect("output is utf8"),
        code: out.status.code().unwrap_or(-1),
    }
}

/// The documented example invocations: golden name, argv, expected exit
/// code. Every entry has a frozen transcript under tests/golden/.
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("ord_cmp", &["ord", "cmp", "w*2+3", "w^2"], 0),
    ("ord_fund", &["ord", "fund", "w^2", "3"], 0),
    ("space_info", &["space", "info", "[0,w]"], 0),
    ("space_info_lines", &["space", "info", "[0,w]", "--format", "lines"], 0),
    ("basis_synth", &["basis", "synth", "[0,w*2]", "--depth", "4"], 0),
    ("basis_validate", &["basis", "validate", "tests/fixtures/omega_twice_chain.basis"], 0),
    ("basis_validate_not_clopen", &["basis", "validate", "tests/fixtures/not_clopen.basis"], 1),
    (
        "basis_validate_partial_strict",
        &["basis", "validate", "tests/fixtures/partial.basis", "--budget", "6"],
        1,
    ),
    (
        "basis_validate_partial_permissive",
        &["basis", "validate", "tests/fixtures/partial.basis", "--budget", "6", "--permissive"],
        0,
    ),
    ("order_cmp", &["order", "cmp", "[0,w^2]", "w", "w*2"], 0),
    ("order_sort", &["order", "sort", "[0,w^2]", "--budget", "12"], 0),
    ("power_square", &["power", "[0,w]", "2", "--verify", "--budget", "9"], 0),
    (
        "power_cube_revlex",
        &["power", "[0,w]", "3", "--verify", "--budget", "8", "--pairing", "revlex"],
        0,
    ),
    ("verify_axioms", &["verify", "[0,w]", "--suite", "axioms", "--samples", "30", "--seed", "0"], 0),
    (
        "verify_convexity",
        &["verify", "[0,w^2]", "--suite", "convexity", "--samples", "40", "--seed", "0"],
        0,
    ),
    ("verify_basis", &["verify", "[0,w^2]", "--suite", "basis", "--samples", "40", "--seed", "0"], 0),
    ("dump_tree", &["dump", "tree", "[0,w*2]", "--depth", "3"], 0),
    ("dump_tree_lines", &["dump", "tree", "[0,w^2]", "--depth", "2", "--format", "lines"], 0),
];

pub fn golden_path(name: &str) -> String {
    format!("tests/golden/{name}.txt")
}
