//! Command-line front end: parses the ordinal and set DSL, runs the
//! constructions, and emits deterministic reports.
//!
//! Exit codes: 0 clean, 1 violations found, 2 usage or parse error,
//! 3 unresolved comparison in strict mode.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gospace::{
    check_conditions, decomposition_dump, parse_basis, power_space, synthesize_basis, BlockId,
    BlockOrderPolicy, Comparison, CoverMode, DecompositionNode, Ordinal, OrdinalSubspace,
    OrderError, OrderWitness, PiecewiseSet, Point, Space, StagePairing, StratifiedBasis,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "gospace", version, about = "Linear orders on zero-dimensional spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Synthesis and dump depth; suites check stages 0..=depth.
    #[arg(long, global = true, default_value_t = 8)]
    depth: u64,

    /// Sample size for space sampling.
    #[arg(long, global = true, default_value_t = 64)]
    budget: usize,

    /// Seed for the sampled convexity triples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Stage cap for point comparisons.
    #[arg(long, global = true, default_value_t = 128)]
    stages: usize,

    /// Report unresolved comparisons instead of failing, and let basis
    /// files leave stages partial.
    #[arg(long, global = true)]
    permissive: bool,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Lines,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ordinal arithmetic on CNF expressions.
    Ord {
        #[command(subcommand)]
        cmd: OrdCmd,
    },
    /// Facts about a subspace of the ordinals.
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// Build or check stratified bases.
    Basis {
        #[command(subcommand)]
        cmd: BasisCmd,
    },
    /// Compare or sort points under the constructed order.
    Order {
        #[command(subcommand)]
        cmd: OrderCmd,
    },
    /// The n-th power of a space under a product basis.
    Power {
        expr: String,
        n: usize,
        /// Sort a sample and run the axiom and convexity suites on it.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Pairing::Diagonal)]
        pairing: Pairing,
    },
    /// Run a verification suite against a sampled space.
    Verify {
        expr: String,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Points to sample; defaults to the budget.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Deterministic dumps of internal structure.
    Dump {
        #[command(subcommand)]
        cmd: DumpCmd,
    },
}

#[derive(Subcommand)]
enum OrdCmd {
    /// Compare two ordinals.
    Cmp { a: String, b: String },
    /// The n-th member of the fundamental sequence of a limit.
    Fund { a: String, n: u64 },
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// P-number and sample classification.
    Info { expr: String },
}

#[derive(Subcommand)]
enum BasisCmd {
    /// Synthesize a basis and print it in the stage-per-line file format.
    Synth { expr: String },
    /// Validate a basis file against the space its first stage defines.
    Validate { file: String },
}

#[derive(Subcommand)]
enum OrderCmd {
    /// Compare two points of the space.
    Cmp { expr: String, x: String, y: String },
    /// Sort a sample of the space.
    Sort { expr: String },
}

#[derive(Subcommand)]
enum DumpCmd {
    /// The decomposition tree behind basis synthesis.
    Tree { expr: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pairing {
    Diagonal,
    Revlex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Axioms,
    Convexity,
    Basis,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn ordinal_arg(s: &str) -> Result<Ordinal, Failure> {
    s.parse::<Ordinal>().map_err(|e| {
        fail(2, format!("ordinal {s:?}: position {}: {}", e.position, e.message))
    })
}

fn space_arg(s: &str) -> Result<OrdinalSubspace, Failure> {
    s.parse::<OrdinalSubspace>().map_err(|e| {
        fail(2, format!("space {s:?}: position {}: {}", e.position, e.message))
    })
}

fn synth_arg(sp: &OrdinalSubspace) -> Result<StratifiedBasis, Failure> {
    synthesize_basis(sp).map_err(|e| fail(1, e.to_string()))
}

fn witness(basis: StratifiedBasis, cap: usize) -> OrderWitness {
    OrderWitness::new(basis, BlockOrderPolicy::Canonical, cap)
        .expect("the canonical policy is always valid")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.cmd {
        Cmd::Ord { cmd } => run_ord(cli, cmd),
        Cmd::Space { cmd } => run_space(cli, cmd),
        Cmd::Basis { cmd } => run_basis(cli, cmd),
        Cmd::Order { cmd } => run_order(cli, cmd),
        Cmd::Power { expr, n, verify, pairing } => run_power(cli, expr, *n, *verify, *pairing),
        Cmd::Verify { expr, suite, samples } => run_verify(cli, expr, *suite, *samples),
        Cmd::Dump { cmd } => run_dump(cli, cmd),
    }
}

fn run_ord(cli: &Cli, cmd: &OrdCmd) -> Result<u8, Failure> {
    match cmd {
        OrdCmd::Cmp { a, b } => {
            let (a, b) = (ordinal_arg(a)?, ordinal_arg(b)?);
            let word = match a.cmp(&b) {
                std::cmp::Ordering::Less => "Less",
                std::cmp::Ordering::Equal => "Equal",
                std::cmp::Ordering::Greater => "Greater",
            };
            match cli.format {
                Format::Human => println!("{word}"),
                Format::Lines => println!("result\t{word}"),
            }
            Ok(0)
        }
        OrdCmd::Fund { a, n } => {
            let a = ordinal_arg(a)?;
            let f = a
                .fundamental_sequence(*n)
                .map_err(|e| fail(2, format!("fund {a}: {e}")))?;
            match cli.format {
                Format::Human => println!("{f}"),
                Format::Lines => println!("result\t{f}"),
            }
            Ok(0)
        }
    }
}

fn run_space(cli: &Cli, cmd: &SpaceCmd) -> Result<u8, Failure> {
    let SpaceCmd::Info { expr } = cmd;
    let sp = space_arg(expr)?;
    let sample = sp.sample(cli.budget, cli.depth);
    let non_isolated: Vec<String> = sample
        .iter()
        .filter(|x| !sp.is_isolated(x).expect("sampled points are members"))
        .map(|x| x.to_string())
        .collect();
    match cli.format {
        Format::Human => println!(
            "P-number: {}; non-isolated points in sample: {{{}}}",
            sp.p_number(),
            non_isolated.join(",")
        ),
        Format::Lines => {
            println!("space\t{}", sp.carrier());
            println!("p_number\t{}", sp.p_number());
            println!("sample_size\t{}", sample.len());
            println!("non_isolated\t{{{}}}", non_isolated.join(","));
        }
    }
    Ok(0)
}

fn run_basis(cli: &Cli, cmd: &BasisCmd) -> Result<u8, Failure> {
    match cmd {
        BasisCmd::Synth { expr } => {
            let sp = space_arg(expr)?;
            let conditions = check_conditions(&sp);
            if !conditions.clean() {
                println!("{conditions}");
                return Ok(1);
            }
            let basis = synth_arg(&sp)?;
            for stage in 0..=cli.depth as usize {
                let cover = basis
                    .cover(stage)
                    .map_err(|e| fail(1, e.to_string()))?;
                let line: Vec<String> = cover
                    .blocks
                    .iter()
                    .map(|b| {
                        b.as_piecewise()
                            .expect("synthesized blocks are one-dimensional")
                            .to_string()
                    })
                    .collect();
                match cli.format {
                    Format::Human => println!("{}", line.join("; ")),
                    Format::Lines => println!("stage_{stage}\t{}", line.join("; ")),
                }
            }
            Ok(0)
        }
        BasisCmd::Validate { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| fail(2, format!("{file}: {e}")))?;
            let mode = if cli.permissive { CoverMode::Permissive } else { CoverMode::Strict };
            let (sp, basis) =
                parse_basis(&text, mode).map_err(|e| fail(2, e.to_string()))?;
            let report = basis
                .validate(&Space::Ordinal(sp), cli.depth as usize + 1, cli.budget, cli.depth, false)
                .map_err(|e| fail(1, e.to_string()))?;
            match cli.format {
                Format::Human => println!("{report}"),
                Format::Lines => {
                    println!("stages\t{}", report.stages_checked);
                    println!("points\t{}", report.points_checked);
                    println!("violations\t{}", report.violations.len());
                    for v in &report.violations {
                        println!("violation\t{v}");
                    }
                }
            }
            Ok(if report.clean() { 0 } else { 1 })
        }
    }
}

/// Maps an unresolved comparison to the exit contract: strict mode fails
/// with code 3, permissive mode reports and stays clean.
fn unresolved(cli: &Cli, detail: String) -> Result<u8, Failure> {
    if cli.permissive {
        match cli.format {
            Format::Human => println!("Unresolved ({detail})"),
            Format::Lines => println!("result\tUnresolved ({detail})"),
        }
        Ok(0)
    } else {
        Err(fail(3, format!("unresolved: {detail}")))
    }
}

fn run_order(cli: &Cli, cmd: &OrderCmd) -> Result<u8, Failure> {
    match cmd {
        OrderCmd::Cmp { expr, x, y } => {
            let sp = space_arg(expr)?;
            let (x, y) = (ordinal_arg(x)?, ordinal_arg(y)?);
            for p in [&x, &y] {
                if !sp.member(p) {
                    return Err(fail(2, format!("{p} is not a member of {}", sp.carrier())));
                }
            }
            let w = witness(synth_arg(&sp)?, cli.stages);
            let cmp = w
                .compare(&Point::Ord(x), &Point::Ord(y))
                .map_err(|e| fail(1, e.to_string()))?;
            let (word, stage) = match &cmp {
                Comparison::Equal => ("Equal", None),
                Comparison::Less(d) => ("Less", Some(d.stage)),
                Comparison::Greater(d) => ("Greater", Some(d.stage)),
                Comparison::Unresolved { stages_tried } => {
                    return unresolved(cli, format!("{stages_tried} stages tried"));
                }
            };
            match (cli.format, stage) {
                (Format::Human, Some(s)) => println!("{word} (stage {s})"),
                (Format::Human, None) => println!("{word}"),
                (Format::Lines, s) => {
                    println!("result\t{word}");
                    if let Some(s) = s {
                        println!("stage\t{s}");
                    }
                }
            }
            Ok(0)
        }
        OrderCmd::Sort { expr } => {
            let sp = space_arg(expr)?;
            let w = witness(synth_arg(&sp)?, cli.stages);
            let points: Vec<Point> =
                sp.sample(cli.budget, cli.depth).into_iter().map(Point::Ord).collect();
            let sorted = match w.sort_points(&points) {
                Ok(s) => s,
                Err(OrderError::Unresolved { x, y, stages_tried }) => {
                    return unresolved(cli, format!("{x} vs {y} after {stages_tried} stages"));
                }
                Err(e) => return Err(fail(1, e.to_string())),
            };
            match cli.format {
                Format::Human => {
                    println!("space: {}", sp.carrier());
                    for p in &sorted {
                        println!("{p}");
                    }
                }
                Format::Lines => {
                    println!("space\t{}", sp.carrier());
                    for (i, p) in sorted.iter().enumerate() {
                        println!("point_{i}\t{p}");
                    }
                }
            }
            Ok(0)
        }
    }
}

fn run_power(
    cli: &Cli,
    expr: &str,
    n: usize,
    verify: bool,
    pairing: Pairing,
) -> Result<u8, Failure> {
    let sp = space_arg(expr)?;
    let factor_basis = synth_arg(&sp)?;
    let stage_pairing = match pairing {
        Pairing::Diagonal => StagePairing::Diagonal,
        Pairing::Revlex => StagePairing::DiagonalRevLex,
    };
    let (space, basis) =
        power_space(&sp, &factor_basis, n, stage_pairing).map_err(|e| fail(2, e.to_string()))?;
    let sample = space.sample(cli.budget, cli.depth);
    let pairing_name = match pairing {
        Pairing::Diagonal => "diagonal",
        Pairing::Revlex => "revlex",
    };

    let mut lines = Vec::new();
    match cli.format {
        Format::Human => {
            lines.push(format!("space: ({})^{n}, pairing {pairing_name}", sp.carrier()));
            lines.push(format!("P-number: {}", space.p_number()));
            lines.push(format!("sample: {} points", sample.len()));
        }
        Format::Lines => {
            lines.push(format!("space\t({})^{n}", sp.carrier()));
            lines.push(format!("pairing\t{pairing_name}"));
            lines.push(format!("p_number\t{}", space.p_number()));
            lines.push(format!("sample_size\t{}", sample.len()));
        }
    }

    let mut code = 0u8;
    if verify {
        let w = witness(basis, cli.stages);
        let sorted = match w.sort_points(&sample) {
            Ok(s) => s,
            Err(OrderError::Unresolved { x, y, stages_tried }) => {
                for l in lines {
                    println!("{l}");
                }
                return unresolved(cli, format!("{x} vs {y} after {stages_tried} stages"));
            }
            Err(e) => return Err(fail(1, e.to_string())),
        };
        let axioms = w.check_axioms(&sample).map_err(|e| fail(1, e.to_string()))?;
        let convexity = w
            .check_convexity(&sample, cli.depth as usize + 1, false)
            .map_err(|e| fail(1, e.to_string()))?;
        if !axioms.clean() || !convexity.clean() {
            code = 1;
        }
        match cli.format {
            Format::Human => {
                lines.push(format!("{axioms}"));
                lines.push(format!(
                    "convexity: {} violations in {} checks",
                    convexity.violations.len(),
                    convexity.checks_performed
                ));
                lines.push("sorted sample:".to_string());
                for p in &sorted {
                    lines.push(p.to_string());
                }
            }
            Format::Lines => {
                lines.push(format!("axiom_violations\t{}", axioms.violations.len()));
                lines.push(format!("convexity_checks\t{}", convexity.checks_performed));
                lines.push(format!("convexity_violations\t{}", convexity.violations.len()));
                for (i, p) in sorted.iter().enumerate() {
                    lines.push(format!("point_{i}\t{p}"));
                }
            }
        }
    }
    for l in lines {
        println!("{l}");
    }
    Ok(code)
}

/// Draws (stage, triple) samples and checks that a middle point never
/// escapes a refinement cell its neighbors share.
fn sampled_cell_checks(
    basis: &StratifiedBasis,
    sorted: &[Point],
    stages: usize,
    count: usize,
    seed: u64,
) -> Result<(usize, usize), Failure> {
    let mut paths: Vec<Vec<Option<BlockId>>> = Vec::with_capacity(sorted.len());
    for p in sorted {
        paths.push(basis.trace(p, stages).map_err(|e| fail(1, e.to_string()))?.path);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    for _ in 0..count {
        let s = rng.random_range(0..stages);
        let mut idx = [
            rng.random_range(0..sorted.len()),
            rng.random_range(0..sorted.len()),
            rng.random_range(0..sorted.len()),
        ];
        idx.sort_unstable();
        let [i, j, k] = idx;
        if paths[i][..=s] == paths[k][..=s] && paths[j][..=s] != paths[i][..=s] {
            violations += 1;
        }
    }
    Ok((count, violations))
}

fn run_verify(cli: &Cli, expr: &str, suite: Suite, samples: Option<usize>) -> Result<u8, Failure> {
    let sp = space_arg(expr)?;
    let basis = synth_arg(&sp)?;
    let budget = samples.unwrap_or(cli.budget);
    let points: Vec<Point> = sp.sample(budget, cli.depth).into_iter().map(Point::Ord).collect();
    let w = witness(basis.clone(), cli.stages);
    match suite {
        Suite::Axioms => {
            let report = w.check_axioms(&points).map_err(|e| fail(1, e.to_string()))?;
            match cli.format {
                Format::Human => println!("{report}"),
                Format::Lines => {
                    println!("suite\taxioms");
                    println!("points\t{}", report.points_checked);
                    println!("violations\t{}", report.violations.len());
                }
            }
            Ok(if report.clean() { 0 } else { 1 })
        }
        Suite::Convexity => {
            let stages = cli.depth as usize + 1;
            let report = w
                .check_convexity(&points, stages, basis.chain_refining())
                .map_err(|e| fail(1, e.to_string()))?;
            let sorted = match w.sort_points(&points) {
                Ok(s) => s,
                Err(OrderError::Unresolved { x, y, stages_tried }) => {
                    return unresolved(cli, format!("{x} vs {y} after {stages_tried} stages"));
                }
                Err(e) => return Err(fail(1, e.to_string())),
            };
            let (sampled, bad) =
                sampled_cell_checks(&basis, &sorted, stages, points.len() * 40, cli.seed)?;
            let clean = report.clean() && bad == 0;
            match cli.format {
                Format::Human => println!(
                    "convexity: {} violations in {} checks ({} structural, {sampled} sampled triples)",
                    report.violations.len() + bad,
                    report.checks_performed + sampled,
                    report.checks_performed
                ),
                Format::Lines => {
                    println!("suite\tconvexity");
                    println!("checks\t{}", report.checks_performed + sampled);
                    println!("violations\t{}", report.violations.len() + bad);
                }
            }
            Ok(if clean { 0 } else { 1 })
        }
        Suite::Basis => {
            let mut cases: Vec<(Point, PiecewiseSet)> = Vec::new();
            for round in 1..=2u64 {
                for p in &points {
                    let Point::Ord(x) = p else { continue };
                    let lo = match x.classify() {
                        gospace::OrdinalKind::Zero => None,
                        gospace::OrdinalKind::Successor => x.pred(),
                        gospace::OrdinalKind::Limit => {
                            Some(x.fundamental_sequence(3 * round).expect("limit"))
                        }
                    };
                    cases.push((p.clone(), sp.trace_interval(lo.as_ref(), x)));
                }
            }
            let report = w.check_basis_property(&cases).map_err(|e| fail(1, e.to_string()))?;
            match cli.format {
                Format::Human => println!(
                    "basis property: {} failures in {} cases (deepest stage {})",
                    report.failures.len(),
                    report.cases_checked,
                    report.deepest_stage
                ),
                Format::Lines => {
                    println!("suite\tbasis");
                    println!("cases\t{}", report.cases_checked);
                    println!("failures\t{}", report.failures.len());
                }
            }
            Ok(if report.clean() { 0 } else { 1 })
        }
    }
}

fn run_dump(cli: &Cli, cmd: &DumpCmd) -> Result<u8, Failure> {
    let DumpCmd::Tree { expr } = cmd;
    let sp = space_arg(expr)?;
    let node = decomposition_dump(&sp, cli.depth as usize);
    match cli.format {
        Format::Human => println!("{node}"),
        Format::Lines => {
            fn walk(node: &DecompositionNode, level: usize) {
                println!("node\t{level} {} {}", node.block, node.kind);
                for child in &node.children {
                    walk(child, level + 1);
                }
            }
            walk(&node, 0);
        }
    }
    Ok(0)
}
