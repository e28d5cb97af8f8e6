//! Command-line front end for the crepant-resolution verification
//! pipelines: exact reports as JSON, human summaries on stdout.
//!
//! Exit codes: 0 all requested checks pass, 1 a check fails (the witness
//! is printed), 2 usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crepant_core::a1::{verify_corollary, A1Report, BranchSign};
use crepant_core::characters::{
    character_table, crc_change_of_variables, grading_check, parse_cayley_json, parse_perm_text,
    so3_a4, so3_s3, so3_z2z2, su2_cyclic, FiniteGroup, Representation,
};
use crepant_core::coeff::RatFunc;
use crepant_core::partitions::Partition;
use crepant_core::series::{pade, TruncatedSeries, UniRatFunc};
use crepant_core::symhilb::{crc_report, quantum_mult_matrix, resum_matrix, CrcReport};
use crepant_core::Error;

#[derive(Parser)]
#[command(name = "crepant", version, about = "Exact quantum-cohomology checks for crepant resolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Branch {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BuiltinGroup {
    Z2,
    Z3,
    Z4,
    Z2z2,
    S3,
    A4,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the T*P^1 / [C^2/(+-1)] corollary at a truncation order.
    A1Verify {
        #[arg(long, default_value_t = 20)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Branch::Both)]
        branch: Branch,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Emit the Sym^n quantum multiplication matrix in u and q form.
    SymMatrix {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the Sym^n verification report.
    SymReport {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certified Pade reconstruction from Taylor coefficients.
    Pade {
        /// comma-separated rationals, e.g. 0,1,1,1/2
        #[arg(long)]
        coeffs: String,
        /// numerator degree bound
        #[arg(long)]
        num: usize,
        /// denominator degree bound
        #[arg(long)]
        den: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Character table of a builtin group or a group file.
    Chartable {
        #[arg(long, value_enum, conflicts_with_all = ["cayley", "perm"])]
        group: Option<BuiltinGroup>,
        /// path to a {"order":n,"table":[[...]]} JSON file
        #[arg(long)]
        cayley: Option<PathBuf>,
        /// path to a file of permutation generators in cycle notation
        #[arg(long)]
        perm: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Conjecture 3.1 change of variables for a builtin G in SL(V).
    CrcTransform {
        #[arg(long, value_enum)]
        group: BuiltinGroup,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Shift twisted variables x -> x + u in a series JSON file.
    ExtendPotential {
        /// path to a series JSON file
        #[arg(long)]
        input: PathBuf,
        /// comma-separated names of the twisted variables
        #[arg(long)]
        vars: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("CREPANT_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("CREPANT_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum Failure {
    Check(String),
    Usage(String),
}

type RunResult = std::result::Result<(), Failure>;

fn check_err(e: Error) -> Failure {
    Failure::Check(e.to_string())
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> RunResult {
    let text = serde_json::to_string(value)
        .map_err(|e| Failure::Usage(format!("serialization failed: {e}")))?;
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> RunResult {
    match command {
        Command::A1Verify { order, branch, json } => a1_verify(order, branch, &json),
        Command::SymMatrix { n, order, json } => sym_matrix(n, order, &json),
        Command::SymReport { n, order, seed, json } => sym_report(n, order, seed, &json),
        Command::Pade { coeffs, num, den, json } => run_pade(&coeffs, num, den, &json),
        Command::Chartable { group, cayley, perm, json } => chartable(group, &cayley, &perm, &json),
        Command::CrcTransform { group, json } => crc_transform(group, &json),
        Command::ExtendPotential { input, vars, json } => extend_potential(&input, &vars, &json),
    }
}

#[derive(Serialize)]
struct A1Output {
    order: u32,
    reports: Vec<A1Report>,
}

fn a1_verify(order: u32, branch: Branch, json: &Option<PathBuf>) -> RunResult {
    if order < 5 {
        return Err(Failure::Usage("--order must be at least 5".into()));
    }
    let branches = match branch {
        Branch::Plus => vec![BranchSign::PlusI],
        Branch::Minus => vec![BranchSign::MinusI],
        Branch::Both => vec![BranchSign::PlusI, BranchSign::MinusI],
    };
    let mut reports = Vec::new();
    for b in branches {
        let report = verify_corollary(order, b).map_err(check_err)?;
        if !report.x0_block_ok {
            return Err(Failure::Check(format!("x0 block mismatch on branch {b:?}")));
        }
        eprintln!(
            "a1-verify: branch {:?}, {} x1-degrees matched through {}",
            b,
            report.matched_degrees.len(),
            report.matched_degrees.last().copied().unwrap_or(0)
        );
        reports.push(report);
    }
    write_json(json, &A1Output { order, reports })
}

#[derive(Serialize)]
struct SymMatrixOutput {
    n: u32,
    order: u32,
    basis: Vec<Partition>,
    entries_u: Vec<Vec<TruncatedSeries>>,
    entries_q: Vec<Vec<UniRatFunc>>,
}

fn sym_matrix(n: u32, order: u32, json: &Option<PathBuf>) -> RunResult {
    if n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    let m = quantum_mult_matrix(n, order).map_err(check_err)?;
    let entries_q = resum_matrix(&m).map_err(check_err)?;
    eprintln!(
        "sym-matrix: n={n}, {dim}x{dim} matrix at u-order {order}, all entries resummed",
        dim = m.dim()
    );
    let out = SymMatrixOutput {
        n,
        order,
        basis: m.basis().to_vec(),
        entries_u: m.entries().to_vec(),
        entries_q,
    };
    write_json(json, &out)
}

fn sym_report(n: u32, order: u32, seed: u64, json: &Option<PathBuf>) -> RunResult {
    if n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    let report: CrcReport = crc_report(n, order, seed).map_err(check_err)?;
    let passed = report.all_passed();
    for (name, outcome) in [
        ("divisibility", &report.divisibility),
        ("frobenius", &report.frobenius_symmetry),
        ("resummation", &report.resummation),
        ("q-reality", &report.q_reality),
        ("eigenvalues", &report.distinct_eigenvalues),
    ] {
        let status = if outcome.passed { "ok" } else { "FAIL" };
        eprintln!("sym-report: {name}: {status}");
    }
    write_json(json, &report)?;
    if passed {
        Ok(())
    } else {
        let witness = [
            &report.divisibility,
            &report.frobenius_symmetry,
            &report.resummation,
            &report.q_reality,
            &report.distinct_eigenvalues,
        ]
        .iter()
        .find_map(|o| o.witness.clone())
        .unwrap_or_else(|| "unknown".into());
        Err(Failure::Check(witness))
    }
}

fn parse_rational(text: &str) -> std::result::Result<RatFunc, Failure> {
    let text = text.trim();
    let bad = || Failure::Usage(format!("bad rational: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(RatFunc::from_ratio(n, d))
        }
        None => {
            let n: i64 = text.parse().map_err(|_| bad())?;
            Ok(RatFunc::from_int(n))
        }
    }
}

fn run_pade(coeffs: &str, num: usize, den: usize, json: &Option<PathBuf>) -> RunResult {
    let coeffs: Vec<RatFunc> = coeffs
        .split(',')
        .map(parse_rational)
        .collect::<std::result::Result<_, _>>()?;
    let result = pade(&coeffs, num, den).map_err(check_err)?;
    println!("{result}");
    write_json(json, &result)
}

fn load_group(
    builtin: Option<BuiltinGroup>,
    cayley: &Option<PathBuf>,
    perm: &Option<PathBuf>,
) -> std::result::Result<FiniteGroup, Failure> {
    match (builtin, cayley, perm) {
        (Some(b), None, None) => Ok(match b {
            BuiltinGroup::Z2 => FiniteGroup::cyclic(2),
            BuiltinGroup::Z3 => FiniteGroup::cyclic(3),
            BuiltinGroup::Z4 => FiniteGroup::cyclic(4),
            BuiltinGroup::Z2z2 => FiniteGroup::z2z2(),
            BuiltinGroup::S3 => FiniteGroup::s3(),
            BuiltinGroup::A4 => FiniteGroup::a4(),
        }),
        (None, Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_cayley_json(&text).map_err(|e| Failure::Usage(e.to_string()))
        }
        (None, None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_perm_text(&text).map_err(|e| Failure::Usage(e.to_string()))
        }
        _ => Err(Failure::Usage(
            "give exactly one of --group, --cayley, --perm".into(),
        )),
    }
}

fn chartable(
    builtin: Option<BuiltinGroup>,
    cayley: &Option<PathBuf>,
    perm: &Option<PathBuf>,
    json: &Option<PathBuf>,
) -> RunResult {
    let group = load_group(builtin, cayley, perm)?;
    let table = character_table(&group).map_err(check_err)?;
    eprintln!(
        "chartable: order {}, {} classes, dims {:?}, orthogonality ok",
        table.order,
        table.classes.len(),
        table.dims
    );
    write_json(json, &table)
}

fn builtin_rep(b: BuiltinGroup) -> (FiniteGroup, Representation) {
    match b {
        BuiltinGroup::Z2 => su2_cyclic(2),
        BuiltinGroup::Z3 => su2_cyclic(3),
        BuiltinGroup::Z4 => su2_cyclic(4),
        BuiltinGroup::Z2z2 => so3_z2z2(),
        BuiltinGroup::S3 => so3_s3(),
        BuiltinGroup::A4 => so3_a4(),
    }
}

fn crc_transform(builtin: BuiltinGroup, json: &Option<PathBuf>) -> RunResult {
    let (group, rep) = builtin_rep(builtin);
    let ages = rep.age_check(&group).map_err(check_err)?;
    let (transform, _) = crc_change_of_variables(&group, &rep).map_err(check_err)?;
    grading_check(&transform, &ages).map_err(check_err)?;
    eprintln!(
        "crc-transform: |G| = {}, {} rows, grading ok",
        transform.group_order,
        transform.rows.len()
    );
    write_json(json, &transform)
}

fn extend_potential(input: &PathBuf, vars: &str, json: &Option<PathBuf>) -> RunResult {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let series: TruncatedSeries =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad series JSON: {e}")))?;
    let twisted: Vec<(usize, String)> = vars
        .split(',')
        .map(|name| {
            let name = name.trim();
            series
                .ring()
                .var_index(name)
                .map(|idx| (idx, format!("u_{name}")))
                .ok_or_else(|| Failure::Usage(format!("no variable named {name:?}")))
        })
        .collect::<std::result::Result<_, _>>()?;
    let extended = series.extend_shift(&twisted).map_err(check_err)?;
    eprintln!(
        "extend-potential: adjoined {} twisted direction(s)",
        twisted.len()
    );
    write_json(json, &extended)
}
