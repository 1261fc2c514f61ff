//! Command-line front end: `solve`, `generate`, `trace`, `verify`,
//! `bounds`, and `bench` subcommands over the library.
//!
//! Exit codes: 0 success (certified where applicable), 2 usage (from the
//! argument parser), 3 I/O, 4 instance parse failure, 5 solver/config
//! error, 6 certification failure, 7 solver/reference disagreement.

use crate::bounds::{z_prime_sup, z_sup, BoundsError};
use crate::forest::StopMode;
use crate::instance::{
    gen_assignment, gen_random, gen_worst_case, parse_instance, serialize_instance, GenerateError,
    GeneratorConfig, Instance, ParseError,
};
use crate::oracle::{oracle_solve_with_cap, OracleError, ORACLE_DEFAULT_CELL_CAP};
use crate::solver::{
    format_trace_line, solve, verify_optimality, DescentStrategy, SolveError, SolveOptions,
};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_IO: u8 = 3;
pub const EXIT_PARSE: u8 = 4;
pub const EXIT_SOLVE: u8 = 5;
pub const EXIT_NOT_CERTIFIED: u8 = 6;
pub const EXIT_DISAGREEMENT: u8 = 7;

#[derive(Debug)]
enum CliError {
    Io(String),
    Parse(ParseError),
    Solve(SolveError),
    Oracle(OracleError),
    Bounds(BoundsError),
    Generate(GenerateError),
    NotCertified(String),
    Disagreement(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Solve(e) => write!(f, "{e}"),
            CliError::Oracle(e) => write!(f, "{e}"),
            CliError::Bounds(e) => write!(f, "{e}"),
            CliError::Generate(e) => write!(f, "{e}"),
            CliError::NotCertified(e) => write!(f, "{e}"),
            CliError::Disagreement(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Solve(_) | CliError::Bounds(_) | CliError::Generate(_) => EXIT_SOLVE,
            CliError::Oracle(_) => EXIT_SOLVE,
            CliError::NotCertified(_) => EXIT_NOT_CERTIFIED,
            CliError::Disagreement(_) => EXIT_DISAGREEMENT,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "hitchcock",
    version,
    about = "Exact solver for balanced transportation problems by mechanical equilibrium"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and report cost, cycles, and a certificate.
    Solve(SolveArgs),
    /// Write an instance in the text format.
    Generate(GenerateArgs),
    /// Print the per-cycle event log of a reference-configuration run.
    Trace(TraceArgs),
    /// Solve with both the tree solver and the independent reference
    /// solver and report whether they agree.
    Verify(VerifyArgs),
    /// Print cycle-count bounds as a grid over problem shapes.
    Bounds(BoundsArgs),
    /// Run the randomized benchmark protocol and report cycle statistics.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// One stop for all rows: the whole bundle descends together.
    Single,
    /// One stop per row, released one at a time.
    PerRow,
}

impl From<ModeArg> for StopMode {
    fn from(m: ModeArg) -> StopMode {
        match m {
            ModeArg::Single => StopMode::SingleStop,
            ModeArg::PerRow => StopMode::PerRowStops,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DescentArg {
    /// Full scan of moving rows x fixed columns.
    Naive,
    /// Early-exit scan from a golden-ratio-shuffled start.
    A,
    /// Cached per-branch distances (per-row stops only).
    B,
}

impl From<DescentArg> for DescentStrategy {
    fn from(d: DescentArg) -> DescentStrategy {
        match d {
            DescentArg::Naive => DescentStrategy::Naive,
            DescentArg::A => DescentStrategy::VersionA,
            DescentArg::B => DescentStrategy::VersionB,
        }
    }
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Instance file in the text format; `-` reads standard input.
    instance: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = DescentArg::Naive)]
    descent: DescentArg,
    /// Starting row height (default: max profit + 1).
    #[arg(long = "c-sup")]
    c_sup: Option<i64>,
    /// Check every invariant after every cycle (slow).
    #[arg(long)]
    verify_each_cycle: bool,
    /// Print the positive flows.
    #[arg(long)]
    flows: bool,
    /// Print the final heights (dual variables).
    #[arg(long)]
    duals: bool,
    /// Emit the full report and certificate as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[command(subcommand)]
    kind: GenerateKind,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Uniform random supplies, demands, and profits (balanced by
    /// construction).
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Largest supply; demands draw from the matched range
        /// m*a_max = n*b_max.
        #[arg(long, default_value_t = 100)]
        a_max: i64,
        /// Largest demand (default: m*a_max/n, which must divide evenly).
        #[arg(long)]
        b_max: Option<i64>,
        #[arg(long, default_value_t = 100)]
        c_max: i64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The n x n family whose cycle count grows as 3*2^(n-1) - 2.
    WorstCase {
        #[arg(long)]
        n: usize,
    },
    /// Random assignment instance: unit supplies and demands.
    Assignment {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        c_max: i64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// One instance of the benchmark random model for a given size.
    Bench {
        #[arg(long)]
        n: usize,
        /// Restrict profits to [0, 20] to force heavy slack degeneracy.
        #[arg(long)]
        degenerate: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct TraceArgs {
    /// Instance file; `-` reads standard input.
    instance: String,
    /// Starting row height (default: max profit + 1).
    #[arg(long = "c-sup")]
    c_sup: Option<i64>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Instance file; `-` reads standard input.
    instance: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = DescentArg::Naive)]
    descent: DescentArg,
    #[arg(long = "c-sup")]
    c_sup: Option<i64>,
    /// Cell-count cap for the reference solver.
    #[arg(long, default_value_t = ORACLE_DEFAULT_CELL_CAP)]
    max_cells: usize,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 10)]
    m_max: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Board sizes n (square problems), comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [10usize, 20, 30])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    reps: u32,
    /// Degenerate regime: profits in [0, 20] instead of [0, n*n].
    #[arg(long)]
    degenerate: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::PerRow)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = DescentArg::B)]
    descent: DescentArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

/// Statistics for one benchmark size.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub mode: String,
    pub strategy: String,
    pub regime: String,
    pub reps: u32,
    pub mean_cycles: f64,
    pub rms_cycles: f64,
    pub mean_solve_ms: f64,
    pub mean_setup_ms: f64,
}

/// The `bench` subcommand's result: one row per requested size.
#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

/// Runs the benchmark protocol: for each size, `reps` instances of the
/// random model (per-rep seed = master seed + rep), solved with the given
/// configuration. Cycle statistics are deterministic for a fixed seed; the
/// reported times measure the solve only, setup separately.
pub fn run_bench(
    sizes: &[usize],
    reps: u32,
    degenerate: bool,
    mode: StopMode,
    strategy: DescentStrategy,
    seed: u64,
) -> Result<BenchReport, String> {
    let mut rows = Vec::new();
    for &n in sizes {
        let samples: Vec<Result<(u64, f64, f64), String>> = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let setup_started = std::time::Instant::now();
                let cfg =
                    GeneratorConfig::bench_model(n, degenerate, seed.wrapping_add(rep as u64))
                        .map_err(|e| e.to_string())?;
                let inst = gen_random(&cfg);
                let setup_ms = setup_started.elapsed().as_secs_f64() * 1e3;
                let opts = SolveOptions { mode, descent: strategy, ..SolveOptions::default() };
                let report = solve(&inst, &opts).map_err(|e| e.to_string())?;
                Ok((report.cycles, report.elapsed.as_secs_f64() * 1e3, setup_ms))
            })
            .collect();
        let mut cycles = Vec::with_capacity(samples.len());
        let mut solve_ms = 0.0;
        let mut setup_ms = 0.0;
        for s in samples {
            let (c, sm, gm) = s?;
            cycles.push(c as f64);
            solve_ms += sm;
            setup_ms += gm;
        }
        let count = cycles.len() as f64;
        let mean = cycles.iter().sum::<f64>() / count;
        let rms = (cycles.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / count).sqrt();
        rows.push(BenchRow {
            n,
            mode: mode_name(mode).to_string(),
            strategy: strategy_name(strategy).to_string(),
            regime: if degenerate { "degenerate" } else { "non-degenerate" }.to_string(),
            reps,
            mean_cycles: mean,
            rms_cycles: rms,
            mean_solve_ms: solve_ms / count,
            mean_setup_ms: setup_ms / count,
        });
    }
    Ok(BenchReport { seed, rows })
}

fn mode_name(mode: StopMode) -> &'static str {
    match mode {
        StopMode::SingleStop => "single",
        StopMode::PerRowStops => "per-row",
    }
}

fn strategy_name(s: DescentStrategy) -> &'static str {
    match s {
        DescentStrategy::Naive => "naive",
        DescentStrategy::VersionA => "a",
        DescentStrategy::VersionB => "b",
    }
}

fn read_instance(path: &str) -> Result<Instance, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {path}: {e}")))?
    };
    parse_instance(&text).map_err(CliError::Parse)
}

fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let inst = read_instance(&args.instance)?;
    let opts = SolveOptions {
        mode: args.mode.into(),
        descent: args.descent.into(),
        c_sup_override: args.c_sup,
        verify_each_cycle: args.verify_each_cycle,
        trace: false,
    };
    let report = solve(&inst, &opts).map_err(CliError::Solve)?;
    let cert = verify_optimality(&inst, &report.flows, &report.alpha, &report.beta);
    if args.json {
        #[derive(Serialize)]
        struct Out<'a> {
            report: &'a crate::solver::SolveReport,
            certificate: &'a crate::solver::CertificateReport,
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&Out { report: &report, certificate: &cert })
                .expect("report serialization")
        );
    } else {
        println!("cost {}", report.cost);
        println!("cycles {}", report.cycles);
        println!("elapsed_ms {:.3}", report.elapsed.as_secs_f64() * 1e3);
        println!("scanned_cells {}", report.scanned_cells);
        if args.flows {
            for &(i, j, f) in &report.flows {
                println!("flow {} {} {}", i + 1, j + 1, f);
            }
        }
        if args.duals {
            let alpha: Vec<String> = report.alpha.iter().map(i64::to_string).collect();
            let beta: Vec<String> = report.beta.iter().map(i64::to_string).collect();
            println!("alpha {}", alpha.join(" "));
            println!("beta {}", beta.join(" "));
        }
        println!("{cert}");
    }
    if cert.certified() {
        Ok(())
    } else {
        Err(CliError::NotCertified(cert.to_string()))
    }
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    let inst = match args.kind {
        GenerateKind::Random { m, n, a_max, b_max, c_max, seed } => {
            let b_max = match b_max {
                Some(b) => b,
                None => {
                    let total = (m as i128) * (a_max as i128);
                    if n == 0 || total % (n as i128) != 0 {
                        return Err(CliError::Generate(GenerateError::InvalidConfig(format!(
                            "m*a_max = {total} is not divisible by n = {n}; pass --b-max explicitly"
                        ))));
                    }
                    (total / (n as i128)) as i64
                }
            };
            let cfg = GeneratorConfig::new(m, n, a_max, b_max, c_max, seed)
                .map_err(CliError::Generate)?;
            gen_random(&cfg)
        }
        GenerateKind::WorstCase { n } => gen_worst_case(n).map_err(CliError::Generate)?,
        GenerateKind::Assignment { n, c_max, seed } => {
            if n == 0 {
                return Err(CliError::Generate(GenerateError::TooSmall));
            }
            gen_assignment(n, c_max, seed)
        }
        GenerateKind::Bench { n, degenerate, seed } => {
            let cfg =
                GeneratorConfig::bench_model(n, degenerate, seed).map_err(CliError::Generate)?;
            gen_random(&cfg)
        }
    };
    let text = serialize_instance(&inst);
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_trace(args: &TraceArgs) -> Result<(), CliError> {
    let inst = read_instance(&args.instance)?;
    // The reference configuration: single stop, naive descent. The trace
    // format is pinned; regression tests compare it byte-for-byte.
    let opts = SolveOptions {
        mode: StopMode::SingleStop,
        descent: DescentStrategy::Naive,
        c_sup_override: args.c_sup,
        verify_each_cycle: false,
        trace: true,
    };
    let report = solve(&inst, &opts).map_err(CliError::Solve)?;
    for (idx, event) in report.trace.as_ref().unwrap().iter().enumerate() {
        println!("{}", format_trace_line(idx as u64 + 1, event, StopMode::SingleStop));
    }
    let cert = verify_optimality(&inst, &report.flows, &report.alpha, &report.beta);
    if cert.certified() {
        Ok(())
    } else {
        Err(CliError::NotCertified(cert.to_string()))
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let inst = read_instance(&args.instance)?;
    let opts = SolveOptions {
        mode: args.mode.into(),
        descent: args.descent.into(),
        c_sup_override: args.c_sup,
        verify_each_cycle: true,
        trace: false,
    };
    let report = solve(&inst, &opts).map_err(CliError::Solve)?;
    let cert = verify_optimality(&inst, &report.flows, &report.alpha, &report.beta);
    let reference = oracle_solve_with_cap(&inst, args.max_cells).map_err(CliError::Oracle)?;
    let agree = report.cost == reference.cost && cert.certified();
    if args.json {
        #[derive(Serialize)]
        struct Out<'a> {
            solver_cost: String,
            reference_cost: String,
            cycles: u64,
            certificate: &'a crate::solver::CertificateReport,
            agree: bool,
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&Out {
                solver_cost: report.cost.to_string(),
                reference_cost: reference.cost.to_string(),
                cycles: report.cycles,
                certificate: &cert,
                agree,
            })
            .expect("report serialization")
        );
    } else {
        println!("solver cost    {}", report.cost);
        println!("reference cost {}", reference.cost);
        println!("cycles {}", report.cycles);
        println!("{cert}");
        println!("{}", if agree { "AGREE" } else { "DISAGREE" });
    }
    if agree {
        Ok(())
    } else if !cert.certified() {
        Err(CliError::NotCertified(cert.to_string()))
    } else {
        Err(CliError::Disagreement(format!(
            "solver found {} but the reference found {}",
            report.cost, reference.cost
        )))
    }
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), CliError> {
    let mut grid: Vec<Vec<u64>> = Vec::with_capacity(args.m_max);
    for m in 1..=args.m_max {
        let mut row = Vec::with_capacity(args.n_max);
        for n in 1..=args.n_max {
            row.push(z_prime_sup(m, n).map_err(CliError::Bounds)?);
        }
        grid.push(row);
    }
    if args.json {
        #[derive(Serialize)]
        struct Out {
            m_max: usize,
            n_max: usize,
            chain_bound: Vec<Vec<u64>>,
            binomial_bound: String,
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&Out {
                m_max: args.m_max,
                n_max: args.n_max,
                chain_bound: grid,
                binomial_bound: z_sup(args.m_max, args.n_max).to_string(),
            })
            .expect("grid serialization")
        );
        return Ok(());
    }
    // Column-aligned grid with m down the side and n across the top.
    let width = grid
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1)
        .max(args.n_max.to_string().len())
        + 2;
    print!("m\\n");
    for n in 1..=args.n_max {
        print!("{n:>width$}");
    }
    println!();
    for (row, m) in grid.iter().zip(1..) {
        print!("{m:<3}");
        for v in row {
            print!("{v:>width$}");
        }
        println!();
    }
    println!(
        "crude binomial bound at ({}, {}): {}",
        args.m_max,
        args.n_max,
        z_sup(args.m_max, args.n_max)
    );
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    if args.descent == DescentArg::B && args.mode != ModeArg::PerRow {
        return Err(CliError::Solve(SolveError::UnsupportedOptions(
            "descent b requires --mode per-row".to_string(),
        )));
    }
    let report = run_bench(
        &args.sizes,
        args.reps.max(1),
        args.degenerate,
        args.mode.into(),
        args.descent.into(),
        args.seed,
    )
    .map_err(|e| CliError::Solve(SolveError::UnsupportedOptions(e)))?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serialization"));
    } else {
        for row in &report.rows {
            println!(
                "n={} mode={} descent={} regime={} reps={} mean_cycles={:.2} rms={:.2} \
                 mean_solve_ms={:.3} mean_setup_ms={:.3}",
                row.n,
                row.mode,
                row.strategy,
                row.regime,
                row.reps,
                row.mean_cycles,
                row.rms_cycles,
                row.mean_solve_ms,
                row.mean_setup_ms
            );
        }
    }
    Ok(())
}

/// Parses arguments and dispatches; the binary's whole `main`.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
