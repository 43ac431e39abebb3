use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use octotriple::bridge::{check_identity, BridgeIdentity, ConventionReport};
use octotriple::hadamard::{build, classify_symmetry, doubling_order_permutations, label};
use octotriple::hyper::{Dim, Hyper, Tolerance};
use octotriple::triple::{
    anticommutator3_norm_sq, associator3_norm_sq, commutator3_norm_sq, decompose_triple, TripleDecomposition,
};
use octotriple::verify::{all_pass, run_all, OutputFormat, RunConfig, Suite};
use serde::Serialize;

mod input;

#[derive(Parser)]
#[command(name = "octotriple", version, about = "Octonion triple-product decomposition and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification suite
    Verify(RunArgs),
    /// Decompose (u1 ū) u2 for a triple read from a file, inline JSON or stdin
    Decompose {
        /// Path, inline JSON, or `-` for stdin (default)
        input: Option<String>,
    },
    /// Render the Sylvester-ordered Hadamard matrix of order n
    Hadamard {
        n: usize,
        /// Count the row permutations that preserve the column set
        #[arg(long)]
        perms: bool,
        /// List the symmetry-preserving permutations (implies --perms)
        #[arg(long)]
        list: bool,
    },
    /// Check identities written in other published conventions
    Compare(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, env = "OCTOTRIPLE_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Comma-separated subset of 1,2,4,8
    #[arg(long, value_delimiter = ',', value_parser = parse_dim, default_value = "1,2,4,8")]
    dims: Vec<Dim>,
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
    /// Emit one JSON object per line
    #[arg(long)]
    json: bool,
}

fn parse_dim(s: &str) -> Result<Dim, String> {
    let n: usize = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    Dim::new(n).map_err(|e| e.to_string())
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, String> {
        let tol = Tolerance::new(self.rel_tol, self.abs_tol).map_err(|e| e.to_string())?;
        let format = if self.json { OutputFormat::Json } else { OutputFormat::Text };
        RunConfig::new(self.seed, self.trials as usize, self.dims.clone(), tol, format).map_err(|e| e.to_string())
    }
}

enum Failure {
    Usage(String),
    Suites,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Verify(args) => verify(&args, &mut out),
        Command::Decompose { input } => decompose(input.as_deref(), &mut out),
        Command::Hadamard { n, perms, list } => hadamard(n, perms || list, list, &mut out),
        Command::Compare(args) => compare(&args, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suites) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &mut impl Write, line: impl std::fmt::Display) {
    // a closed pipe is not worth a panic
    let _ = writeln!(out, "{line}");
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn verify(args: &RunArgs, out: &mut impl Write) -> Result<(), Failure> {
    let config = args.config().map_err(Failure::Usage)?;
    let reports = run_all(&config);
    for r in &reports {
        match config.format {
            OutputFormat::Json => emit(out, json_line(r)),
            OutputFormat::Text => emit(out, r),
        }
    }
    if all_pass(&reports) {
        Ok(())
    } else {
        Err(Failure::Suites)
    }
}

fn compare(args: &RunArgs, out: &mut impl Write) -> Result<(), Failure> {
    let config = args.config().map_err(Failure::Usage)?;
    let mut reports: Vec<ConventionReport> = Vec::new();
    for &dim in &config.dims {
        for id in BridgeIdentity::ALL {
            let r = check_identity(id, dim, config.seed, Suite::ConventionBridge.index(), config.trials, config.tolerance);
            match config.format {
                OutputFormat::Json => emit(out, json_line(&r)),
                OutputFormat::Text => {
                    let mut line = format!(
                        "{:<21} dim={} trials={} max_residual={:.3e} tol={:.1e} {}",
                        r.identity_name,
                        r.dim,
                        r.trials,
                        r.max_residual,
                        r.tolerance_used,
                        if r.pass { "PASS" } else { "FAIL" }
                    );
                    if let Some(c) = &r.repair {
                        line.push_str(&format!(" repair={c:?}"));
                    }
                    emit(out, line);
                }
            }
            reports.push(r);
        }
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Suites)
    }
}

#[derive(Serialize)]
struct PartNorms {
    anti: f64,
    comm: f64,
    assoc: f64,
}

#[derive(Serialize)]
struct DecomposeOutput {
    u1: Hyper,
    u: Hyper,
    u2: Hyper,
    decomposition: TripleDecomposition,
    norm_sqs: PartNorms,
    closed_form_norm_sqs: PartNorms,
    residual: f64,
}

fn read_input(input: Option<&str>) -> Result<String, Failure> {
    match input {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => Ok(s.to_string()),
        Some(path) => fs::read_to_string(Path::new(path)).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
    }
}

fn decompose(input: Option<&str>, out: &mut impl Write) -> Result<(), Failure> {
    let text = read_input(input)?;
    let [u1, u, u2] = input::parse_triple(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let d = decompose_triple(&u1, &u, &u2).map_err(|e| Failure::Usage(e.to_string()))?;
    let [anti, comm, assoc] = d.norm_sqs();
    let closed = PartNorms {
        anti: anticommutator3_norm_sq(&u1, &u, &u2).expect("dims checked"),
        comm: commutator3_norm_sq(&u1, &u, &u2).expect("dims checked"),
        assoc: associator3_norm_sq(&u1, &u, &u2).expect("dims checked"),
    };
    let report = DecomposeOutput {
        u1,
        u,
        u2,
        decomposition: d,
        norm_sqs: PartNorms { anti, comm, assoc },
        closed_form_norm_sqs: closed,
        residual: d.residual,
    };
    emit(out, serde_json::to_string_pretty(&report).expect("plain data serializes"));
    Ok(())
}

fn hadamard(n: usize, perms: bool, list: bool, out: &mut impl Write) -> Result<(), Failure> {
    let m = build(n).map_err(|e| Failure::Usage(e.to_string()))?;
    emit(out, m.render().trim_end());
    if !perms {
        return Ok(());
    }
    let all = doubling_order_permutations(&m).map_err(|e| Failure::Usage(e.to_string()))?;
    let classes = classify_symmetry(&all, &m);
    let (sym, asym) = classes.counts();
    emit(out, format!("automorphism perms: {}, symmetric: {sym}, asymmetric: {asym}", all.len()));
    if list {
        for p in &classes.symmetric {
            let labels: Vec<String> = p.map().iter().map(|&g| label(g)).collect();
            emit(out, format!("{p}  [{}]", labels.join(" ")));
        }
    }
    Ok(())
}
