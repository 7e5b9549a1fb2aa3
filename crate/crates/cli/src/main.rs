#![allow(clippy::result_large_err)]

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use greenpack_cli::algo::{solve_to_file, Algo, SolveParams};
use greenpack_cli::bench::{bench, write_csv};
use greenpack_cli::format::{default_problem, InstanceFile, SolutionFile};
use greenpack_cli::generate::{generate, BudgetMode, GenParams, SizeDist};
use greenpack_cli::verify::verify;
use greenpack_cli::{exit, CliError, Result};
use greenpack_core::numeric::{format_exact, parse_rational};
use greenpack_core::{Epsilon, Problem, Rational};

#[derive(Parser)]
#[command(name = "greenpack", version, about = "Green bin packing solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Gbp,
    Cgbp,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Gbp => Problem::Gbp,
            ProblemArg::Cgbp => Problem::Cgbp,
        }
    }
}

#[derive(clap::Args)]
struct SolverArgs {
    /// Accuracy of the APTAS, a value 1/k.
    #[arg(long, default_value = "1/2", value_parser = parse_epsilon)]
    epsilon: Epsilon,
    /// Threshold slack of threshold next fit.
    #[arg(long, default_value = "0", value_parser = parse_number)]
    tau: Rational,
    /// Defaults to cgbp when the instance has a budget, gbp otherwise.
    #[arg(long, value_enum)]
    problem: Option<ProblemArg>,
    /// Search-node limit for the exact and approximation solvers.
    #[arg(long)]
    node_budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

impl SolverArgs {
    fn params(&self) -> SolveParams {
        SolveParams { epsilon: self.epsilon, tau: self.tau.clone(), node_budget: self.node_budget, seed: self.seed }
    }
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Generate random instances.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// uniform:LO,HI or grid:D
        #[arg(long, default_value = "uniform:0.01,1")]
        dist: SizeDist,
        #[arg(long, default_value = "1", value_parser = parse_number)]
        beta: Rational,
        #[arg(long, default_value = "1/2", value_parser = parse_number)]
        green: Rational,
        /// none, tight or slack:R (relative to the singleton-packing energy)
        #[arg(long, default_value = "none")]
        budget: BudgetMode,
        /// Number of instances; seeds run consecutively from --seed.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        name: Option<String>,
        /// Output file, or directory when --count exceeds 1. Stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one instance and write the solution.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "exact")]
        algo: Algo,
        #[command(flatten)]
        solver: SolverArgs,
        /// Stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against its instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Run algorithms over every instance file in a directory.
    Bench {
        corpus: PathBuf,
        /// Comma-separated algorithm names.
        #[arg(long, value_delimiter = ',', default_value = "exact,aptas,approx32,nf,ff,ffd,tnf")]
        algo: Vec<Algo>,
        #[command(flatten)]
        solver: SolverArgs,
        /// CSV output; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_number(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_epsilon(s: &str) -> std::result::Result<Epsilon, String> {
    Epsilon::from_rational(&parse_number(s)?).map_err(|e| e.to_string())
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
            }
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen { n, seed, dist, beta, green, budget, count, name, out } => {
            for i in 0..count {
                let seed = seed + i as u64;
                let label = match (&name, count) {
                    (Some(nm), 1) => Some(nm.clone()),
                    (Some(nm), _) => Some(format!("{nm}-{i:04}")),
                    (None, _) => Some(format!("n{n}-s{seed}")),
                };
                let params = GenParams {
                    n,
                    seed,
                    dist: dist.clone(),
                    beta: beta.clone(),
                    green: green.clone(),
                    budget: budget.clone(),
                    name: label.clone(),
                };
                let file = generate(&params)?;
                let text = serde_json::to_string_pretty(&file).expect("plain data serializes") + "\n";
                match (&out, count) {
                    (Some(dir), c) if c > 1 => {
                        write_out(Some(&dir.join(format!("{}.json", label.expect("set above")))), &text)?
                    }
                    (out, _) => write_out(out.as_deref(), &text)?,
                }
            }
            Ok(exit::OK)
        }
        Command::Solve { instance, algo, solver, out } => {
            let file = InstanceFile::read(&instance)?;
            let inst = file.to_instance()?;
            let problem = default_problem(&inst, solver.problem.map(Into::into));
            let sol = solve_to_file(&inst, file.name.clone(), algo, problem, &solver.params())?;
            if let Some(u) = inst.budget() {
                if parse_rational(&sol.stats.energy).is_ok_and(|e| e > *u) {
                    eprintln!(
                        "warning: {algo} ignores the budget; energy {} exceeds U = {}",
                        sol.stats.energy,
                        format_exact(u)
                    );
                }
            }
            write_out(out.as_deref(), &sol.to_json())?;
            Ok(exit::OK)
        }
        Command::Verify { instance, solution } => {
            let inst = InstanceFile::read(&instance)?.to_instance()?;
            let sol = SolutionFile::read(&solution)?;
            let report = verify(&inst, &sol);
            if report.passed() {
                let stats = report.stats.expect("stats of a passing report");
                println!(
                    "OK: {} bins, energy {}, objective {}",
                    stats.bins_used,
                    format_exact(&stats.energy),
                    format_exact(&stats.objective)
                );
                Ok(exit::OK)
            } else {
                for v in &report.violations {
                    println!("FAIL: {v}");
                }
                Ok(exit::VERIFY_FAILED)
            }
        }
        Command::Bench { corpus, algo, solver, out } => {
            let report = bench(&corpus, &algo, solver.problem.map(Into::into), &solver.params())?;
            let mut csv = Vec::new();
            write_csv(&report.rows, &mut csv)?;
            write_out(out.as_deref(), &String::from_utf8(csv).expect("csv is utf-8"))?;
            for s in &report.skipped {
                eprintln!("skipped {s}");
            }
            if report.rows.is_empty() && report.skipped.is_empty() {
                eprintln!("nothing to do: no instance files in {}", corpus.display());
                return Ok(exit::IO);
            }
            Ok(if report.skipped.is_empty() { exit::OK } else { exit::IO })
        }
    }
}

fn main() -> ExitCode {
    // bad arguments share the input-error code; clap's own code 2 means infeasible here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::IO } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
