//! Runs solvers over a corpus of instance files and reports one CSV row per
//! (instance, algorithm) pair.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use greenpack_core::numeric::format_significant;
use greenpack_core::{evaluate, Error as SolveError, Problem, Rational};
use serde::Serialize;

use crate::algo::{run, Algo, SolveParams};
use crate::format::{default_problem, InstanceFile};
use crate::{CliError, Result};

/// Significant digits of the decimal columns.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub algo: String,
    pub params: String,
    pub bins: Option<usize>,
    pub energy_frac: Option<String>,
    pub energy_dec: Option<String>,
    pub objective_frac: Option<String>,
    pub objective_dec: Option<String>,
    pub wall_ms: String,
    pub budget_flag: bool,
    /// Objective over the exact objective for GBP, bins over exact bins for CGBP.
    pub ratio_vs_exact: Option<String>,
}

/// Rows in deterministic order plus every entry that had to be skipped.
#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub skipped: Vec<String>,
}

/// Instance files (`*.json`) directly inside `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|source| CliError::Io { path: dir.into(), source })?.path();
        if path.extension().is_some_and(|e| e == "json") && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn bench(corpus: &Path, algos: &[Algo], problem: Option<Problem>, params: &SolveParams) -> Result<BenchReport> {
    let mut report = BenchReport::default();
    for path in corpus_files(corpus)? {
        let label = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        let inst = match InstanceFile::read(&path).and_then(|f| f.to_instance()) {
            Ok(inst) => inst,
            Err(e) => {
                report.skipped.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        let problem = default_problem(&inst, problem);
        let mut rows: Vec<(BenchRow, Option<Rational>)> = Vec::new();
        for &algo in algos {
            let start = Instant::now();
            let result = run(&inst, algo, problem, params);
            let wall_ms = format!("{:.3}", start.elapsed().as_secs_f64() * 1e3);
            let mut row = BenchRow {
                instance: label.clone(),
                algo: algo.to_string(),
                params: params.describe(algo),
                bins: None,
                energy_frac: None,
                energy_dec: None,
                objective_frac: None,
                objective_dec: None,
                wall_ms,
                budget_flag: false,
                ratio_vs_exact: None,
            };
            let key = match result {
                Ok(packing) => {
                    let stats = evaluate(&inst, &packing)?;
                    row.bins = Some(stats.bins_used);
                    row.energy_frac = Some(stats.energy.to_string());
                    row.energy_dec = Some(format_significant(&stats.energy, DECIMAL_DIGITS));
                    row.objective_frac = Some(stats.objective.to_string());
                    row.objective_dec = Some(format_significant(&stats.objective, DECIMAL_DIGITS));
                    Some(match problem {
                        Problem::Gbp => stats.objective,
                        Problem::Cgbp => Rational::from_integer(stats.bins_used.into()),
                    })
                }
                Err(SolveError::BudgetExceeded { .. }) => {
                    row.budget_flag = true;
                    None
                }
                Err(e) => {
                    report.skipped.push(format!("{label} / {algo}: {e}"));
                    continue;
                }
            };
            rows.push((row, key));
        }
        let exact = rows
            .iter()
            .find(|(r, _)| r.algo == Algo::Exact.name())
            .and_then(|(_, k)| k.clone())
            .filter(|k| *k > Rational::from_integer(0.into()));
        for (mut row, key) in rows {
            if let (Some(e), Some(k)) = (&exact, key) {
                row.ratio_vs_exact = Some(format_significant(&(k / e), DECIMAL_DIGITS));
            }
            report.rows.push(row);
        }
    }
    Ok(report)
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record([
        "instance",
        "algo",
        "params",
        "bins",
        "energy_frac",
        "energy_dec",
        "objective_frac",
        "objective_dec",
        "wall_ms",
        "budget_flag",
        "ratio_vs_exact",
    ])?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|source| CliError::Io { path: PathBuf::from("<csv>"), source })?;
    Ok(())
}
