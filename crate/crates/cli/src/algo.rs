//! Solver dispatch by name.

use std::fmt;
use std::str::FromStr;

use greenpack_core::approx32::approx32_solve;
use greenpack_core::aptas::aptas_solve;
use greenpack_core::baselines::{ffd, first_fit, next_fit, threshold_next_fit, ItemOrder};
use greenpack_core::numeric::format_exact;
use greenpack_core::oracle::solve_exact;
use greenpack_core::{evaluate, Epsilon, Instance, Packing, Problem, Rational};

use crate::format::{instance_hash, SolutionFile, SolveParamsRecord, StatsRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Exact,
    Aptas,
    Approx32,
    Nf,
    Ff,
    Ffd,
    Tnf,
}

impl Algo {
    pub const ALL: [Algo; 7] = [Algo::Exact, Algo::Aptas, Algo::Approx32, Algo::Nf, Algo::Ff, Algo::Ffd, Algo::Tnf];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Exact => "exact",
            Algo::Aptas => "aptas",
            Algo::Approx32 => "approx32",
            Algo::Nf => "nf",
            Algo::Ff => "ff",
            Algo::Ffd => "ffd",
            Algo::Tnf => "tnf",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}; expected one of exact, aptas, approx32, nf, ff, ffd, tnf"))
    }
}

/// Parameters shared by all solvers; each one reads what it needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveParams {
    pub epsilon: Epsilon,
    pub tau: Rational,
    pub node_budget: Option<u64>,
    pub seed: Option<u64>,
}

impl Default for SolveParams {
    fn default() -> Self {
        Self {
            epsilon: Epsilon::from_inverse(2).expect("positive"),
            tau: Rational::from_integer(0.into()),
            node_budget: None,
            seed: None,
        }
    }
}

impl SolveParams {
    /// The parameters that `algo` actually used, for reports.
    pub fn record(&self, algo: Algo) -> SolveParamsRecord {
        SolveParamsRecord {
            epsilon: (algo == Algo::Aptas).then(|| self.epsilon.to_string()),
            tau: (algo == Algo::Tnf).then(|| format_exact(&self.tau)),
            node_budget: matches!(algo, Algo::Exact | Algo::Aptas | Algo::Approx32)
                .then_some(self.node_budget)
                .flatten(),
            seed: self.seed,
        }
    }

    /// Compact `key=value` rendering of [`SolveParams::record`].
    pub fn describe(&self, algo: Algo) -> String {
        let r = self.record(algo);
        let mut parts = Vec::new();
        if let Some(e) = r.epsilon {
            parts.push(format!("epsilon={e}"));
        }
        if let Some(t) = r.tau {
            parts.push(format!("tau={t}"));
        }
        if let Some(b) = r.node_budget {
            parts.push(format!("node_budget={b}"));
        }
        parts.join(";")
    }
}

/// Runs `algo`. The classical heuristics ignore energy, so under CGBP their
/// packing may exceed the budget; verification reports that.
pub fn run(inst: &Instance, algo: Algo, problem: Problem, params: &SolveParams) -> greenpack_core::Result<Packing> {
    Ok(match algo {
        Algo::Exact => solve_exact(inst, problem, params.node_budget)?.packing,
        Algo::Aptas => aptas_solve(inst, params.epsilon, problem, params.node_budget)?,
        Algo::Approx32 => approx32_solve(inst, problem, params.node_budget)?,
        Algo::Nf => next_fit(inst, ItemOrder::Canonical),
        Algo::Ff => first_fit(inst, ItemOrder::Canonical),
        Algo::Ffd => ffd(inst),
        Algo::Tnf => threshold_next_fit(inst, &params.tau)?,
    })
}

/// Solves `inst` and packages the result with its statistics.
pub fn solve_to_file(
    inst: &Instance,
    name: Option<String>,
    algo: Algo,
    problem: Problem,
    params: &SolveParams,
) -> greenpack_core::Result<SolutionFile> {
    let packing = run(inst, algo, problem, params)?;
    let stats = evaluate(inst, &packing)?;
    Ok(SolutionFile {
        instance: name,
        instance_hash: instance_hash(inst),
        algo: algo.to_string(),
        problem: problem.to_string(),
        params: params.record(algo),
        bins: inst.to_original_bins(&packing),
        stats: StatsRecord::from(&stats),
    })
}
