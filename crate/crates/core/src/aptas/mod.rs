//! Asymptotic approximation scheme for GBP and CGBP.
//!
//! For a fixed `epsilon` the scheme produces polynomially many candidate
//! packings, one of which uses at most `(1 + epsilon) * OPT + 1` bins and no
//! more energy than the min-energy optimum. [`aptas_solve`] picks the best
//! candidate for the requested problem.

mod config;
mod grouping;
mod pipeline_a;
mod pipeline_b;
mod tiny;

pub use config::{enumerate_configurations, BinType, Configuration, RoundedMultiset};
pub use grouping::{linear_group_large, linear_group_medium, RoundedGroups};
pub use pipeline_a::{aptas_pipeline_a, pipeline_a_delta};
pub use pipeline_b::aptas_pipeline_b;
pub use tiny::{assign_tiny_lp, pack_leftovers, round_tiny, FractionalAssignment, TinyRounding};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::frontier::Frontier;
use crate::model::{Epsilon, Instance, Packing, Problem};

/// Default node budget shared by configuration and tiny-level enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// All candidates of the scheme (reduced per bin count), plus the singleton packing.
pub fn aptas_candidates(inst: &Instance, epsilon: Epsilon, node_budget: Option<u64>) -> Result<Frontier> {
    let mut budget = SearchBudget::new("aptas", node_budget.unwrap_or(DEFAULT_NODE_BUDGET));
    let mut frontier = if *inst.green() >= epsilon.third() {
        pipeline_a::run(inst, epsilon, &mut budget)?
    } else {
        pipeline_b::run(inst, epsilon, &mut budget)?
    };
    frontier.offer(inst, Packing::singletons(inst.len()));
    Ok(frontier)
}

/// Runs the scheme and returns the best candidate for `problem`.
pub fn aptas_solve(
    inst: &Instance,
    epsilon: Epsilon,
    problem: Problem,
    node_budget: Option<u64>,
) -> Result<Packing> {
    if problem == Problem::Cgbp && inst.budget().is_none() {
        return Err(Error::MissingBudget);
    }
    let frontier = aptas_candidates(inst, epsilon, node_budget)?;
    let best = frontier
        .best(problem, inst.budget())
        .expect("singleton packing satisfies any feasible budget");
    Ok(best.packing.clone())
}
