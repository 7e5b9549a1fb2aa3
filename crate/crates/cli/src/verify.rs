//! Independent re-checking of a solution file against its instance.

use greenpack_core::numeric::{format_exact, parse_rational};
use greenpack_core::{evaluate, Instance, PackingStats, Rational};

use crate::format::{instance_hash, SolutionFile, StatsRecord};

/// Outcome of verification: every violation found, and the recomputed
/// statistics when the bins form a feasible packing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub violations: Vec<String>,
    pub stats: Option<PackingStats>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks coverage, capacities, recorded statistics and, when the instance
/// has a budget, the energy against it.
pub fn verify(inst: &Instance, sol: &SolutionFile) -> VerifyReport {
    let mut report = VerifyReport::default();
    let v = &mut report.violations;
    if instance_hash(inst) != sol.instance_hash {
        v.push(format!("instance hash mismatch: solution has {}, instance is {}", sol.instance_hash, instance_hash(inst)));
    }

    let sizes = inst.original_sizes();
    let mut owner: Vec<Option<usize>> = vec![None; sizes.len()];
    let one = Rational::from_integer(1.into());
    for (bin, items) in sol.bins.iter().enumerate() {
        if items.is_empty() {
            v.push(format!("bin {bin} is empty"));
        }
        let mut load = Rational::from_integer(0.into());
        for &item in items {
            let Some(slot) = owner.get_mut(item) else {
                v.push(format!("bin {bin} names unknown item {item}"));
                continue;
            };
            match slot {
                Some(first) => v.push(format!("item {item} covered twice (bins {first} and {bin})")),
                None => *slot = Some(bin),
            }
            load += &sizes[item];
        }
        if load > one {
            v.push(format!("bin {bin} is overfull: load {}", format_exact(&load)));
        }
    }
    for (item, o) in owner.iter().enumerate() {
        if o.is_none() {
            v.push(format!("item {item} is not packed"));
        }
    }
    if !v.is_empty() {
        return report;
    }

    let packing = inst.from_original_bins(&sol.bins).expect("indices checked above");
    let stats = evaluate(inst, &packing).expect("feasibility checked above");
    compare_stats(&StatsRecord::from(&stats), &sol.stats, v);
    if let Some(u) = inst.budget() {
        if stats.energy > *u {
            v.push(format!(
                "budget violation: energy {} exceeds U = {}",
                format_exact(&stats.energy),
                format_exact(u)
            ));
        }
    }
    report.stats = Some(stats);
    report
}

fn compare_stats(actual: &StatsRecord, recorded: &StatsRecord, v: &mut Vec<String>) {
    let counts = [
        ("bins_used", actual.bins_used, recorded.bins_used),
        ("large_item_bins", actual.large_item_bins, recorded.large_item_bins),
        ("heavy_bins", actual.heavy_bins, recorded.heavy_bins),
        ("light_bins", actual.light_bins, recorded.light_bins),
    ];
    for (field, a, r) in counts {
        if a != r {
            v.push(format!("stat mismatch: {field} is {a}, solution says {r}"));
        }
    }
    for (field, a, r) in [("energy", &actual.energy, &recorded.energy), ("objective", &actual.objective, &recorded.objective)] {
        let same = match (parse_rational(a), parse_rational(r)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        };
        if !same {
            v.push(format!("stat mismatch: {field} is {a}, solution says {r}"));
        }
    }
}
