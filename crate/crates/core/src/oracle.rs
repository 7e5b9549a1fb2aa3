//! Exact GBP and CGBP solvers for small instances.
//!
//! The search enumerates set partitions canonically: items are placed in
//! canonical order, each either joining an existing bin or opening the next
//! one, so every partition is visited once. Branches are cut with a lower
//! bound derived from free capacity and free green space. Among optimal
//! packings the one with the least energy is returned, then the
//! lexicographically smallest.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::model::{evaluate, Instance, Packing, PackingStats, Problem};
use crate::numeric::Rational;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub packing: Packing,
    pub stats: PackingStats,
    pub nodes_explored: u64,
}

/// Minimizes bins plus energy exactly.
pub fn solve_exact_gbp(inst: &Instance, node_budget: Option<u64>) -> Result<OracleResult> {
    solve(inst, Problem::Gbp, node_budget)
}

/// Minimizes bins subject to the instance's energy budget exactly.
pub fn solve_exact_cgbp(inst: &Instance, node_budget: Option<u64>) -> Result<OracleResult> {
    let budget = inst.budget().ok_or(Error::MissingBudget)?;
    let minimum = inst.singleton_energy();
    if *budget < minimum {
        return Err(Error::InfeasibleBudget { budget: budget.clone(), minimum });
    }
    solve(inst, Problem::Cgbp, node_budget)
}

/// Dispatches on `problem`.
pub fn solve_exact(inst: &Instance, problem: Problem, node_budget: Option<u64>) -> Result<OracleResult> {
    match problem {
        Problem::Gbp => solve_exact_gbp(inst, node_budget),
        Problem::Cgbp => solve_exact_cgbp(inst, node_budget),
    }
}

fn solve(inst: &Instance, problem: Problem, node_budget: Option<u64>) -> Result<OracleResult> {
    let n = inst.len();
    let mut suffix = vec![Rational::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] + inst.size(i);
    }
    let mut search = Search {
        inst,
        problem,
        cap: inst.budget().cloned().filter(|_| problem == Problem::Cgbp),
        suffix,
        bins: Vec::new(),
        assign: Vec::with_capacity(n),
        energy: Rational::zero(),
        best: None,
        nodes: SearchBudget::new("oracle", node_budget.unwrap_or(DEFAULT_NODE_BUDGET)),
    };
    search.dfs(0)?;
    let best = search.best.expect("singleton packing is always feasible");
    let stats = evaluate(inst, &best.packing)?;
    Ok(OracleResult { packing: best.packing, stats, nodes_explored: search.nodes.used() })
}

struct OpenBin {
    load: Rational,
    energy: Rational,
}

struct Incumbent {
    bins: usize,
    energy: Rational,
    objective: Rational,
    packing: Packing,
}

struct Search<'a> {
    inst: &'a Instance,
    problem: Problem,
    cap: Option<Rational>,
    suffix: Vec<Rational>,
    bins: Vec<OpenBin>,
    assign: Vec<usize>,
    energy: Rational,
    best: Option<Incumbent>,
    nodes: SearchBudget,
}

impl Search<'_> {
    fn dfs(&mut self, item: usize) -> Result<()> {
        self.nodes.tick()?;
        if item == self.inst.len() {
            self.record();
            return Ok(());
        }
        if self.prune(item) {
            return Ok(());
        }
        let size = self.inst.size(item).clone();
        for j in 0..self.bins.len() {
            let load = &self.bins[j].load + &size;
            if load > Rational::one() {
                continue;
            }
            let energy = self.inst.energy_of(&load);
            let old_load = std::mem::replace(&mut self.bins[j].load, load);
            let old_energy = std::mem::replace(&mut self.bins[j].energy, energy);
            let delta = &self.bins[j].energy - &old_energy;
            self.energy += &delta;
            self.assign.push(j);
            self.dfs(item + 1)?;
            self.assign.pop();
            self.energy -= &delta;
            self.bins[j].load = old_load;
            self.bins[j].energy = old_energy;
        }
        let energy = self.inst.energy_of(&size);
        self.energy += &energy;
        self.bins.push(OpenBin { load: size, energy });
        self.assign.push(self.bins.len() - 1);
        self.dfs(item + 1)?;
        self.assign.pop();
        let bin = self.bins.pop().expect("bin just opened");
        self.energy -= &bin.energy;
        Ok(())
    }

    /// True when no completion of the current partial packing can match the incumbent.
    fn prune(&self, item: usize) -> bool {
        if let Some(cap) = &self.cap {
            if self.energy > *cap {
                return true;
            }
        }
        let Some(best) = &self.best else { return false };
        let inst = self.inst;
        let remaining = &self.suffix[item];
        let (mut free, mut free_green) = (Rational::zero(), Rational::zero());
        for bin in &self.bins {
            free += Rational::one() - &bin.load;
            if bin.load < *inst.green() {
                free_green += inst.green() - &bin.load;
            }
        }
        // new bins needed by capacity alone
        let k_min = ceil_nonneg(&(remaining - &free));
        // mass that cannot land in green space given k new bins
        let overflow = remaining - &free_green;
        let extra = |k: &BigInt| -> Rational {
            let spill = &overflow - Rational::from_integer(k.clone()) * inst.green();
            if spill.is_positive() {
                inst.beta() * spill
            } else {
                Rational::zero()
            }
        };
        let open = BigInt::from(self.bins.len());
        match self.problem {
            Problem::Gbp => {
                let mut ks = vec![k_min.clone()];
                if inst.green().is_positive() {
                    let floor = (&overflow / inst.green()).floor().to_integer();
                    for k in [floor.clone(), floor + 1] {
                        if k > k_min {
                            ks.push(k);
                        }
                    }
                }
                let cheapest = ks
                    .iter()
                    .map(|k| Rational::from_integer(k.clone()) + extra(k))
                    .min()
                    .expect("non-empty");
                let bound = Rational::from_integer(open) + &self.energy + cheapest;
                bound > best.objective
            }
            Problem::Cgbp => {
                let slack = self.cap.as_ref().expect("CGBP has a budget") - &self.energy;
                let k_need = if extra(&k_min) <= slack {
                    k_min
                } else if inst.green().is_zero() || inst.beta().is_zero() {
                    return true;
                } else {
                    let k = ceil_nonneg(&((&overflow - &slack / inst.beta()) / inst.green()));
                    k.max(k_min)
                };
                open + k_need > BigInt::from(best.bins)
            }
        }
    }

    fn record(&mut self) {
        if let Some(cap) = &self.cap {
            if self.energy > *cap {
                return;
            }
        }
        let bins = self.bins.len();
        let objective = Rational::from_integer(BigInt::from(bins)) + &self.energy;
        let key_better = |best: &Incumbent| -> Option<bool> {
            let ord = match self.problem {
                Problem::Gbp => (&objective, &self.energy).cmp(&(&best.objective, &best.energy)),
                Problem::Cgbp => (bins, &self.energy).cmp(&(best.bins, &best.energy)),
            };
            match ord {
                std::cmp::Ordering::Less => Some(true),
                std::cmp::Ordering::Greater => Some(false),
                std::cmp::Ordering::Equal => None,
            }
        };
        let decision = self.best.as_ref().map_or(Some(true), key_better);
        if decision == Some(false) {
            return;
        }
        let mut groups = vec![Vec::new(); bins];
        for (item, &bin) in self.assign.iter().enumerate() {
            groups[bin].push(item);
        }
        let packing = Packing::new(groups);
        if decision.is_none() && packing >= self.best.as_ref().expect("tie needs incumbent").packing {
            return;
        }
        self.best = Some(Incumbent { bins, energy: self.energy.clone(), objective, packing });
    }
}

fn ceil_nonneg(value: &Rational) -> BigInt {
    if value.is_positive() {
        let (q, r) = value.numer().div_rem(value.denom());
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    } else {
        BigInt::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, parse_rational, ratio};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn gbp(sizes: &[&str], beta: &str, green: &str) -> Instance {
        Instance::gbp(sizes.iter().map(|s| q(s)).collect(), q(beta), q(green)).unwrap()
    }

    #[test]
    fn expensive_energy_keeps_halves_apart() {
        let r = solve_exact_gbp(&gbp(&["0.5", "0.5"], "10", "0.5"), None).unwrap();
        assert_eq!((r.stats.bins_used, r.stats.energy.clone(), r.stats.objective.clone()), (2, int(0), int(2)));
    }

    #[test]
    fn cheap_energy_merges_halves() {
        let r = solve_exact_gbp(&gbp(&["0.5", "0.5"], "1/2", "0.5"), None).unwrap();
        assert_eq!(r.stats.bins_used, 1);
        assert_eq!(r.stats.energy, ratio(1, 4));
        assert_eq!(r.stats.objective, ratio(5, 4));
    }

    #[test]
    fn single_item() {
        let r = solve_exact_gbp(&gbp(&["0.4"], "1", "0.5"), None).unwrap();
        assert_eq!(r.stats.objective, int(1));
    }

    #[test]
    fn empty_instance() {
        let r = solve_exact_gbp(&gbp(&[], "1", "0.5"), None).unwrap();
        assert!(r.packing.is_empty());
        assert_eq!(r.stats.objective, int(0));
    }

    #[test]
    fn cgbp_examples() {
        let base = gbp(&["0.5", "0.5"], "1", "0.5");
        let tight = base.clone().with_budget(Some(int(0))).unwrap();
        assert_eq!(solve_exact_cgbp(&tight, None).unwrap().stats.bins_used, 2);
        let loose = base.with_budget(Some(ratio(1, 2))).unwrap();
        let r = solve_exact_cgbp(&loose, None).unwrap();
        assert_eq!((r.stats.bins_used, r.stats.energy), (1, ratio(1, 2)));
    }

    #[test]
    fn cgbp_requires_budget() {
        let inst = gbp(&["0.9"], "1", "0.5");
        assert_eq!(solve_exact_cgbp(&inst, None).unwrap_err(), Error::MissingBudget);
        let infeasible = inst.with_budget(Some(q("0.1")));
        assert!(matches!(infeasible, Err(Error::InfeasibleBudget { .. })));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let inst = gbp(&["0.3", "0.3", "0.3", "0.2", "0.2", "0.1"], "1", "0.5");
        let err = solve_exact_gbp(&inst, Some(5)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { what: "oracle", .. }));
    }

    #[test]
    fn min_energy_among_optima() {
        // any two-bin packing is optimal in bin count; {0.6}, {0.4, 0.3} wastes the least energy
        let inst = gbp(&["0.6", "0.4", "0.3"], "1/10", "0.5");
        let r = solve_exact_gbp(&inst, None).unwrap();
        assert_eq!(r.packing, Packing::new(vec![vec![0], vec![1, 2]]));
        assert_eq!(r.stats.energy, ratio(3, 100));
    }

    #[test]
    fn ties_go_to_lexicographically_smallest() {
        let inst = gbp(&["0.6", "0.4", "0.3"], "0", "0.5");
        let r = solve_exact_gbp(&inst, None).unwrap();
        assert_eq!(r.packing, Packing::new(vec![vec![0], vec![1, 2]]));
    }
}
