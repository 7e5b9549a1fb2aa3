//! Helpers shared by the integration tests: an independent brute-force
//! solver and random instance strategies.
#![allow(dead_code)]

use greenpack_core::numeric::{int, ratio};
use greenpack_core::{Instance, Packing, Problem, Rational};
use proptest::prelude::*;

/// Energy written out from the definition, independent of the library.
pub fn energy_by_definition(beta: &Rational, green: &Rational, load: &Rational) -> Rational {
    let e = beta * (load - green);
    if e > int(0) {
        e
    } else {
        int(0)
    }
}

/// Every set partition of `0..n`, built from restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, bins: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(bins.clone());
            return;
        }
        for j in 0..bins.len() {
            bins[j].push(i);
            rec(i + 1, n, bins, out);
            bins[j].pop();
        }
        bins.push(vec![i]);
        rec(i + 1, n, bins, out);
        bins.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteOptimum {
    pub bins: usize,
    pub energy: Rational,
    pub packing: Packing,
}

impl BruteOptimum {
    pub fn objective(&self) -> Rational {
        int(self.bins as i64) + &self.energy
    }
}

/// Optimum over all feasible partitions: least objective (GBP) or least bins
/// within budget (CGBP), then least energy, then the smallest packing.
/// `None` for an infeasible CGBP instance.
pub fn brute_force(inst: &Instance, problem: Problem) -> Option<BruteOptimum> {
    let sizes = inst.sizes();
    let mut best: Option<(Rational, Rational, Packing, usize)> = None;
    for bins in set_partitions(sizes.len()) {
        let mut energy = int(0);
        let mut feasible = true;
        for b in &bins {
            let load: Rational = b.iter().map(|&i| sizes[i].clone()).sum();
            if load > int(1) {
                feasible = false;
                break;
            }
            energy += energy_by_definition(inst.beta(), inst.green(), &load);
        }
        if !feasible {
            continue;
        }
        let primary = match problem {
            Problem::Gbp => int(bins.len() as i64) + &energy,
            Problem::Cgbp => {
                if energy > *inst.budget().expect("CGBP needs a budget") {
                    continue;
                }
                int(bins.len() as i64)
            }
        };
        let count = bins.len();
        let packing = Packing::new(bins);
        let better = match &best {
            None => true,
            Some((p, e, q, _)) => (&primary, &energy, &packing) < (p, e, q),
        };
        if better {
            best = Some((primary, energy, packing, count));
        }
    }
    best.map(|(_, energy, packing, bins)| BruteOptimum { bins, energy, packing })
}

/// Sizes `k / den` with `den` in `2..=max_den`.
pub fn size_strategy(max_den: i64) -> impl Strategy<Value = Rational> {
    (2..=max_den).prop_flat_map(|den| (1..=den).prop_map(move |k| ratio(k, den)))
}

pub fn beta_strategy() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(0)), Just(ratio(1, 2)), Just(int(1)), Just(ratio(3, 2)), Just(int(4))]
}

pub fn green_strategy() -> impl Strategy<Value = Rational> {
    (0..=12i64).prop_map(|k| ratio(k, 12))
}

/// GBP instances with `1..=max_n` items.
pub fn instance_strategy(max_n: usize) -> impl Strategy<Value = Instance> {
    (prop::collection::vec(size_strategy(20), 1..=max_n), beta_strategy(), green_strategy())
        .prop_map(|(sizes, beta, green)| Instance::gbp(sizes, beta, green).expect("valid instance"))
}

/// Instances with a budget between the singleton energy and twice it, plus one.
pub fn budgeted_strategy(max_n: usize) -> impl Strategy<Value = Instance> {
    (instance_strategy(max_n), 0..=8i64).prop_map(|(inst, k)| {
        let u = inst.singleton_energy() * ratio(8 + k, 8) + ratio(k, 8);
        inst.with_budget(Some(u)).expect("budget above singleton energy")
    })
}
