//! Absolute 3/2-approximation for GBP and CGBP.
//!
//! The optimum uses one bin, two bins, or at least three. The algorithm
//! cannot observe which, so it produces candidates for every case and keeps
//! the best:
//!
//! * everything in one bin when it fits;
//! * the approximation scheme with `epsilon = 1/6`, which is within 3/2 of
//!   the optimum once that uses three or more bins;
//! * when the items fit in two bins, a sweep over hypotheses about the
//!   contents of an optimal two-bin packing.
//!
//! For the two-bin sweep an item is large when `s >= 1/3` and tiny
//! otherwise; there are at most six large items.

use num_traits::{One, ToPrimitive, Zero};

use crate::aptas;
use crate::error::{Error, Result};
use crate::frontier::Frontier;
use crate::model::{Epsilon, Instance, Packing, Problem};
use crate::numeric::{ratio, Rational};

/// Epsilon handed to the approximation scheme.
pub const APTAS_INVERSE_EPSILON: u32 = 6;

/// Guess about an optimal two-bin packing.
///
/// `large` holds the large items of each bin. For the light-tiny branch,
/// `coarse` holds the tiny items above `G / 4` of each bin and `levels` the
/// number of quarter-`G` units of the remaining tiny items in each bin. For
/// the heavy branch, `heavy_seed` names a tiny item of size at least `G`
/// that alone goes with the first bin; `None` means the greedy prefix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoBinHypothesis {
    pub large: [Vec<usize>; 2],
    pub coarse: [Vec<usize>; 2],
    pub levels: [u32; 2],
    pub heavy_seed: Option<usize>,
}

/// Runs every branch and returns the best candidate for `problem`.
/// `node_budget` bounds the approximation-scheme branch.
pub fn approx32_solve(inst: &Instance, problem: Problem, node_budget: Option<u64>) -> Result<Packing> {
    if problem == Problem::Cgbp && inst.budget().is_none() {
        return Err(Error::MissingBudget);
    }
    let frontier = approx32_candidates(inst, node_budget)?;
    let best = frontier
        .best(problem, inst.budget())
        .expect("singleton packing satisfies any feasible budget");
    Ok(best.packing.clone())
}

/// All candidates of the algorithm, reduced per bin count.
pub fn approx32_candidates(inst: &Instance, node_budget: Option<u64>) -> Result<Frontier> {
    let epsilon = Epsilon::from_inverse(APTAS_INVERSE_EPSILON)?;
    let mut frontier = aptas::aptas_candidates(inst, epsilon, node_budget)?;
    let total = inst.total_size();
    if total <= Rational::one() {
        frontier.offer(inst, Packing::new(vec![(0..inst.len()).collect()]));
    }
    if total <= ratio(2, 1) {
        for packing in two_bin_candidates(inst) {
            frontier.offer(inst, packing);
        }
    }
    Ok(frontier)
}

fn sum(inst: &Instance, items: &[usize]) -> Rational {
    items.iter().map(|&i| inst.size(i)).sum()
}

/// Items of size at least 1/3 and the rest, both in canonical order.
fn split_large(inst: &Instance) -> (Vec<usize>, Vec<usize>) {
    let third = ratio(1, 3);
    (0..inst.len()).partition(|&i| *inst.size(i) >= third)
}

/// Every assignment of `items` to two bins, as pairs of item lists.
fn splits(items: &[usize]) -> impl Iterator<Item = [Vec<usize>; 2]> + '_ {
    (0u32..1 << items.len()).map(move |mask| {
        let mut out = [Vec::new(), Vec::new()];
        for (k, &i) in items.iter().enumerate() {
            out[(mask >> k & 1) as usize].push(i);
        }
        out
    })
}

fn two_bin_candidates(inst: &Instance) -> Vec<Packing> {
    let (large, tiny) = split_large(inst);
    let mut out = Vec::new();
    if large.len() > 6 {
        return out;
    }
    let tiny_mass = sum(inst, &tiny);
    let four_green = inst.green() * Rational::from_integer(4.into());
    for split in splits(&large) {
        let loads = [sum(inst, &split[0]), sum(inst, &split[1])];
        if loads.iter().any(|l| *l > Rational::one()) {
            continue;
        }
        // the second bin holds at most one tiny item
        let mut base = split.clone();
        base[0].extend(&tiny);
        out.push(Packing::new(base.to_vec()));
        for (k, &t) in tiny.iter().enumerate() {
            let mut bins = split.clone();
            bins[0].extend(tiny.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &i)| i));
            bins[1].push(t);
            out.push(Packing::new(bins.to_vec()));
        }
        if loads[0] < loads[1] {
            continue;
        }
        let hyp = TwoBinHypothesis { large: split, ..Default::default() };
        if tiny_mass >= four_green {
            let seeds = tiny.iter().copied().filter(|&i| inst.size(i) >= inst.green()).map(Some);
            for heavy_seed in std::iter::once(None).chain(seeds) {
                let hyp = TwoBinHypothesis { heavy_seed, ..hyp.clone() };
                out.extend(branch_two_bins_heavy(inst, &hyp));
            }
        } else {
            light_tiny_sweep(inst, &hyp, &tiny, &mut out);
        }
    }
    out.retain(|p| p.bins().iter().all(|b| inst.load(b) <= Rational::one()));
    out
}

fn light_tiny_sweep(inst: &Instance, hyp: &TwoBinHypothesis, tiny: &[usize], out: &mut Vec<Packing>) {
    let quarter = inst.green() / Rational::from_integer(4.into());
    let (fine, coarse): (Vec<usize>, Vec<usize>) = tiny.iter().partition(|&&i| *inst.size(i) <= quarter);
    if coarse.len() >= 16 {
        return;
    }
    // k1 + k2 quarters lie within two quarters below the fine mass
    let units = (sum(inst, &fine) / &quarter).floor().to_integer().to_u32().unwrap_or(u32::MAX);
    let lo = units.saturating_sub(1);
    for coarse_split in splits(&coarse) {
        for k1 in 0..=16u32.min(units) {
            for k2 in lo.saturating_sub(k1)..=(units - k1).min(16) {
                let hyp = TwoBinHypothesis {
                    coarse: coarse_split.clone(),
                    levels: [k1, k2],
                    ..hyp.clone()
                };
                out.extend(branch_two_bins_light_tiny(inst, &hyp));
            }
        }
    }
}

/// Case where the tiny items weigh at least `4G`: both bins of the optimum
/// are heavy. Picks the tiny items for the first bin, fills each bin until
/// its load reaches `G`, then first-fits everything left, opening bins as
/// needed.
pub fn branch_two_bins_heavy(inst: &Instance, hyp: &TwoBinHypothesis) -> Option<Packing> {
    let (_, tiny) = split_large(inst);
    let green = inst.green();
    let first_large = sum(inst, &hyp.large[0]);
    let first_tiny: Vec<usize> = match hyp.heavy_seed {
        Some(i) => vec![i],
        None => {
            let need = if *green > first_large { green - &first_large } else { Rational::zero() };
            let mut taken = Rational::zero();
            let mut prefix = Vec::new();
            for &i in &tiny {
                if taken > need {
                    break;
                }
                taken += inst.size(i);
                prefix.push(i);
            }
            prefix
        }
    };
    let second_tiny: Vec<usize> = tiny.iter().copied().filter(|i| !first_tiny.contains(i)).collect();

    let mut bins: Vec<Vec<usize>> = hyp.large.to_vec();
    let mut loads: Vec<Rational> = bins.iter().map(|b| sum(inst, b)).collect();
    let mut rest = Vec::new();
    for (j, pool) in [first_tiny, second_tiny].into_iter().enumerate() {
        for i in pool {
            if loads[j] < *green {
                loads[j] += inst.size(i);
                bins[j].push(i);
            } else {
                rest.push(i);
            }
        }
    }
    if loads.iter().any(|l| *l > Rational::one()) {
        return None;
    }
    rest.sort_unstable();
    for i in rest {
        let size = inst.size(i);
        match loads.iter().position(|l| l + size <= Rational::one()) {
            Some(j) => {
                loads[j] += size;
                bins[j].push(i);
            }
            None => {
                loads.push(size.clone());
                bins.push(vec![i]);
            }
        }
    }
    Some(Packing::new(bins))
}

/// Case where the tiny items weigh less than `4G`. Tiny items above `G / 4`
/// follow the hypothesis; the others fill bin `j` while their total stays
/// within `k_j * G / 4`, and whatever remains goes into one extra bin.
pub fn branch_two_bins_light_tiny(inst: &Instance, hyp: &TwoBinHypothesis) -> Option<Packing> {
    let (_, tiny) = split_large(inst);
    let quarter = inst.green() / Rational::from_integer(4.into());
    let mut fine = tiny.iter().copied().filter(|&i| *inst.size(i) <= quarter).peekable();
    let mut bins: Vec<Vec<usize>> = Vec::with_capacity(3);
    for j in 0..2 {
        let mut bin: Vec<usize> = hyp.large[j].iter().chain(&hyp.coarse[j]).copied().collect();
        let limit = &quarter * Rational::from_integer(hyp.levels[j].into());
        let mut mass = Rational::zero();
        while let Some(&i) = fine.peek() {
            let next = &mass + inst.size(i);
            if next > limit {
                break;
            }
            mass = next;
            bin.push(i);
            fine.next();
        }
        if inst.load(&bin) > Rational::one() {
            return None;
        }
        bins.push(bin);
    }
    let leftover: Vec<usize> = fine.collect();
    if inst.load(&leftover) > Rational::one() {
        return None;
    }
    bins.push(leftover);
    Some(Packing::new(bins))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::check_packing;
    use crate::numeric::parse_rational;

    fn inst(sizes: &[&str], beta: &str, green: &str) -> Instance {
        let q = |s: &str| parse_rational(s).unwrap();
        Instance::gbp(sizes.iter().map(|s| q(s)).collect(), q(beta), q(green)).unwrap()
    }

    #[test]
    fn single_bin_when_everything_fits() {
        let i = inst(&["0.3", "0.3", "0.2"], "0", "0.5");
        assert_eq!(approx32_solve(&i, Problem::Gbp, None).unwrap().bin_count(), 1);
    }

    #[test]
    fn heavy_branch_leaves_heavy_bins_alone() {
        let i = inst(&["0.5", "0.4", "0.1", "0.1", "0.1", "0.1"], "1", "0.1");
        let hyp = TwoBinHypothesis { large: [vec![0], vec![1]], ..Default::default() };
        let p = branch_two_bins_heavy(&i, &hyp).unwrap();
        check_packing(&i, &p).unwrap();
        assert_eq!(p.bin_count(), 2);
        for bin in p.bins() {
            assert!(i.load(bin) >= *i.green());
        }
    }

    #[test]
    fn heavy_branch_seed_goes_first() {
        let i = inst(&["0.3", "0.3", "0.3", "0.3"], "1", "0.25");
        let hyp = TwoBinHypothesis { heavy_seed: Some(2), ..Default::default() };
        let p = branch_two_bins_heavy(&i, &hyp).unwrap();
        check_packing(&i, &p).unwrap();
        assert!(p.bins().iter().any(|b| b.contains(&2)));
    }

    #[test]
    fn light_tiny_zero_levels() {
        let i = inst(&["0.6", "0.5", "0.02", "0.02", "0.02"], "1", "0.1");
        let hyp = TwoBinHypothesis { large: [vec![0], vec![1]], ..Default::default() };
        let p = branch_two_bins_light_tiny(&i, &hyp).unwrap();
        assert_eq!(p, Packing::new(vec![vec![0], vec![1], vec![2, 3, 4]]));
    }

    #[test]
    fn light_tiny_fill_stays_in_window() {
        // quarter units of G = 0.4 are 0.1; all fine items weigh exactly one unit
        let i = inst(&["0.1"; 6], "1", "0.4");
        let hyp = TwoBinHypothesis { levels: [3, 2], ..Default::default() };
        let p = branch_two_bins_light_tiny(&i, &hyp).unwrap();
        let loads: Vec<Rational> = p.bins().iter().map(|b| i.load(b)).collect();
        assert_eq!(p.bin_count(), 3);
        assert!(loads.contains(&ratio(3, 10)) && loads.contains(&ratio(2, 10)));
    }

    #[test]
    fn cgbp_respects_budget() {
        let i = inst(&["0.5", "0.5"], "1", "0.5").with_budget(Some(Rational::zero())).unwrap();
        assert_eq!(approx32_solve(&i, Problem::Cgbp, None).unwrap().bin_count(), 2);
    }
}
