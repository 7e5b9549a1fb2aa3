//! The scheme for `G < epsilon / 3`, where tiny means `s <= G`.
//!
//! An optimal packing either has a light bin, in which case every item above
//! `G` sits alone and tiny-only bins carry at most `2G`, or it has none. The
//! algorithm cannot tell which, so it tries three constructions and keeps
//! all of their candidates:
//!
//! 1. non-tiny items alone, tiny items through pipeline A after scaling by `2G`;
//! 2. every large-item configuration with a guessed number of heavy bins,
//!    seeded with medium items and topped up with tiny items;
//! 3. every large-item configuration, medium items alone, tiny items through
//!    pipeline A after scaling by `3G` with `epsilon / 2`.
//!
//! Sub-results are combined on the original instance, so energies never
//! need translating between scales.

use num_traits::{One, Zero};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::frontier::Frontier;
use crate::model::{classify_items, Epsilon, Instance, ItemClasses, Packing};
use crate::numeric::Rational;

use super::config::{concrete_bins, for_each_configuration, type_members, RoundedMultiset};
use super::grouping::linear_group_large;

/// Candidate packings for an instance with `G < epsilon / 3`.
pub fn aptas_pipeline_b(inst: &Instance, epsilon: Epsilon, node_budget: Option<u64>) -> Result<Frontier> {
    let mut budget = SearchBudget::new("aptas", node_budget.unwrap_or(super::DEFAULT_NODE_BUDGET));
    run(inst, epsilon, &mut budget)
}

pub(crate) fn run(inst: &Instance, epsilon: Epsilon, budget: &mut SearchBudget) -> Result<Frontier> {
    if *inst.green() >= epsilon.third() {
        return Err(Error::WrongRegime { requirement: "G < epsilon / 3" });
    }
    let classes = classify_items(inst, epsilon, inst.green())?;
    let mut frontier = Frontier::new();

    let singles = Frontier::single_offer(
        inst,
        Packing::new(classes.medium.iter().map(|&i| vec![i]).collect()),
    );
    let large_alone = Frontier::single_offer(
        inst,
        Packing::new(classes.large.iter().map(|&i| vec![i]).collect()),
    );

    // light-bin case
    let tiny_2g = scaled_tiny(inst, &classes, 2, epsilon, budget)?;
    combine_into(&mut frontier, inst, &[&large_alone, &singles, &tiny_2g]);

    let large_configs = large_configurations(inst, &classes, epsilon, budget)?;

    // no light bin, enough tiny mass to make every tiny-holding bin heavy
    for config in &large_configs {
        for heavy in 0..=classes.medium.len() + classes.tiny.len() {
            budget.tick()?;
            frontier.offer(inst, seeded_packing(inst, &classes, config, heavy));
        }
    }

    // no light bin, little tiny mass
    let mut large_frontier = Frontier::new();
    for config in large_configs {
        large_frontier.offer(inst, Packing::new(config));
    }
    let tiny_3g = scaled_tiny(inst, &classes, 3, epsilon.halved(), budget)?;
    combine_into(&mut frontier, inst, &[&large_frontier, &singles, &tiny_3g]);

    Ok(frontier)
}

/// Runs pipeline A on the tiny items scaled by `multiple * G`, mapped back to
/// original item indices. Without tiny items this is the empty packing.
fn scaled_tiny(
    inst: &Instance,
    classes: &ItemClasses,
    multiple: i64,
    epsilon: Epsilon,
    budget: &mut SearchBudget,
) -> Result<Frontier> {
    if classes.tiny.is_empty() {
        return Ok(Frontier::single_offer(inst, Packing::default()));
    }
    let factor = inst.green() * Rational::from_integer(multiple.into());
    let scaled = inst.scaled_subset(&classes.tiny, &factor)?;
    let sub = super::pipeline_a::run(&scaled, epsilon, budget)?;
    Ok(sub.map_items(|k| classes.tiny[k]))
}

/// Products of the given frontiers, re-evaluated on `inst`.
fn combine_into(out: &mut Frontier, inst: &Instance, parts: &[&Frontier]) {
    let mut acc = Frontier::single_offer(inst, Packing::default());
    for part in parts {
        acc = acc.product(part);
    }
    for c in acc.candidates() {
        out.offer(inst, c.packing.clone());
    }
}

/// Every configuration of the (linearly grouped) large items as concrete bins.
fn large_configurations(
    inst: &Instance,
    classes: &ItemClasses,
    epsilon: Epsilon,
    budget: &mut SearchBudget,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let groups = linear_group_large(inst, &classes.large, epsilon);
    let rounded: Vec<(usize, &Rational)> = groups.rounded_items().collect();
    let multiset = RoundedMultiset::from_sorted(rounded.iter().map(|(_, s)| *s));
    let members = type_members(&rounded, &multiset);
    let mut out = Vec::new();
    for_each_configuration(&multiset, classes.large.len(), budget, |bins, _| {
        out.push(concrete_bins(&members, bins));
        Ok(())
    })?;
    Ok(out)
}

/// Opens `heavy` bins next to the large-item bins: the first `min(heavy, |M|)`
/// get one medium item each (lowest index first), the others are filled with
/// tiny items until their load first exceeds `G`. All remaining items are then
/// first-fit in non-increasing size over the bins in creation order.
fn seeded_packing(inst: &Instance, classes: &ItemClasses, large_bins: &[Vec<usize>], heavy: usize) -> Packing {
    let mut bins: Vec<Vec<usize>> = large_bins.to_vec();
    let mut loads: Vec<Rational> = bins.iter().map(|b| inst.load(b)).collect();

    let seeded = heavy.min(classes.medium.len());
    for &m in &classes.medium[..seeded] {
        bins.push(vec![m]);
        loads.push(inst.size(m).clone());
    }
    let mut tiny = classes.tiny.iter().copied().peekable();
    for _ in seeded..heavy {
        let mut bin = Vec::new();
        let mut load = Rational::zero();
        while load <= *inst.green() {
            let Some(t) = tiny.next() else { break };
            load += inst.size(t);
            bin.push(t);
        }
        if bin.is_empty() {
            break;
        }
        bins.push(bin);
        loads.push(load);
    }

    let mut rest: Vec<usize> = classes.medium[seeded..].iter().copied().chain(tiny).collect();
    rest.sort_unstable();
    for item in rest {
        let size = inst.size(item);
        match loads.iter().position(|l| l + size <= Rational::one()) {
            Some(j) => {
                bins[j].push(item);
                loads[j] += size;
            }
            None => {
                bins.push(vec![item]);
                loads.push(size.clone());
            }
        }
    }
    Packing::new(bins)
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
    fn candidates_are_feasible() {
        let i = inst(&["0.5", "0.3", "0.2", "0.05", "0.04", "0.03", "0.02"], "2", "0.06");
        let f = aptas_pipeline_b(&i, Epsilon::from_inverse(1).unwrap(), None).unwrap();
        assert!(!f.is_empty());
        for c in f.candidates() {
            check_packing(&i, &c.packing).unwrap();
        }
    }

    #[test]
    fn zero_green_has_no_tiny_items() {
        let i = inst(&["0.5", "0.3", "0.2"], "1", "0");
        let f = aptas_pipeline_b(&i, Epsilon::from_inverse(1).unwrap(), None).unwrap();
        let best = f.candidates().map(|c| c.bins()).min().unwrap();
        assert_eq!(best, 1);
        for c in f.candidates() {
            assert_eq!(c.energy, i.total_size());
        }
    }

    #[test]
    fn wrong_regime_is_rejected() {
        let i = inst(&["0.5"], "1", "0.5");
        let err = aptas_pipeline_b(&i, Epsilon::from_inverse(1).unwrap(), None).unwrap_err();
        assert!(matches!(err, Error::WrongRegime { .. }));
    }

    #[test]
    fn heavy_bins_are_topped_up_past_green() {
        let i = inst(&["0.05", "0.05", "0.05", "0.05"], "1", "0.1");
        let classes = classify_items(&i, Epsilon::from_inverse(1).unwrap(), i.green()).unwrap();
        let p = seeded_packing(&i, &classes, &[], 1);
        assert_eq!(p, Packing::new(vec![vec![0, 1, 2, 3]]));
        let p = seeded_packing(&i, &classes, &[], 2);
        // the first bin stops at 0.15 > G, the second takes the last item
        assert_eq!(p, Packing::new(vec![vec![0, 1, 2], vec![3]]));
    }
}
