//! Tiny-item handling: fractional assignment against per-bin tiny caps,
//! integral rounding of that assignment, and greedy packing of what is left.

use num_traits::{Signed, Zero};

use crate::model::Instance;
use crate::numeric::Rational;

/// A basic solution of the tiny-assignment LP.
///
/// `assigned[j]` holds the items placed wholly in bin `j`; `fractional` holds
/// the items split across several bins, with their per-bin shares in
/// `shares`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FractionalAssignment {
    pub assigned: Vec<Vec<usize>>,
    pub fractional: Vec<usize>,
    /// `(item, [(bin, mass)])` for every fractional item.
    pub shares: Vec<(usize, Vec<(usize, Rational)>)>,
}

/// Items kept in each bin, the per-bin sets pulled out of them, and the pool
/// of items that still need a bin.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TinyRounding {
    pub kept: Vec<Vec<usize>>,
    pub removed: Vec<Vec<usize>>,
    pub pool: Vec<usize>,
}

/// Pours `tiny` (in the given order) into bins with capacities `caps`, one
/// bin at a time. An item that does not fit in the current bin's remaining
/// cap is split across consecutive bins and becomes fractional, so at most
/// one item is fractional per bin boundary. Returns `None` when the caps
/// cannot hold the total tiny mass.
pub fn assign_tiny_lp(
    inst: &Instance,
    tiny: &[usize],
    caps: &[Rational],
) -> Option<FractionalAssignment> {
    let total: Rational = tiny.iter().map(|&i| inst.size(i)).sum();
    let capacity: Rational = caps.iter().sum();
    if total > capacity {
        return None;
    }
    let mut out = FractionalAssignment { assigned: vec![Vec::new(); caps.len()], ..Default::default() };
    let mut bin = 0usize;
    let mut room = caps.first().cloned().unwrap_or_else(Rational::zero);
    for &item in tiny {
        let size = inst.size(item);
        while room.is_zero() && bin + 1 < caps.len() {
            bin += 1;
            room = caps[bin].clone();
        }
        if size <= &room {
            out.assigned[bin].push(item);
            room -= size;
            continue;
        }
        let mut parts = Vec::new();
        let mut left = size.clone();
        while left.is_positive() {
            let take = if room < left { room.clone() } else { left.clone() };
            if take.is_positive() {
                parts.push((bin, take.clone()));
            }
            left -= &take;
            room -= &take;
            if left.is_positive() {
                bin += 1;
                room = caps.get(bin).cloned()?;
            }
        }
        out.fractional.push(item);
        out.shares.push((item, parts));
    }
    Some(out)
}

/// For every bin whose assigned mass exceeds `2 * delta`, pulls out a
/// greedy prefix whose mass first exceeds `delta`; lighter bins give up all
/// their items. The pulled-out items and the fractional items form the pool.
pub fn round_tiny(inst: &Instance, assignment: &FractionalAssignment, delta: &Rational) -> TinyRounding {
    let twice = delta * Rational::from_integer(2.into());
    let mut out = TinyRounding::default();
    for items in &assignment.assigned {
        let mass: Rational = items.iter().map(|&i| inst.size(i)).sum();
        let split = if mass <= twice {
            items.len()
        } else {
            let mut taken = Rational::zero();
            let mut count = 0;
            while taken <= *delta {
                taken += inst.size(items[count]);
                count += 1;
            }
            count
        };
        out.removed.push(items[..split].to_vec());
        out.kept.push(items[split..].to_vec());
        out.pool.extend_from_slice(&items[..split]);
    }
    out.pool.extend_from_slice(&assignment.fractional);
    out.pool.sort_unstable();
    out
}

/// Packs `pool` into fresh bins. Items are taken in canonical order and added
/// to the open bin whenever its load stays at most `green`; a new bin opens
/// once no remaining item fits.
pub fn pack_leftovers(inst: &Instance, pool: &[usize], green: &Rational) -> Vec<Vec<usize>> {
    let mut rest: Vec<usize> = pool.to_vec();
    rest.sort_unstable();
    let mut bins = Vec::new();
    while !rest.is_empty() {
        let mut bin = Vec::new();
        let mut load = Rational::zero();
        rest.retain(|&item| {
            let next = &load + inst.size(item);
            // an empty bin always takes its first item
            if bin.is_empty() || next <= *green {
                bin.push(item);
                load = next;
                false
            } else {
                true
            }
        });
        bins.push(bin);
    }
    bins
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, parse_rational, ratio};

    fn tiny_instance(sizes: &[Rational]) -> Instance {
        Instance::gbp(sizes.to_vec(), int(1), ratio(1, 2)).unwrap()
    }

    #[test]
    fn no_tiny_items() {
        let inst = tiny_instance(&[]);
        let a = assign_tiny_lp(&inst, &[], &[ratio(1, 10)]).unwrap();
        assert!(a.fractional.is_empty());
        assert!(a.assigned.iter().all(Vec::is_empty));
    }

    #[test]
    fn three_deltas_into_two_bins() {
        let delta = ratio(1, 39);
        let inst = tiny_instance(&[delta.clone(), delta.clone(), delta.clone()]);
        let caps = [&delta * int(2), delta.clone()];
        let a = assign_tiny_lp(&inst, &[0, 1, 2], &caps).unwrap();
        assert!(a.fractional.len() <= 2);
        assert_eq!(a.assigned, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn item_split_across_half_caps() {
        let delta = ratio(1, 39);
        let inst = tiny_instance(std::slice::from_ref(&delta));
        let half = &delta / int(2);
        let a = assign_tiny_lp(&inst, &[0], &[half.clone(), half.clone()]).unwrap();
        assert_eq!(a.fractional, vec![0]);
        assert_eq!(a.shares, vec![(0, vec![(0, half.clone()), (1, half)])]);
    }

    #[test]
    fn insufficient_caps_are_infeasible() {
        let inst = tiny_instance(&[ratio(1, 10)]);
        assert!(assign_tiny_lp(&inst, &[0], &[ratio(1, 20)]).is_none());
        assert!(assign_tiny_lp(&inst, &[0], &[]).is_none());
    }

    #[test]
    fn light_bins_give_up_everything() {
        let delta = ratio(1, 10);
        let inst = tiny_instance(&[ratio(1, 10), ratio(1, 10)]);
        let a = FractionalAssignment { assigned: vec![vec![0, 1]], ..Default::default() };
        let r = round_tiny(&inst, &a, &delta);
        assert_eq!(r.kept, vec![Vec::<usize>::new()]);
        assert_eq!(r.pool, vec![0, 1]);
    }

    #[test]
    fn heavy_bins_give_up_a_prefix() {
        let delta = ratio(1, 10);
        let sizes: Vec<Rational> = ["0.08", "0.07", "0.06", "0.05"].iter().map(|s| parse_rational(s).unwrap()).collect();
        let inst = tiny_instance(&sizes);
        let a = FractionalAssignment { assigned: vec![vec![0, 1, 2, 3]], ..Default::default() };
        let r = round_tiny(&inst, &a, &delta);
        assert_eq!(r.removed, vec![vec![0, 1]]);
        assert_eq!(r.kept, vec![vec![2, 3]]);
        let removed: Rational = r.removed[0].iter().map(|&i| inst.size(i)).sum();
        assert!(removed > delta && removed <= &delta * int(2));
    }

    #[test]
    fn empty_bin_stays_empty() {
        let inst = tiny_instance(&[]);
        let a = FractionalAssignment { assigned: vec![vec![]], ..Default::default() };
        let r = round_tiny(&inst, &a, &ratio(1, 10));
        assert_eq!(r, TinyRounding { kept: vec![vec![]], removed: vec![vec![]], pool: vec![] });
    }

    #[test]
    fn leftovers_fill_to_green() {
        let inst = tiny_instance(&vec![parse_rational("0.02").unwrap(); 10]);
        let pool: Vec<usize> = (0..10).collect();
        let bins = pack_leftovers(&inst, &pool, &parse_rational("0.1").unwrap());
        assert_eq!(bins, vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]);
        assert!(pack_leftovers(&inst, &[], &ratio(1, 10)).is_empty());
        assert_eq!(pack_leftovers(&inst, &[3], &ratio(1, 10)), vec![vec![3]]);
    }
}
