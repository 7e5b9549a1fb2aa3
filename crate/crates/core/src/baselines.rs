//! Classical bin-packing heuristics, used as comparison points.
//!
//! All of them ignore energy and only respect the unit capacity (or the
//! reduced capacity of [`threshold_next_fit`]).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{Instance, Packing};
use crate::numeric::Rational;

/// Order in which the heuristics consume items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ItemOrder {
    /// Non-increasing size, ties by original index.
    #[default]
    Canonical,
    /// The order the items were given in.
    Original,
}

fn order(inst: &Instance, order: ItemOrder) -> Vec<usize> {
    let mut items: Vec<usize> = (0..inst.len()).collect();
    if order == ItemOrder::Original {
        items.sort_by_key(|&i| inst.original_index(i));
    }
    items
}

fn next_fit_with(inst: &Instance, items: impl IntoIterator<Item = usize>, capacity: &Rational) -> Vec<Vec<usize>> {
    let mut bins: Vec<Vec<usize>> = Vec::new();
    let mut load = Rational::zero();
    for item in items {
        let size = inst.size(item);
        match bins.last_mut() {
            Some(bin) if &load + size <= *capacity => {
                bin.push(item);
                load += size;
            }
            _ => {
                bins.push(vec![item]);
                load = size.clone();
            }
        }
    }
    bins
}

/// Keeps one open bin and opens a new one whenever the item does not fit.
pub fn next_fit(inst: &Instance, item_order: ItemOrder) -> Packing {
    Packing::new(next_fit_with(inst, order(inst, item_order), &Rational::one()))
}

/// Puts each item into the earliest opened bin with room for it.
pub fn first_fit(inst: &Instance, item_order: ItemOrder) -> Packing {
    let mut bins: Vec<Vec<usize>> = Vec::new();
    let mut loads: Vec<Rational> = Vec::new();
    for item in order(inst, item_order) {
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

/// First fit decreasing.
pub fn ffd(inst: &Instance) -> Packing {
    first_fit(inst, ItemOrder::Canonical)
}

/// Items of size at least `G + tau` get their own bin; the rest are packed
/// by next fit against capacity `G + tau`.
pub fn threshold_next_fit(inst: &Instance, tau: &Rational) -> Result<Packing> {
    let limit = Rational::one() - inst.green();
    if tau.is_negative() || *tau > limit {
        return Err(Error::InvalidTau { tau: tau.clone(), limit });
    }
    let capacity = inst.green() + tau;
    let (big, rest): (Vec<usize>, Vec<usize>) = (0..inst.len()).partition(|&i| *inst.size(i) >= capacity);
    let mut bins: Vec<Vec<usize>> = big.into_iter().map(|i| vec![i]).collect();
    bins.extend(next_fit_with(inst, rest, &capacity));
    Ok(Packing::new(bins))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{parse_rational, ratio};

    fn inst(sizes: &[&str]) -> Instance {
        inst_g(sizes, "0.5")
    }

    fn inst_g(sizes: &[&str], green: &str) -> Instance {
        let q = |s: &str| parse_rational(s).unwrap();
        Instance::gbp(sizes.iter().map(|s| q(s)).collect(), q("1"), q(green)).unwrap()
    }

    fn loads(i: &Instance, p: &Packing) -> Vec<String> {
        let mut v: Vec<String> = p.bins().iter().map(|b| i.load(b).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn next_fit_example() {
        let i = inst(&["0.6", "0.6", "0.3"]);
        for o in [ItemOrder::Canonical, ItemOrder::Original] {
            assert_eq!(loads(&i, &next_fit(&i, o)), vec!["3/5", "9/10"]);
        }
        let ones = inst(&["1", "1", "1"]);
        assert_eq!(next_fit(&ones, ItemOrder::Original).bin_count(), 3);
    }

    #[test]
    fn original_order_changes_next_fit() {
        let i = inst(&["0.1", "0.1", "0.9", "0.2"]);
        assert_eq!(next_fit(&i, ItemOrder::Original).bin_count(), 3);
        assert_eq!(next_fit(&i, ItemOrder::Canonical).bin_count(), 2);
    }

    #[test]
    fn first_fit_example() {
        let i = inst(&["0.6", "0.3", "0.6"]);
        assert_eq!(loads(&i, &first_fit(&i, ItemOrder::Original)), vec!["3/5", "9/10"]);
        assert!(first_fit(&inst(&[]), ItemOrder::Original).is_empty());
        assert_eq!(first_fit(&inst(&["0.5", "0.5"]), ItemOrder::Original).bin_count(), 1);
    }

    #[test]
    fn ffd_examples() {
        assert_eq!(ffd(&inst(&["0.5", "0.4", "0.3", "0.2"])).bin_count(), 2);
        let i = inst(&["0.7", "0.7", "0.3", "0.3"]);
        assert_eq!(loads(&i, &ffd(&i)), vec!["1", "1"]);
        assert_eq!(ffd(&inst(&["0.9"])).bin_count(), 1);
    }

    #[test]
    fn threshold_next_fit_example() {
        let i = inst_g(&["0.8", "0.3", "0.3", "0.3"], "0.5");
        let p = threshold_next_fit(&i, &ratio(1, 5)).unwrap();
        assert_eq!(loads(&i, &p), vec!["3/10", "3/5", "4/5"]);
    }

    #[test]
    fn threshold_next_fit_degenerates_to_next_fit() {
        let i = inst_g(&["1", "0.3", "0.8", "0.2", "0.5"], "0.4");
        let tau = Rational::one() - i.green();
        assert_eq!(threshold_next_fit(&i, &tau).unwrap(), next_fit(&i, ItemOrder::Canonical));
    }

    #[test]
    fn tau_out_of_range() {
        let i = inst_g(&["0.5"], "0.5");
        assert!(threshold_next_fit(&i, &ratio(-1, 10)).is_err());
        assert!(threshold_next_fit(&i, &ratio(6, 10)).is_err());
    }
}
