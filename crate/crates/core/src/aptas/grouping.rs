//! Linear grouping: split sorted items into consecutive groups of equal
//! size and round every item up to the largest size in its group.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::model::{Epsilon, Instance};
use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedGroups {
    /// Consecutive runs of the input items; all but the last have `group_size` members.
    pub groups: Vec<Vec<usize>>,
    pub group_size: usize,
    /// Size every member of the group is rounded up to.
    pub rounded: Vec<Rational>,
    /// `(item, image)`: members of group `i >= 1` map in order onto group `i - 1`.
    /// Empty when no grouping took place.
    pub phi: Vec<(usize, usize)>,
    /// False when the input was below the grouping threshold and left as is.
    pub grouped: bool,
}

impl RoundedGroups {
    fn identity(inst: &Instance, items: &[usize]) -> Self {
        Self {
            groups: items.iter().map(|&i| vec![i]).collect(),
            group_size: 1,
            rounded: items.iter().map(|&i| inst.size(i).clone()).collect(),
            phi: Vec::new(),
            grouped: false,
        }
    }

    fn chunked(inst: &Instance, items: &[usize], m: usize) -> Self {
        let groups: Vec<Vec<usize>> = items.chunks(m).map(<[usize]>::to_vec).collect();
        let rounded = groups.iter().map(|g| inst.size(g[0]).clone()).collect();
        let phi = groups
            .windows(2)
            .flat_map(|w| w[1].iter().copied().zip(w[0].iter().copied()))
            .collect();
        Self { groups, group_size: m, rounded, phi, grouped: true }
    }

    /// `(item, rounded size)` for every grouped item, in input order.
    pub fn rounded_items(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.groups
            .iter()
            .zip(&self.rounded)
            .flat_map(|(g, r)| g.iter().map(move |&i| (i, r)))
    }

    pub fn item_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }
}

/// Groups large items. Below `24 / epsilon^2` items the input is returned
/// unrounded; otherwise `m = ceil(epsilon^2 |L| / 24)`.
///
/// `items` must be in canonical (non-increasing size) order.
pub fn linear_group_large(inst: &Instance, items: &[usize], epsilon: Epsilon) -> RoundedGroups {
    let k = u64::from(epsilon.inverse());
    let threshold = 24 * k * k;
    let count = items.len() as u64;
    if count < threshold {
        return RoundedGroups::identity(inst, items);
    }
    let m = count.div_ceil(threshold);
    RoundedGroups::chunked(inst, items, m as usize)
}

/// Groups medium items. Below `8 / (epsilon * delta)` items the input is
/// returned unrounded; otherwise `m = ceil(epsilon * delta * |M| / 8)`.
pub fn linear_group_medium(
    inst: &Instance,
    items: &[usize],
    epsilon: Epsilon,
    delta: &Rational,
) -> RoundedGroups {
    let scaled = epsilon.value() * delta * Rational::from_integer(BigInt::from(items.len()))
        / Rational::from_integer(BigInt::from(8));
    if !delta.is_positive() || scaled < Rational::from_integer(BigInt::from(1)) {
        return RoundedGroups::identity(inst, items);
    }
    let m = scaled.ceil().to_integer().to_usize().expect("group size fits in usize");
    RoundedGroups::chunked(inst, items, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn decreasing(n: usize) -> Instance {
        let sizes = (0..n).map(|i| ratio(2 * n as i64 - i as i64, 2 * n as i64)).collect();
        Instance::gbp(sizes, int(1), ratio(1, 2)).unwrap()
    }

    #[test]
    fn thirty_large_items_form_pairs() {
        let inst = decreasing(30);
        let items: Vec<usize> = (0..30).collect();
        let g = linear_group_large(&inst, &items, Epsilon::from_inverse(1).unwrap());
        assert!(g.grouped);
        assert_eq!(g.group_size, 2);
        assert_eq!(g.groups.len(), 15);
        for (group, rounded) in g.groups.iter().zip(&g.rounded) {
            assert_eq!(rounded, inst.size(group[0]));
        }
        assert_eq!(g.phi[0], (2, 0));
    }

    #[test]
    fn below_threshold_is_identity() {
        let inst = decreasing(20);
        let items: Vec<usize> = (0..20).collect();
        let g = linear_group_large(&inst, &items, Epsilon::from_inverse(1).unwrap());
        assert!(!g.grouped);
        assert!(g.phi.is_empty());
        assert!(g.rounded_items().all(|(i, r)| r == inst.size(i)));
    }

    #[test]
    fn at_threshold_groups_are_singletons() {
        let inst = decreasing(24);
        let items: Vec<usize> = (0..24).collect();
        let g = linear_group_large(&inst, &items, Epsilon::from_inverse(1).unwrap());
        assert!(g.grouped);
        assert_eq!(g.group_size, 1);
        assert!(g.rounded_items().all(|(i, r)| r == inst.size(i)));
    }

    #[test]
    fn medium_threshold() {
        let eps = Epsilon::from_inverse(1).unwrap();
        let delta = ratio(1, 39);
        let inst = decreasing(312);
        let items: Vec<usize> = (0..312).collect();
        let g = linear_group_medium(&inst, &items, eps, &delta);
        assert!(g.grouped);
        assert_eq!(g.group_size, 1);
        let g = linear_group_medium(&inst, &items[..311], eps, &delta);
        assert!(!g.grouped);
        let g = linear_group_medium(&inst, &[], eps, &delta);
        assert!(g.groups.is_empty());
    }
}
