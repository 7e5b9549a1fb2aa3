use greenpack_core::aptas::{assign_tiny_lp, pack_leftovers, round_tiny};
use greenpack_core::numeric::{int, ratio};
use greenpack_core::{Instance, Rational};
use proptest::prelude::*;

/// Tiny items spread over `bins` bins, with `delta = 1/den`. Returns the
/// instance, each bin's actual tiny mass, and the items in a shuffled order.
fn scenario() -> impl Strategy<Value = (Instance, Rational, Vec<Rational>, Vec<usize>)> {
    (4i64..=40, 1usize..=6, prop::collection::vec((1i64..=6, 0usize..6), 0..=40), any::<u64>()).prop_map(
        |(den, bins, items, seed)| {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let delta = ratio(1, den);
            // sizes at most delta, drawn on a grid finer than delta
            let sizes: Vec<Rational> = items.iter().map(|&(k, _)| ratio(k, 6 * den)).collect();
            let inst = Instance::gbp(sizes, int(1), ratio(1, 2)).unwrap();
            let mut levels = vec![int(0); bins];
            for (orig, &(_, b)) in items.iter().enumerate() {
                let canonical = (0..inst.len()).find(|&i| inst.original_index(i) == orig).unwrap();
                levels[b % bins] += inst.size(canonical);
            }
            let mut order: Vec<usize> = (0..inst.len()).collect();
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            (inst, delta, levels, order)
        },
    )
}

fn mass(inst: &Instance, items: &[usize]) -> Rational {
    items.iter().map(|&i| inst.size(i)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rounding_bounds_hold((inst, delta, levels, order) in scenario()) {
        let b = levels.len();
        let caps: Vec<Rational> = levels.iter().map(|z| (z / &delta).ceil() * &delta).collect();
        let lp = assign_tiny_lp(&inst, &order, &caps).expect("caps cover the actual masses");

        // every item is placed once, wholly or in shares that add up to its size
        let mut seen: Vec<usize> = lp.assigned.iter().flatten().chain(&lp.fractional).copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..inst.len()).collect::<Vec<_>>());
        for (item, shares) in &lp.shares {
            let total: Rational = shares.iter().map(|(_, m)| m.clone()).sum();
            prop_assert_eq!(&total, inst.size(*item));
        }
        for (j, cap) in caps.iter().enumerate() {
            let share: Rational = lp.shares.iter().flat_map(|(_, s)| s).filter(|(bin, _)| *bin == j).map(|(_, m)| m.clone()).sum();
            prop_assert!(mass(&inst, &lp.assigned[j]) + share <= *cap);
        }

        prop_assert!(lp.fractional.len() <= b);
        prop_assert!(mass(&inst, &lp.fractional) <= int(b as i64) * &delta);

        let r = round_tiny(&inst, &lp, &delta);
        for (j, level) in levels.iter().enumerate() {
            prop_assert!(mass(&inst, &r.removed[j]) <= int(2) * &delta);
            prop_assert!(mass(&inst, &r.kept[j]) <= *level);
            let mut both = r.kept[j].clone();
            both.extend(&r.removed[j]);
            both.sort_unstable();
            let mut assigned = lp.assigned[j].clone();
            assigned.sort_unstable();
            prop_assert_eq!(both, assigned);
        }
        prop_assert!(mass(&inst, &r.pool) <= int(3 * b as i64) * &delta);

        let green = ratio(1, 3);
        for bin in pack_leftovers(&inst, &r.pool, &green) {
            prop_assert!(bin.len() == 1 || mass(&inst, &bin) <= green);
        }
    }
}

#[test]
fn caps_too_small_are_rejected() {
    let inst = Instance::gbp(vec![ratio(1, 10); 3], int(1), ratio(1, 2)).unwrap();
    assert!(assign_tiny_lp(&inst, &[0, 1, 2], &[ratio(1, 10), ratio(1, 10)]).is_none());
}
