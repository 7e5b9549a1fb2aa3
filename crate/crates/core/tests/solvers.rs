mod common;

use common::{brute_force, instance_strategy};
use greenpack_core::approx32::approx32_candidates;
use greenpack_core::aptas::aptas_candidates;
use greenpack_core::baselines::{ffd, first_fit, next_fit, threshold_next_fit, ItemOrder};
use greenpack_core::model::check_packing;
use greenpack_core::numeric::{int, ratio};
use greenpack_core::{evaluate, Epsilon, Instance, Problem, Rational};
use proptest::prelude::*;

fn eps(k: u32) -> Epsilon {
    Epsilon::from_inverse(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn aptas_candidates_are_feasible(inst in instance_strategy(7), k in 1u32..=2) {
        let frontier = aptas_candidates(&inst, eps(k), None).unwrap();
        prop_assert!(!frontier.is_empty());
        for c in frontier.candidates() {
            check_packing(&inst, &c.packing).unwrap();
            prop_assert_eq!(&evaluate(&inst, &c.packing).unwrap().energy, &c.energy);
        }
    }

    #[test]
    fn approx32_candidates_are_feasible(inst in instance_strategy(6)) {
        for c in approx32_candidates(&inst, None).unwrap().candidates() {
            check_packing(&inst, &c.packing).unwrap();
        }
    }

    #[test]
    fn aptas_meets_its_guarantee(inst in instance_strategy(6), k in 1u32..=2) {
        let opt = brute_force(&inst, Problem::Gbp).unwrap();
        let frontier = aptas_candidates(&inst, eps(k), None).unwrap();
        let best = frontier.best(Problem::Gbp, None).unwrap();
        let bound = (int(1) + eps(k).value()) * int(opt.bins as i64) + int(1);
        prop_assert!(Rational::from_integer(best.bins().into()) <= bound);
        prop_assert!(best.energy <= opt.energy);
    }

    #[test]
    fn baselines_are_feasible(inst in instance_strategy(10), t in 0i64..=12) {
        let tau = (int(1) - inst.green()) * ratio(t, 12);
        let packings = [
            next_fit(&inst, ItemOrder::Canonical),
            next_fit(&inst, ItemOrder::Original),
            first_fit(&inst, ItemOrder::Canonical),
            first_fit(&inst, ItemOrder::Original),
            ffd(&inst),
            threshold_next_fit(&inst, &tau).unwrap(),
        ];
        for p in &packings {
            check_packing(&inst, p).unwrap();
        }
    }

    #[test]
    fn scaling_preserves_energy_of_every_packing(inst in instance_strategy(6)) {
        let factor = int(2) * inst.green();
        prop_assume!(factor >= *inst.sizes().first().unwrap() && factor > int(0));
        let scaled = inst.scale(&factor).unwrap();
        // a packing feasible on both sides: loads shrink in whichever instance has smaller sizes
        let p = if factor <= int(1) {
            first_fit(&scaled, ItemOrder::Canonical)
        } else {
            first_fit(&inst, ItemOrder::Canonical)
        };
        prop_assert_eq!(evaluate(&inst, &p).unwrap().energy, evaluate(&scaled, &p).unwrap().energy);
    }
}

#[test]
fn solvers_handle_the_empty_instance() {
    let inst = Instance::gbp(Vec::new(), int(1), ratio(1, 2)).unwrap();
    let f = aptas_candidates(&inst, eps(2), None).unwrap();
    assert_eq!(f.best(Problem::Gbp, None).unwrap().bins(), 0);
    assert_eq!(approx32_candidates(&inst, None).unwrap().best(Problem::Gbp, None).unwrap().bins(), 0);
    assert!(ffd(&inst).is_empty());
}
