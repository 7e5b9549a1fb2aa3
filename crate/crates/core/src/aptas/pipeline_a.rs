//! The scheme for `G >= epsilon / 3`.
//!
//! Large and medium items are linearly grouped, every configuration of the
//! rounded items is enumerated together with a rounded tiny mass per bin,
//! tiny items are assigned fractionally and rounded, and the leftovers go
//! into fresh bins that stay within the green space.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::frontier::Frontier;
use crate::model::{classify_items, Epsilon, Instance, Packing};
use crate::numeric::Rational;

use super::config::{concrete_bins, for_each_configuration, type_members, RoundedMultiset};
use super::grouping::{linear_group_large, linear_group_medium};
use super::tiny::{assign_tiny_lp, pack_leftovers, round_tiny};

/// `epsilon^2 / 39`, the tiny threshold for this regime.
pub fn pipeline_a_delta(epsilon: Epsilon) -> Rational {
    let k = BigInt::from(epsilon.inverse());
    Rational::new(BigInt::from(1), &k * &k * BigInt::from(39))
}

/// Candidate packings for an instance with `G >= epsilon / 3`.
pub fn aptas_pipeline_a(inst: &Instance, epsilon: Epsilon, node_budget: Option<u64>) -> Result<Frontier> {
    let mut budget = SearchBudget::new("aptas", node_budget.unwrap_or(super::DEFAULT_NODE_BUDGET));
    run(inst, epsilon, &mut budget)
}

pub(crate) fn run(inst: &Instance, epsilon: Epsilon, budget: &mut SearchBudget) -> Result<Frontier> {
    if *inst.green() < epsilon.third() {
        return Err(Error::WrongRegime { requirement: "G >= epsilon / 3" });
    }
    let delta = pipeline_a_delta(epsilon);
    let classes = classify_items(inst, epsilon, &delta)?;
    let large = linear_group_large(inst, &classes.large, epsilon);
    let medium = linear_group_medium(inst, &classes.medium, epsilon, &delta);

    // rounded large sizes all exceed G and rounded medium sizes are at most G,
    // so concatenation keeps the non-increasing order
    let rounded: Vec<(usize, &Rational)> = large.rounded_items().chain(medium.rounded_items()).collect();
    let multiset = RoundedMultiset::from_sorted(rounded.iter().map(|(_, s)| *s));
    let members = type_members(&rounded, &multiset);

    let tiny = &classes.tiny;
    let levels = LevelSpace::new(inst, tiny, &delta);
    let mut frontier = Frontier::new();
    let max_bins = 2 * inst.len();

    for_each_configuration(&multiset, max_bins, budget, |bins, budget| {
        let contents = concrete_bins(&members, bins);
        let room: Vec<Rational> =
            bins.iter().map(|counts| Rational::one() - multiset.load(counts)).collect();
        let same_as_prev: Vec<bool> =
            (0..bins.len()).map(|j| j > 0 && bins[j] == bins[j - 1]).collect();
        levels.for_each(&room, &same_as_prev, budget, |config_levels, pure_levels| {
            let caps: Vec<Rational> = config_levels
                .iter()
                .chain(pure_levels)
                .map(|&l| &delta * Rational::from_integer(l.into()))
                .collect();
            let Some(assignment) = assign_tiny_lp(inst, tiny, &caps) else {
                return;
            };
            let rounding = round_tiny(inst, &assignment, &delta);
            let mut packing: Vec<Vec<usize>> = contents.clone();
            packing.resize(caps.len(), Vec::new());
            for (bin, kept) in packing.iter_mut().zip(rounding.kept) {
                bin.extend(kept);
            }
            packing.extend(pack_leftovers(inst, &rounding.pool, inst.green()));
            frontier.offer(inst, Packing::new(packing));
        })
    })?;
    Ok(frontier)
}

/// Enumerates rounded tiny masses `level * delta` per bin.
///
/// Only level vectors realized by an actual assignment of the tiny items are
/// produced: each tiny item goes to a configuration bin with room for it or
/// to a bin holding tiny items only, and every bin's level is its tiny mass
/// rounded up to a multiple of `delta`. The level vector of the optimal
/// packing is among them, while the many vectors no packing can realize
/// are skipped. Each distinct vector is visited once.
struct LevelSpace<'a> {
    inst: &'a Instance,
    tiny: &'a [usize],
    delta: Rational,
}

impl<'a> LevelSpace<'a> {
    fn new(inst: &'a Instance, tiny: &'a [usize], delta: &Rational) -> Self {
        Self { inst, tiny, delta: delta.clone() }
    }

    fn level(&self, mass: &Rational) -> u64 {
        (mass / &self.delta).ceil().to_integer().to_u64().expect("level fits in u64")
    }

    /// Calls `visit(config_levels, pure_levels)` once per distinct choice;
    /// `pure_levels` is non-increasing.
    fn for_each(
        &self,
        room: &[Rational],
        same_as_prev: &[bool],
        budget: &mut SearchBudget,
        mut visit: impl FnMut(&[u64], &[u64]),
    ) -> Result<()> {
        let mut walk = LevelWalk {
            space: self,
            room: room.to_vec(),
            mass: vec![Rational::zero(); room.len()],
            pure: Vec::new(),
            same_as_prev,
            seen: HashSet::new(),
            budget,
        };
        walk.place(0)?;
        let mut seen: Vec<(Vec<u64>, Vec<u64>)> = walk.seen.into_iter().collect();
        seen.sort_unstable();
        for (config, pure) in &seen {
            visit(config, pure);
        }
        Ok(())
    }
}

struct LevelWalk<'a, 'b> {
    space: &'a LevelSpace<'a>,
    room: Vec<Rational>,
    mass: Vec<Rational>,
    pure: Vec<Rational>,
    same_as_prev: &'a [bool],
    seen: HashSet<(Vec<u64>, Vec<u64>)>,
    budget: &'b mut SearchBudget,
}

impl LevelWalk<'_, '_> {
    fn place(&mut self, k: usize) -> Result<()> {
        self.budget.tick()?;
        let Some(&item) = self.space.tiny.get(k) else {
            self.record();
            return Ok(());
        };
        let size = self.space.inst.size(item).clone();
        for j in 0..self.room.len() {
            // identical bins are interchangeable: fill them in order
            if self.same_as_prev[j] && self.mass[j - 1].is_zero() {
                continue;
            }
            if size > self.room[j] {
                continue;
            }
            self.room[j] -= &size;
            self.mass[j] += &size;
            let r = self.place(k + 1);
            self.room[j] += &size;
            self.mass[j] -= &size;
            r?;
        }
        for p in 0..self.pure.len() {
            let load = &self.pure[p] + &size;
            if load > Rational::one() {
                continue;
            }
            let old = std::mem::replace(&mut self.pure[p], load);
            let r = self.place(k + 1);
            self.pure[p] = old;
            r?;
        }
        self.pure.push(size);
        let r = self.place(k + 1);
        self.pure.pop();
        r
    }

    fn record(&mut self) {
        let mut config: Vec<u64> = self.mass.iter().map(|m| self.space.level(m)).collect();
        // levels of identical bins only matter as a multiset
        let mut start = 0;
        for j in 1..=config.len() {
            if j == config.len() || !self.same_as_prev[j] {
                config[start..j].sort_unstable_by(|a, b| b.cmp(a));
                start = j;
            }
        }
        let mut pure: Vec<u64> = self.pure.iter().map(|m| self.space.level(m)).collect();
        pure.sort_unstable_by(|a, b| b.cmp(a));
        self.seen.insert((config, pure));
    }
}
