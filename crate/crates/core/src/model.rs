//! Instances, packings, the energy function and packing evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Which objective a solver optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Minimize bins plus total energy.
    Gbp,
    /// Minimize bins subject to total energy at most the instance budget.
    Cgbp,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Gbp => "gbp",
            Problem::Cgbp => "cgbp",
        })
    }
}

/// Energy consumed by a bin with the given load: `max{0, beta * (load - green)}`.
pub fn energy(beta: &Rational, green: &Rational, load: &Rational) -> Result<Rational> {
    if load.is_negative() || *load > Rational::one() {
        return Err(Error::LoadOutOfRange(load.clone()));
    }
    Ok(energy_of_load(beta, green, load))
}

pub(crate) fn energy_of_load(beta: &Rational, green: &Rational, load: &Rational) -> Rational {
    if load <= green {
        Rational::zero()
    } else {
        beta * (load - green)
    }
}

/// A GBP or CGBP instance.
///
/// Sizes are stored in canonical order: non-increasing, ties broken by the
/// position in the user-supplied list. Item indices everywhere in this crate
/// refer to canonical positions; [`Instance::original_index`] maps back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    sizes: Vec<Rational>,
    original: Vec<usize>,
    beta: Rational,
    green: Rational,
    budget: Option<Rational>,
}

impl Instance {
    /// Validates and canonicalizes an instance. A budget turns it into a
    /// CGBP instance and must cover the singleton-packing energy.
    pub fn new(
        sizes: Vec<Rational>,
        beta: Rational,
        green: Rational,
        budget: Option<Rational>,
    ) -> Result<Self> {
        if let Some((index, size)) =
            sizes.iter().enumerate().find(|(_, s)| !s.is_positive() || **s > Rational::one())
        {
            return Err(Error::SizeOutOfRange { index, size: size.clone() });
        }
        if beta.is_negative() {
            return Err(Error::NegativeBeta(beta));
        }
        if green.is_negative() || green > Rational::one() {
            return Err(Error::GreenOutOfRange(green));
        }
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
        let canonical = order.iter().map(|&i| sizes[i].clone()).collect();
        let instance = Self { sizes: canonical, original: order, beta, green, budget: None };
        instance.with_budget(budget)
    }

    /// A GBP instance (no budget).
    pub fn gbp(sizes: Vec<Rational>, beta: Rational, green: Rational) -> Result<Self> {
        Self::new(sizes, beta, green, None)
    }

    /// Same items and parameters with a different budget.
    pub fn with_budget(mut self, budget: Option<Rational>) -> Result<Self> {
        if let Some(u) = &budget {
            if u.is_negative() {
                return Err(Error::NegativeBudget(u.clone()));
            }
            let minimum = self.singleton_energy();
            if *u < minimum {
                return Err(Error::InfeasibleBudget { budget: u.clone(), minimum });
            }
        }
        self.budget = budget;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn sizes(&self) -> &[Rational] {
        &self.sizes
    }

    pub fn size(&self, item: usize) -> &Rational {
        &self.sizes[item]
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn green(&self) -> &Rational {
        &self.green
    }

    pub fn budget(&self) -> Option<&Rational> {
        self.budget.as_ref()
    }

    /// Position of canonical item `item` in the user-supplied size list.
    pub fn original_index(&self, item: usize) -> usize {
        self.original[item]
    }

    /// Sizes in the user-supplied order.
    pub fn original_sizes(&self) -> Vec<Rational> {
        let mut sizes = vec![Rational::zero(); self.len()];
        for (item, &orig) in self.original.iter().enumerate() {
            sizes[orig] = self.sizes[item].clone();
        }
        sizes
    }

    pub fn total_size(&self) -> Rational {
        self.sizes.iter().sum()
    }

    pub fn load(&self, items: &[usize]) -> Rational {
        items.iter().map(|&i| &self.sizes[i]).sum()
    }

    /// Energy of a bin with the given load under this instance's parameters.
    pub fn energy_of(&self, load: &Rational) -> Rational {
        energy_of_load(&self.beta, &self.green, load)
    }

    /// Minimum possible total energy, attained by packing every item alone.
    pub fn singleton_energy(&self) -> Rational {
        self.sizes.iter().map(|s| self.energy_of(s)).sum()
    }

    /// Scales sizes and the green threshold down by `factor` and beta up by
    /// it, so that `energy(beta, G, x) == energy(factor * beta, G / factor, x / factor)`.
    /// The budget is kept unchanged since energies are preserved.
    pub fn scale(&self, factor: &Rational) -> Result<Instance> {
        let items: Vec<usize> = (0..self.len()).collect();
        let mut scaled = self.scaled_subset(&items, factor)?;
        scaled.original = self.original.clone();
        scaled.budget = self.budget.clone();
        Ok(scaled)
    }

    /// Budget-free instance over `items` (canonical indices, in canonical
    /// order) with sizes divided by `factor`. Canonical item `k` of the result
    /// is `items[k]`.
    pub(crate) fn scaled_subset(&self, items: &[usize], factor: &Rational) -> Result<Instance> {
        if !factor.is_positive() {
            return Err(Error::InvalidScale(factor.clone()));
        }
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        let mut sizes = Vec::with_capacity(items.len());
        for &i in items {
            let s = &self.sizes[i] / factor;
            if s > Rational::one() {
                return Err(Error::ScaledSizeTooLarge { index: i, size: s });
            }
            sizes.push(s);
        }
        let green = &self.green / factor;
        if green > Rational::one() {
            return Err(Error::GreenOutOfRange(green));
        }
        Ok(Instance {
            original: (0..sizes.len()).collect(),
            sizes,
            beta: &self.beta * factor,
            green,
            budget: None,
        })
    }

    /// Bins of `packing` expressed with user-order item indices.
    pub fn to_original_bins(&self, packing: &Packing) -> Vec<Vec<usize>> {
        packing
            .bins()
            .iter()
            .map(|bin| {
                let mut b: Vec<usize> = bin.iter().map(|&i| self.original[i]).collect();
                b.sort_unstable();
                b
            })
            .collect()
    }

    /// Converts bins given in user-order indices into a canonical packing.
    pub fn from_original_bins(&self, bins: &[Vec<usize>]) -> Result<Packing> {
        let mut inverse = vec![0usize; self.len()];
        for (item, &orig) in self.original.iter().enumerate() {
            inverse[orig] = item;
        }
        let mut mapped = Vec::with_capacity(bins.len());
        for (bin, items) in bins.iter().enumerate() {
            let mut b = Vec::with_capacity(items.len());
            for &item in items {
                b.push(*inverse.get(item).ok_or(Error::UnknownItem { bin, item })?);
            }
            mapped.push(b);
        }
        Ok(Packing::new(mapped))
    }
}

/// A partition of item indices into bins. Bins are kept sorted internally and
/// in lexicographic order, so two packings with the same bins compare equal
/// regardless of construction order. Empty bins are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Packing {
    bins: Vec<Vec<usize>>,
}

impl Packing {
    pub fn new(bins: Vec<Vec<usize>>) -> Self {
        let mut bins: Vec<Vec<usize>> = bins
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        bins.sort();
        Self { bins }
    }

    /// Every item alone in its own bin.
    pub fn singletons(n: usize) -> Self {
        Self::new((0..n).map(|i| vec![i]).collect())
    }

    pub fn bins(&self) -> &[Vec<usize>] {
        &self.bins
    }

    pub fn into_bins(self) -> Vec<Vec<usize>> {
        self.bins
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Renames every item through `map`.
    pub fn map_items(&self, map: impl Fn(usize) -> usize) -> Packing {
        Packing::new(self.bins.iter().map(|b| b.iter().map(|&i| map(i)).collect()).collect())
    }

    /// Disjoint union of two packings over disjoint item sets.
    pub fn union(&self, other: &Packing) -> Packing {
        Packing::new(self.bins.iter().chain(other.bins.iter()).cloned().collect())
    }
}

/// Checks that `packing` covers every item of `inst` exactly once and that no
/// bin exceeds capacity. Returns the bin loads.
pub fn check_packing(inst: &Instance, packing: &Packing) -> Result<Vec<Rational>> {
    let mut owner: Vec<Option<usize>> = vec![None; inst.len()];
    let mut loads = Vec::with_capacity(packing.bin_count());
    for (bin, items) in packing.bins().iter().enumerate() {
        if items.is_empty() {
            return Err(Error::EmptyBin { bin });
        }
        for &item in items {
            let slot = owner.get_mut(item).ok_or(Error::UnknownItem { bin, item })?;
            if let Some(first) = *slot {
                return Err(Error::ItemCoveredTwice { item, first, second: bin });
            }
            *slot = Some(bin);
        }
        let load = inst.load(items);
        if load > Rational::one() {
            return Err(Error::OverfullBin { bin, load });
        }
        loads.push(load);
    }
    if let Some(item) = owner.iter().position(Option::is_none) {
        return Err(Error::ItemMissing { item });
    }
    Ok(loads)
}

/// `epsilon` restricted to reciprocals of positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epsilon {
    inverse: u32,
}

impl Epsilon {
    /// `epsilon = 1 / inverse`.
    pub fn from_inverse(inverse: u32) -> Result<Self> {
        if inverse == 0 {
            return Err(Error::InvalidEpsilon(Rational::zero()));
        }
        Ok(Self { inverse })
    }

    /// Accepts only values in (0, 1] whose reciprocal is an integer.
    pub fn from_rational(value: &Rational) -> Result<Self> {
        let invalid = || Error::InvalidEpsilon(value.clone());
        if !value.is_positive() || *value > Rational::one() || !value.numer().is_one() {
            return Err(invalid());
        }
        let inverse = u32::try_from(value.denom().clone()).map_err(|_| invalid())?;
        Self::from_inverse(inverse)
    }

    pub fn inverse(self) -> u32 {
        self.inverse
    }

    pub fn value(self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.inverse))
    }

    /// `epsilon / 2`.
    pub fn halved(self) -> Self {
        Self { inverse: self.inverse * 2 }
    }

    /// `epsilon / 3`.
    pub fn third(self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(3u64 * u64::from(self.inverse)))
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.inverse)
    }
}

/// Partition of the items into large, medium and tiny.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemClasses {
    pub large: Vec<usize>,
    pub medium: Vec<usize>,
    pub tiny: Vec<usize>,
    /// `max{G, epsilon / 3}`: items above it are large.
    pub threshold: Rational,
    pub delta: Rational,
    pub epsilon: Epsilon,
}

impl ItemClasses {
    pub fn is_large(&self, item: usize) -> bool {
        self.large.binary_search(&item).is_ok()
    }
}

/// Large: `s > max{G, eps/3}`; medium: `delta < s <= max{G, eps/3}`; tiny: `s <= delta`.
pub fn classify_items(inst: &Instance, epsilon: Epsilon, delta: &Rational) -> Result<ItemClasses> {
    let third = epsilon.third();
    let threshold = if *inst.green() > third { inst.green().clone() } else { third };
    if delta.is_negative() || *delta > threshold {
        return Err(Error::InvalidDelta { delta: delta.clone(), limit: threshold });
    }
    let mut classes = ItemClasses {
        large: Vec::new(),
        medium: Vec::new(),
        tiny: Vec::new(),
        threshold,
        delta: delta.clone(),
        epsilon,
    };
    for (i, s) in inst.sizes().iter().enumerate() {
        if *s > classes.threshold {
            classes.large.push(i);
        } else if s > delta {
            classes.medium.push(i);
        } else {
            classes.tiny.push(i);
        }
    }
    Ok(classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinClass {
    /// Contains at least one large item.
    LargeItem,
    /// No large item, load at least G.
    Heavy,
    /// Load below G.
    Light,
}

pub fn classify_bin(bin: &[usize], inst: &Instance, classes: &ItemClasses) -> BinClass {
    bin_class(bin, inst, |i| classes.is_large(i))
}

fn bin_class(bin: &[usize], inst: &Instance, is_large: impl Fn(usize) -> bool) -> BinClass {
    if bin.iter().any(|&i| is_large(i)) {
        BinClass::LargeItem
    } else if inst.load(bin) < *inst.green() {
        BinClass::Light
    } else {
        BinClass::Heavy
    }
}

/// Aggregate cost and bin-class counts of a packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingStats {
    pub bins_used: usize,
    pub large_item_bins: usize,
    pub heavy_bins: usize,
    pub light_bins: usize,
    pub energy: Rational,
    /// `bins_used + energy`.
    pub objective: Rational,
}

/// Evaluates a packing, treating items larger than G as large.
pub fn evaluate(inst: &Instance, packing: &Packing) -> Result<PackingStats> {
    let green = inst.green().clone();
    evaluate_by(inst, packing, |i| *inst.size(i) > green)
}

/// Evaluates a packing with bin classes taken from an explicit item
/// classification.
pub fn evaluate_classified(
    inst: &Instance,
    packing: &Packing,
    classes: &ItemClasses,
) -> Result<PackingStats> {
    evaluate_by(inst, packing, |i| classes.is_large(i))
}

fn evaluate_by(
    inst: &Instance,
    packing: &Packing,
    is_large: impl Fn(usize) -> bool,
) -> Result<PackingStats> {
    let loads = check_packing(inst, packing)?;
    let mut stats = PackingStats {
        bins_used: packing.bin_count(),
        large_item_bins: 0,
        heavy_bins: 0,
        light_bins: 0,
        energy: Rational::zero(),
        objective: Rational::zero(),
    };
    for (bin, load) in packing.bins().iter().zip(&loads) {
        match bin_class(bin, inst, &is_large) {
            BinClass::LargeItem => stats.large_item_bins += 1,
            BinClass::Heavy => stats.heavy_bins += 1,
            BinClass::Light => stats.light_bins += 1,
        }
        stats.energy += inst.energy_of(load);
    }
    stats.objective = Rational::from_integer(BigInt::from(stats.bins_used)) + &stats.energy;
    Ok(stats)
}

/// Total energy of a packing assumed feasible.
pub(crate) fn packing_energy(inst: &Instance, packing: &Packing) -> Rational {
    packing.bins().iter().map(|b| inst.energy_of(&inst.load(b))).sum()
}
