use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::model::{packing_energy, Instance, Packing, Problem};
use crate::numeric::Rational;

/// A packing together with its total energy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub packing: Packing,
    pub energy: Rational,
}

impl Candidate {
    pub fn bins(&self) -> usize {
        self.packing.bin_count()
    }

    pub fn objective(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.bins())) + &self.energy
    }

    /// Candidate order under a fixed bin count: lower energy, then the
    /// lexicographically smaller packing.
    fn beats(&self, other: &Candidate) -> bool {
        (&self.energy, &self.packing) < (&other.energy, &other.packing)
    }
}

/// Candidate packings reduced to the cheapest one per bin count.
///
/// Both objectives only look at `(bins, energy)`: for a fixed bin count the
/// lowest energy is best for GBP and for CGBP alike, so keeping one candidate
/// per bin count loses nothing while bounding memory by the item count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Frontier {
    by_bins: BTreeMap<usize, Candidate>,
}

impl Frontier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Frontier holding exactly one candidate.
    pub fn single(candidate: Candidate) -> Self {
        let mut f = Self::new();
        f.insert(candidate);
        f
    }

    /// Frontier holding `packing` evaluated on `inst`.
    pub fn single_offer(inst: &Instance, packing: Packing) -> Self {
        let mut f = Self::new();
        f.offer(inst, packing);
        f
    }

    pub fn is_empty(&self) -> bool {
        self.by_bins.is_empty()
    }

    pub fn len(&self) -> usize {
        self.by_bins.len()
    }

    /// Evaluates `packing` against `inst` and keeps it if it improves its bin count.
    pub fn offer(&mut self, inst: &Instance, packing: Packing) {
        let energy = packing_energy(inst, &packing);
        self.insert(Candidate { packing, energy });
    }

    pub fn insert(&mut self, candidate: Candidate) {
        match self.by_bins.get_mut(&candidate.bins()) {
            Some(current) if !candidate.beats(current) => {}
            Some(current) => *current = candidate,
            None => {
                self.by_bins.insert(candidate.bins(), candidate);
            }
        }
    }

    pub fn merge(&mut self, other: Frontier) {
        for candidate in other.by_bins.into_values() {
            self.insert(candidate);
        }
    }

    /// Every combination of a candidate from `self` with one from `other`.
    /// The two frontiers must cover disjoint items.
    pub fn product(&self, other: &Frontier) -> Frontier {
        let mut out = Frontier::new();
        for a in self.by_bins.values() {
            for b in other.by_bins.values() {
                out.insert(Candidate {
                    packing: a.packing.union(&b.packing),
                    energy: &a.energy + &b.energy,
                });
            }
        }
        out
    }

    /// Renames the items of every candidate.
    pub fn map_items(&self, map: impl Fn(usize) -> usize) -> Frontier {
        let mut out = Frontier::new();
        for c in self.by_bins.values() {
            out.insert(Candidate { packing: c.packing.map_items(&map), energy: c.energy.clone() });
        }
        out
    }

    pub fn candidates(&self) -> impl Iterator<Item = &Candidate> {
        self.by_bins.values()
    }

    /// The candidate a solver reports: minimum objective for GBP; fewest bins
    /// within `budget` for CGBP. Ties go to lower energy, then to the
    /// lexicographically smaller packing.
    pub fn best(&self, problem: Problem, budget: Option<&Rational>) -> Option<&Candidate> {
        match problem {
            Problem::Gbp => self.by_bins.values().min_by(|a, b| {
                (a.objective(), &a.energy, &a.packing).cmp(&(b.objective(), &b.energy, &b.packing))
            }),
            Problem::Cgbp => self
                .by_bins
                .values()
                .find(|c| budget.is_none_or(|u| c.energy <= *u)),
        }
    }
}
