//! Bin types and configurations over a rounded item multiset.
//!
//! A configuration is a multiset of bin contents that covers the rounded
//! items exactly. Instead of iterating over every vector of bin-type
//! multiplicities, configurations are produced as canonical multiset
//! partitions: bins are emitted in non-increasing lexicographic order of
//! their count vectors, and every bin contains the largest remaining size.
//! Each configuration therefore appears exactly once.

use num_traits::One;

use crate::budget::SearchBudget;
use crate::error::Result;
use crate::numeric::Rational;

/// Distinct rounded sizes in decreasing order with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoundedMultiset {
    pub sizes: Vec<Rational>,
    pub counts: Vec<u32>,
}

impl RoundedMultiset {
    /// Builds the multiset from sizes given in non-increasing order.
    pub fn from_sorted<'a>(sizes: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut ms = Self::default();
        for s in sizes {
            if ms.sizes.last() == Some(s) {
                *ms.counts.last_mut().expect("parallel vectors") += 1;
            } else {
                debug_assert!(ms.sizes.last().is_none_or(|last| last > s));
                ms.sizes.push(s.clone());
                ms.counts.push(1);
            }
        }
        ms
    }

    pub fn distinct(&self) -> usize {
        self.sizes.len()
    }

    pub fn total_items(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn load(&self, counts: &[u32]) -> Rational {
        counts
            .iter()
            .zip(&self.sizes)
            .filter(|(c, _)| **c > 0)
            .map(|(&c, s)| s * Rational::from_integer(c.into()))
            .sum()
    }
}

/// Contents of one bin: how many items of each distinct rounded size, and
/// the rounded tiny mass `tiny_level * delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinType {
    pub counts: Vec<u32>,
    pub tiny_level: u32,
}

/// Bins of a configuration, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub bins: Vec<BinType>,
}

impl Configuration {
    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    /// Each distinct bin type with its number of bins.
    pub fn multiplicities(&self) -> Vec<(BinType, usize)> {
        let mut out: Vec<(BinType, usize)> = Vec::new();
        for b in &self.bins {
            match out.last_mut() {
                Some((t, m)) if t == b => *m += 1,
                _ => out.push((b.clone(), 1)),
            }
        }
        out
    }
}

/// Collects every configuration of `multiset` with at most `max_bins` bins
/// (tiny levels left at zero).
pub fn enumerate_configurations(
    multiset: &RoundedMultiset,
    max_bins: usize,
    node_budget: Option<u64>,
) -> Result<Vec<Configuration>> {
    let mut budget =
        SearchBudget::new("configuration", node_budget.unwrap_or(super::DEFAULT_NODE_BUDGET));
    let mut out = Vec::new();
    for_each_configuration(multiset, max_bins, &mut budget, |bins, _| {
        out.push(Configuration {
            bins: bins.iter().map(|c| BinType { counts: c.clone(), tiny_level: 0 }).collect(),
        });
        Ok(())
    })?;
    Ok(out)
}

/// Items behind each distinct size of `multiset`, given `(item, rounded size)`
/// pairs in the order the multiset was built from.
pub(crate) fn type_members(rounded: &[(usize, &Rational)], multiset: &RoundedMultiset) -> Vec<Vec<usize>> {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); multiset.distinct()];
    let mut t = 0;
    for (k, &(item, size)) in rounded.iter().enumerate() {
        if k > 0 && rounded[k - 1].1 != size {
            t += 1;
        }
        members[t].push(item);
    }
    members
}

/// Turns count vectors into concrete bins, handing out the members of each
/// type in order.
pub(crate) fn concrete_bins(members: &[Vec<usize>], bins: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut cursor = vec![0usize; members.len()];
    bins.iter()
        .map(|counts| {
            let mut items = Vec::new();
            for (t, &c) in counts.iter().enumerate() {
                let c = c as usize;
                items.extend_from_slice(&members[t][cursor[t]..cursor[t] + c]);
                cursor[t] += c;
            }
            items
        })
        .collect()
}

/// Streams configurations as lists of count vectors.
pub(crate) fn for_each_configuration(
    multiset: &RoundedMultiset,
    max_bins: usize,
    budget: &mut SearchBudget,
    mut visit: impl FnMut(&[Vec<u32>], &mut SearchBudget) -> Result<()>,
) -> Result<()> {
    let mut walker = Walker {
        ms: multiset,
        max_bins,
        remaining: multiset.counts.clone(),
        chosen: Vec::new(),
        budget,
    };
    walker.partition(&mut visit)
}

struct Walker<'a, 'b> {
    ms: &'a RoundedMultiset,
    max_bins: usize,
    remaining: Vec<u32>,
    chosen: Vec<Vec<u32>>,
    budget: &'b mut SearchBudget,
}

type Visitor<'v> = dyn FnMut(&[Vec<u32>], &mut SearchBudget) -> Result<()> + 'v;

impl Walker<'_, '_> {
    fn partition(&mut self, visit: &mut Visitor<'_>) -> Result<()> {
        self.budget.tick()?;
        let Some(first) = self.remaining.iter().position(|&c| c > 0) else {
            return visit(&self.chosen, self.budget);
        };
        if self.chosen.len() == self.max_bins {
            return Ok(());
        }
        let mut bins = Vec::new();
        let mut current = vec![0u32; self.ms.distinct()];
        let prev = self.chosen.last().cloned();
        // a previous bin holding an earlier type is already lexicographically larger
        let tight = prev.as_ref().is_some_and(|p| p[..first].iter().all(|&c| c == 0));
        self.bin_contents(first, first, Rational::from_integer(0.into()), prev.as_deref(), tight, &mut current, &mut bins)?;
        for bin in bins {
            for (r, c) in self.remaining.iter_mut().zip(&bin) {
                *r -= c;
            }
            self.chosen.push(bin);
            self.partition(visit)?;
            let bin = self.chosen.pop().expect("just pushed");
            for (r, c) in self.remaining.iter_mut().zip(&bin) {
                *r += c;
            }
        }
        Ok(())
    }

    /// Lists feasible bin contents that include type `first`, fit in the
    /// remaining multiset, and are lexicographically at most `prev`, in
    /// decreasing lexicographic order.
    #[allow(clippy::too_many_arguments)]
    fn bin_contents(
        &mut self,
        first: usize,
        idx: usize,
        load: Rational,
        prev: Option<&[u32]>,
        tight: bool,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<()> {
        if idx == self.ms.distinct() {
            out.push(current.clone());
            return Ok(());
        }
        self.budget.tick()?;
        let size = &self.ms.sizes[idx];
        let room = Rational::one() - &load;
        let fit = (room / size).floor().to_integer();
        let mut hi = self.remaining[idx].min(u32::try_from(fit).unwrap_or(u32::MAX));
        if tight {
            if let Some(p) = prev {
                hi = hi.min(p[idx]);
            }
        }
        let lo = u32::from(idx == first);
        for c in (lo..=hi).rev() {
            current[idx] = c;
            let still_tight = tight && prev.is_some_and(|p| p[idx] == c);
            let next_load = &load + size * Rational::from_integer(c.into());
            self.bin_contents(first, idx + 1, next_load, prev, still_tight, current, out)?;
        }
        current[idx] = 0;
        Ok(())
    }
}
