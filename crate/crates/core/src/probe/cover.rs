//! Complementary covers: minimal sets of visible groups whose filtered
//! extents jointly contain every positive-weight probe object.
//!
//! Covers are enumerated by increasing size with a depth-first search over
//! group ids. A branch is cut as soon as one chosen group becomes redundant
//! (its objects are already covered by the others), because no superset can
//! be minimal again, and when the remaining groups cannot complete the
//! cover. Up to [`EXACT_COVER_LIMIT`] probe objects the search uses word
//! masks and is always exhaustive. Larger probes use bit sets, start from a
//! greedy cover and stop after a fixed number of search nodes.

use super::{GroupedContext, ProbeError, ProbeState};
use crate::context::BitSet;

/// Largest positive probe for which the search is guaranteed exhaustive.
pub const EXACT_COVER_LIMIT: usize = 20;
const NODE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverResult {
    /// Covers as sorted group ids, ordered by size then lexicographically.
    pub covers: Vec<Vec<usize>>,
    /// More covers exist than were returned.
    pub truncated: bool,
    /// Every cover within the size bound was examined.
    pub exhaustive: bool,
}

trait Mask: Clone + PartialEq {
    fn or(&self, other: &Self) -> Self;
    fn subset_of(&self, other: &Self) -> bool;
    fn count(&self) -> usize;
}

impl Mask for u32 {
    fn or(&self, other: &Self) -> Self {
        self | other
    }
    fn subset_of(&self, other: &Self) -> bool {
        self & !other == 0
    }
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
}

impl Mask for BitSet {
    fn or(&self, other: &Self) -> Self {
        self.union(other)
    }
    fn subset_of(&self, other: &Self) -> bool {
        self.is_subset(other)
    }
    fn count(&self) -> usize {
        BitSet::count(self)
    }
}

struct Search<'a, M: Mask> {
    ids: &'a [usize],
    masks: &'a [M],
    suffix: Vec<M>,
    full: M,
    empty: M,
    wanted: usize,
    found: Vec<Vec<usize>>,
    nodes: u64,
    budget: Option<u64>,
    out_of_budget: bool,
}

impl<M: Mask> Search<'_, M> {
    fn redundant(&self, chosen: &[usize]) -> bool {
        (0..chosen.len()).any(|skip| {
            let rest = chosen
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .fold(self.empty.clone(), |acc, (_, &c)| acc.or(&self.masks[c]));
            self.masks[chosen[skip]].subset_of(&rest)
        })
    }

    /// Collects covers of exactly `size` elements; returns false once
    /// enough have been found or the budget ran out.
    fn run(&mut self, start: usize, chosen: &mut Vec<usize>, union: &M, size: usize) -> bool {
        if self.found.len() >= self.wanted {
            return false;
        }
        if let Some(b) = self.budget {
            self.nodes += 1;
            if self.nodes > b {
                self.out_of_budget = true;
                return false;
            }
        }
        if chosen.len() == size {
            if *union == self.full {
                self.found.push(chosen.iter().map(|&i| self.ids[i]).collect());
            }
            return true;
        }
        if *union == self.full {
            return true;
        }
        let n = self.masks.len();
        if start >= n || !self.full.subset_of(&union.or(&self.suffix[start])) {
            return true;
        }
        for i in start..n {
            if n - i < size - chosen.len() {
                break;
            }
            let next = union.or(&self.masks[i]);
            if next == *union {
                continue;
            }
            chosen.push(i);
            let keep_going = self.redundant(chosen) || self.run(i + 1, chosen, &next, size);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn search<M: Mask>(
    ids: &[usize],
    masks: &[M],
    full: M,
    empty: M,
    max_size: usize,
    max_results: usize,
    budget: Option<u64>,
) -> (Vec<Vec<usize>>, bool, bool) {
    let mut suffix = vec![empty.clone(); masks.len() + 1];
    for i in (0..masks.len()).rev() {
        suffix[i] = suffix[i + 1].or(&masks[i]);
    }
    let largest = masks.iter().map(Mask::count).max().unwrap_or(0);
    let mut s = Search {
        ids,
        masks,
        suffix,
        full: full.clone(),
        empty: empty.clone(),
        wanted: max_results + 1,
        found: Vec::new(),
        nodes: 0,
        budget,
        out_of_budget: false,
    };
    if largest == 0 {
        return (Vec::new(), false, true);
    }
    let lower = full.count().div_ceil(largest).max(1);
    for size in lower..=max_size {
        if !s.run(0, &mut Vec::new(), &empty, size) {
            break;
        }
    }
    let truncated = s.found.len() > max_results;
    s.found.truncate(max_results);
    let out_of_budget = s.out_of_budget;
    (s.found, truncated, !out_of_budget)
}

/// Greedy cover made irredundant, as positions into `masks`.
fn greedy(masks: &[BitSet], full: &BitSet) -> Option<Vec<usize>> {
    let mut covered = BitSet::empty(full.universe());
    let mut picked = Vec::new();
    while covered != *full {
        let (best, gain) = masks
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.difference(&covered).count()))
            .max_by_key(|&(i, gain)| (gain, std::cmp::Reverse(i)))?;
        if gain == 0 {
            return None;
        }
        covered.union_with(&masks[best]);
        picked.push(best);
    }
    // drop members whose objects the others already cover
    let mut i = picked.len();
    while i > 0 {
        i -= 1;
        let rest = picked
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(BitSet::empty(full.universe()), |acc, (_, &p)| acc.union(&masks[p]));
        if rest == *full {
            picked.remove(i);
        }
    }
    picked.sort_unstable();
    Some(picked)
}

pub fn complementary_cover(
    gc: &GroupedContext,
    probe: &ProbeState,
    max_size: usize,
    max_results: usize,
) -> Result<CoverResult, ProbeError> {
    let positive = probe.positive();
    if positive.is_empty() {
        return Err(ProbeError::EmptyProbe);
    }
    if max_size == 0 || max_results == 0 {
        return Err(ProbeError::InvalidArgument(
            "maxSize and maxResults must be at least 1".into(),
        ));
    }
    // re-index the positive objects densely
    let local: Vec<usize> = positive.iter().collect();
    let width = local.len();
    let mut ids = Vec::new();
    let mut sets = Vec::new();
    for g in gc.groups() {
        let hit = BitSet::from_indices(
            width,
            local
                .iter()
                .enumerate()
                .filter(|(_, &o)| g.extent.contains(o))
                .map(|(i, _)| i),
        );
        if !hit.is_empty() {
            ids.push(g.id);
            sets.push(hit);
        }
    }

    if width <= EXACT_COVER_LIMIT {
        let masks: Vec<u32> = sets.iter().map(|s| s.iter().fold(0u32, |m, i| m | 1 << i)).collect();
        let full = if width == 32 { u32::MAX } else { (1u32 << width) - 1 };
        let (covers, truncated, exhaustive) = search(&ids, &masks, full, 0, max_size, max_results, None);
        return Ok(CoverResult {
            covers,
            truncated,
            exhaustive,
        });
    }

    let full = BitSet::full(width);
    let (mut covers, mut truncated, exhaustive) = search(
        &ids,
        &sets,
        full.clone(),
        BitSet::empty(width),
        max_size,
        max_results,
        Some(NODE_BUDGET),
    );
    if !exhaustive {
        truncated = true;
        if let Some(seed) = greedy(&sets, &full) {
            let seed: Vec<usize> = seed.into_iter().map(|i| ids[i]).collect();
            if seed.len() <= max_size && !covers.contains(&seed) {
                covers.push(seed);
                covers.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                covers.truncate(max_results);
            }
        }
    }
    Ok(CoverResult {
        covers,
        truncated,
        exhaustive,
    })
}
