//! Attribute/object Galois sub-hierarchy.
//!
//! Each attribute labels only its attribute-concept `(m', m'')` and each
//! object only its object-concept `(g'', g')`. The full intent of any
//! concept is recovered from the labels above it.

use super::{ConceptLattice, LatticeError};
use crate::context::{AttributeSet, BitSet, FormalContext, ObjectSet};

/// Which concepts are kept as nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AocMode {
    /// Attribute-concepts and object-concepts.
    #[default]
    AttributesAndObjects,
    /// Attribute-concepts only.
    AttributesOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AocNode {
    /// Id of the concept in the full lattice.
    pub concept: usize,
    pub reduced_intent: AttributeSet,
    pub reduced_extent: ObjectSet,
}

#[derive(Debug, Clone)]
pub struct AocPoset {
    nodes: Vec<AocNode>,
    upper_covers: Vec<Vec<usize>>,
}

impl AocPoset {
    pub fn nodes(&self) -> &[AocNode] {
        &self.nodes
    }

    /// Upper covers of node `i`, as node indices.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    /// Cover pairs `(lower, upper)` as node indices, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self
            .upper_covers
            .iter()
            .enumerate()
            .flat_map(|(lo, ups)| ups.iter().map(move |&up| (lo, up)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn node_of_concept(&self, concept: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.concept == concept)
    }
}

pub fn build_aoc(ctx: &FormalContext, lattice: &ConceptLattice, mode: AocMode) -> Result<AocPoset, LatticeError> {
    let n = lattice.len();
    let mut reduced_intent = vec![ctx.empty_attributes(); n];
    let mut reduced_extent = vec![ctx.empty_objects(); n];
    for m in 0..ctx.num_attributes() {
        let id = lattice.find_extent(ctx.col(m)).ok_or(LatticeError::Incomplete)?;
        reduced_intent[id].insert(m);
    }
    for g in 0..ctx.num_objects() {
        let extent = ctx.derive_attributes(ctx.row(g));
        let id = lattice.find_extent(&extent).ok_or(LatticeError::Incomplete)?;
        reduced_extent[id].insert(g);
    }
    let keep = |id: usize| match mode {
        AocMode::AttributesAndObjects => !reduced_intent[id].is_empty() || !reduced_extent[id].is_empty(),
        AocMode::AttributesOnly => !reduced_intent[id].is_empty(),
    };
    let nodes: Vec<AocNode> = (0..n)
        .filter(|&id| keep(id))
        .map(|id| AocNode {
            concept: id,
            reduced_intent: reduced_intent[id].clone(),
            reduced_extent: reduced_extent[id].clone(),
        })
        .collect();

    // strictly-above sets, then strip everything reachable in two steps
    let k = nodes.len();
    let above: Vec<BitSet> = nodes
        .iter()
        .map(|a| {
            let ea = &lattice.concept(a.concept).extent;
            BitSet::from_indices(
                k,
                nodes.iter().enumerate().filter_map(|(j, b)| {
                    let eb = &lattice.concept(b.concept).extent;
                    (a.concept != b.concept && ea.is_subset(eb)).then_some(j)
                }),
            )
        })
        .collect();
    let upper_covers = above
        .iter()
        .map(|ups| {
            let mut indirect = BitSet::empty(k);
            for j in ups {
                indirect.union_with(&above[j]);
            }
            ups.difference(&indirect).iter().collect()
        })
        .collect();
    Ok(AocPoset { nodes, upper_covers })
}
