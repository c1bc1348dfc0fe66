//! Concept lattices, attribute groups, iceberg reduction and the attribute
//! Galois sub-hierarchy.

mod aoc;
mod enumerate;
mod export;
mod groups;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::Rational;

pub use aoc::{build_aoc, AocMode, AocNode, AocPoset};
pub use enumerate::{enumerate_concepts, DEFAULT_CONCEPT_LIMIT};
pub use export::{
    aoc_json, aoc_to_dot, lattice_json, lattice_to_dot, AocJson, AocNodeJson, ConceptJson, Labeling, LatticeJson,
};
pub use groups::{compute_groups, AttributeGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("concept limit of {limit} exceeded")]
    Overflow { limit: usize },
    #[error("concept limit must be positive")]
    InvalidLimit,
    #[error("two concepts share the extent {0:?}")]
    DuplicateExtent(Vec<usize>),
    #[error("concept set is not the complete set of closed pairs")]
    Incomplete,
    #[error("support is undefined for a context without objects")]
    NoObjects,
}

/// A closed pair: `extent' = intent` and `intent' = extent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

impl Concept {
    pub fn is_closed_in(&self, ctx: &FormalContext) -> bool {
        ctx.derive_objects(&self.extent) == self.intent && ctx.derive_attributes(&self.intent) == self.extent
    }
}

/// `(m', m'')`: the most general concept whose intent contains `m`.
pub fn attribute_concept(ctx: &FormalContext, m: usize) -> Concept {
    let extent = ctx.col(m).clone();
    Concept {
        intent: ctx.derive_objects(&extent),
        extent,
    }
}

/// `(g'', g')`: the most specific concept whose extent contains `g`.
pub fn object_concept(ctx: &FormalContext, g: usize) -> Concept {
    let intent = ctx.row(g).clone();
    Concept {
        extent: ctx.derive_attributes(&intent),
        intent,
    }
}

/// `|A'| / |G|`.
pub fn support(ctx: &FormalContext, attributes: &AttributeSet) -> Result<Rational, LatticeError> {
    if ctx.num_objects() == 0 {
        return Err(LatticeError::NoObjects);
    }
    Ok(Rational::new(
        ctx.derive_attributes(attributes).count() as u64,
        ctx.num_objects() as u64,
    ))
}

/// All concepts with their cover relation. Concept ids are positions in
/// the lectic order of extents.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    concepts: Vec<Concept>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    by_extent: HashMap<ObjectSet, usize>,
    top: usize,
    bottom: usize,
}

impl ConceptLattice {
    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, id: usize) -> &Concept {
        &self.concepts[id]
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn upper_covers(&self, id: usize) -> &[usize] {
        &self.upper_covers[id]
    }

    pub fn lower_covers(&self, id: usize) -> &[usize] {
        &self.lower_covers[id]
    }

    /// Cover pairs as `(lower, upper)`, sorted.
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

    pub fn find_extent(&self, extent: &ObjectSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    /// `a ≤ b` in the concept order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.concepts[a].extent.is_subset(&self.concepts[b].extent)
    }
}

/// Builds the cover relation over a complete set of concepts.
///
/// For a concept with extent `E`, every `g ∉ E` yields the candidate
/// `(E ∪ {g})''`. A candidate `C` is an upper cover exactly when every
/// object of `C \ E` produces `C` again, i.e. when it was produced
/// `|C \ E|` times.
pub fn build_lattice(ctx: &FormalContext, concepts: Vec<Concept>) -> Result<ConceptLattice, LatticeError> {
    let mut concepts = concepts;
    concepts.sort_by(|a, b| a.extent.lectic_cmp(&b.extent));
    let mut by_extent = HashMap::with_capacity(concepts.len());
    for (i, c) in concepts.iter().enumerate() {
        if by_extent.insert(c.extent.clone(), i).is_some() {
            return Err(LatticeError::DuplicateExtent(c.extent.iter().collect()));
        }
    }
    let top = concepts
        .iter()
        .position(|c| c.extent.is_full())
        .ok_or(LatticeError::Incomplete)?;
    let bottom = concepts
        .iter()
        .position(|c| c.intent.is_full())
        .ok_or(LatticeError::Incomplete)?;

    let upper_covers: Vec<Vec<usize>> = concepts
        .par_iter()
        .map(|c| {
            let mut produced: HashMap<ObjectSet, usize> = HashMap::new();
            for g in c.extent.complement().iter() {
                let mut seed = c.intent.clone();
                seed.intersect_with(ctx.row(g));
                let closed = ctx.derive_attributes(&seed);
                *produced.entry(closed).or_default() += 1;
            }
            let mut ups = Vec::new();
            for (cand, hits) in produced {
                if hits == cand.count() - c.extent.count() {
                    ups.push(*by_extent.get(&cand).ok_or(LatticeError::Incomplete)?);
                }
            }
            ups.sort_unstable();
            Ok(ups)
        })
        .collect::<Result<_, LatticeError>>()?;

    let mut lower_covers = vec![Vec::new(); concepts.len()];
    for (lo, ups) in upper_covers.iter().enumerate() {
        for &up in ups {
            lower_covers[up].push(lo);
        }
    }
    Ok(ConceptLattice {
        concepts,
        upper_covers,
        lower_covers,
        by_extent,
        top,
        bottom,
    })
}

/// Enumerates and builds in one step.
pub fn concept_lattice(ctx: &FormalContext, limit: usize) -> Result<ConceptLattice, LatticeError> {
    build_lattice(ctx, enumerate_concepts(ctx, limit)?)
}

/// Ids of the concepts whose intent has support at least `min_support`.
/// The support of an intent is `|extent| / |G|`; for a context without
/// objects every concept is kept.
pub fn iceberg_filter(lattice: &ConceptLattice, ctx: &FormalContext, min_support: Rational) -> Vec<usize> {
    let n = ctx.num_objects() as u64;
    lattice
        .concepts()
        .iter()
        .enumerate()
        .filter(|(_, c)| n == 0 || Rational::new(c.extent.count() as u64, n) >= min_support)
        .map(|(i, _)| i)
        .collect()
}
