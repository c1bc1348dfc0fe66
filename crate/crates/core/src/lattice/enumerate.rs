//! Close-by-One enumeration of all concepts.
//!
//! Extents are generated by adding one object at a time and closing; a
//! closure is kept only if it adds no object below the one just added
//! (canonicity test), so each extent is produced exactly once. The branches
//! under the least concept are independent and run on the rayon pool.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{Concept, LatticeError};
use crate::context::{AttributeSet, FormalContext, ObjectSet};

/// Default upper bound on the number of concepts materialized.
pub const DEFAULT_CONCEPT_LIMIT: usize = 1_000_000;

struct Budget {
    limit: usize,
    emitted: AtomicUsize,
    exceeded: AtomicBool,
}

impl Budget {
    fn take(&self) -> bool {
        if self.exceeded.load(Ordering::Relaxed) {
            return false;
        }
        if self.emitted.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.exceeded.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Children of `(extent, intent)` in the canonical generation tree.
fn children(
    ctx: &FormalContext,
    extent: &ObjectSet,
    intent: &AttributeSet,
    from: usize,
) -> Vec<(ObjectSet, AttributeSet, usize)> {
    let mut out = Vec::new();
    for g in from..ctx.num_objects() {
        if extent.contains(g) {
            continue;
        }
        let new_intent = intent.intersection(ctx.row(g));
        let new_extent = ctx.derive_attributes(&new_intent);
        if new_extent.agrees_below(extent, g) {
            out.push((new_extent, new_intent, g + 1));
        }
    }
    out
}

fn descend(
    ctx: &FormalContext,
    extent: ObjectSet,
    intent: AttributeSet,
    from: usize,
    budget: &Budget,
    out: &mut Vec<Concept>,
) {
    if !budget.take() {
        return;
    }
    let kids = children(ctx, &extent, &intent, from);
    out.push(Concept { extent, intent });
    for (e, i, next) in kids {
        descend(ctx, e, i, next, budget, out);
    }
}

/// Returns every concept of `ctx` once, sorted by the lectic order of
/// extents (so the least concept comes first and the greatest last).
pub fn enumerate_concepts(ctx: &FormalContext, limit: usize) -> Result<Vec<Concept>, LatticeError> {
    if limit == 0 {
        return Err(LatticeError::InvalidLimit);
    }
    let budget = Budget {
        limit,
        emitted: AtomicUsize::new(0),
        exceeded: AtomicBool::new(false),
    };
    let intent = ctx.all_attributes();
    let extent = ctx.derive_attributes(&intent);
    let intent = ctx.derive_objects(&extent);
    if !budget.take() {
        return Err(LatticeError::Overflow { limit });
    }
    let kids = children(ctx, &extent, &intent, 0);
    let mut concepts = vec![Concept { extent, intent }];
    let branches: Vec<Vec<Concept>> = kids
        .into_par_iter()
        .map(|(e, i, next)| {
            let mut local = Vec::new();
            descend(ctx, e, i, next, &budget, &mut local);
            local
        })
        .collect();
    if budget.exceeded.load(Ordering::Relaxed) {
        return Err(LatticeError::Overflow { limit });
    }
    concepts.extend(branches.into_iter().flatten());
    concepts.par_sort_unstable_by(|a, b| a.extent.lectic_cmp(&b.extent));
    Ok(concepts)
}
