//! Semantic probes.
//!
//! A probe is a bag of weighted objects. Every attribute group whose extent
//! meets the probe's positive-weight objects becomes visible and is placed
//! in a layer according to its semantic distance to the probe:
//!
//! ```text
//! sd(P, A) = 1 - (sum of w(g) for g in G ∩ ext(A)) / |G|
//! ```
//!
//! where `G` is the set of loaded objects. With all weights at 1 this is
//! `1 - |G ∩ ext(A)| / |G|`. Weights are hundredths and all distances are
//! exact rationals, so layer membership never depends on rounding.

mod cover;
mod delta;
mod layout;
mod view;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::lattice::{compute_groups, AttributeGroup};
use crate::Rational;

pub use cover::{complementary_cover, CoverResult, EXACT_COVER_LIMIT};
pub use delta::{diff_layout, Move, TransitionDelta};
pub use layout::{layout, reveal, ExtentClass, Layer, Layout, RevealResult};
pub use view::{ClassView, CoversView, DeltaView, GroupView, LayerView, LayoutView, MoveView, RevealView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("the probe is empty")]
    EmptyProbe,
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("object {0:?} is not loaded in the probe")]
    NotLoaded(String),
    #[error("unknown group {0}")]
    UnknownGroup(usize),
    #[error("group {0} is not visible for this probe")]
    NotVisible(usize),
    #[error("invalid weight {0:?}: expected a multiple of 0.01 in [0, 1]")]
    InvalidWeight(String),
    #[error("{0}")]
    InvalidArgument(String),
}

/// Probe weight in hundredths, `0.00 ..= 1.00`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Weight(u8);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const FULL: Weight = Weight(100);

    pub fn from_hundredths(h: u8) -> Result<Weight, ProbeError> {
        if h <= 100 {
            Ok(Weight(h))
        } else {
            Err(ProbeError::InvalidWeight(format!("{h}/100")))
        }
    }

    pub fn hundredths(self) -> u8 {
        self.0
    }

    /// Accepts values within 1e-9 of a hundredth.
    pub fn from_f64(w: f64) -> Result<Weight, ProbeError> {
        let scaled = w * 100.0;
        let rounded = scaled.round();
        if !w.is_finite() || (scaled - rounded).abs() > 1e-9 || !(0.0..=100.0).contains(&rounded) {
            return Err(ProbeError::InvalidWeight(w.to_string()));
        }
        Ok(Weight(rounded as u8))
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 100.0
    }

    pub fn as_rational(self) -> Rational {
        Rational::new(u64::from(self.0), 100)
    }
}

impl TryFrom<u8> for Weight {
    type Error = ProbeError;

    fn try_from(h: u8) -> Result<Self, Self::Error> {
        Weight::from_hundredths(h)
    }
}

impl From<Weight> for u8 {
    fn from(w: Weight) -> u8 {
        w.0
    }
}

/// Parses plain decimals such as `1`, `0.5`, `.25` or `0.05` exactly.
impl FromStr for Weight {
    type Err = ProbeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProbeError::InvalidWeight(s.to_string());
        let t = s.trim();
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > 2 {
            return Err(bad());
        }
        let whole: u32 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let cents: u32 = format!("{frac:0<2}").parse().map_err(|_| bad())?;
        let total = whole
            .checked_mul(100)
            .and_then(|w| w.checked_add(cents))
            .ok_or_else(bad)?;
        u8::try_from(total).map_err(|_| bad()).and_then(Weight::from_hundredths)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

/// A context together with its attribute groups.
#[derive(Debug, Clone)]
pub struct GroupedContext {
    context: FormalContext,
    groups: Vec<AttributeGroup>,
}

impl GroupedContext {
    pub fn new(context: FormalContext) -> Self {
        let groups = compute_groups(&context);
        GroupedContext { context, groups }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn groups(&self) -> &[AttributeGroup] {
        &self.groups
    }

    pub fn group(&self, id: usize) -> Result<&AttributeGroup, ProbeError> {
        self.groups.get(id).ok_or(ProbeError::UnknownGroup(id))
    }
}

/// Loaded objects and their weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeState {
    loaded: ObjectSet,
    weights: BTreeMap<usize, Weight>,
}

impl ProbeState {
    /// An empty probe over the objects of `ctx`.
    pub fn new(ctx: &FormalContext) -> Self {
        ProbeState {
            loaded: ctx.empty_objects(),
            weights: BTreeMap::new(),
        }
    }

    /// A probe with the given objects at weight 1.00.
    pub fn with_objects(ctx: &FormalContext, objects: &ObjectSet) -> Self {
        let mut p = Self::new(ctx);
        for g in objects {
            p.loaded.insert(g);
            p.weights.insert(g, Weight::FULL);
        }
        p
    }

    pub fn loaded(&self) -> &ObjectSet {
        &self.loaded
    }

    pub fn weights(&self) -> &BTreeMap<usize, Weight> {
        &self.weights
    }

    pub fn weight(&self, g: usize) -> Option<Weight> {
        self.weights.get(&g).copied()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Loaded objects with a positive weight.
    pub fn positive(&self) -> ObjectSet {
        let mut out = ObjectSet::empty(self.loaded.universe());
        for (&g, w) in &self.weights {
            if w.0 > 0 {
                out.insert(g);
            }
        }
        out
    }

    fn check(&self, g: usize) -> Result<(), ProbeError> {
        if g < self.loaded.universe() {
            Ok(())
        } else {
            Err(ProbeError::UnknownObject(format!("#{g}")))
        }
    }

    /// Loads `g` at weight 1.00.
    pub fn add_object(&mut self, g: usize) -> Result<(), ProbeError> {
        self.check(g)?;
        self.loaded.insert(g);
        self.weights.insert(g, Weight::FULL);
        Ok(())
    }

    pub fn remove_object(&mut self, g: usize) -> Result<(), ProbeError> {
        self.check(g)?;
        if self.weights.remove(&g).is_none() {
            return Err(ProbeError::NotLoaded(format!("#{g}")));
        }
        self.loaded.remove(g);
        Ok(())
    }

    pub fn clear(&mut self) {
        self.loaded.clear();
        self.weights.clear();
    }

    pub fn set_weight(&mut self, g: usize, w: Weight) -> Result<(), ProbeError> {
        self.check(g)?;
        match self.weights.get_mut(&g) {
            Some(slot) => {
                *slot = w;
                Ok(())
            }
            None => Err(ProbeError::NotLoaded(format!("#{g}"))),
        }
    }

    /// Loads every object of `extent` not already present at weight 1.00;
    /// existing weights are kept.
    pub fn add_extent(&mut self, extent: &ObjectSet) {
        for g in extent {
            if self.loaded.insert(g) {
                self.weights.insert(g, Weight::FULL);
            }
        }
    }

    /// Sum of the weights of loaded objects in `extent`, in hundredths.
    pub fn matched_weight(&self, extent: &ObjectSet) -> u64 {
        extent
            .intersection(&self.loaded)
            .iter()
            .map(|g| u64::from(self.weights[&g].0))
            .sum()
    }

    /// Weighted semantic distance to a group with the given extent.
    pub fn semantic_distance(&self, extent: &ObjectSet) -> Result<Rational, ProbeError> {
        let n = self.weights.len() as u64;
        if n == 0 {
            return Err(ProbeError::EmptyProbe);
        }
        let denom = 100 * n;
        Ok(Rational::new(denom - self.matched_weight(extent), denom))
    }

    pub fn add_named(&mut self, ctx: &FormalContext, name: &str) -> Result<usize, ProbeError> {
        let g = lookup(ctx, name)?;
        self.add_object(g)?;
        Ok(g)
    }

    pub fn remove_named(&mut self, ctx: &FormalContext, name: &str) -> Result<usize, ProbeError> {
        let g = lookup(ctx, name)?;
        self.remove_object(g)
            .map_err(|_| ProbeError::NotLoaded(name.to_string()))?;
        Ok(g)
    }

    pub fn set_named_weight(&mut self, ctx: &FormalContext, name: &str, w: Weight) -> Result<usize, ProbeError> {
        let g = lookup(ctx, name)?;
        self.set_weight(g, w)
            .map_err(|_| ProbeError::NotLoaded(name.to_string()))?;
        Ok(g)
    }
}

fn lookup(ctx: &FormalContext, name: &str) -> Result<usize, ProbeError> {
    ctx.object_index(name)
        .ok_or_else(|| ProbeError::UnknownObject(name.to_string()))
}

/// Drops a group's extent onto the probe.
pub fn add_group_extent(gc: &GroupedContext, probe: &ProbeState, group: usize) -> Result<ProbeState, ProbeError> {
    let mut next = probe.clone();
    next.add_extent(&gc.group(group)?.extent);
    Ok(next)
}

/// The context restricted to the loaded objects and to the attributes
/// owned by at least one of them.
pub fn sub_context(ctx: &FormalContext, probe: &ProbeState) -> FormalContext {
    let attrs = AttributeSet::from_indices(
        ctx.num_attributes(),
        (0..ctx.num_attributes()).filter(|&m| !ctx.col(m).is_disjoint(probe.loaded())),
    );
    ctx.restrict(probe.loaded(), &attrs)
}

/// Ids of the groups with a positive weighted match.
pub fn visible_groups(gc: &GroupedContext, probe: &ProbeState) -> Vec<usize> {
    let positive = probe.positive();
    gc.groups()
        .iter()
        .filter(|g| !g.extent.is_disjoint(&positive))
        .map(|g| g.id)
        .collect()
}
