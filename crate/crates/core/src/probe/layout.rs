//! Layered arrangement of the visible groups and concept reveal.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use super::{GroupedContext, ProbeError, ProbeState};
use crate::context::ObjectSet;
use crate::Rational;

/// Groups sharing one filtered extent, placed side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtentClass {
    /// Group extent intersected with the positive-weight probe objects.
    pub filtered_extent: ObjectSet,
    pub groups: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub sd: Rational,
    pub classes: Vec<ExtentClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Layout {
    pub layers: Vec<Layer>,
}

impl Layout {
    /// Semantic distance of every visible group, keyed by group id.
    pub fn distances(&self) -> BTreeMap<usize, Rational> {
        self.layers
            .iter()
            .flat_map(|l| {
                l.classes
                    .iter()
                    .flat_map(move |c| c.groups.iter().map(move |&g| (g, l.sd)))
            })
            .collect()
    }

    pub fn visible(&self) -> Vec<usize> {
        self.distances().into_keys().collect()
    }

    pub fn group_count(&self) -> usize {
        self.layers
            .iter()
            .flat_map(|l| &l.classes)
            .map(|c| c.groups.len())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }
}

/// Layers in ascending distance; inside a layer, classes by decreasing
/// filtered-extent size and then by the ascending list of their object
/// indices; inside a class, groups by id.
pub fn layout(gc: &GroupedContext, probe: &ProbeState) -> Layout {
    if probe.is_empty() {
        return Layout::default();
    }
    let positive = probe.positive();
    type ClassKey = (Reverse<usize>, Vec<usize>);
    let mut buckets: BTreeMap<Rational, BTreeMap<ClassKey, (ObjectSet, Vec<usize>)>> = BTreeMap::new();
    for group in gc.groups() {
        let filtered = group.extent.intersection(&positive);
        if filtered.is_empty() {
            continue;
        }
        let sd = probe.semantic_distance(&group.extent).expect("non-empty probe");
        let key = (Reverse(filtered.count()), filtered.iter().collect());
        buckets
            .entry(sd)
            .or_default()
            .entry(key)
            .or_insert_with(|| (filtered, Vec::new()))
            .1
            .push(group.id);
    }
    Layout {
        layers: buckets
            .into_iter()
            .map(|(sd, classes)| Layer {
                sd,
                classes: classes
                    .into_values()
                    .map(|(filtered_extent, groups)| ExtentClass {
                        filtered_extent,
                        groups,
                    })
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevealResult {
    /// Positive-weight probe objects in the hovered group's extent.
    pub extent: ObjectSet,
    /// Visible groups whose extent contains `extent`.
    pub highlighted: Vec<usize>,
    /// The other visible groups.
    pub dimmed: Vec<usize>,
}

/// The probe-centred concept a hovered group belongs to.
pub fn reveal(gc: &GroupedContext, probe: &ProbeState, group: usize) -> Result<RevealResult, ProbeError> {
    let hovered = gc.group(group)?;
    let positive = probe.positive();
    let extent = hovered.extent.intersection(&positive);
    if extent.is_empty() {
        return Err(ProbeError::NotVisible(group));
    }
    let (highlighted, dimmed) = gc
        .groups()
        .iter()
        .filter(|g| !g.extent.is_disjoint(&positive))
        .map(|g| g.id)
        .partition(|&id| extent.is_subset(&gc.groups()[id].extent));
    Ok(RevealResult {
        extent,
        highlighted,
        dimmed,
    })
}
