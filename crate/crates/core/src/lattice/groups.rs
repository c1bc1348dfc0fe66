use std::collections::HashMap;

use crate::context::{AttributeSet, FormalContext, ObjectSet};

/// A maximal set of attributes with one identical extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeGroup {
    pub id: usize,
    pub members: AttributeSet,
    pub extent: ObjectSet,
    /// Lowest member attribute index.
    pub representative: usize,
}

impl AttributeGroup {
    pub fn badge(&self) -> usize {
        self.members.count()
    }
}

/// Partitions the attributes by extent. Group ids follow the order of
/// their representatives.
pub fn compute_groups(ctx: &FormalContext) -> Vec<AttributeGroup> {
    let mut by_extent: HashMap<&ObjectSet, usize> = HashMap::new();
    let mut groups: Vec<AttributeGroup> = Vec::new();
    for m in 0..ctx.num_attributes() {
        let extent = ctx.col(m);
        match by_extent.get(extent) {
            Some(&id) => {
                groups[id].members.insert(m);
            }
            None => {
                let id = groups.len();
                by_extent.insert(extent, id);
                groups.push(AttributeGroup {
                    id,
                    members: AttributeSet::from_indices(ctx.num_attributes(), [m]),
                    extent: extent.clone(),
                    representative: m,
                });
            }
        }
    }
    groups
}
