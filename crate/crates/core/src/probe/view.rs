//! Name-based JSON views of probe results. Indices of objects and
//! attributes never appear here; groups are identified by their id.

use serde::{Deserialize, Serialize};

use super::{CoverResult, GroupedContext, Layout, RevealResult, TransitionDelta};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupView {
    pub id: usize,
    pub representative: String,
    pub badge: usize,
    pub members: Vec<String>,
    pub extent: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassView {
    pub filtered_extent: Vec<String>,
    pub groups: Vec<GroupView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LayerView {
    /// Reduced fraction, e.g. `"1/3"` or `"0"`.
    pub sd: String,
    pub classes: Vec<ClassView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LayoutView {
    pub layers: Vec<LayerView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveView {
    pub group: usize,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaView {
    pub entering: Vec<usize>,
    pub leaving: Vec<usize>,
    pub moved: Vec<MoveView>,
    pub stable: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RevealView {
    pub extent: Vec<String>,
    pub highlighted: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoversView {
    pub covers: Vec<Vec<usize>>,
    pub truncated: bool,
}

impl GroupView {
    pub fn new(gc: &GroupedContext, id: usize) -> GroupView {
        let g = &gc.groups()[id];
        let ctx = gc.context();
        GroupView {
            id,
            representative: ctx.attributes()[g.representative].clone(),
            badge: g.badge(),
            members: ctx.attribute_names(&g.members),
            extent: ctx.object_names(&g.extent),
        }
    }
}

impl LayoutView {
    pub fn new(gc: &GroupedContext, layout: &Layout) -> LayoutView {
        LayoutView {
            layers: layout
                .layers
                .iter()
                .map(|l| LayerView {
                    sd: l.sd.to_string(),
                    classes: l
                        .classes
                        .iter()
                        .map(|c| ClassView {
                            filtered_extent: gc.context().object_names(&c.filtered_extent),
                            groups: c.groups.iter().map(|&g| GroupView::new(gc, g)).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl From<&TransitionDelta> for DeltaView {
    fn from(d: &TransitionDelta) -> Self {
        DeltaView {
            entering: d.entering.clone(),
            leaving: d.leaving.clone(),
            moved: d
                .moved
                .iter()
                .map(|m| MoveView {
                    group: m.group,
                    from: m.from.to_string(),
                    to: m.to.to_string(),
                })
                .collect(),
            stable: d.stable.clone(),
        }
    }
}

impl RevealView {
    pub fn new(gc: &GroupedContext, r: &RevealResult) -> RevealView {
        RevealView {
            extent: gc.context().object_names(&r.extent),
            highlighted: r.highlighted.clone(),
        }
    }
}

impl From<&CoverResult> for CoversView {
    fn from(r: &CoverResult) -> Self {
        CoversView {
            covers: r.covers.clone(),
            truncated: r.truncated,
        }
    }
}
