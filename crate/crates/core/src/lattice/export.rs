//! DOT and JSON renderings of lattices and sub-hierarchies.

use std::fmt::Write;

use serde::Serialize;

use super::{AocPoset, ConceptLattice};
use crate::context::{BitSet, FormalContext};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Labeling {
    /// Full extent and intent on every node.
    #[default]
    Full,
    /// Only the reduced extent and intent.
    Reduced,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn render(title: &str, nodes: &[(usize, String)], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for (id, label) in nodes {
        writeln!(out, "  c{id} [label={}];", quote(label)).unwrap();
    }
    for (lo, up) in edges {
        writeln!(out, "  c{lo} -> c{up};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn join(names: Vec<String>) -> String {
    names.join(", ")
}

fn reduced_labels(ctx: &FormalContext, lattice: &ConceptLattice) -> (Vec<BitSet>, Vec<BitSet>) {
    let mut intents = vec![ctx.empty_attributes(); lattice.len()];
    let mut extents = vec![ctx.empty_objects(); lattice.len()];
    for m in 0..ctx.num_attributes() {
        if let Some(id) = lattice.find_extent(ctx.col(m)) {
            intents[id].insert(m);
        }
    }
    for g in 0..ctx.num_objects() {
        if let Some(id) = lattice.find_extent(&ctx.derive_attributes(ctx.row(g))) {
            extents[id].insert(g);
        }
    }
    (extents, intents)
}

fn label(ctx: &FormalContext, extent: &BitSet, intent: &BitSet) -> String {
    format!(
        "{{{}}}\n{{{}}}",
        join(ctx.object_names(extent)),
        join(ctx.attribute_names(intent))
    )
}

/// One node per concept (`c<id>`), one edge per cover pair, drawn
/// bottom-up.
pub fn lattice_to_dot(ctx: &FormalContext, lattice: &ConceptLattice, labeling: Labeling) -> String {
    let reduced = (labeling == Labeling::Reduced).then(|| reduced_labels(ctx, lattice));
    let nodes: Vec<(usize, String)> = lattice
        .concepts()
        .iter()
        .enumerate()
        .map(|(id, c)| {
            let text = match &reduced {
                None => label(ctx, &c.extent, &c.intent),
                Some((ext, int)) => label(ctx, &ext[id], &int[id]),
            };
            (id, text)
        })
        .collect();
    render(ctx.name(), &nodes, &lattice.cover_pairs())
}

pub fn aoc_to_dot(ctx: &FormalContext, lattice: &ConceptLattice, aoc: &AocPoset, labeling: Labeling) -> String {
    let nodes: Vec<(usize, String)> = aoc
        .nodes()
        .iter()
        .map(|n| {
            let text = match labeling {
                Labeling::Reduced => label(ctx, &n.reduced_extent, &n.reduced_intent),
                Labeling::Full => {
                    let c = lattice.concept(n.concept);
                    label(ctx, &c.extent, &c.intent)
                }
            };
            (n.concept, text)
        })
        .collect();
    let edges: Vec<(usize, usize)> = aoc
        .cover_pairs()
        .into_iter()
        .map(|(lo, up)| (aoc.nodes()[lo].concept, aoc.nodes()[up].concept))
        .collect();
    render(ctx.name(), &nodes, &edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConceptJson {
    pub id: usize,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub support: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeJson {
    pub concepts: Vec<ConceptJson>,
    /// `[lower, upper]` concept id pairs.
    pub edges: Vec<[usize; 2]>,
    pub top: usize,
    pub bottom: usize,
}

/// JSON view of a lattice, optionally restricted to a subset of concept
/// ids (e.g. an iceberg); edges are kept only between retained concepts.
pub fn lattice_json(ctx: &FormalContext, lattice: &ConceptLattice, only: Option<&[usize]>) -> LatticeJson {
    let keep: Vec<bool> = match only {
        None => vec![true; lattice.len()],
        Some(ids) => {
            let mut k = vec![false; lattice.len()];
            ids.iter().for_each(|&i| k[i] = true);
            k
        }
    };
    let n = ctx.num_objects() as u64;
    let concepts = lattice
        .concepts()
        .iter()
        .enumerate()
        .filter(|(i, _)| keep[*i])
        .map(|(id, c)| ConceptJson {
            id,
            extent: ctx.object_names(&c.extent),
            intent: ctx.attribute_names(&c.intent),
            support: if n == 0 {
                "1".to_string()
            } else {
                Rational::new(c.extent.count() as u64, n).to_string()
            },
        })
        .collect();
    let edges = lattice
        .cover_pairs()
        .into_iter()
        .filter(|(lo, up)| keep[*lo] && keep[*up])
        .map(|(lo, up)| [lo, up])
        .collect();
    LatticeJson {
        concepts,
        edges,
        top: lattice.top(),
        bottom: lattice.bottom(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AocNodeJson {
    pub id: usize,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub reduced_extent: Vec<String>,
    pub reduced_intent: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AocJson {
    pub nodes: Vec<AocNodeJson>,
    /// `[lower, upper]` concept id pairs.
    pub edges: Vec<[usize; 2]>,
}

pub fn aoc_json(ctx: &FormalContext, lattice: &ConceptLattice, aoc: &AocPoset) -> AocJson {
    let nodes = aoc
        .nodes()
        .iter()
        .map(|n| {
            let c = lattice.concept(n.concept);
            AocNodeJson {
                id: n.concept,
                extent: ctx.object_names(&c.extent),
                intent: ctx.attribute_names(&c.intent),
                reduced_extent: ctx.object_names(&n.reduced_extent),
                reduced_intent: ctx.attribute_names(&n.reduced_intent),
            }
        })
        .collect();
    let edges = aoc
        .cover_pairs()
        .into_iter()
        .map(|(lo, up)| [aoc.nodes()[lo].concept, aoc.nodes()[up].concept])
        .collect();
    AocJson { nodes, edges }
}
