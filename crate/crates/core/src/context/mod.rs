//! Formal contexts `(G, M, I)` and the derivation operators.
//!
//! The incidence relation is stored twice: once as one attribute set per
//! object (rows) and once as one object set per attribute (columns). Both
//! derivation directions are then a single intersection loop.

mod benchmark;
mod io;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use crate::bitset::BitSet;
pub use benchmark::{generate_benchmark, BenchmarkError, BenchmarkSpec};

/// A set of object indices of one context.
pub type ObjectSet = BitSet;
/// A set of attribute indices of one context.
pub type AttributeSet = BitSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityKind {
    Object,
    Attribute,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Object => "object",
            EntityKind::Attribute => "attribute",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: invalid {kind} name {name:?}")]
    BadNameAt {
        line: usize,
        kind: EntityKind,
        name: String,
    },
    #[error("line {line}: duplicate {kind} name {name:?}")]
    DuplicateNameAt {
        line: usize,
        kind: EntityKind,
        name: String,
    },
    #[error("line {line}: row has {found} cells, expected {expected}")]
    RowLength { line: usize, found: usize, expected: usize },
    #[error("line {line}, column {column}: invalid cell {token:?}")]
    InvalidCell { line: usize, column: usize, token: String },
    #[error("invalid {kind} name {name:?}")]
    BadName { kind: EntityKind, name: String },
    #[error("duplicate {kind} name {name:?}")]
    DuplicateName { kind: EntityKind, name: String },
    #[error("incidence shape mismatch: {0}")]
    Shape(String),
}

/// Names must be non-empty, free of line breaks and carry no surrounding
/// whitespace.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.trim() == name && !name.contains(['\n', '\r'])
}

#[derive(Clone)]
pub struct FormalContext {
    name: String,
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttributeSet>,
    cols: Vec<ObjectSet>,
    object_index: HashMap<String, usize>,
    attribute_index: HashMap<String, usize>,
}

fn index_names(kind: EntityKind, names: &[String]) -> Result<HashMap<String, usize>, ContextError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if !is_valid_name(n) {
            return Err(ContextError::BadName { kind, name: n.clone() });
        }
        if index.insert(n.clone(), i).is_some() {
            return Err(ContextError::DuplicateName { kind, name: n.clone() });
        }
    }
    Ok(index)
}

impl FormalContext {
    /// Builds a context from per-object attribute rows.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttributeSet>,
    ) -> Result<Self, ContextError> {
        if rows.len() != objects.len() {
            return Err(ContextError::Shape(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        if let Some(r) = rows.iter().find(|r| r.universe() != attributes.len()) {
            return Err(ContextError::Shape(format!(
                "row over {} attributes, context has {}",
                r.universe(),
                attributes.len()
            )));
        }
        let object_index = index_names(EntityKind::Object, &objects)?;
        let attribute_index = index_names(EntityKind::Attribute, &attributes)?;
        let mut cols = vec![BitSet::empty(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row {
                cols[m].insert(g);
            }
        }
        Ok(FormalContext {
            name: name.into(),
            objects,
            attributes,
            rows,
            cols,
            object_index,
            attribute_index,
        })
    }

    /// Builds a context from a list of incident `(object, attribute)` index pairs.
    pub fn from_pairs<I>(
        name: impl Into<String>,
        objects: Vec<String>,
        attributes: Vec<String>,
        pairs: I,
    ) -> Result<Self, ContextError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![BitSet::empty(attributes.len()); objects.len()];
        for (g, m) in pairs {
            if g >= objects.len() || m >= attributes.len() {
                return Err(ContextError::Shape(format!("pair ({g}, {m}) out of range")));
            }
            rows[g].insert(m);
        }
        Self::new(name, objects, attributes, rows)
    }

    pub fn empty() -> Self {
        Self::new("", Vec::new(), Vec::new(), Vec::new()).expect("empty context is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_index.get(name).copied()
    }

    /// Attributes of object `g` (its intent `{g}'`).
    pub fn row(&self, g: usize) -> &AttributeSet {
        &self.rows[g]
    }

    /// Objects having attribute `m` (its extent `{m}'`).
    pub fn col(&self, m: usize) -> &ObjectSet {
        &self.cols[m]
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    pub fn empty_objects(&self) -> ObjectSet {
        BitSet::empty(self.num_objects())
    }

    pub fn all_objects(&self) -> ObjectSet {
        BitSet::full(self.num_objects())
    }

    pub fn empty_attributes(&self) -> AttributeSet {
        BitSet::empty(self.num_attributes())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        BitSet::full(self.num_attributes())
    }

    /// `O'`: attributes shared by every object of `objects`. `∅' = M`.
    pub fn derive_objects(&self, objects: &ObjectSet) -> AttributeSet {
        let mut out = self.all_attributes();
        for g in objects {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `A'`: objects owning every attribute of `attributes`. `∅' = G`.
    pub fn derive_attributes(&self, attributes: &AttributeSet) -> ObjectSet {
        let mut out = self.all_objects();
        for m in attributes {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    /// `O''`.
    pub fn closure_objects(&self, objects: &ObjectSet) -> ObjectSet {
        self.derive_attributes(&self.derive_objects(objects))
    }

    /// `A''`.
    pub fn closure_attributes(&self, attributes: &AttributeSet) -> AttributeSet {
        self.derive_objects(&self.derive_attributes(attributes))
    }

    /// Swaps the roles of objects and attributes.
    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            name: self.name.clone(),
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            object_index: self.attribute_index.clone(),
            attribute_index: self.object_index.clone(),
        }
    }

    /// Restricts the context to the given objects and attributes, keeping
    /// their relative order.
    pub fn restrict(&self, objects: &ObjectSet, attributes: &AttributeSet) -> FormalContext {
        let attr_list: Vec<usize> = attributes.iter().collect();
        let rows = objects
            .iter()
            .map(|g| {
                BitSet::from_indices(
                    attr_list.len(),
                    attr_list
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| self.incident(g, m))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        FormalContext::new(
            self.name.clone(),
            objects.iter().map(|g| self.objects[g].clone()).collect(),
            attr_list.iter().map(|&m| self.attributes[m].clone()).collect(),
            rows,
        )
        .expect("restriction of a valid context is valid")
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|g| self.objects[g].clone()).collect()
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<String> {
        set.iter().map(|m| self.attributes[m].clone()).collect()
    }

    /// Looks up a list of object names.
    pub fn object_set<'a, I>(&self, names: I) -> Result<ObjectSet, String>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = self.empty_objects();
        for n in names {
            set.insert(self.object_index(n).ok_or_else(|| n.to_string())?);
        }
        Ok(set)
    }

    pub fn attribute_set<'a, I>(&self, names: I) -> Result<AttributeSet, String>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = self.empty_attributes();
        for n in names {
            set.insert(self.attribute_index(n).ok_or_else(|| n.to_string())?);
        }
        Ok(set)
    }

    /// Checks that the two incidence indices are exact transposes.
    pub fn check_dual_index(&self) -> bool {
        self.rows.len() == self.objects.len()
            && self.cols.len() == self.attributes.len()
            && (0..self.num_objects())
                .all(|g| (0..self.num_attributes()).all(|m| self.rows[g].contains(m) == self.cols[m].contains(g)))
    }
}

impl PartialEq for FormalContext {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.objects == other.objects
            && self.attributes == other.attributes
            && self.rows == other.rows
    }
}

impl Eq for FormalContext {}

impl fmt::Debug for FormalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormalContext")
            .field("name", &self.name)
            .field("objects", &self.objects.len())
            .field("attributes", &self.attributes.len())
            .finish()
    }
}

/// The four-actor, six-film toy context used throughout the docs and tests.
pub fn films_and_actors() -> FormalContext {
    let rows = [
        ("Brad", "XXX.X."),
        ("Angelina", "X.X.X."),
        ("Cate", "X..X.."),
        ("Leonardo", ".X.XXX"),
    ];
    let attributes = (1..=6).map(|i| format!("Film{i}")).collect::<Vec<_>>();
    FormalContext::new(
        "films",
        rows.iter().map(|(n, _)| n.to_string()).collect(),
        attributes,
        rows.iter()
            .map(|(_, r)| BitSet::from_indices(6, r.char_indices().filter(|(_, c)| *c == 'X').map(|(i, _)| i)))
            .collect(),
    )
    .expect("toy context is valid")
}
