use super::Layout;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub group: usize,
    pub from: Rational,
    pub to: Rational,
}

/// What changed between two layouts of one context. Every group visible
/// in either layout lands in exactly one of the four lists; all lists are
/// sorted by group id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransitionDelta {
    pub entering: Vec<usize>,
    pub leaving: Vec<usize>,
    pub moved: Vec<Move>,
    pub stable: Vec<usize>,
}

pub fn diff_layout(old: &Layout, new: &Layout) -> TransitionDelta {
    let before = old.distances();
    let after = new.distances();
    let mut delta = TransitionDelta::default();
    for (&g, &from) in &before {
        match after.get(&g) {
            None => delta.leaving.push(g),
            Some(&to) if to == from => delta.stable.push(g),
            Some(&to) => delta.moved.push(Move { group: g, from, to }),
        }
    }
    delta.entering = after.keys().filter(|g| !before.contains_key(g)).copied().collect();
    delta
}
