//! Formal concept analysis with semantic-probe exploration.
//!
//! - [`context`]: formal contexts, derivation operators, file formats and
//!   the synthetic film benchmark.
//! - [`lattice`]: concept enumeration, cover relation, attribute groups,
//!   iceberg filtering and the Galois sub-hierarchy.
//! - [`probe`]: probe sessions that lay out attribute groups by semantic
//!   distance to a weighted set of objects.

pub mod bitset;
pub mod context;
pub mod lattice;
pub mod probe;

/// Exact non-negative rational used for supports and semantic distances.
pub type Rational = num_rational::Ratio<u64>;

pub use context::{AttributeSet, FormalContext, ObjectSet};

/// Parses `"3/5"`, `"0.6"`, `".6"` or `"1"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: u64 = n.trim().parse().ok()?;
        let d: u64 = d.trim().parse().ok()?;
        return (d != 0).then(|| Rational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
        || frac.len() > 18
    {
        return None;
    }
    let whole: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let scale = 10u64.pow(frac.len() as u32);
    let part: u64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some(Rational::new(whole.checked_mul(scale)?.checked_add(part)?, scale))
}
