//! Synthetic film/people benchmark.
//!
//! Every ordinary film gets two actors and one director; all casts are
//! pairwise distinct, so each film forms its own attribute group. With the
//! trilogy flag, three films share one five-person cast and form the single
//! group of size three.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{BitSet, FormalContext};

const TRILOGY_CAST: usize = 5;
const RETRIES_PER_FILM: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchmarkSpec {
    pub films: usize,
    pub people: usize,
    pub trilogy: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchmarkError {
    #[error("need at least 5 people, got {0}")]
    TooFewPeople(usize),
    #[error("a trilogy needs at least 4 films, got {0}")]
    TooFewFilms(usize),
    #[error("{films} distinct casts requested but only {capacity} exist for this pool")]
    Infeasible { films: usize, capacity: u128 },
    #[error("could not draw a fresh cast for film {film} after {RETRIES_PER_FILM} attempts")]
    RetryBudgetExhausted { film: usize },
}

/// Splits the pool into (actors, directors): one director per five people.
fn split_pool(people: usize) -> (usize, usize) {
    let directors = (people / 5).max(1);
    (people - directors, directors)
}

fn zero_pad(prefix: &str, i: usize, total: usize) -> String {
    let width = total.max(1).to_string().len();
    format!("{prefix} {:0width$}", i + 1)
}

pub fn generate_benchmark(spec: BenchmarkSpec) -> Result<FormalContext, BenchmarkError> {
    let BenchmarkSpec {
        films,
        people,
        trilogy,
        seed,
    } = spec;
    if people < 5 {
        return Err(BenchmarkError::TooFewPeople(people));
    }
    if trilogy && films < 4 {
        return Err(BenchmarkError::TooFewFilms(films));
    }
    let (actors, directors) = split_pool(people);
    let ordinary = if trilogy { films - 3 } else { films };
    let capacity = (actors as u128 * (actors as u128 - 1) / 2) * directors as u128;
    if ordinary as u128 > capacity {
        return Err(BenchmarkError::Infeasible {
            films: ordinary,
            capacity,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut casts: Vec<Vec<usize>> = Vec::with_capacity(films);
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(films);
    for film in 0..ordinary {
        let mut attempts = 0;
        let cast = loop {
            if attempts == RETRIES_PER_FILM {
                return Err(BenchmarkError::RetryBudgetExhausted { film });
            }
            attempts += 1;
            let pair = index::sample(&mut rng, actors, 2);
            let director = actors + rng.random_range(0..directors);
            let mut cast = vec![pair.index(0), pair.index(1), director];
            cast.sort_unstable();
            if seen.insert(cast.clone()) {
                break cast;
            }
        };
        casts.push(cast);
    }
    if trilogy {
        let mut cast: Vec<usize> = index::sample(&mut rng, actors, TRILOGY_CAST - 1).into_vec();
        cast.push(actors + rng.random_range(0..directors));
        cast.sort_unstable();
        for _ in 0..3 {
            casts.push(cast.clone());
        }
    }

    let objects = (0..actors)
        .map(|i| zero_pad("Actor", i, actors))
        .chain((0..directors).map(|i| zero_pad("Director", i, directors)))
        .collect();
    let attributes = (0..films).map(|i| zero_pad("Film", i, films)).collect();
    let mut rows = vec![BitSet::empty(films); people];
    for (m, cast) in casts.iter().enumerate() {
        for &g in cast {
            rows[g].insert(m);
        }
    }
    let name = format!("benchmark-{films}x{people}-seed{seed}");
    Ok(FormalContext::new(name, objects, attributes, rows).expect("generated names are distinct"))
}
