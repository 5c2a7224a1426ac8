use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{build_equations, classify, projective_closure, LocusProblem};
use crate::error::{Error, Result};
use crate::torus::{binom2, triple_span, NSClass};

const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTriple {
    pub g: usize,
    pub seed: u64,
    pub entry_bound: i64,
    /// Number of triples drawn, the last one being returned.
    pub attempts: usize,
    pub classes: Vec<NSClass>,
}

/// Three classes with entries uniform in `[−entry_bound, entry_bound]`,
/// drawn from a ChaCha8 stream seeded with `seed` and redrawn until they
/// span a rank-3 subgroup.
pub fn random_triple(g: usize, seed: u64, entry_bound: i64) -> Result<RandomTriple> {
    if entry_bound < 1 {
        return Err(Error::Precondition("entry bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * binom2(g) + g * g;
    for attempt in 1..=MAX_ATTEMPTS {
        let classes = (0..3)
            .map(|_| {
                let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-entry_bound..=entry_bound)).collect();
                NSClass::from_coordinates(g, &coords)
            })
            .collect::<Result<Vec<_>>>()?;
        if triple_span(&classes).is_ok() {
            return Ok(RandomTriple { g, seed, entry_bound, attempts: attempt, classes });
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub seed: u64,
    pub empty: bool,
    pub dim: i64,
    pub degree: Option<usize>,
}

/// Classifies the loci of `random_triple(g, s, entry_bound)` for each seed,
/// in seed order.
pub fn sweep(g: usize, seeds: impl IntoIterator<Item = u64>, entry_bound: i64) -> Result<Vec<SweepRow>> {
    seeds
        .into_iter()
        .map(|seed| {
            let triple = random_triple(g, seed, entry_bound)?;
            let problem = LocusProblem::new(triple.classes)?;
            let ideal = projective_closure(&problem.ring(), &build_equations(&problem));
            let report = classify(&ideal, g, problem.flattening(), 0)?;
            Ok(SweepRow { seed, empty: report.empty, dim: report.dim, degree: report.degree })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = random_triple(3, 7, 2).unwrap();
        let b = random_triple(3, 7, 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.classes, random_triple(3, 8, 2).unwrap().classes);
        assert!(triple_span(&a.classes).is_ok());
        for e in &a.classes {
            assert!(e.coordinates().iter().all(|x| x.abs() <= 2));
        }
    }

    #[test]
    fn bound_zero_rejected() {
        assert!(random_triple(3, 0, 0).is_err());
    }
}
