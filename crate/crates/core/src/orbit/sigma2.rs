//! Many decompositions of a distance-2 point.
//!
//! After reduction the cofactor `q̃` is a non-pure spinor on 4 letters, and
//! the pure spinors there form a quadric. Every pure `ã` gives a line through
//! `q̃` meeting the quadric again at one more point `p = ã + s·q̃`, hence the
//! decomposition `q̃ = (-ã/s) + (p/s)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SpinorError};
use crate::isotropic::{pfaffian_chart, psi_kernel, random_skew};
use crate::multilinear::{IndexSet, Spinor};

use super::classify::Reduction;
use super::group::{group_apply, random_group_element};
use super::pencil::pure_points_on_pencil;

const LETTERS: usize = 4;

fn fixed_candidates() -> Vec<Spinor> {
    let evens: Vec<IndexSet> = IndexSet::all_with_parity(LETTERS, true).collect();
    let mut out: Vec<Spinor> = evens.iter().map(|&s| Spinor::monomial(LETTERS, s)).collect();
    for (i, &a) in evens.iter().enumerate() {
        for &b in &evens[i + 1..] {
            if a.symmetric_difference(b).len() == 2 {
                out.push(&Spinor::monomial(LETTERS, a) + &Spinor::monomial(LETTERS, b));
            }
        }
    }
    out
}

fn random_candidate(seed: u64, trial: usize) -> Result<Spinor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let a = pfaffian_chart(&random_skew(&mut rng, LETTERS, 3))?;
    if trial % 2 == 1 {
        let g = random_group_element(LETTERS, seed.wrapping_add(trial as u64), 1)?;
        return group_apply(&g, &a);
    }
    Ok(a)
}

fn contains_pair(found: &[(Spinor, Spinor)], a: &Spinor, b: &Spinor) -> bool {
    found.iter().any(|(x, y)| {
        (x.projectively_equal(a) && y.projectively_equal(b)) || (x.projectively_equal(b) && y.projectively_equal(a))
    })
}

/// Decompositions of the 4-letter cofactor `qt`, stopping early once
/// `stop_after` distinct pairs are known.
pub(crate) fn sigma2_pairs(
    qt: &Spinor,
    trials: usize,
    seed: u64,
    stop_after: Option<usize>,
) -> Result<Vec<(Spinor, Spinor)>> {
    if qt.n() != LETTERS {
        return Err(SpinorError::DimensionMismatch { expected: LETTERS, found: qt.n() });
    }
    let mut found: Vec<(Spinor, Spinor)> = Vec::new();
    let fixed = fixed_candidates();
    let total = fixed.len() + trials;
    for k in 0..total {
        if stop_after.is_some_and(|s| found.len() >= s) {
            break;
        }
        let a = match fixed.get(k) {
            Some(a) => a.clone(),
            None => random_candidate(seed, k - fixed.len())?,
        };
        for p in pure_points_on_pencil(&a, qt, seed.wrapping_add(k as u64))? {
            if p.s.is_zero() {
                continue;
            }
            let inv = p.s.inv();
            let first = a.scale(&-&inv);
            let second = p.point.scale(&inv);
            if &(&first + &second) != qt || first.projectively_equal(&second) {
                continue;
            }
            if !contains_pair(&found, &first, &second) {
                found.push((first, second));
            }
        }
    }
    Ok(found)
}

/// Distinct decompositions `q = a + b` of a distance-2 point into pure
/// spinors, found from the fixed monomial candidates plus `trials` random ones.
pub fn decompositions_sigma2(q: &Spinor, trials: usize, seed: u64) -> Result<Vec<(Spinor, Spinor)>> {
    if q.is_zero() {
        return Err(SpinorError::ZeroSpinor);
    }
    let n = q.n();
    let h = psi_kernel(q)?;
    if n < LETTERS || h.dim() != n - LETTERS {
        return Err(SpinorError::NotInSecantVariety(format!(
            "expected a distance-2 point, kernel has dimension {}",
            h.dim()
        )));
    }
    let red = Reduction::new(q, &h)?;
    let pairs = sigma2_pairs(&red.reduced, trials, seed, None)?;
    if pairs.len() < 2 {
        return Err(SpinorError::TooFewDecompositions { found: pairs.len(), needed: 2 });
    }
    pairs
        .into_iter()
        .map(|(a, b)| Ok((red.lift(&a)?, red.lift(&b)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropic::{hamming_distance, is_pure};
    use crate::orbit::classify::sample;
    use crate::orbit::label::OrbitLabel;

    fn has(pairs: &[(Spinor, Spinor)], a: &Spinor, b: &Spinor) -> bool {
        contains_pair(pairs, a, b)
    }

    #[test]
    fn two_known_decompositions_on_four_letters() {
        let n = 4;
        let e2 = Spinor::top(n, 2);
        let q = &Spinor::top(n, n) + &Spinor::one(n);
        let pairs = decompositions_sigma2(&q, 8, 1).unwrap();
        assert!(has(&pairs, &Spinor::top(n, n), &Spinor::one(n)));
        assert!(has(&pairs, &(&Spinor::top(n, n) - &e2), &(&e2 + &Spinor::one(n))));
        for (a, b) in &pairs {
            assert_eq!(&(a + b), &q);
            assert!(is_pure(a).unwrap() && is_pure(b).unwrap());
            assert_eq!(hamming_distance(a, b).unwrap(), 2);
        }
    }

    #[test]
    fn many_decompositions_at_eight_letters() {
        let s = sample(OrbitLabel::Sigma(2), 8, 3, 2).unwrap();
        let pairs = decompositions_sigma2(&s.spinor, 50, 5).unwrap();
        assert!(pairs.len() >= 3);
        for (a, b) in &pairs {
            assert_eq!(&(a + b), &s.spinor);
            assert_eq!(hamming_distance(a, b).unwrap(), 2);
        }
    }

    #[test]
    fn rejects_other_orbits() {
        let q = &Spinor::top(6, 6) + &Spinor::one(6);
        assert!(decompositions_sigma2(&q, 4, 0).is_err());
    }
}
