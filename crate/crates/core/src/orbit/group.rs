use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SpinorError};
use crate::isotropic::IsotropicSubspace;
use crate::multilinear::exterior::clifford_apply;
use crate::multilinear::{Scalar, Spinor, Vector};

/// A spin-group element written as a Clifford product `v_1 v_2 ... v_{2k}` of
/// anisotropic vectors. It acts on spinors projectively; no norm-one scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    n: usize,
    factors: Vec<Vector>,
}

impl GroupElement {
    pub fn new(n: usize, factors: Vec<Vector>) -> Result<Self> {
        if !factors.len().is_multiple_of(2) {
            return Err(SpinorError::OutOfRange(format!("odd number of factors ({})", factors.len())));
        }
        for v in &factors {
            if v.n() != n {
                return Err(SpinorError::DimensionMismatch { expected: n, found: v.n() });
            }
            if v.q().is_zero() {
                return Err(SpinorError::OutOfRange(format!("isotropic factor {v}")));
            }
        }
        Ok(GroupElement { n, factors })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { n, factors: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Vector] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Spinor norm `Π q(v_i)`.
    pub fn norm(&self) -> Scalar {
        self.factors.iter().fold(Scalar::one(), |acc, v| &acc * &v.q())
    }

    /// The product `g h`.
    pub fn compose(&self, h: &GroupElement) -> GroupElement {
        assert_eq!(self.n, h.n);
        let mut factors = self.factors.clone();
        factors.extend(h.factors.iter().cloned());
        GroupElement { n: self.n, factors }
    }

    /// The reverse `v_{2k} ... v_1`, which is `N(g) g^{-1}`.
    pub fn reverse(&self) -> GroupElement {
        GroupElement { n: self.n, factors: self.factors.iter().rev().cloned().collect() }
    }
}

/// `2k` vectors with entries in `-2..=2`, each resampled until anisotropic.
pub fn random_group_element(n: usize, seed: u64, k: usize) -> Result<GroupElement> {
    if k == 0 {
        return Err(SpinorError::OutOfRange("a random group element needs k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::with_capacity(2 * k);
    for _ in 0..2 * k {
        let mut found = None;
        for _ in 0..100 {
            let coords: Vec<Scalar> = (0..2 * n).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect();
            let v = Vector::from_coords(coords)?;
            if !v.q().is_zero() {
                found = Some(v);
                break;
            }
        }
        factors.push(found.ok_or_else(|| SpinorError::Internal("no anisotropic vector in 100 draws".into()))?);
    }
    GroupElement::new(n, factors)
}

/// `g·x`, applying the rightmost factor first.
pub fn group_apply(g: &GroupElement, x: &Spinor) -> Result<Spinor> {
    if g.n != x.n() {
        return Err(SpinorError::DimensionMismatch { expected: g.n, found: x.n() });
    }
    let mut y = x.element().clone();
    for v in g.factors.iter().rev() {
        y = clifford_apply(v, &y)?;
    }
    Spinor::from_element(y)
}

/// `g^{-1}·x` exactly, as `(v_{2k} ... v_1 · x) / N(g)`.
pub fn group_apply_inverse(g: &GroupElement, x: &Spinor) -> Result<Spinor> {
    let y = group_apply(&g.reverse(), x)?;
    Ok(y.scale(&g.norm().inv()))
}

/// Reflection-type map `ρ_w(u) = (P(u,w)/q(w)) w - u = w u w^{-1}`.
pub fn reflect(w: &Vector, u: &Vector) -> Vector {
    let c = &u.polar(w) / &w.q();
    w.scale(&c).sub(u)
}

/// `g v g^{-1}`, composing `ρ` over the factors rightmost first.
pub fn conjugate(g: &GroupElement, v: &Vector) -> Vector {
    g.factors.iter().rev().fold(v.clone(), |u, w| reflect(w, &u))
}

/// Image of a subspace under `conjugate(g, ·)`.
pub fn conjugate_subspace(g: &GroupElement, h: &IsotropicSubspace) -> IsotropicSubspace {
    let rows = h.rows().iter().map(|v| conjugate(g, v).coords()).collect();
    IsotropicSubspace::span_of(h.n(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropic::{hamming_distance, is_pure, psi_kernel};
    use crate::multilinear::IndexSet;

    #[test]
    fn reflection_example() {
        let n = 3;
        let w = Vector::basis_e(n, 1).add(&Vector::basis_f(n, 1));
        assert_eq!(reflect(&w, &Vector::basis_e(n, 1)), Vector::basis_f(n, 1));
    }

    #[test]
    fn validation() {
        let n = 2;
        assert!(GroupElement::new(n, vec![Vector::basis_e(n, 1).add(&Vector::basis_f(n, 1))]).is_err());
        assert!(GroupElement::new(n, vec![Vector::basis_e(n, 1), Vector::basis_e(n, 1)]).is_err());
        assert!(random_group_element(n, 1, 0).is_err());
    }

    #[test]
    fn action_properties() {
        let n = 6;
        let g = random_group_element(n, 7, 2).unwrap();
        let a = Spinor::top(n, n);
        let b = Spinor::monomial(n, IndexSet::from_indices(&[1, 2]).unwrap());
        let ga = group_apply(&g, &a).unwrap();
        let gb = group_apply(&g, &b).unwrap();
        assert!(is_pure(&ga).unwrap());
        assert_eq!(hamming_distance(&ga, &gb).unwrap(), hamming_distance(&a, &b).unwrap());
        assert_eq!(psi_kernel(&ga).unwrap(), conjugate_subspace(&g, &psi_kernel(&a).unwrap()));
        assert_eq!(group_apply_inverse(&g, &ga).unwrap(), a);
        let v = Vector::from_ints(&[1, 0, 2, -1, 0, 3], &[0, 1, 1, 2, -2, 0]);
        let cv = conjugate(&g, &v);
        assert_eq!(cv.q(), v.q());
        assert_eq!(group_apply(&GroupElement::identity(n), &a).unwrap(), a);
    }
}
