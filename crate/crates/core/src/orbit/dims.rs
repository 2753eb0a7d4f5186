//! Tangent spans, orbit dimensions and the Terracini test.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinorError};
use crate::isotropic::is_pure;
use crate::multilinear::linalg::analyze;
use crate::multilinear::{clifford_apply, Scalar, Spinor, Vector};

use super::label::OrbitLabel;

/// `x` together with `v_α·(v_β·x)` for hyperbolic basis vectors `α < β`.
///
/// Pairs with `α > β` add nothing: `v_α v_β = -v_β v_α + P(v_α, v_β)` and
/// each basis vector squares to zero.
fn lie_images(x: &Spinor) -> Vec<Vec<Scalar>> {
    let basis = Vector::hyperbolic_basis(x.n());
    let singles: Vec<_> = basis
        .iter()
        .map(|v| clifford_apply(v, x.element()).expect("matching n"))
        .collect();
    let mut out = vec![x.to_dense()];
    for (a, va) in basis.iter().enumerate() {
        for single in &singles[a + 1..] {
            let y = clifford_apply(va, single).expect("matching n");
            if !y.is_zero() {
                out.push(y.to_dense(true));
            }
        }
    }
    out
}

fn span_rank(rows: &[Vec<Scalar>], n: usize) -> usize {
    analyze(rows, 1 << (n - 1)).rank
}

fn require_pure(a: &Spinor) -> Result<()> {
    if a.is_zero() {
        return Err(SpinorError::ZeroSpinor);
    }
    if !is_pure(a)? {
        return Err(SpinorError::NotPure);
    }
    Ok(())
}

/// A basis of the affine tangent space to the cone over the pure spinors at `a`.
pub fn tangent_cone_span(a: &Spinor) -> Result<Vec<Spinor>> {
    require_pure(a)?;
    let rows = lie_images(a);
    let basis = analyze(&rows, 1 << (a.n() - 1)).basis_rows;
    Ok(basis.into_iter().map(|i| Spinor::from_dense(a.n(), &rows[i])).collect())
}

/// Whether `q` lies in the affine tangent space at the pure spinor `a`.
pub fn is_tangent_at(q: &Spinor, a: &Spinor) -> Result<bool> {
    if q.n() != a.n() {
        return Err(SpinorError::DimensionMismatch { expected: a.n(), found: q.n() });
    }
    require_pure(a)?;
    let mut rows = lie_images(a);
    let before = span_rank(&rows, a.n());
    rows.push(q.to_dense());
    Ok(span_rank(&rows, a.n()) == before)
}

/// Projective dimension of the orbit of `q`.
pub fn orbit_dimension(q: &Spinor) -> Result<usize> {
    if q.is_zero() {
        return Err(SpinorError::ZeroSpinor);
    }
    Ok(span_rank(&lie_images(q), q.n()) - 1)
}

/// Closed-form dimensions of the orbits and of the varieties they stratify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub n: usize,
    pub orbits: Vec<(OrbitLabel, usize)>,
    pub secant: usize,
    pub tangential: usize,
}

impl DimensionTable {
    pub fn get(&self, label: OrbitLabel) -> Option<usize> {
        self.orbits.iter().find(|(l, _)| *l == label).map(|&(_, d)| d)
    }
}

pub fn closed_form_dims(n: usize) -> Result<DimensionTable> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(SpinorError::OutOfRange(format!("dimension table needs an even n >= 6, got {n}")));
    }
    let s = n * (n - 1) / 2;
    let sigma = |l: usize| s + l * (2 * n - 1) + 1 - 2 * l * l;
    let mut orbits = vec![(OrbitLabel::Pure, s), (OrbitLabel::Sigma(2), s + 4 * n - 15)];
    for l in 3..=n / 2 {
        orbits.push((OrbitLabel::Theta(l), sigma(l) - 1));
        orbits.push((OrbitLabel::Sigma(l), sigma(l)));
    }
    Ok(DimensionTable { n, orbits, secant: n * (n - 1) + 1, tangential: n * (n - 1) })
}

/// `(s < min(n(n-1)+2, 2^{n-1}), s)` where `s` is the dimension of the sum of
/// the affine tangent spaces at `a` and `b`.
pub fn terracini_deficient(a: &Spinor, b: &Spinor) -> Result<(bool, usize)> {
    if a.n() != b.n() {
        return Err(SpinorError::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    require_pure(a)?;
    require_pure(b)?;
    let n = a.n();
    let mut rows = lie_images(a);
    rows.extend(lie_images(b));
    let s = span_rank(&rows, n);
    let expected = (n * (n - 1) + 2).min(1 << (n - 1));
    Ok((s < expected, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::label::{representative, tangent_representative};

    #[test]
    fn tangent_span_at_one() {
        let n = 6;
        let span = tangent_cone_span(&Spinor::one(n)).unwrap();
        assert_eq!(span.len(), 16);
        assert!(span.iter().all(|x| x.terms().all(|(s, _)| s.len() <= 2)));
        assert!(is_tangent_at(&tangent_representative(n, 2), &Spinor::one(n)).unwrap());
        assert!(!is_tangent_at(&Spinor::top(n, n), &Spinor::one(n)).unwrap());
        assert!(is_tangent_at(&tangent_representative(n, 3), &Spinor::one(n)).unwrap());
        assert!(!is_tangent_at(&(&Spinor::top(n, n) + &Spinor::one(n)), &Spinor::one(n)).unwrap());
        assert!(tangent_cone_span(&tangent_representative(n, 3)).is_err());
    }

    #[test]
    fn dimensions_n6() {
        let dims: Vec<usize> = OrbitLabel::all(6)
            .into_iter()
            .map(|l| orbit_dimension(&representative(l, 6).unwrap()).unwrap())
            .collect();
        assert_eq!(dims, vec![15, 24, 30, 31]);
        let table = closed_form_dims(6).unwrap();
        assert_eq!(table.get(OrbitLabel::Sigma(2)), Some(24));
    }

    #[test]
    fn closed_forms_n8() {
        let t = closed_form_dims(8).unwrap();
        assert_eq!(t.get(OrbitLabel::Sigma(3)), Some(56));
        assert_eq!(t.get(OrbitLabel::Theta(3)), Some(55));
        assert_eq!(t.secant, 57);
        assert!(closed_form_dims(7).is_err());
        assert!(closed_form_dims(4).is_err());
    }

    #[test]
    fn terracini_examples() {
        let n = 8;
        let a = Spinor::top(n, n);
        assert!(terracini_deficient(&a, &Spinor::top(n, 4)).unwrap().0);
        assert_eq!(terracini_deficient(&a, &Spinor::top(n, 2)).unwrap(), (false, 58));
        assert!(terracini_deficient(&a, &Spinor::top(n, 6)).unwrap().0);
    }
}
