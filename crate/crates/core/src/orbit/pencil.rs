//! Pure points on a pencil `base + s·dir`.
//!
//! A point on `m` letters is pure exactly when its ψ-matrix has rank `m`, so
//! pure points on the pencil are common roots of the `(m+1)`-minors. We take
//! the gcd of a few random compressions `det(R (ψ_base + s ψ_dir) C)`,
//! factor it square-free, and keep only roots whose purity checks exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_rational::BigRational;

use crate::error::{Result, SpinorError};
use crate::isotropic::{basis_images, is_pure};
use crate::multilinear::linalg::{determinant, Matrix};
use crate::multilinear::{Scalar, Spinor, UniPoly};

const MIN_MINORS: usize = 3;
const MAX_MINORS: usize = 8;
const RATIONAL_ROOT_BOUND: u64 = 24;

#[derive(Clone, Debug)]
pub(crate) struct PencilPoint {
    pub s: Scalar,
    pub point: Spinor,
    pub multiplicity: usize,
}

fn psi_dense(x: &Spinor) -> Matrix {
    let cols: Vec<Vec<Scalar>> = basis_images(x).iter().map(|y| y.to_dense(false)).collect();
    Matrix::with_cols(cols, 1 << (x.n() - 1)).transpose()
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| Scalar::from_int(rng.gen_range(-3..=3)))
}

/// Interpolated `det(A0 + s A1)`.
fn pencil_determinant(a0: &Matrix, a1: &Matrix) -> UniPoly {
    let k = a0.nrows();
    let points: Vec<(BigRational, BigRational)> = (0..=k as i64)
        .map(|s| {
            let sv = Scalar::from_int(s);
            let m = Matrix::from_fn(k, k, |i, j| a0.get(i, j) + &(a1.get(i, j) * &sv));
            let d = determinant(&m);
            (BigRational::from_integer(s.into()), d.as_rational().expect("rational pencil").clone())
        })
        .collect();
    UniPoly::interpolate(&points)
}

pub(crate) fn pure_points_on_pencil(base: &Spinor, dir: &Spinor, seed: u64) -> Result<Vec<PencilPoint>> {
    if !base.is_rational() || !dir.is_rational() {
        return Err(SpinorError::UnsupportedField("pencil endpoints must be rational".into()));
    }
    let m = base.n();
    let k = m + 1;
    let rows = 1usize << (m - 1);
    let (psi0, psi1) = (psi_dense(base), psi_dense(dir));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut g = UniPoly::zero();
    let mut used = 0;
    let mut draws = 0;
    loop {
        if draws >= 4 * MAX_MINORS {
            break;
        }
        draws += 1;
        let r = random_matrix(&mut rng, k, rows);
        let c = random_matrix(&mut rng, 2 * m, k);
        let a0 = r.mul(&psi0).mul(&c);
        let a1 = r.mul(&psi1).mul(&c);
        let d = pencil_determinant(&a0, &a1);
        if d.is_zero() {
            continue;
        }
        g = if g.is_zero() { d.monic() } else { g.gcd(&d) };
        used += 1;
        if g.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let wide = g.squarefree().iter().any(|(f, _)| f.degree().unwrap_or(0) > 2);
        if used >= MIN_MINORS && (!wide || used >= MAX_MINORS) {
            break;
        }
    }
    if g.is_zero() {
        return Err(SpinorError::NotInSecantVariety("every point of the pencil has a rank-deficient ψ".into()));
    }

    let mut out: Vec<PencilPoint> = Vec::new();
    for (factor, mult) in g.squarefree() {
        let roots: Vec<Scalar> = match factor.low_degree_roots() {
            Some(r) => r,
            None => {
                let rational = factor.small_rational_roots(RATIONAL_ROOT_BOUND);
                let mut rest = factor.clone();
                for x in &rational {
                    rest = rest.div_rem(&UniPoly::new(vec![-x.clone(), BigRational::from_integer(1.into())])).0;
                }
                if rest.degree().unwrap_or(0) > 0 {
                    return Err(SpinorError::UnsupportedField(format!(
                        "pencil roots need an extension of degree {}",
                        rest.degree().unwrap()
                    )));
                }
                rational.into_iter().map(Scalar::Rat).collect()
            }
        };
        for s in roots {
            let point = base + &dir.scale(&s);
            if !point.is_zero() && is_pure(&point)? {
                out.push(PencilPoint { s, point, multiplicity: mult });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::IndexSet;

    #[test]
    fn dense_pencil_has_two_points() {
        let n = 6;
        let q = &Spinor::top(n, n) + &Spinor::one(n);
        let w = &Spinor::top(n, n) - &Spinor::one(n);
        let pts = pure_points_on_pencil(&w, &q, 1).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p.multiplicity == 1));
    }

    #[test]
    fn tangent_pencil_has_double_point() {
        let n = 6;
        let q3 = (1..=3).fold(Spinor::zero(n), |acc, i| {
            &acc + &Spinor::monomial(n, IndexSet::from_indices(&[2 * i - 1, 2 * i]).unwrap())
        });
        let pts = pure_points_on_pencil(&Spinor::one(n), &q3, 2).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].multiplicity >= 2);
        assert!(pts[0].s.is_zero());
    }

    #[test]
    fn conjugate_points_over_quadratic_field() {
        // x_∅ = x_1234 = s, x_12 = 1, x_34 = 2: the quadric reads s^2 ± 2 = 0
        let n = 4;
        let base = &Spinor::monomial(n, IndexSet::from_indices(&[1, 2]).unwrap())
            + &Spinor::monomial(n, IndexSet::from_indices(&[3, 4]).unwrap()).scale(&Scalar::from_int(2));
        let dir = &Spinor::top(n, n) + &Spinor::one(n);
        let pts = pure_points_on_pencil(&base, &dir, 3).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| !p.s.is_rational()));
    }
}
