//! The Clifford apolarity operator `Φ_q : ⋀^od E^∨ -> V`, characterized by
//! `P(v, Φ_q(f)) = <f, v·q>` for every `v ∈ V`, and the linear span of its
//! zero locus.

use crate::error::{Result, SpinorError};
use crate::multilinear::exterior::{clifford_apply, dual_apply, pairing};
use crate::multilinear::linalg::analyze;
use crate::multilinear::{CoSpinor, Scalar, Spinor, Vector};

fn nonzero(q: &Spinor) -> Result<()> {
    if q.is_zero() {
        return Err(SpinorError::ZeroSpinor);
    }
    Ok(())
}

/// The `2n × 2^{n-1}` matrix of `Φ_q`: rows are the coordinates `e_1..e_n`,
/// `f_1..f_n` of the output vector, columns the odd monomials `f_I` in mask order.
///
/// The `e_i` row reads `<f_I, f_i·q>` and the `f_j` row reads `<f_I, e_j·q>`.
pub fn phi_matrix(q: &Spinor) -> Vec<Vec<Scalar>> {
    let n = q.n();
    let f_rows = (1..=n).map(|i| Vector::basis_f(n, i));
    let e_rows = (1..=n).map(|j| Vector::basis_e(n, j));
    f_rows
        .chain(e_rows)
        .map(|v| clifford_apply(&v, q.element()).expect("matching n").to_dense(false))
        .collect()
}

/// `Φ_q(f)`, the unique `u` with `P(v, u) = <f, v·q>` for all `v`.
pub fn phi_apply(q: &Spinor, f: &CoSpinor) -> Result<Vector> {
    if q.n() != f.n() {
        return Err(SpinorError::DimensionMismatch { expected: q.n(), found: f.n() });
    }
    let n = q.n();
    let mut u = Vector::zero(n);
    for k in 1..=n {
        u.e[k - 1] = pairing(f.element(), &clifford_apply(&Vector::basis_f(n, k), q.element())?);
        u.f[k - 1] = pairing(f.element(), &clifford_apply(&Vector::basis_e(n, k), q.element())?);
    }
    Ok(u)
}

/// Basis of `ker Φ_q ⊂ ⋀^od E^∨`.
pub fn ker_phi(q: &Spinor) -> Result<Vec<CoSpinor>> {
    nonzero(q)?;
    let n = q.n();
    let an = analyze(&phi_matrix(q), 1 << (n - 1));
    Ok(an.kernel.iter().map(|k| CoSpinor::from_dense(n, k)).collect())
}

pub fn rank_phi(q: &Spinor) -> Result<usize> {
    nonzero(q)?;
    Ok(analyze(&phi_matrix(q), 1 << (q.n() - 1)).rank)
}

/// Basis of `L_q = {a ∈ ⋀^ev E : <f, v·a> = 0 for all f ∈ ker Φ_q, v ∈ V}`.
///
/// By adjointness the conditions are `<v·f, a> = 0`, so `L_q` is the kernel
/// of the matrix whose rows are the dual images `v·f`.
pub fn annihilator_span(q: &Spinor) -> Result<Vec<Spinor>> {
    let kernel = ker_phi(q)?;
    let n = q.n();
    let mut rows = Vec::with_capacity(kernel.len() * 2 * n);
    for f in &kernel {
        for v in Vector::hyperbolic_basis(n) {
            let img = dual_apply(&v, f.element())?;
            if !img.is_zero() {
                rows.push(img.to_dense(true));
            }
        }
    }
    let dim = 1usize << (n - 1);
    if rows.is_empty() {
        return Ok((0..dim).map(|k| Spinor::from_dense(n, &unit(dim, k))).collect());
    }
    let an = analyze(&rows, dim);
    Ok(an.kernel.iter().map(|k| Spinor::from_dense(n, k)).collect())
}

fn unit(dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[k] = Scalar::one();
    v
}
