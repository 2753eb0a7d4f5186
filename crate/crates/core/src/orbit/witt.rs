use crate::error::{Result, SpinorError};
use crate::isotropic::IsotropicSubspace;
use crate::multilinear::{IndexSet, Scalar, Spinor, Vector};

use super::group::{conjugate_subspace, reflect, GroupElement};

/// A spin-group element `g` with `g H g^{-1} = span(e_1, ..., e_k)`.
///
/// Step `i` picks `h ∈ H` outside `span(e_1..e_{i-1})`, strips its `e_{<i}`
/// part so it lies in the hyperbolic complement, and moves it onto the line of
/// `e_i` with one reflection (when `P(h, e_i) ≠ 0`) or two, through an
/// isotropic `z = f_i + u`. Each reflection fixes `span(e_{<i})`. An odd total
/// is repaired with `e_n + f_n`, which fixes `span(e_1..e_{n-1})`.
pub fn witt_standardize(h: &IsotropicSubspace) -> Result<GroupElement> {
    let n = h.n();
    let k = h.dim();
    let mut rows: Vec<Vector> = h.rows().to_vec();
    let mut applied: Vec<Vector> = Vec::new();
    let apply = |w: Vector, rows: &mut Vec<Vector>, applied: &mut Vec<Vector>| {
        for r in rows.iter_mut() {
            *r = reflect(&w, r);
        }
        applied.push(w);
    };

    for i in 1..=k {
        let outside = |v: &Vector| v.e[i - 1..].iter().chain(&v.f).any(|x| !x.is_zero());
        let Some(pos) = rows.iter().position(outside) else {
            return Err(SpinorError::Internal("Witt step found no new vector".into()));
        };
        let mut hv = rows[pos].clone();
        for j in 0..i - 1 {
            hv.e[j] = Scalar::zero();
        }
        let e_i = Vector::basis_e(n, i);
        let only_ei = hv.e.iter().enumerate().all(|(j, x)| j == i - 1 || x.is_zero()) && hv.f.iter().all(Scalar::is_zero);
        if only_ei {
            continue;
        }
        if !hv.polar(&e_i).is_zero() {
            apply(hv.sub(&e_i), &mut rows, &mut applied);
            continue;
        }
        let f_i = Vector::basis_f(n, i);
        let mut candidates = vec![f_i.clone()];
        for j in i + 1..=n {
            candidates.push(f_i.add(&Vector::basis_e(n, j)));
            candidates.push(f_i.add(&Vector::basis_f(n, j)));
        }
        let Some(z) = candidates.into_iter().find(|z| !hv.polar(z).is_zero()) else {
            return Err(SpinorError::Internal("Witt step found no pivot vector".into()));
        };
        apply(hv.sub(&z), &mut rows, &mut applied);
        // hv is now -z, and P(-z, e_i) = -1
        let image = z.scale(&Scalar::from_int(-1));
        apply(image.sub(&e_i), &mut rows, &mut applied);
    }

    if applied.len() % 2 == 1 {
        if k == n {
            return Err(SpinorError::WrongComponent);
        }
        applied.push(Vector::basis_e(n, n).add(&Vector::basis_f(n, n)));
    }
    applied.reverse();
    let g = GroupElement::new(n, applied)?;
    if conjugate_subspace(&g, h) != IsotropicSubspace::e_span(n, k) {
        return Err(SpinorError::Internal("Witt standardization missed its target".into()));
    }
    Ok(g)
}

/// `q̃` with `q = e_[m] ∧ q̃`, re-indexed onto `n - m` letters.
pub fn factor_extract(q: &Spinor, m: usize) -> Result<Spinor> {
    let n = q.n();
    if m > n || !m.is_multiple_of(2) {
        return Err(SpinorError::OutOfRange(format!("cannot extract e_[{m}] from a spinor on {n} letters")));
    }
    let prefix = IndexSet::prefix(m);
    let mut terms = Vec::new();
    for (s, c) in q.terms() {
        if !s.is_superset(prefix) {
            return Err(SpinorError::MissingFactor(s.to_string()));
        }
        terms.push((s.shift_down(m), c.clone()));
    }
    Spinor::from_terms(n - m, terms)
}

/// `e_[m] ∧ p̃` with the letters of `p̃` shifted up by `m`.
pub fn factor_lift(p: &Spinor, m: usize) -> Spinor {
    let n = p.n() + m;
    Spinor::from_terms(n, p.terms().map(|(s, c)| (s.shift_up(m).union(IndexSet::prefix(m)), c.clone())))
        .expect("lift stays in range")
}
