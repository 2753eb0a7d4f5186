use std::fmt;

use crate::error::{Result, SpinorError};

use super::linalg::{determinant, Matrix};
use super::scalar::Scalar;

/// `v = Σ a_k e_k + Σ b_k f_k` in `V = E ⊕ E^∨` with the hyperbolic pairing
/// `P(e_i, f_j) = δ_ij`, so `q(v) = Σ a_k b_k` and `P(v, v) = 2 q(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    pub e: Vec<Scalar>,
    pub f: Vec<Scalar>,
}

impl Vector {
    pub fn zero(n: usize) -> Self {
        Vector { e: vec![Scalar::zero(); n], f: vec![Scalar::zero(); n] }
    }

    /// Basis vector `e_i`, 1-based.
    pub fn basis_e(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.e[i - 1] = Scalar::one();
        v
    }

    /// Basis vector `f_i`, 1-based.
    pub fn basis_f(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.f[i - 1] = Scalar::one();
        v
    }

    /// The `2n` hyperbolic basis vectors `e_1..e_n, f_1..f_n`.
    pub fn hyperbolic_basis(n: usize) -> Vec<Vector> {
        (1..=n).map(|i| Self::basis_e(n, i)).chain((1..=n).map(|i| Self::basis_f(n, i))).collect()
    }

    /// From `2n` coordinates: e-part then f-part.
    pub fn from_coords(coords: Vec<Scalar>) -> Result<Self> {
        if !coords.len().is_multiple_of(2) {
            return Err(SpinorError::OddSize(coords.len()));
        }
        let mut e = coords;
        let f = e.split_off(e.len() / 2);
        Ok(Vector { e, f })
    }

    pub fn from_ints(e: &[i64], f: &[i64]) -> Self {
        assert_eq!(e.len(), f.len());
        Vector {
            e: e.iter().map(|&x| Scalar::from_int(x)).collect(),
            f: f.iter().map(|&x| Scalar::from_int(x)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.e.iter().chain(&self.f).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().chain(&self.f).all(Scalar::is_zero)
    }

    /// Quadratic value `q(v) = Σ a_k b_k`.
    pub fn q(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.e.iter().zip(&self.f) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    /// Polar pairing `P(v, w) = Σ (a_k b'_k + b_k a'_k)`.
    pub fn polar(&self, w: &Vector) -> Scalar {
        assert_eq!(self.n(), w.n(), "vectors over different n");
        let mut acc = Scalar::zero();
        for k in 0..self.n() {
            if !self.e[k].is_zero() && !w.f[k].is_zero() {
                acc += &(&self.e[k] * &w.f[k]);
            }
            if !self.f[k].is_zero() && !w.e[k].is_zero() {
                acc += &(&self.f[k] * &w.e[k]);
            }
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector { e: self.e.iter().map(|x| x * c).collect(), f: self.f.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, w: &Vector) -> Vector {
        Vector {
            e: self.e.iter().zip(&w.e).map(|(x, y)| x + y).collect(),
            f: self.f.iter().zip(&w.f).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, w: &Vector) -> Vector {
        Vector {
            e: self.e.iter().zip(&w.e).map(|(x, y)| x - y).collect(),
            f: self.f.iter().zip(&w.f).map(|(x, y)| x - y).collect(),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, part) in [("e", &self.e), ("f", &self.f)] {
            for (k, c) in part.iter().enumerate() {
                if !c.is_zero() {
                    parts.push(if c.is_one() { format!("{name}{}", k + 1) } else { format!("({c})*{name}{}", k + 1) });
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `<x_1 ∧ ... ∧ x_k, y_1 ∧ ... ∧ y_h> = det(P(x_i, y_j))` for `k = h`, else 0.
pub fn scalar_product(xs: &[Vector], ys: &[Vector]) -> Scalar {
    if xs.len() != ys.len() {
        return Scalar::zero();
    }
    let gram = Matrix::from_fn(xs.len(), ys.len(), |i, j| xs[i].polar(&ys[j]));
    determinant(&gram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_and_quadric() {
        let n = 3;
        let v = Vector::basis_e(n, 1).add(&Vector::basis_f(n, 1));
        assert_eq!(v.q(), Scalar::one());
        assert_eq!(v.polar(&v), Scalar::from_int(2));
        assert_eq!(Vector::basis_e(n, 1).polar(&Vector::basis_f(n, 2)), Scalar::zero());
    }

    #[test]
    fn gram_products() {
        let e = |i| Vector::basis_e(3, i);
        let f = |i| Vector::basis_f(3, i);
        assert_eq!(scalar_product(&[f(1), f(2)], &[e(1), e(2)]), Scalar::one());
        assert_eq!(scalar_product(&[e(1), e(2)], &[e(1), e(2)]), Scalar::zero());
        assert_eq!(scalar_product(&[f(1), f(3)], &[e(1), e(2)]), Scalar::zero());
        assert_eq!(scalar_product(&[f(2), f(1)], &[e(1), e(2)]), Scalar::from_int(-1));
        assert_eq!(scalar_product(&[], &[]), Scalar::one());
    }
}
