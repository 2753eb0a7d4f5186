//! Univariate polynomials over Q and spinor-valued polynomial families.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SpinorError};

use super::exterior::Spinor;
use super::index_set::IndexSet;
use super::scalar::Scalar;

/// Dense polynomial, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + &Scalar::Rat(c.clone());
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            // keep coefficients from growing through the Euclidean chain
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Yun's square-free factorization: returns `(f_i, i)` with `f_i` monic,
    /// square-free, pairwise coprime and `self ∝ Π f_i^i`; constant factors omitted.
    pub fn squarefree(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Lagrange interpolation through `(x_k, y_k)` with distinct rational `x_k`.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Self {
        let mut acc = Self::zero();
        for (k, (xk, yk)) in points.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            let mut basis = Self::constant(BigRational::one());
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if j != k {
                    basis = basis.mul(&Self::new(vec![-xj.clone(), BigRational::one()]));
                    denom *= xk - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yk / denom)));
        }
        acc
    }

    /// Roots of a polynomial of degree 1 or 2, exactly: rational roots or a
    /// Galois-conjugate pair in `Q(sqrt d)`. `None` for other degrees.
    pub fn low_degree_roots(&self) -> Option<Vec<Scalar>> {
        match self.degree()? {
            1 => Some(vec![Scalar::Rat(-self.coeff(0) / self.coeff(1))]),
            2 => {
                let (a, b, c) = (self.coeff(2), self.coeff(1), self.coeff(0));
                let disc = &b * &b - BigRational::from_integer(4.into()) * &a * &c;
                let root = Scalar::sqrt_of(&disc);
                let two_a = Scalar::Rat(&a * BigRational::from_integer(2.into()));
                let mb = Scalar::Rat(-b);
                let r1 = &(&mb + &root) / &two_a;
                let r2 = &(&mb - &root) / &two_a;
                if disc.is_zero() {
                    Some(vec![r1])
                } else {
                    Some(vec![r1, r2])
                }
            }
            _ => None,
        }
    }

    /// Rational roots by the rational root test on the primitive integer
    /// polynomial, trying numerators and denominators up to `bound`.
    pub fn small_rational_roots(&self, bound: u64) -> Vec<BigRational> {
        let Some(deg) = self.degree() else { return Vec::new() };
        if deg == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        if self.coeff(0).is_zero() {
            roots.push(BigRational::zero());
        }
        for q in 1..=bound {
            for p in 1..=bound {
                if num_integer::Integer::gcd(&p, &q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(p as i64 * sign), BigInt::from(q));
                    if self.eval(&Scalar::Rat(r.clone())).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let sep = match (first, neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if k > 0 && mag.is_one() {
                write!(f, "{sep}{var}")?;
            } else if k > 0 {
                write!(f, "{sep}{mag}*{var}")?;
            } else {
                write!(f, "{sep}{mag}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A spinor whose coefficients are polynomials in one parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPolySpinor {
    n: usize,
    terms: BTreeMap<IndexSet, UniPoly>,
}

impl UniPolySpinor {
    pub fn zero(n: usize) -> Self {
        UniPolySpinor { n, terms: BTreeMap::new() }
    }

    /// The constant family `x`.
    pub fn constant(x: &Spinor) -> Self {
        Self::from_spinor_times(x, 0)
    }

    /// The family `t^k · x`.
    pub fn from_spinor_times(x: &Spinor, k: usize) -> Self {
        let mut out = Self::zero(x.n());
        for (s, c) in x.terms() {
            let c = c.as_rational().expect("polynomial families are rational").clone();
            out.add_term(*s, UniPoly::monomial(c, k));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &UniPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, s: IndexSet, p: UniPoly) {
        assert!(s.is_even() && s.within(self.n), "invalid spinor monomial {s}");
        let entry = self.terms.entry(s).or_default();
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        for (s, p) in &o.terms {
            out.add_term(*s, p.clone());
        }
        out
    }

    /// Coefficient-wise evaluation at `t`.
    pub fn eval(&self, t: &Scalar) -> Spinor {
        Spinor::from_terms(self.n, self.terms.iter().map(|(s, p)| (*s, p.eval(t))))
            .expect("family has even support")
    }

    /// Exact division by `t`; every coefficient must vanish at `t = 0`.
    pub fn divide_t(&self) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (s, p) in &self.terms {
            if !p.coeff(0).is_zero() {
                return Err(SpinorError::NonzeroConstantTerm(s.to_string()));
            }
            out.terms.insert(*s, UniPoly::new(p.coeffs()[1..].to_vec()));
        }
        Ok(out)
    }
}

/// Evaluates the family at `t`.
pub fn poly_eval(f: &UniPolySpinor, t: &Scalar) -> Spinor {
    f.eval(t)
}

/// Divides the family by `t`.
pub fn poly_divide_t(f: &UniPolySpinor) -> Result<UniPolySpinor> {
    f.divide_t()
}

impl fmt::Display for UniPolySpinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, p)| {
                let mono = if s.is_empty() {
                    "1".to_string()
                } else {
                    let idx: Vec<String> = s.indices().iter().map(|i| i.to_string()).collect();
                    format!("e[{}]", idx.join(","))
                };
                format!("({p})*{mono}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn division_and_gcd() {
        let f = UniPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let g = UniPoly::from_ints(&[1, 1]); // t + 1
        let (q, rem) = f.div_rem(&g);
        assert_eq!(q, UniPoly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(f.gcd(&UniPoly::from_ints(&[2, 2])), g);
    }

    #[test]
    fn yun_factorization() {
        // (t - 1)^2 (t + 2) (t^2 + 1)^3
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[2, 1]);
        let c = UniPoly::from_ints(&[1, 0, 1]);
        let f = a.mul(&a).mul(&b).mul(&c).mul(&c).mul(&c).scale(&r(5));
        let sq = f.squarefree();
        assert_eq!(sq, vec![(b, 1), (a, 2), (c, 3)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = UniPoly::from_ints(&[3, 0, -2, 1]);
        let pts: Vec<_> = (0..4)
            .map(|k| (r(k), f.eval(&Scalar::from_int(k)).as_rational().unwrap().clone()))
            .collect();
        assert_eq!(UniPoly::interpolate(&pts), f);
    }

    #[test]
    fn quadratic_roots() {
        let roots = UniPoly::from_ints(&[-2, 0, 1]).low_degree_roots().unwrap();
        assert_eq!(roots.len(), 2);
        for x in &roots {
            assert!(!x.is_rational());
            assert!(UniPoly::from_ints(&[-2, 0, 1]).eval(x).is_zero());
        }
        let rat = UniPoly::from_ints(&[6, -5, 1]).low_degree_roots().unwrap();
        assert_eq!(rat, vec![Scalar::from_int(3), Scalar::from_int(2)]);
        assert_eq!(UniPoly::from_ints(&[-6, 1, 1]).small_rational_roots(5), vec![r(2), r(-3)]);
    }

    #[test]
    fn spinor_families() {
        let n = 4;
        let e12 = IndexSet::from_indices(&[1, 2]).unwrap();
        let mut f = UniPolySpinor::constant(&Spinor::one(n));
        f.add_term(e12, UniPoly::from_ints(&[0, 1]));
        assert_eq!(poly_eval(&f, &Scalar::zero()), Spinor::one(n));
        assert!(poly_divide_t(&f).is_err());

        let q = Spinor::monomial(n, e12);
        let tq = UniPolySpinor::from_spinor_times(&q, 1);
        assert_eq!(poly_eval(&tq, &Scalar::one()), q);

        let mut g = UniPolySpinor::from_spinor_times(&Spinor::one(n), 1);
        g.add_term(e12, UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(poly_divide_t(&g).unwrap(), f);
        assert_eq!(f.to_string(), "(1)*1 + (t)*e[1,2]");
    }
}
