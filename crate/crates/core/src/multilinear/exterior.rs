//! Sparse exterior algebra over `E` (and its dual), the Clifford action of
//! `V = E ⊕ E^∨`, and the half-spin types built on it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Result, SpinorError};

use super::index_set::{IndexSet, MAX_LETTERS};
use super::scalar::Scalar;
use super::vector::Vector;

/// A sparse element of `⋀E` on `n` letters; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    n: usize,
    terms: BTreeMap<IndexSet, Scalar>,
}

impl ExteriorElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_LETTERS, "too many letters: {n}");
        ExteriorElement { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, set: IndexSet, c: Scalar) -> Self {
        let mut x = Self::zero(n);
        x.add_term(set, c);
        x
    }

    /// Sums repeated index sets; fails on letters outside `[n]`.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (IndexSet, Scalar)>) -> Result<Self> {
        let mut x = Self::zero(n);
        for (s, c) in terms {
            if !s.within(n) {
                return Err(SpinorError::IndexOutOfRange { index: s.max_letter(), n });
            }
            x.add_term(s, c);
        }
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: IndexSet) -> Scalar {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, s: IndexSet, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_signed(&mut self, s: IndexSet, c: &Scalar, negate: bool) {
        self.add_term(s, if negate { -c } else { c.clone() });
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        ExteriorElement { n: self.n, terms: self.terms.iter().map(|(s, x)| (*s, x * c)).collect() }
    }

    /// True when all stored monomials have the given parity (vacuous for 0).
    pub fn has_parity(&self, even: bool) -> bool {
        self.terms.keys().all(|s| s.is_even() == even)
    }

    /// Coordinates against every subset of the given parity, in mask order.
    pub fn to_dense(&self, even: bool) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); 1 << (self.n.max(1) - 1)];
        for (s, c) in &self.terms {
            debug_assert_eq!(s.is_even(), even);
            out[s.parity_rank()] = c.clone();
        }
        out
    }

    pub fn from_dense(n: usize, even: bool, coords: &[Scalar]) -> Self {
        let mut x = Self::zero(n);
        for (k, c) in coords.iter().enumerate() {
            x.add_term(IndexSet::from_parity_rank(k, even), c.clone());
        }
        x
    }

    fn check_n(&self, other: usize) -> Result<()> {
        if self.n != other {
            return Err(SpinorError::DimensionMismatch { expected: self.n, found: other });
        }
        Ok(())
    }
}

impl Add for &ExteriorElement {
    type Output = ExteriorElement;
    fn add(self, o: &ExteriorElement) -> ExteriorElement {
        assert_eq!(self.n, o.n, "exterior elements over different n");
        let mut x = self.clone();
        for (s, c) in &o.terms {
            x.add_term(*s, c.clone());
        }
        x
    }
}

impl Sub for &ExteriorElement {
    type Output = ExteriorElement;
    fn sub(self, o: &ExteriorElement) -> ExteriorElement {
        self + &(-o)
    }
}

impl Neg for &ExteriorElement {
    type Output = ExteriorElement;
    fn neg(self) -> ExteriorElement {
        ExteriorElement { n: self.n, terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect() }
    }
}

fn fmt_terms(terms: &BTreeMap<IndexSet, Scalar>, basis: char, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (s, c)) in terms.iter().enumerate() {
        let mono = if s.is_empty() {
            "1".to_string()
        } else {
            let idx: Vec<String> = s.indices().iter().map(|i| i.to_string()).collect();
            format!("{basis}[{}]", idx.join(","))
        };
        let neg = matches!(c, Scalar::Rat(r) if r < &num_rational::BigRational::default());
        let sep = match (k, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let mag = if neg { -c } else { c.clone() };
        if mag.is_one() {
            write!(f, "{sep}{mono}")?;
        } else if mag.is_rational() {
            write!(f, "{sep}{mag}*{mono}")?;
        } else {
            write!(f, "{sep}({mag})*{mono}")?;
        }
    }
    Ok(())
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.terms, 'e', f)
    }
}

/// `x ∧ y`, with `e_I ∧ e_J = (-1)^{inv(I,J)} e_{I∪J}` and zero on overlaps.
pub fn wedge(x: &ExteriorElement, y: &ExteriorElement) -> Result<ExteriorElement> {
    x.check_n(y.n)?;
    let mut out = ExteriorElement::zero(x.n);
    for (i, a) in &x.terms {
        for (j, b) in &y.terms {
            if !i.intersects(*j) {
                out.add_signed(i.union(*j), &(a * b), i.wedge_sign(*j));
            }
        }
    }
    Ok(out)
}

/// `f_j ⌐ x`: removes letter `j` with sign `(-1)^{#{i ∈ I : i < j}}`.
pub fn contract(j: usize, x: &ExteriorElement) -> Result<ExteriorElement> {
    if j == 0 || j > x.n {
        return Err(SpinorError::IndexOutOfRange { index: j, n: x.n });
    }
    let mut out = ExteriorElement::zero(x.n);
    for (s, c) in &x.terms {
        if s.contains(j) {
            out.add_signed(s.without(j), c, s.count_below(j) % 2 == 1);
        }
    }
    Ok(out)
}

/// Shared kernel of the two actions: `wedge_coeffs[k] e_{k+1} ∧ x + contract_coeffs[k] f_{k+1} ⌐ x`.
fn act(wedge_coeffs: &[Scalar], contract_coeffs: &[Scalar], n: usize, terms: &BTreeMap<IndexSet, Scalar>) -> ExteriorElement {
    let mut out = ExteriorElement::zero(n);
    for (s, c) in terms {
        for k in 1..=n {
            let w = &wedge_coeffs[k - 1];
            let ct = &contract_coeffs[k - 1];
            let present = s.contains(k);
            let coef = if present { ct } else { w };
            if coef.is_zero() {
                continue;
            }
            let target = if present { s.without(k) } else { s.with(k) };
            out.add_signed(target, &(coef * c), s.count_below(k) % 2 == 1);
        }
    }
    out
}

/// Clifford action `v·x = (e-part of v) ∧ x + (f-part of v) ⌐ x`.
pub fn clifford_apply(v: &Vector, x: &ExteriorElement) -> Result<ExteriorElement> {
    x.check_n(v.n())?;
    Ok(act(&v.e, &v.f, x.n, &x.terms))
}

/// Action of `V` on `⋀E^∨` stored in the dual basis `f_I`: the f-part wedges
/// and the e-part contracts. Adjoint to [`clifford_apply`] under [`pairing`].
pub fn dual_apply(v: &Vector, x: &ExteriorElement) -> Result<ExteriorElement> {
    x.check_n(v.n())?;
    Ok(act(&v.f, &v.e, x.n, &x.terms))
}

/// `<f, a> = Σ_I f_I a_I`, the pairing of `⋀E^∨` (basis `f_I`) with `⋀E`.
pub fn pairing(f: &ExteriorElement, a: &ExteriorElement) -> Scalar {
    assert_eq!(f.n, a.n, "pairing over different n");
    let (small, large) = if f.len() <= a.len() { (f, a) } else { (a, f) };
    let mut acc = Scalar::zero();
    for (s, c) in &small.terms {
        if let Some(d) = large.terms.get(s) {
            acc += &(c * d);
        }
    }
    acc
}

/// An element of the half-spin space `⋀^ev E`, on `n` letters (`n` even).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spinor(ExteriorElement);

/// An element of `⋀^od E^∨` in the dual basis `f_I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoSpinor(ExteriorElement);

fn check_letters(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_LETTERS {
        return Err(SpinorError::OutOfRange(format!("spinors need an even number of letters in 2..={MAX_LETTERS}, got {n}")));
    }
    Ok(())
}

impl Spinor {
    pub fn zero(n: usize) -> Self {
        Spinor(ExteriorElement::zero(n))
    }

    /// `𝟙`, the empty monomial.
    pub fn one(n: usize) -> Self {
        Self::monomial(n, IndexSet::EMPTY)
    }

    /// `e_[m] = e_1 ∧ ... ∧ e_m` (`m` even).
    pub fn top(n: usize, m: usize) -> Self {
        Self::monomial(n, IndexSet::prefix(m))
    }

    /// A single even monomial with coefficient 1.
    pub fn monomial(n: usize, s: IndexSet) -> Self {
        assert!(s.is_even() && s.within(n), "invalid spinor monomial {s}");
        Spinor(ExteriorElement::monomial(n, s, Scalar::one()))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (IndexSet, Scalar)>) -> Result<Self> {
        check_letters(n)?;
        let x = ExteriorElement::from_terms(n, terms)?;
        Self::from_element(x)
    }

    pub fn from_element(x: ExteriorElement) -> Result<Self> {
        check_letters(x.n)?;
        if !x.has_parity(true) {
            return Err(SpinorError::WrongParity("spinor terms must have even cardinality"));
        }
        Ok(Spinor(x))
    }

    pub fn from_dense(n: usize, coords: &[Scalar]) -> Self {
        Spinor(ExteriorElement::from_dense(n, true, coords))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn element(&self) -> &ExteriorElement {
        &self.0
    }

    pub fn into_element(self) -> ExteriorElement {
        self.0
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Scalar)> {
        self.0.terms()
    }

    pub fn coeff(&self, s: IndexSet) -> Scalar {
        self.0.coeff(s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.0.terms.values().all(Scalar::is_rational)
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        self.0.to_dense(true)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Spinor(self.0.scale(c))
    }

    /// Scaled so the coefficient of the smallest index set is 1.
    pub fn normalized(&self) -> Self {
        match self.0.terms.values().next() {
            Some(lead) => self.scale(&lead.inv()),
            None => self.clone(),
        }
    }

    pub fn projectively_equal(&self, other: &Spinor) -> bool {
        self.n() == other.n() && self.normalized() == other.normalized()
    }

    /// `v·(w·x)`, which stays in `⋀^ev E`.
    pub fn act2(&self, v: &Vector, w: &Vector) -> Result<Spinor> {
        let y = clifford_apply(w, &self.0)?;
        Ok(Spinor(clifford_apply(v, &y)?))
    }
}

impl Add for &Spinor {
    type Output = Spinor;
    fn add(self, o: &Spinor) -> Spinor {
        Spinor(&self.0 + &o.0)
    }
}

impl Sub for &Spinor {
    type Output = Spinor;
    fn sub(self, o: &Spinor) -> Spinor {
        Spinor(&self.0 - &o.0)
    }
}

impl Neg for &Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        Spinor(-&self.0)
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl CoSpinor {
    pub fn zero(n: usize) -> Self {
        CoSpinor(ExteriorElement::zero(n))
    }

    /// A single odd dual monomial `f_I` with coefficient 1.
    pub fn monomial(n: usize, s: IndexSet) -> Self {
        assert!(!s.is_even() && s.within(n), "invalid cospinor monomial {s}");
        CoSpinor(ExteriorElement::monomial(n, s, Scalar::one()))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (IndexSet, Scalar)>) -> Result<Self> {
        check_letters(n)?;
        let x = ExteriorElement::from_terms(n, terms)?;
        if !x.has_parity(false) {
            return Err(SpinorError::WrongParity("cospinor terms must have odd cardinality"));
        }
        Ok(CoSpinor(x))
    }

    pub fn from_dense(n: usize, coords: &[Scalar]) -> Self {
        CoSpinor(ExteriorElement::from_dense(n, false, coords))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn element(&self) -> &ExteriorElement {
        &self.0
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        self.0.to_dense(false)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CoSpinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.0.terms, 'f', f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, idx: &[usize]) -> ExteriorElement {
        ExteriorElement::monomial(n, IndexSet::from_indices(idx).unwrap(), Scalar::one())
    }

    #[test]
    fn wedge_examples() {
        let n = 4;
        assert_eq!(wedge(&mono(n, &[2]), &mono(n, &[1])).unwrap(), -&mono(n, &[1, 2]));
        assert!(wedge(&mono(n, &[1]), &mono(n, &[1])).unwrap().is_zero());
        assert_eq!(wedge(&mono(n, &[1, 2]), &mono(n, &[3, 4])).unwrap(), mono(n, &[1, 2, 3, 4]));
        assert!(wedge(&mono(4, &[1]), &mono(6, &[2])).is_err());
    }

    #[test]
    fn contract_examples() {
        let n = 4;
        let e12 = mono(n, &[1, 2]);
        assert_eq!(contract(2, &e12).unwrap(), -&mono(n, &[1]));
        assert_eq!(contract(1, &e12).unwrap(), mono(n, &[2]));
        assert!(contract(3, &e12).unwrap().is_zero());
        assert!(contract(5, &e12).is_err());
    }

    #[test]
    fn clifford_examples() {
        let n = 4;
        let v = Vector::basis_e(n, 1).add(&Vector::basis_f(n, 1));
        assert_eq!(clifford_apply(&v, &mono(n, &[1, 2])).unwrap(), mono(n, &[2]));
        assert!(clifford_apply(&Vector::basis_f(n, 1), &mono(n, &[])).unwrap().is_zero());
        let x = &mono(n, &[2, 3]) + &mono(n, &[]);
        let twice = clifford_apply(&v, &clifford_apply(&v, &x).unwrap()).unwrap();
        assert_eq!(twice, x);
    }

    #[test]
    fn spinor_parity_enforced() {
        assert!(Spinor::from_element(mono(4, &[1])).is_err());
        assert!(Spinor::from_element(mono(4, &[1, 2])).is_ok());
        assert!(Spinor::from_terms(3, []).is_err());
        assert!(CoSpinor::from_terms(4, [(IndexSet::EMPTY, Scalar::one())]).is_err());
    }

    #[test]
    fn dense_roundtrip_and_display() {
        let s = Spinor::from_terms(
            4,
            [(IndexSet::EMPTY, Scalar::from_int(-1)), (IndexSet::from_indices(&[1, 2]).unwrap(), Scalar::from_frac(3, 2))],
        )
        .unwrap();
        assert_eq!(Spinor::from_dense(4, &s.to_dense()), s);
        assert_eq!(s.to_string(), "-1 + 3/2*e[1,2]");
        assert_eq!(s.normalized().coeff(IndexSet::EMPTY), Scalar::one());
    }
}
