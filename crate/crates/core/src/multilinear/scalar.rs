//! Exact scalars: rationals and elements of a single quadratic extension Q(sqrt d).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of Q or of Q(sqrt d).
///
/// `Quad` values always have a nonzero irrational part; arithmetic that
/// cancels it collapses back to `Rat`. Combining two different extensions
/// panics, since the algebra never needs a compositum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Quad(QuadNumber),
}

/// `a + b*sqrt(d)` with `b != 0` and `d` not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar::Rat(BigRational::new(num.into(), den.into()))
    }

    /// Builds `a + b*sqrt(d)`, collapsing to a rational when `b = 0`.
    pub fn quad(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            Scalar::Quad(QuadNumber { a, b, d })
        }
    }

    /// The square root of a rational, exact in Q or in Q(sqrt d) with
    /// `d` stripped of small square factors.
    pub fn sqrt_of(r: &BigRational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = r.numer() * r.denom();
        let (s, d) = split_square(&pq);
        let coef = BigRational::new(s, r.denom().clone());
        if d.is_one() {
            Scalar::Rat(coef)
        } else {
            Scalar::quad(BigRational::zero(), coef, d)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Quad(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// Discriminant of the extension this scalar lives in, if irrational.
    pub fn discriminant(&self) -> Option<&BigInt> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(&q.d),
        }
    }

    /// Rational and irrational coordinates `(a, b)` of `a + b*sqrt(d)`.
    pub fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rat(r) => (r.clone(), BigRational::zero()),
            Scalar::Quad(q) => (q.a.clone(), q.b.clone()),
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Quad(q) => Scalar::Quad(QuadNumber { a: q.a.clone(), b: -q.b.clone(), d: q.d.clone() }),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Rat(r.recip())
            }
            Scalar::Quad(q) => {
                let d = BigRational::from_integer(q.d.clone());
                let norm = &q.a * &q.a - &q.b * &q.b * d;
                Scalar::quad(&q.a / &norm, -(&q.b / &norm), q.d.clone())
            }
        }
    }

    fn binop(
        &self,
        other: &Self,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        quad: impl Fn(&BigRational, &BigRational, &BigRational, &BigRational, &BigInt) -> (BigRational, BigRational),
    ) -> Self {
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(rat(x, y)),
            _ => {
                let d = common_discriminant(self, other);
                let (a1, b1) = self.parts();
                let (a2, b2) = other.parts();
                let (a, b) = quad(&a1, &b1, &a2, &b2, &d);
                Scalar::quad(a, b, d)
            }
        }
    }
}

fn common_discriminant(x: &Scalar, y: &Scalar) -> BigInt {
    match (x.discriminant(), y.discriminant()) {
        (Some(d1), Some(d2)) => {
            assert!(d1 == d2, "mixed quadratic extensions Q(sqrt {d1}) and Q(sqrt {d2})");
            d1.clone()
        }
        (Some(d), None) | (None, Some(d)) => d.clone(),
        (None, None) => unreachable!(),
    }
}

/// Writes `m = s^2 * d` with `s > 0`, removing squares of primes below 2^12
/// and any remaining perfect square. `d` keeps the sign of `m`.
pub(crate) fn split_square(m: &BigInt) -> (BigInt, BigInt) {
    let neg = m.is_negative();
    let mut rest = m.abs();
    let mut s = BigInt::one();
    let mut p = 2u32;
    while p < 4096 {
        let pp = BigInt::from(p * p);
        if pp > rest {
            break;
        }
        loop {
            let (quo, rem) = rest.div_rem(&pp);
            if rem.is_zero() {
                rest = quo;
                s *= p;
            } else {
                break;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
        rest = BigInt::one();
    }
    if neg {
        rest = -rest;
    }
    (s, rest)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Rat(v)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.binop(o, |x, y| x + y, |a1, b1, a2, b2, _| (a1 + a2, b1 + b2))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.binop(o, |x, y| x - y, |a1, b1, a2, b2, _| (a1 - a2, b1 - b2))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.binop(
            o,
            |x, y| x * y,
            |a1, b1, a2, b2, d| {
                let d = BigRational::from_integer(d.clone());
                (a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1)
            },
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(x), Scalar::Rat(y)) => {
                assert!(!y.is_zero(), "division by zero");
                Scalar::Rat(x / y)
            }
            _ => self * &o.inv(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Quad(q) => Scalar::Quad(QuadNumber { a: -q.a.clone(), b: -q.b.clone(), d: q.d.clone() }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if let (Scalar::Rat(x), Scalar::Rat(y)) = (&mut *self, o) {
            *x += y;
        } else {
            *self = &*self + o;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if let (Scalar::Rat(x), Scalar::Rat(y)) = (&mut *self, o) {
            *x -= y;
        } else {
            *self = &*self - o;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad(q) => {
                if q.a.is_zero() {
                    write!(f, "{}*sqrt({})", q.b, q.d)
                } else if q.b.is_negative() {
                    write!(f, "{}-{}*sqrt({})", q.a, -q.b.clone(), q.d)
                } else {
                    write!(f, "{}+{}*sqrt({})", q.a, q.b, q.d)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `p` or `p/q` with integer `p`, nonzero integer `q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Scalar::Rat(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: i64) -> Scalar {
        Scalar::quad(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()), d.into())
    }

    #[test]
    fn rational_arithmetic() {
        let x = Scalar::from_frac(1, 3);
        let y = Scalar::from_frac(1, 6);
        assert_eq!(&x + &y, Scalar::from_frac(1, 2));
        assert_eq!(&x / &y, Scalar::from_int(2));
        assert_eq!(Scalar::from_frac(2, -4), Scalar::from_frac(-1, 2));
    }

    #[test]
    fn quadratic_arithmetic_collapses() {
        let r2 = q(0, 1, 2);
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        let x = q(1, 1, 2);
        assert_eq!(&x * &x.inv(), Scalar::one());
        assert!((&x - &x).is_zero());
        assert_eq!(&x * &x.conjugate(), Scalar::from_int(-1));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixing_extensions_panics() {
        let _ = q(0, 1, 2) + q(0, 1, 3);
    }

    #[test]
    fn square_roots() {
        assert_eq!(Scalar::sqrt_of(&BigRational::new(9.into(), 4.into())), Scalar::from_frac(3, 2));
        let s = Scalar::sqrt_of(&BigRational::from_integer(12.into()));
        assert_eq!(s, q(0, 2, 3));
        assert_eq!(&s * &s, Scalar::from_int(12));
        let t = Scalar::sqrt_of(&BigRational::from_integer((-8).into()));
        assert_eq!(&t * &t, Scalar::from_int(-8));
    }

    #[test]
    fn parse_and_print() {
        let x: Scalar = "-6/4".parse().unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::from_int(7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert_eq!(q(1, -2, 5).to_string(), "1-2*sqrt(5)");
    }
}
