//! Exact linear algebra: fraction-free elimination, ranks, kernels, determinants.
//!
//! Small systems and systems over Q(sqrt d) go through Bareiss elimination.
//! Larger rational systems are solved modulo primes and certified exactly
//! (see [`super::modular`]); both routes return the same canonical kernel.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::modular;
use super::scalar::Scalar;

/// Systems whose smaller side is at most this go straight to Bareiss.
const BAREISS_LIMIT: usize = 32;

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Scalar>>,
    cols: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows: vec![vec![Scalar::zero(); cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Scalar::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { rows, cols }
    }

    /// Like `from_rows` but keeps the column count for an empty row list.
    pub fn with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { rows, cols }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        Matrix { rows: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect(), cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.nrows(), |i, j| self.rows[j][i].clone())
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows());
        Matrix::from_fn(self.nrows(), other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                if !self.rows[i][k].is_zero() && !other.rows[k][j].is_zero() {
                    acc += &(&self.rows[i][k] * &other.rows[k][j]);
                }
            }
            acc
        })
    }

    pub fn is_skew(&self) -> bool {
        self.nrows() == self.cols
            && (0..self.cols).all(|i| {
                self.rows[i][i].is_zero() && (0..i).all(|j| self.rows[i][j] == -&self.rows[j][i])
            })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Coefficient ring for fraction-free elimination.
trait Domain: Clone {
    fn d_one() -> Self;
    fn d_is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Self;
}

impl Domain for BigInt {
    fn d_one() -> Self {
        One::one()
    }
    fn d_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl Domain for Scalar {
    fn d_one() -> Self {
        Scalar::one()
    }
    fn d_is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

/// Result of fraction-free Gauss-Jordan elimination. Every pivot entry equals
/// `denom`; rows beyond `pivots.len()` are zero and dropped.
struct Echelon<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    /// Original row index of each pivot row.
    origin: Vec<usize>,
    denom: T,
    odd_swaps: bool,
}

/// Bareiss Gauss-Jordan: each step replaces every other row by
/// `(p_k * row_i - a_ic * row_k) / p_{k-1}`; pivots are the first nonzero
/// entry found scanning columns left to right, rows top to bottom.
fn bareiss<T: Domain>(mut a: Vec<Vec<T>>, cols: usize) -> Echelon<T> {
    let mut origin: Vec<usize> = (0..a.len()).collect();
    let mut prev = T::d_one();
    let mut pivots = Vec::new();
    let mut odd_swaps = false;
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(k) = (r..a.len()).find(|&i| !a[i][c].d_is_zero()) else {
            continue;
        };
        if k != r {
            a.swap(r, k);
            origin.swap(r, k);
            odd_swaps = !odd_swaps;
        }
        let piv_row = a[r].clone();
        let piv = piv_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c].clone();
            for j in 0..cols {
                let x = &row[j];
                let y = &piv_row[j];
                if x.d_is_zero() && (y.d_is_zero() || factor.d_is_zero()) {
                    continue;
                }
                let mut v = piv.mul(x);
                if !factor.d_is_zero() && !y.d_is_zero() {
                    v = v.sub(&factor.mul(y));
                }
                row[j] = v.div_exact(&prev);
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    origin.truncate(r);
    Echelon { rows: a, pivots, origin, denom: prev, odd_swaps }
}

fn integer_rows(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = lcm.lcm(x.as_rational()?.denom());
            }
            Some(
                row.iter()
                    .map(|x| {
                        let r = x.as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Rank, a set of original rows forming a basis of the row space, and the
/// canonical right-kernel basis (one vector per free column, that coordinate 1).
#[derive(Clone, Debug)]
pub struct Analysis {
    pub rank: usize,
    pub basis_rows: Vec<usize>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Full exact analysis of the row list `rows` with `cols` columns.
pub fn analyze(rows: &[Vec<Scalar>], cols: usize) -> Analysis {
    assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
    if let Some(ints) = integer_rows(rows) {
        if rows.len().min(cols) > BAREISS_LIMIT {
            if let Some(ck) = modular::certified_kernel(&ints, cols) {
                return Analysis {
                    rank: ck.independent.len(),
                    basis_rows: ck.independent,
                    kernel: ck.kernel.into_iter().map(|v| v.into_iter().map(Scalar::Rat).collect()).collect(),
                };
            }
        }
        let ech = bareiss(ints, cols);
        let kernel = free_columns(&ech.pivots, cols)
            .map(|j| {
                let mut v = vec![BigRational::zero(); cols];
                v[j] = BigRational::one();
                for (i, &c) in ech.pivots.iter().enumerate() {
                    v[c] = BigRational::new(-ech.rows[i][j].clone(), ech.denom.clone());
                }
                v.into_iter().map(Scalar::Rat).collect()
            })
            .collect();
        return finish(ech.pivots.len(), ech.origin, kernel);
    }
    let ech = bareiss(rows.to_vec(), cols);
    let kernel = free_columns(&ech.pivots, cols)
        .map(|j| {
            let mut v = vec![Scalar::zero(); cols];
            v[j] = Scalar::one();
            for (i, &c) in ech.pivots.iter().enumerate() {
                v[c] = -(&ech.rows[i][j] / &ech.denom);
            }
            v
        })
        .collect();
    finish(ech.pivots.len(), ech.origin, kernel)
}

fn finish(rank: usize, mut basis_rows: Vec<usize>, kernel: Vec<Vec<Scalar>>) -> Analysis {
    basis_rows.sort_unstable();
    Analysis { rank, basis_rows, kernel }
}

fn free_columns(pivots: &[usize], cols: usize) -> impl Iterator<Item = usize> + '_ {
    (0..cols).filter(move |c| !pivots.contains(c))
}

pub fn exact_rank(m: &Matrix) -> usize {
    rank_of_rows(m.rows(), m.ncols())
}

/// Rank, using whichever orientation has the smaller kernel to certify.
pub fn rank_of_rows(rows: &[Vec<Scalar>], cols: usize) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    if rows.len() < cols && rows.len() > BAREISS_LIMIT {
        let t = Matrix::with_cols(rows.to_vec(), cols).transpose();
        return analyze(t.rows(), t.ncols()).rank;
    }
    analyze(rows, cols).rank
}

/// Canonical basis of the null space `{x : M x = 0}`.
pub fn exact_kernel(m: &Matrix) -> Vec<Vec<Scalar>> {
    analyze(m.rows(), m.ncols()).kernel
}

/// Reduced row echelon form with unit pivots and zero rows removed.
pub fn rref(m: &Matrix) -> Matrix {
    let cols = m.ncols();
    let rows = match integer_rows(m.rows()) {
        Some(ints) => {
            let ech = bareiss(ints, cols);
            ech.rows
                .iter()
                .map(|r| r.iter().map(|x| Scalar::Rat(BigRational::new(x.clone(), ech.denom.clone()))).collect())
                .collect()
        }
        None => {
            let ech = bareiss(m.rows().to_vec(), cols);
            ech.rows.iter().map(|r| r.iter().map(|x| x / &ech.denom).collect()).collect()
        }
    };
    Matrix::with_cols(rows, cols)
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn determinant(m: &Matrix) -> Scalar {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.ncols();
    if n == 0 {
        return Scalar::one();
    }
    let (det, odd) = match integer_rows(m.rows()) {
        Some(ints) => {
            let scale = m.rows().iter().fold(BigRational::one(), |acc, row| {
                let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.as_rational().unwrap().denom()));
                acc * BigRational::from_integer(lcm)
            });
            let ech = bareiss(ints, n);
            if ech.pivots.len() < n {
                return Scalar::zero();
            }
            (Scalar::Rat(BigRational::from_integer(ech.denom) / scale), ech.odd_swaps)
        }
        None => {
            let ech = bareiss(m.rows().to_vec(), n);
            if ech.pivots.len() < n {
                return Scalar::zero();
            }
            (ech.denom, ech.odd_swaps)
        }
    };
    if odd {
        -det
    } else {
        det
    }
}

/// Multiplies a vector by the positive rational making it primitive integral
/// (rational input) or its first nonzero entry 1 (extension input).
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
    if v.iter().all(Scalar::is_rational) {
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for x in v {
            lcm = lcm.lcm(x.as_rational().unwrap().denom());
        }
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| {
                let r = x.as_rational().unwrap();
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        for x in &ints {
            gcd = gcd.gcd(x);
        }
        if gcd.is_zero() {
            return v.to_vec();
        }
        return ints.into_iter().map(|x| Scalar::from(x / &gcd)).collect();
    }
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

/// True when every entry is an integer.
pub fn is_integral(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.as_rational().is_some_and(|r| r.is_integer()))
}

/// Exact intersection of two row spaces (given by spanning rows of equal width).
pub fn intersect_row_spaces(a: &[Vec<Scalar>], b: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    // x in span(a) ∩ span(b)  <=>  x = sum s_i a_i = sum t_j b_j
    let na = a.len();
    let nb = b.len();
    if na == 0 || nb == 0 {
        return Vec::new();
    }
    let system: Vec<Vec<Scalar>> = (0..cols)
        .map(|c| {
            let mut row: Vec<Scalar> = a.iter().map(|r| r[c].clone()).collect();
            row.extend(b.iter().map(|r| -&r[c]));
            row
        })
        .collect();
    let kernel = analyze(&system, na + nb).kernel;
    let vectors: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|k| {
            let mut x = vec![Scalar::zero(); cols];
            for (s, r) in k[..na].iter().zip(a) {
                if !s.is_zero() {
                    for (xc, rc) in x.iter_mut().zip(r) {
                        if !rc.is_zero() {
                            *xc += &(s * rc);
                        }
                    }
                }
            }
            x
        })
        .collect();
    let an = analyze(&vectors, cols);
    an.basis_rows.into_iter().map(|i| vectors[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn identity_and_zero() {
        let id = Matrix::identity(3);
        assert_eq!(exact_rank(&id), 3);
        assert!(exact_kernel(&id).is_empty());
        let z = Matrix::zeros(2, 5);
        assert_eq!(exact_rank(&z), 0);
        assert_eq!(exact_kernel(&z).len(), 5);
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(exact_rank(&m), 1);
        let k = exact_kernel(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(primitive(&k[0]), ints(&[-2, 1]));
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&m), Scalar::from_int(18));
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&swap), Scalar::from_int(-1));
        let half = Matrix::from_rows(vec![vec![Scalar::from_frac(1, 2), Scalar::zero()], ints(&[0, 3])]);
        assert_eq!(determinant(&half), Scalar::from_frac(3, 2));
    }

    #[test]
    fn modular_and_bareiss_agree() {
        // 40 x 40 of rank 30, forcing the modular route.
        let n = 40;
        let m = Matrix::from_fn(n, n, |i, j| {
            let i = (i % 30) as i64;
            Scalar::from_int((i * 7 + (j as i64) * (j as i64 + i) * 3 + 1) % 11 - 5 + if (j as i64) == i { 13 } else { 0 })
        });
        let an = analyze(m.rows(), n);
        let ints: Vec<Vec<BigInt>> = integer_rows(m.rows()).unwrap();
        let ech = bareiss(ints, n);
        assert_eq!(an.rank, ech.pivots.len());
        for k in &an.kernel {
            assert!(m.mul_vec(k).iter().all(Scalar::is_zero));
        }
        assert_eq!(an.rank + an.kernel.len(), n);
    }

    #[test]
    fn rref_is_canonical() {
        let m = Matrix::from_ints(&[&[2, 4, 6], &[1, 1, 1]]);
        let r = rref(&m);
        assert_eq!(r.row(0), &ints(&[1, 0, -1])[..]);
        assert_eq!(r.row(1), &ints(&[0, 1, 2])[..]);
    }

    #[test]
    fn intersections() {
        let a = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])];
        let b = vec![ints(&[0, 1, 1]), ints(&[1, 1, 0])];
        let x = intersect_row_spaces(&a, &b, 3);
        assert_eq!(x.len(), 1);
        assert_eq!(primitive(&x[0]), ints(&[1, 1, 0]));
    }
}
