use crate::error::{Result, SpinorError};

use super::linalg::Matrix;
use super::scalar::Scalar;

fn check_skew(a: &Matrix) -> Result<()> {
    if a.nrows() != a.ncols() || !a.is_skew() {
        return Err(SpinorError::NotSkew);
    }
    Ok(())
}

/// Pfaffian by expansion along the first row,
/// `Pf(A) = Σ_{j≥2} (-1)^j a_{1j} Pf(A with rows/cols 1, j removed)`,
/// memoized over index subsets.
pub fn pfaffian(a: &Matrix) -> Result<Scalar> {
    check_skew(a)?;
    let m = a.nrows();
    if !m.is_multiple_of(2) {
        return Err(SpinorError::OddSize(m));
    }
    let mut memo = std::collections::HashMap::new();
    Ok(pf_subset(a, ((1u64 << m) - 1) as u32, &mut memo))
}

fn pf_subset(a: &Matrix, set: u32, memo: &mut std::collections::HashMap<u32, Scalar>) -> Scalar {
    if set == 0 {
        return Scalar::one();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let i = set.trailing_zeros() as usize;
    let rest = set & (set - 1);
    let mut acc = Scalar::zero();
    let mut bits = rest;
    let mut k = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let aij = a.get(i, j);
        if !aij.is_zero() {
            let sub = pf_subset(a, rest & !(1 << j), memo);
            if !sub.is_zero() {
                let term = aij * &sub;
                if k % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
        }
        k += 1;
    }
    memo.insert(set, acc.clone());
    acc
}

/// `Pf(A_I)` for every subset `I` of the rows, indexed by bitmask; odd
/// subsets hold zero. Needs `m <= 24`.
pub fn sub_pfaffians(a: &Matrix) -> Result<Vec<Scalar>> {
    check_skew(a)?;
    let m = a.nrows();
    if m > 24 {
        return Err(SpinorError::OutOfRange(format!("sub-Pfaffian table for size {m}")));
    }
    let mut table = vec![Scalar::zero(); 1 << m];
    table[0] = Scalar::one();
    for set in 1u32..(1u32 << m) {
        if set.count_ones() % 2 == 1 {
            continue;
        }
        let i = set.trailing_zeros() as usize;
        let rest = set & (set - 1);
        let mut acc = Scalar::zero();
        let mut bits = rest;
        let mut k = 0;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let aij = a.get(i, j);
            let sub = &table[(rest & !(1 << j)) as usize];
            if !aij.is_zero() && !sub.is_zero() {
                let term = aij * sub;
                if k % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            k += 1;
        }
        table[set as usize] = acc;
    }
    Ok(table)
}

/// Skew matrix from its strict upper triangle, row by row.
pub fn skew_from_upper(m: usize, upper: &[Scalar]) -> Matrix {
    assert_eq!(upper.len(), m * (m.saturating_sub(1)) / 2);
    let mut a = Matrix::zeros(m, m);
    let mut it = upper.iter();
    for i in 0..m {
        for j in i + 1..m {
            let v = it.next().unwrap().clone();
            a.set(j, i, -&v);
            a.set(i, j, v);
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn small_cases() {
        assert_eq!(pfaffian(&Matrix::zeros(0, 0)).unwrap(), Scalar::one());
        let a = skew_from_upper(2, &[s(7)]);
        assert_eq!(pfaffian(&a).unwrap(), s(7));
        assert!(matches!(pfaffian(&Matrix::zeros(3, 3)), Err(SpinorError::OddSize(3))));
        assert!(matches!(pfaffian(&Matrix::from_ints(&[&[0, 1], &[1, 0]])), Err(SpinorError::NotSkew)));
    }

    #[test]
    fn four_by_four_formula() {
        // a12 a34 - a13 a24 + a14 a23
        let (a12, a13, a14, a23, a24, a34) = (2, 3, 5, 7, 11, 13);
        let a = skew_from_upper(4, &[s(a12), s(a13), s(a14), s(a23), s(a24), s(a34)]);
        assert_eq!(pfaffian(&a).unwrap(), s(a12 * a34 - a13 * a24 + a14 * a23));
        let table = sub_pfaffians(&a).unwrap();
        assert_eq!(table[0b1111], pfaffian(&a).unwrap());
        assert_eq!(table[0b0101], s(a13));
        assert_eq!(table[0b1010], s(a24));
    }
}
