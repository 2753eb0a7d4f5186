//! Multi-modular elimination with exact certification.
//!
//! Residues only ever propose candidates. A kernel is accepted after every
//! reconstructed vector annihilates every original integer row, and its
//! dimension is bounded above by the kernel dimension modulo the first prime.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PRIME_COUNT: usize = 6000;

/// Primes just below 2^31, descending, so products of residues fit in u64.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut c: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

#[inline]
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).to_u64().unwrap_or(0);
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Row `x -= c * b` modulo `p`, skipping positions where `b` vanishes.
#[inline]
fn axpy(x: &mut [u64], c: u64, b: &[u64], p: u64) {
    let neg = p - c;
    for (xi, &bi) in x.iter_mut().zip(b) {
        if bi != 0 {
            *xi = (*xi + neg * bi) % p;
        }
    }
}

/// Greedy selection of rows independent modulo `p`, in input order.
pub(crate) fn independent_rows_mod(rows: &[Vec<BigInt>], cols: usize, p: u64) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        if basis.len() == cols {
            break;
        }
        let mut x: Vec<u64> = row.iter().map(|v| reduce(v, p)).collect();
        for (c, b) in &basis {
            let f = x[*c];
            if f != 0 {
                axpy(&mut x, f, b, p);
            }
        }
        if let Some(c) = x.iter().position(|&v| v != 0) {
            let inv = inv_mod(x[c], p);
            for v in x.iter_mut() {
                *v = v.wrapping_mul(inv) % p;
            }
            basis.push((c, x));
            chosen.push(idx);
        }
    }
    chosen
}

/// Reduced row echelon form modulo `p`; returns pivot columns and the pivot rows.
pub(crate) fn rref_mod(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(k) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, k);
        let inv = inv_mod(a[r][c], p);
        for v in a[r].iter_mut() {
            *v = v.wrapping_mul(inv) % p;
        }
        let piv = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                axpy(row, f, &piv, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (pivots, a)
}

/// Incremental Chinese remaindering of a residue table.
struct Crt {
    values: Vec<BigInt>,
    modulus: BigInt,
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt { values: vec![BigInt::zero(); len], modulus: BigInt::one() }
    }

    fn push(&mut self, residues: &[u64], p: u64) {
        let m_mod = reduce(&self.modulus, p);
        let m_inv = inv_mod(m_mod, p);
        let pb = BigInt::from(p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let xr = reduce(x, p);
            let t = mul_mod((r + p - xr) % p, m_inv, p);
            if t != 0 {
                *x += &self.modulus * t;
            }
        }
        self.modulus *= pb;
    }
}

/// Rational `a/b` with `a ≡ b x (mod m)` and `|a|, b <= sqrt(m/2)`, if one exists.
fn rational_reconstruct(x: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

pub(crate) struct CertifiedKernel {
    pub independent: Vec<usize>,
    pub kernel: Vec<Vec<BigRational>>,
}

/// Exact right kernel of an integer matrix via residues, or `None` if the
/// prime budget runs out before certification.
pub(crate) fn certified_kernel(rows: &[Vec<BigInt>], cols: usize) -> Option<CertifiedKernel> {
    let ps = primes();
    let independent = independent_rows_mod(rows, cols, ps[0]);
    let r = independent.len();
    if r == cols {
        return Some(CertifiedKernel { independent, kernel: Vec::new() });
    }
    let sub: Vec<&Vec<BigInt>> = independent.iter().map(|&i| &rows[i]).collect();
    let reduce_sub = |p: u64| -> Vec<Vec<u64>> {
        sub.iter().map(|row| row.iter().map(|v| reduce(v, p)).collect()).collect()
    };

    let (pivots, _) = rref_mod(reduce_sub(ps[0]), cols, ps[0]);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();
    let mut crt = Crt::new(r * k);
    let mut used = 0usize;
    let mut next_attempt = 1usize;
    let mut candidate: Option<Vec<BigRational>> = None;

    for &p in ps {
        let (piv, ech) = rref_mod(reduce_sub(p), cols, p);
        if piv != pivots {
            continue;
        }
        let residues: Vec<u64> = (0..r)
            .flat_map(|i| free.iter().map(move |&j| (i, j)))
            .map(|(i, j)| (p - ech[i][j]) % p)
            .collect();

        if let Some(cand) = &candidate {
            let agrees = cand.iter().zip(&residues).all(|(v, &res)| {
                let d = reduce(v.denom(), p);
                d != 0 && mul_mod(reduce(v.numer(), p), inv_mod(d, p), p) == res
            });
            if agrees {
                let kernel = assemble(cand, &pivots, &free, cols);
                if verify(rows, &kernel) {
                    return Some(CertifiedKernel { independent, kernel });
                }
            }
            candidate = None;
        }

        crt.push(&residues, p);
        used += 1;
        if used == next_attempt {
            next_attempt = (next_attempt * 3).div_ceil(2) + 1;
            let bound = (&crt.modulus / BigInt::from(2)).sqrt();
            candidate = crt
                .values
                .iter()
                .map(|x| rational_reconstruct(x, &crt.modulus, &bound))
                .collect::<Option<Vec<_>>>();
        }
    }
    None
}

fn assemble(entries: &[BigRational], pivots: &[usize], free: &[usize], cols: usize) -> Vec<Vec<BigRational>> {
    let k = free.len();
    free.iter()
        .enumerate()
        .map(|(fi, &j)| {
            let mut v = vec![BigRational::zero(); cols];
            v[j] = BigRational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = entries[i * k + fi].clone();
            }
            v
        })
        .collect()
}

fn verify(rows: &[Vec<BigInt>], kernel: &[Vec<BigRational>]) -> bool {
    kernel.iter().all(|v| {
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<(usize, BigInt)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.numer() * (&lcm / x.denom())))
            .collect();
        rows.iter().all(|row| {
            let mut acc = BigInt::zero();
            for (j, x) in &ints {
                if !row[*j].is_zero() {
                    acc += &row[*j] * x;
                }
            }
            acc.is_zero()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_descending() {
        let ps = primes();
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime(2147483647 - 2 * 3));
    }

    #[test]
    fn reconstructs_fractions() {
        let x = BigRational::new(BigInt::from(-22), BigInt::from(7));
        let mut crt = Crt::new(1);
        for p in [2147483647u64, 2147483629] {
            let num = reduce(x.numer(), p);
            let den = reduce(x.denom(), p);
            crt.push(&[mul_mod(num, inv_mod(den, p), p)], p);
        }
        let bound = (&crt.modulus / BigInt::from(2)).sqrt();
        assert_eq!(rational_reconstruct(&crt.values[0], &crt.modulus, &bound), Some(x));
    }

    #[test]
    fn kernel_of_small_integer_matrix() {
        let rows: Vec<Vec<BigInt>> = vec![
            vec![1.into(), 2.into(), 3.into()],
            vec![2.into(), 4.into(), 6.into()],
            vec![1.into(), 0.into(), 1.into()],
        ];
        let ck = certified_kernel(&rows, 3).unwrap();
        assert_eq!(ck.independent, vec![0, 2]);
        assert_eq!(ck.kernel.len(), 1);
        let v = &ck.kernel[0];
        assert_eq!(v[2], BigRational::one());
        assert_eq!(v[0], BigRational::from_integer((-1).into()));
        assert_eq!(v[1], BigRational::from_integer((-1).into()));
    }
}
