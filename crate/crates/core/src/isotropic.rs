//! Pure spinors and maximal isotropic subspaces: ψ-kernels, the Pfaffian
//! chart around `𝟙`, Hamming distance and the component of the orthogonal
//! Grassmannian.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SpinorError};
use crate::multilinear::exterior::clifford_apply;
use crate::multilinear::linalg::{analyze, intersect_row_spaces, rank_of_rows, rref, Matrix};
use crate::multilinear::pfaffian::sub_pfaffians;
use crate::multilinear::{ExteriorElement, IndexSet, Scalar, Spinor, Vector};

/// Largest `n` for which [`pure_from_subspace`] solves the full linear system;
/// above it the spinor is built by Witt standardization and then checked.
const DIRECT_SOLVE_MAX_N: usize = 8;

/// A totally isotropic subspace of `V`, stored in reduced row echelon form
/// over the coordinates `(e_1..e_n, f_1..f_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicSubspace {
    n: usize,
    rows: Vec<Vector>,
}

/// Component of the maximal orthogonal Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OGComponent {
    Plus,
    Minus,
}

impl fmt::Display for OGComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OGComponent::Plus => "+",
            OGComponent::Minus => "-",
        })
    }
}

impl IsotropicSubspace {
    /// Validates independence and total isotropy, then canonicalizes.
    pub fn new(n: usize, rows: Vec<Vector>) -> Result<Self> {
        for v in &rows {
            if v.n() != n {
                return Err(SpinorError::DimensionMismatch { expected: n, found: v.n() });
            }
        }
        for (i, v) in rows.iter().enumerate() {
            if !v.q().is_zero() || rows[..i].iter().any(|w| !v.polar(w).is_zero()) {
                return Err(SpinorError::NotIsotropic);
            }
        }
        let coords: Vec<Vec<Scalar>> = rows.iter().map(Vector::coords).collect();
        if rank_of_rows(&coords, 2 * n) != rows.len() {
            return Err(SpinorError::DependentRows);
        }
        Ok(Self::canonical(n, coords))
    }

    /// Span of arbitrary spanning rows already known to be isotropic.
    pub(crate) fn span_of(n: usize, coords: Vec<Vec<Scalar>>) -> Self {
        Self::canonical(n, coords)
    }

    fn canonical(n: usize, coords: Vec<Vec<Scalar>>) -> Self {
        let reduced = rref(&Matrix::with_cols(coords, 2 * n));
        let rows = reduced.into_rows().into_iter().map(|r| Vector::from_coords(r).unwrap()).collect();
        IsotropicSubspace { n, rows }
    }

    /// `span(e_1, ..., e_k)`.
    pub fn e_span(n: usize, k: usize) -> Self {
        IsotropicSubspace { n, rows: (1..=k).map(|i| Vector::basis_e(n, i)).collect() }
    }

    /// `E^∨ = span(f_1, ..., f_n)`.
    pub fn dual(n: usize) -> Self {
        IsotropicSubspace { n, rows: (1..=n).map(|i| Vector::basis_f(n, i)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn coords(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(Vector::coords).collect()
    }

    pub fn is_maximal(&self) -> bool {
        self.dim() == self.n
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let mut coords = self.coords();
        coords.push(v.coords());
        rank_of_rows(&coords, 2 * self.n) == self.dim()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let rows = intersect_row_spaces(&self.coords(), &other.coords(), 2 * self.n);
        Self::canonical(self.n, rows)
    }
}

impl fmt::Display for IsotropicSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|v| v.to_string()).collect();
        write!(f, "span({})", rows.join(", "))
    }
}

fn nonzero(a: &Spinor) -> Result<()> {
    if a.is_zero() {
        return Err(SpinorError::ZeroSpinor);
    }
    Ok(())
}

/// The images `v·a` of the hyperbolic basis, as sparse odd elements.
pub(crate) fn basis_images(a: &Spinor) -> Vec<ExteriorElement> {
    Vector::hyperbolic_basis(a.n())
        .iter()
        .map(|v| clifford_apply(v, a.element()).expect("matching n"))
        .collect()
}

/// Matrix of `ψ_a : V -> ⋀^od E`, one row per odd monomial that occurs,
/// one column per hyperbolic basis vector.
pub(crate) fn psi_rows(a: &Spinor) -> Vec<Vec<Scalar>> {
    let images = basis_images(a);
    let mut support: Vec<IndexSet> = images.iter().flat_map(|x| x.terms().map(|(s, _)| *s)).collect();
    support.sort_unstable();
    support.dedup();
    support
        .iter()
        .map(|s| images.iter().map(|x| x.coeff(*s)).collect())
        .collect()
}

/// `H_a = ker ψ_a`.
pub fn psi_kernel(a: &Spinor) -> Result<IsotropicSubspace> {
    nonzero(a)?;
    let n = a.n();
    let kernel = analyze(&psi_rows(a), 2 * n).kernel;
    Ok(IsotropicSubspace::span_of(n, kernel))
}

/// `2n - dim H_a`.
pub fn psi_rank(a: &Spinor) -> Result<usize> {
    nonzero(a)?;
    Ok(analyze(&psi_rows(a), 2 * a.n()).rank)
}

pub fn is_pure(a: &Spinor) -> Result<bool> {
    Ok(psi_rank(a)? == a.n())
}

fn require_pure(a: &Spinor) -> Result<IsotropicSubspace> {
    let h = psi_kernel(a)?;
    if !h.is_maximal() {
        return Err(SpinorError::NotPure);
    }
    Ok(h)
}

/// `+` iff `dim(H ∩ E) ≡ n (mod 2)`.
pub fn og_component(h: &IsotropicSubspace) -> Result<OGComponent> {
    if !h.is_maximal() {
        return Err(SpinorError::NotMaximal { dim: h.dim(), n: h.n });
    }
    // dim(H ∩ E) = n - rank of the f-block
    let fblock: Vec<Vec<Scalar>> = h.rows.iter().map(|v| v.f.clone()).collect();
    let r = rank_of_rows(&fblock, h.n);
    Ok(if r.is_multiple_of(2) { OGComponent::Plus } else { OGComponent::Minus })
}

/// The pure spinor annihilated by every vector of the maximal subspace `h`,
/// normalized so its smallest-index coefficient is 1.
pub fn pure_from_subspace(h: &IsotropicSubspace) -> Result<Spinor> {
    if og_component(h)? == OGComponent::Minus {
        return Err(SpinorError::WrongComponent);
    }
    let n = h.n;
    let x = if n <= DIRECT_SOLVE_MAX_N {
        solve_annihilated(h)?
    } else {
        let g = crate::orbit::witt_standardize(h)?;
        crate::orbit::group_apply_inverse(&g, &Spinor::top(n, n))?
    };
    for v in &h.rows {
        if !clifford_apply(v, x.element())?.is_zero() {
            return Err(SpinorError::Internal("pure spinor does not annihilate its subspace".into()));
        }
    }
    Ok(x.normalized())
}

/// Solves `v·x = 0` for all rows `v` of `h` over `x ∈ ⋀^ev E`.
fn solve_annihilated(h: &IsotropicSubspace) -> Result<Spinor> {
    let n = h.n;
    let dim = 1usize << (n - 1);
    // column k holds the images v·e_I of the k-th even monomial under every row
    let columns: Vec<Vec<ExteriorElement>> = (0..dim)
        .map(|k| {
            let mono = ExteriorElement::monomial(n, IndexSet::from_parity_rank(k, true), Scalar::one());
            h.rows.iter().map(|v| clifford_apply(v, &mono).expect("matching n")).collect()
        })
        .collect();
    let mut equations = Vec::new();
    for (r, _) in h.rows.iter().enumerate() {
        let mut support: Vec<IndexSet> = columns.iter().flat_map(|c| c[r].terms().map(|(s, _)| *s)).collect();
        support.sort_unstable();
        support.dedup();
        for s in support {
            equations.push(columns.iter().map(|c| c[r].coeff(s)).collect::<Vec<_>>());
        }
    }
    let kernel = analyze(&equations, dim).kernel;
    if kernel.len() != 1 {
        return Err(SpinorError::Internal(format!("annihilated spinors form a space of dimension {}", kernel.len())));
    }
    Ok(Spinor::from_dense(n, &kernel[0]))
}

/// `Σ_I Pf(A_I) e_I` over even subsets `I` of `[n]`, for skew `n × n` `A`.
pub fn pfaffian_chart(a: &Matrix) -> Result<Spinor> {
    let n = a.nrows();
    let table = sub_pfaffians(a)?;
    let terms = table
        .into_iter()
        .enumerate()
        .filter(|(m, c)| (*m as u32).count_ones().is_multiple_of(2) && !c.is_zero())
        .map(|(m, c)| (IndexSet::from_mask(m as u32), c));
    Spinor::from_terms(n, terms)
}

/// Inverse of [`pfaffian_chart`]: `A_ij` is the coefficient of `e_i ∧ e_j`
/// after scaling the coefficient of `𝟙` to 1.
pub fn chart_coordinates(a: &Spinor) -> Result<Matrix> {
    require_pure(a)?;
    let c0 = a.coeff(IndexSet::EMPTY);
    if c0.is_zero() {
        return Err(SpinorError::OutOfRange("spinor lies outside the chart at 𝟙".into()));
    }
    let n = a.n();
    let inv = c0.inv();
    let mut m = Matrix::zeros(n, n);
    for i in 1..=n {
        for j in i + 1..=n {
            let c = &a.coeff(IndexSet::from_indices(&[i, j]).unwrap()) * &inv;
            m.set(j - 1, i - 1, -&c);
            m.set(i - 1, j - 1, c);
        }
    }
    Ok(m)
}

/// `(n - dim(H_a ∩ H_b)) / 2` for pure `a`, `b`.
pub fn hamming_distance(a: &Spinor, b: &Spinor) -> Result<usize> {
    if a.n() != b.n() {
        return Err(SpinorError::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    let ha = require_pure(a)?;
    let hb = require_pure(b)?;
    Ok(distance_of_subspaces(&ha, &hb))
}

pub(crate) fn distance_of_subspaces(ha: &IsotropicSubspace, hb: &IsotropicSubspace) -> usize {
    (ha.n - ha.intersection(hb).dim()) / 2
}

/// Whether the line through the pure points `a`, `b` lies on the variety,
/// i.e. their distance is 1; cross-checked on three random points of the line.
pub fn line_in_variety(a: &Spinor, b: &Spinor) -> Result<bool> {
    let d = hamming_distance(a, b)?;
    if d == 0 {
        return Err(SpinorError::EqualInputs);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_11e5);
    for _ in 0..3 {
        let t = random_nonzero_rational(&mut rng);
        let p = &a.scale(&Scalar::one()) + &b.scale(&t);
        let pure = !p.is_zero() && is_pure(&p)?;
        if pure != (d == 1) {
            return Err(SpinorError::Internal(format!("distance {d} contradicts purity of a + t b at t = {t}")));
        }
    }
    Ok(d == 1)
}

pub(crate) fn random_nonzero_rational(rng: &mut impl Rng) -> Scalar {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=5);
        if p != 0 {
            return Scalar::from_frac(p, q);
        }
    }
}

/// Random skew matrix with entries in `-range..=range`.
pub fn random_skew(rng: &mut impl Rng, n: usize, range: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = Scalar::from_int(rng.gen_range(-range..=range));
            m.set(j, i, -&v);
            m.set(i, j, v);
        }
    }
    m
}

/// Random skew matrix of exact rank `2l`: `Σ_{k≤l} (x_k y_k^T - y_k x_k^T)`
/// with random integer vectors, resampled until the rank is right.
pub fn random_skew_of_rank(rng: &mut impl Rng, n: usize, l: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(n, n);
        for _ in 0..l {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let y: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            for i in 0..n {
                for j in 0..n {
                    let v = x[i] * y[j] - y[i] * x[j];
                    if v != 0 {
                        let cur = m.get(i, j).clone();
                        m.set(i, j, &cur + &Scalar::from_int(v));
                    }
                }
            }
        }
        if rank_of_rows(m.rows(), n) == 2 * l {
            return m;
        }
    }
}
