//! Polynomial degeneration families: `F(t)` lies in the larger orbit for
//! generic `t` and `F(0)` in the smaller one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinorError};
use crate::isotropic::{pfaffian_chart, random_nonzero_rational};
use crate::multilinear::linalg::Matrix;
use crate::multilinear::{poly_divide_t, poly_eval, Scalar, Spinor, UniPoly, UniPolySpinor, Vector};
use crate::orbit::{classify, tangent_representative, OrbitLabel};

use super::{Claim, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `Sigma(l)` degenerating to `Sigma(l-1)` (to `Pure` for `l = 2`).
    SigmaDown,
    /// `Theta(l)` degenerating to `Theta(l-1)`, read as `Sigma(2)` for `l = 3`.
    ThetaDown,
    /// `Sigma(l)` degenerating to `Theta(l)`.
    SigmaToTheta,
}

impl FamilyKind {
    /// `(big, small)` orbit labels at distance `l`.
    pub fn endpoints(self, l: usize) -> (OrbitLabel, OrbitLabel) {
        let sigma = |l: usize| if l <= 1 { OrbitLabel::Pure } else { OrbitLabel::Sigma(l) };
        let theta = |l: usize| if l == 2 { OrbitLabel::Sigma(2) } else { OrbitLabel::Theta(l) };
        match self {
            FamilyKind::SigmaDown => (sigma(l), sigma(l - 1)),
            FamilyKind::ThetaDown => (theta(l), theta(l - 1)),
            FamilyKind::SigmaToTheta => (sigma(l), theta(l)),
        }
    }
}

/// Generators of the maximal isotropic subspace annihilating
/// `e_[k+2] + t·e_[k]`, `k = n - 2l`:
/// `e_1..e_k`, `e_{k+1} + t f_{k+2}`, `e_{k+2} - t f_{k+1}`, `f_{k+3}..f_n`.
pub fn sigma_down_subspace(n: usize, l: usize, t: &Scalar) -> Vec<Vector> {
    let k = n - 2 * l;
    let mut rows: Vec<Vector> = (1..=k).map(|i| Vector::basis_e(n, i)).collect();
    rows.push(Vector::basis_e(n, k + 1).add(&Vector::basis_f(n, k + 2).scale(t)));
    rows.push(Vector::basis_e(n, k + 2).sub(&Vector::basis_f(n, k + 1).scale(t)));
    rows.extend((k + 3..=n).map(|i| Vector::basis_f(n, i)));
    rows
}

/// The block-diagonal skew matrix with `l` unit 2×2 blocks.
fn unit_blocks(n: usize, l: usize) -> Matrix {
    let mut c = Matrix::zeros(n, n);
    for i in 0..l {
        c.set(2 * i, 2 * i + 1, Scalar::one());
        c.set(2 * i + 1, 2 * i, Scalar::from_int(-1));
    }
    c
}

pub fn degeneration_family(kind: FamilyKind, n: usize, l: usize) -> Result<UniPolySpinor> {
    let lo = if kind == FamilyKind::SigmaToTheta { 3 } else { 2 };
    if !n.is_multiple_of(2) || l < lo || 2 * l > n {
        return Err(SpinorError::OutOfRange(format!("no {kind:?} family for n = {n}, l = {l}")));
    }
    Ok(match kind {
        FamilyKind::SigmaDown => {
            let fixed = &Spinor::top(n, n) + &Spinor::top(n, n - 2 * l + 2);
            UniPolySpinor::constant(&fixed).add(&UniPolySpinor::from_spinor_times(&Spinor::top(n, n - 2 * l), 1))
        }
        FamilyKind::ThetaDown => {
            let last = &tangent_representative(n, l) - &tangent_representative(n, l - 1);
            UniPolySpinor::constant(&tangent_representative(n, l - 1)).add(&UniPolySpinor::from_spinor_times(&last, 1))
        }
        FamilyKind::SigmaToTheta => {
            // Pf(t·C_I) = t^{|I|/2} Pf(C_I), so the chart of t·C is read off the chart of C
            let chart = pfaffian_chart(&unit_blocks(n, l))?;
            let mut f = UniPolySpinor::zero(n);
            for (s, c) in chart.terms() {
                let c = c.as_rational().expect("integer chart").clone();
                f.add_term(*s, UniPoly::monomial(c, s.len() / 2));
            }
            f.add_term(crate::IndexSet::EMPTY, UniPoly::from_ints(&[-1]));
            poly_divide_t(&f)?
        }
    })
}

/// `classify(F(t)) = big` at `t_samples` random nonzero rationals and
/// `classify(F(0)) = small`.
pub fn verify_inclusion(
    family: &UniPolySpinor,
    big: OrbitLabel,
    small: OrbitLabel,
    t_samples: usize,
    seed: u64,
) -> Claim {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts: Vec<Scalar> = Vec::new();
    while ts.len() < t_samples {
        let t = random_nonzero_rational(&mut rng);
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    let mut measured = Vec::new();
    let mut ok = true;
    for t in ts.iter().chain(std::iter::once(&Scalar::zero())) {
        let want = if t.is_zero() { small } else { big };
        let point = poly_eval(family, t);
        let got = if point.is_zero() {
            "zero".to_string()
        } else {
            match classify(&point) {
                Ok((label, _)) => {
                    ok &= label == want;
                    label.to_string()
                }
                Err(e) => {
                    ok = false;
                    format!("error({e})")
                }
            }
        };
        if point.is_zero() {
            ok = false;
        }
        measured.push(format!("t={t}:{got}"));
    }
    Claim {
        id: format!("inclusion {small} in closure of {big}"),
        anchor: "orbit poset: closure inclusion by degeneration".into(),
        status: if ok { Status::Pass } else { Status::Fail },
        measured: measured.join(" "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::clifford_apply;

    #[test]
    fn sigma_down_example() {
        let f = degeneration_family(FamilyKind::SigmaDown, 6, 3).unwrap();
        assert_eq!(poly_eval(&f, &Scalar::zero()), &Spinor::top(6, 6) + &Spinor::top(6, 2));
        assert_eq!(
            poly_eval(&f, &Scalar::one()),
            &(&Spinor::top(6, 6) + &Spinor::top(6, 2)) + &Spinor::one(6)
        );
    }

    #[test]
    fn sigma_down_summand_is_annihilated() {
        let (n, l) = (8, 3);
        for t in [1, -2, 3, 5, -7] {
            let t = Scalar::from_int(t);
            let a = &Spinor::top(n, n - 2 * l + 2) + &Spinor::top(n, n - 2 * l).scale(&t);
            for v in sigma_down_subspace(n, l, &t) {
                assert!(clifford_apply(&v, a.element()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn endpoints_at_zero() {
        let f = degeneration_family(FamilyKind::SigmaToTheta, 6, 3).unwrap();
        assert_eq!(poly_eval(&f, &Scalar::zero()), tangent_representative(6, 3));
        let f = degeneration_family(FamilyKind::ThetaDown, 8, 4).unwrap();
        assert_eq!(poly_eval(&f, &Scalar::zero()), tangent_representative(8, 3));
        assert!(degeneration_family(FamilyKind::SigmaToTheta, 6, 2).is_err());
    }

    #[test]
    fn inclusions_n6() {
        for (kind, l) in [(FamilyKind::SigmaDown, 3), (FamilyKind::SigmaToTheta, 3), (FamilyKind::SigmaDown, 2)] {
            let (big, small) = kind.endpoints(l);
            let c = verify_inclusion(&degeneration_family(kind, 6, l).unwrap(), big, small, 5, 1);
            assert_eq!(c.status, Status::Pass, "{}", c.measured);
        }
    }
}
