//! Orbit classification with re-verifiable certificates.


use crate::apolarity::annihilator_span;
use crate::error::{Result, SpinorError};
use crate::isotropic::{hamming_distance, is_pure, psi_kernel, IsotropicSubspace};
use crate::multilinear::linalg::rank_of_rows;
use crate::multilinear::{Scalar, Spinor};

use super::dims::is_tangent_at;
use super::group::{group_apply, group_apply_inverse, random_group_element, GroupElement};
use super::label::{generating_certificate, representative, Certificate, OrbitLabel};
use super::pencil::pure_points_on_pencil;
use super::sigma2::sigma2_pairs;
use super::witt::{factor_extract, factor_lift, witt_standardize};

const PENCIL_SEED: u64 = 0x51_6e_a1;
const SIGMA2_WITNESS_TRIALS: usize = 16;

/// `q` moved so its kernel is `span(e_1, ..., e_m)`, with the cofactor on the
/// remaining letters.
pub(crate) struct Reduction {
    pub g: GroupElement,
    pub m: usize,
    pub reduced: Spinor,
}

impl Reduction {
    pub(crate) fn new(q: &Spinor, h: &IsotropicSubspace) -> Result<Self> {
        let g = witt_standardize(h)?;
        let moved = group_apply(&g, q)?;
        let m = h.dim();
        let reduced = factor_extract(&moved, m)?;
        Ok(Reduction { g, m, reduced })
    }

    /// Carries a spinor on the reduced letters back to the original frame.
    pub(crate) fn lift(&self, p: &Spinor) -> Result<Spinor> {
        group_apply_inverse(&self.g, &factor_lift(p, self.m))
    }
}

/// Everything `classify` learned about `q`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub label: OrbitLabel,
    pub certificate: Certificate,
    /// `dim H_q`.
    pub kernel_dim: usize,
    /// `dim L` for the reduced cofactor, when it was computed.
    pub reduced_annihilator_dim: Option<usize>,
}

pub fn classify(q: &Spinor) -> Result<(OrbitLabel, Certificate)> {
    let c = classify_detailed(q)?;
    Ok((c.label, c.certificate))
}

pub fn classify_detailed(q: &Spinor) -> Result<Classification> {
    if q.is_zero() {
        return Err(SpinorError::ZeroSpinor);
    }
    if !q.is_rational() {
        return Err(SpinorError::UnsupportedField("classification needs rational coordinates".into()));
    }
    let n = q.n();
    let h = psi_kernel(q)?;
    let kernel_dim = h.dim();
    if kernel_dim == n {
        return Ok(Classification { label: OrbitLabel::Pure, certificate: Certificate::Pure, kernel_dim, reduced_annihilator_dim: None });
    }
    if !(n - kernel_dim).is_multiple_of(2) {
        return Err(SpinorError::NotInSecantVariety(format!("dim H_q = {kernel_dim} has the wrong parity")));
    }
    let l = (n - kernel_dim) / 2;
    if l < 2 {
        return Err(SpinorError::NotInSecantVariety("kernel of codimension 2 on a non-pure spinor".into()));
    }
    let red = Reduction::new(q, &h)?;

    if l == 2 {
        let pairs = sigma2_pairs(&red.reduced, SIGMA2_WITNESS_TRIALS, PENCIL_SEED, Some(1))?;
        let certificate = match pairs.into_iter().next() {
            Some((a, b)) => Certificate::Pair(red.lift(&a)?, red.lift(&b)?),
            None => Certificate::Unwitnessed,
        };
        return Ok(Classification { label: OrbitLabel::Sigma(2), certificate, kernel_dim, reduced_annihilator_dim: None });
    }

    let qt = &red.reduced;
    let span = annihilator_span(qt)?;
    let reduced_annihilator_dim = Some(span.len());
    if span.len() != 2 {
        return Err(SpinorError::NotInSecantVariety(format!("annihilator of the cofactor has dimension {}", span.len())));
    }
    let dense: Vec<Vec<Scalar>> = span.iter().map(Spinor::to_dense).collect();
    let w = span
        .iter()
        .zip(&dense)
        .find(|(_, d)| rank_of_rows(&[qt.to_dense(), (*d).clone()], 1 << (2 * l - 1)) == 2)
        .map(|(s, _)| s.clone())
        .ok_or_else(|| SpinorError::NotInSecantVariety("cofactor outside its own annihilator".into()))?;

    // w + s·q̃ sweeps the line except q̃ itself, which is not pure
    let points = pure_points_on_pencil(&w, qt, PENCIL_SEED)?;
    let bad = |msg: &str| SpinorError::NotInSecantVariety(msg.into());
    let (label, certificate) = match points.as_slice() {
        [p1, p2] => {
            let alpha = (&p1.s - &p2.s).inv();
            let a = p1.point.scale(&alpha);
            let b = p2.point.scale(&-alpha);
            if &(&a + &b) != qt {
                return Err(bad("pure points do not decompose the cofactor"));
            }
            if hamming_distance(&a, &b)? != l {
                return Err(bad("decomposition has the wrong distance"));
            }
            (OrbitLabel::Sigma(l), Certificate::Pair(red.lift(&a)?, red.lift(&b)?))
        }
        [p] if p.multiplicity >= 2 => {
            if !is_tangent_at(qt, &p.point)? {
                return Err(bad("repeated pure point is not a tangency point"));
            }
            (OrbitLabel::Theta(l), Certificate::Tangent(red.lift(&p.point)?.normalized()))
        }
        [] => return Err(bad("no pure point on the annihilator line")),
        _ => return Err(bad("unexpected pure-point structure on the annihilator line")),
    };
    let c = Classification { label, certificate, kernel_dim, reduced_annihilator_dim };
    if !verify_certificate(q, c.label, &c.certificate)? {
        return Err(SpinorError::Internal(format!("certificate for {} failed re-verification", c.label)));
    }
    Ok(c)
}

/// Re-checks a certificate from scratch: purity, span or tangency
/// membership, pair distance and kernel dimension.
pub fn verify_certificate(q: &Spinor, label: OrbitLabel, cert: &Certificate) -> Result<bool> {
    let n = q.n();
    label.validate(n)?;
    let l = label.distance();
    let kernel_ok = psi_kernel(q)?.dim() == n - 2 * l;
    Ok(kernel_ok
        && match (label, cert) {
            (OrbitLabel::Pure, Certificate::Pure) => true,
            (OrbitLabel::Sigma(_), Certificate::Pair(a, b)) => {
                is_pure(a)?
                    && is_pure(b)?
                    && rank_of_rows(&[a.to_dense(), b.to_dense()], 1 << (n - 1)) == 2
                    && rank_of_rows(&[a.to_dense(), b.to_dense(), q.to_dense()], 1 << (n - 1)) == 2
                    && hamming_distance(a, b)? == l
            }
            (OrbitLabel::Theta(_), Certificate::Tangent(p)) => is_pure(p)? && is_tangent_at(q, p)?,
            (OrbitLabel::Sigma(2), Certificate::Unwitnessed) => true,
            _ => false,
        })
}

/// A twisted representative of `label` and its transported generating
/// certificate. `twists = 0` returns the representative itself.
#[derive(Clone, Debug)]
pub struct Sample {
    pub spinor: Spinor,
    pub certificate: Certificate,
    pub g: Option<GroupElement>,
}

pub fn sample(label: OrbitLabel, n: usize, seed: u64, twists: usize) -> Result<Sample> {
    let rep = representative(label, n)?;
    let cert = generating_certificate(label, n)?;
    if twists == 0 {
        return Ok(Sample { spinor: rep, certificate: cert, g: None });
    }
    let g = random_group_element(n, seed, twists)?;
    let move_ = |x: &Spinor| group_apply(&g, x);
    let certificate = match cert {
        Certificate::Pair(a, b) => Certificate::Pair(move_(&a)?, move_(&b)?),
        Certificate::Tangent(p) => Certificate::Tangent(move_(&p)?),
        other => other,
    };
    Ok(Sample { spinor: move_(&rep)?, certificate, g: Some(g) })
}

/// Whether two certificates name the same projective points.
pub fn same_certificate(x: &Certificate, y: &Certificate) -> bool {
    match (x, y) {
        (Certificate::Pure, Certificate::Pure) | (Certificate::Unwitnessed, Certificate::Unwitnessed) => true,
        (Certificate::Tangent(p), Certificate::Tangent(r)) => p.projectively_equal(r),
        (Certificate::Pair(a, b), Certificate::Pair(c, d)) => {
            (a.projectively_equal(c) && b.projectively_equal(d)) || (a.projectively_equal(d) && b.projectively_equal(c))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::IndexSet;
    use crate::orbit::label::tangent_representative;

    #[test]
    fn dense_sigma3() {
        let q = &Spinor::top(6, 6) + &Spinor::one(6);
        let (label, cert) = classify(&q).unwrap();
        assert_eq!(label, OrbitLabel::Sigma(3));
        assert!(same_certificate(&cert, &Certificate::Pair(Spinor::top(6, 6), Spinor::one(6))));
    }

    #[test]
    fn dense_theta3() {
        let (label, cert) = classify(&tangent_representative(6, 3)).unwrap();
        assert_eq!(label, OrbitLabel::Theta(3));
        assert!(same_certificate(&cert, &Certificate::Tangent(Spinor::one(6))));
    }

    #[test]
    fn distance_one_line_is_pure() {
        let q = &Spinor::top(6, 6) + &Spinor::top(6, 4);
        assert_eq!(classify(&q).unwrap().0, OrbitLabel::Pure);
        // e_[6] and e_1 ∧ e_2 are at distance 2
        let q = &Spinor::top(6, 6) + &Spinor::monomial(6, IndexSet::from_indices(&[1, 2]).unwrap());
        assert_eq!(classify(&q).unwrap().0, OrbitLabel::Sigma(2));
    }

    #[test]
    fn twisted_round_trip() {
        for n in [6, 8] {
            for label in OrbitLabel::all(n) {
                let s = sample(label, n, 7 + n as u64, 2).unwrap();
                let (got, cert) = classify(&s.spinor).unwrap();
                assert_eq!(got, label, "n = {n}");
                assert!(verify_certificate(&s.spinor, got, &cert).unwrap());
                if label.distance() >= 3 {
                    assert!(same_certificate(&cert, &s.certificate), "{label} at n = {n}");
                }
            }
        }
    }

    #[test]
    fn sigma2_gets_a_witness() {
        let q = representative(OrbitLabel::Sigma(2), 6).unwrap();
        let (label, cert) = classify(&q).unwrap();
        assert_eq!(label, OrbitLabel::Sigma(2));
        assert!(matches!(cert, Certificate::Pair(..)));
        assert!(verify_certificate(&q, label, &cert).unwrap());
    }

    #[test]
    fn rejects_points_off_the_secant_variety() {
        // a generic spinor on 8 letters has trivial kernel and a large annihilator
        let q = Spinor::from_terms(
            8,
            [(vec![], 1), (vec![1, 2, 3, 4], 2), (vec![5, 6, 7, 8], 3), (vec![1, 2, 5, 6, 7, 8], 5), (vec![1, 3, 5, 7], 1)]
                .into_iter()
                .map(|(s, c)| (IndexSet::from_indices(&s).unwrap(), Scalar::from_int(c))),
        )
        .unwrap();
        assert!(matches!(classify(&q), Err(SpinorError::NotInSecantVariety(_))));
    }
}
