use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SpinorError};
use crate::isotropic::{hamming_distance, is_pure, pfaffian_chart, random_skew_of_rank};
use crate::multilinear::{clifford_apply, IndexSet, Spinor};
use crate::orbit::{
    classify, closed_form_dims, decompositions_sigma2, group_apply, orbit_dimension, random_group_element,
    representative, same_certificate, sample, terracini_deficient, OrbitLabel,
};

use super::families::{degeneration_family, sigma_down_subspace, verify_inclusion, FamilyKind};
use super::VerificationReport;

const T_SAMPLES: usize = 5;
const DIMENSION_TWISTS: usize = 5;
const TERRACINI_PAIRS: usize = 50;
const SIGMA2_TRIALS: usize = 50;

fn derive(seed: u64, k: usize) -> u64 {
    seed ^ (k as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if !n.is_multiple_of(2) || n < min {
        return Err(SpinorError::OutOfRange(format!("this suite needs an even n >= {min}, got {n}")));
    }
    Ok(())
}

/// Every closure inclusion of the orbit poset, each by an explicit family,
/// plus distinctness of `Theta(l)` and `Sigma(l)`.
pub fn verify_poset(n: usize, seed: u64) -> Result<VerificationReport> {
    check_n(n, 6)?;
    let mut r = VerificationReport::new("poset", n, seed);
    let mut arrows = vec![(FamilyKind::SigmaDown, 2), (FamilyKind::ThetaDown, 3), (FamilyKind::SigmaDown, 3)];
    for l in 3..=n / 2 {
        arrows.push((FamilyKind::SigmaToTheta, l));
    }
    for l in 4..=n / 2 {
        arrows.push((FamilyKind::ThetaDown, l));
        arrows.push((FamilyKind::SigmaDown, l));
    }
    for (k, &(kind, l)) in arrows.iter().enumerate() {
        let (big, small) = kind.endpoints(l);
        match degeneration_family(kind, n, l) {
            Ok(f) => {
                let claim = verify_inclusion(&f, big, small, T_SAMPLES, derive(seed, k));
                r.claims.push(claim);
            }
            Err(e) => r.check(format!("family {kind:?} l={l}"), "orbit poset: closure inclusion", false, e.to_string()),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for l in 2..=n / 2 {
        let mut ok = true;
        for _ in 0..T_SAMPLES {
            let t = crate::isotropic::random_nonzero_rational(&mut rng);
            let a = &Spinor::top(n, n - 2 * l + 2) + &Spinor::top(n, n - 2 * l).scale(&t);
            for v in sigma_down_subspace(n, l, &t) {
                ok &= clifford_apply(&v, a.element()).map(|y| y.is_zero()).unwrap_or(false);
            }
            ok &= is_pure(&a).unwrap_or(false);
        }
        r.check(
            format!("sigma-down summand pure l={l}"),
            "degeneration family: moving summand stays pure",
            ok,
            format!("{T_SAMPLES} values of t"),
        );
    }

    for l in 3..=n / 2 {
        let id = format!("Theta({l}) != Sigma({l})");
        let anchor = "tangent and secant orbits are distinct";
        let got = representative(OrbitLabel::Theta(l), n)
            .and_then(|q| classify(&q))
            .and_then(|(a, _)| Ok((a, classify(&representative(OrbitLabel::Sigma(l), n)?)?.0)));
        r.check_result(id, anchor, got, |(a, b)| (a != b && *a == OrbitLabel::Theta(l), format!("{a} vs {b}")));
    }
    Ok(r)
}

/// Unique certificates for `l >= 3` on `trials` twisted samples per orbit,
/// several decompositions for `Sigma(2)`.
pub fn verify_identifiability(n: usize, seed: u64, trials: usize) -> Result<VerificationReport> {
    check_n(n, 4)?;
    let mut r = VerificationReport::new("identifiability", n, seed);
    let mut k = 0;
    for l in 3..=n / 2 {
        for label in [OrbitLabel::Sigma(l), OrbitLabel::Theta(l)] {
            let mut good = 0;
            let mut first_error = None;
            for _ in 0..trials {
                k += 1;
                let outcome = sample(label, n, derive(seed, k), 2).and_then(|s| {
                    let (got, cert) = classify(&s.spinor)?;
                    Ok(got == label && same_certificate(&cert, &s.certificate))
                });
                match outcome {
                    Ok(true) => good += 1,
                    Ok(false) => {}
                    Err(e) => {
                        first_error.get_or_insert(e.to_string());
                    }
                }
            }
            let anchor = if matches!(label, OrbitLabel::Sigma(_)) {
                "secant orbit is identifiable"
            } else {
                "tangent orbit is tangentially identifiable"
            };
            let mut measured = format!("{good}/{trials} unique certificates match the generators");
            if let Some(e) = first_error {
                measured.push_str(&format!("; first error: {e}"));
            }
            r.check(format!("unique certificate {label}"), anchor, good == trials, measured);
        }
    }
    k += 1;
    let got = sample(OrbitLabel::Sigma(2), n, derive(seed, k), 2).and_then(|s| {
        let pairs = decompositions_sigma2(&s.spinor, SIGMA2_TRIALS, derive(seed, k + 1))?;
        let mut verified = 0;
        for (a, b) in &pairs {
            if (a + b) == s.spinor && is_pure(a)? && is_pure(b)? && hamming_distance(a, b)? == 2 {
                verified += 1;
            }
        }
        Ok((pairs.len(), verified))
    });
    r.check_result("several decompositions Sigma(2)", "distance-2 orbit is not identifiable", got, |&(found, ok)| {
        (found >= 2 && ok == found, format!("{ok}/{found} verified pairs"))
    });
    Ok(r)
}

/// Measured orbit dimensions against the closed forms, on representatives
/// and on twisted copies.
pub fn verify_dimensions(n: usize, seed: u64) -> Result<VerificationReport> {
    let table = closed_form_dims(n)?;
    let mut r = VerificationReport::new("dims", n, seed);
    let mut k = 0;
    for &(label, want) in &table.orbits {
        let rep = representative(label, n)?;
        let got = orbit_dimension(&rep);
        r.check_result(format!("dim {label}"), "orbit dimension formula", got, |&d| (d == want, format!("{d} (expected {want})")));
        let mut dims = Vec::new();
        for _ in 0..DIMENSION_TWISTS {
            k += 1;
            let d = random_group_element(n, derive(seed, k), 2)
                .and_then(|g| group_apply(&g, &rep))
                .and_then(|x| orbit_dimension(&x));
            dims.push(d.map(|d| d.to_string()).unwrap_or_else(|e| format!("error({e})")));
        }
        let ok = dims.iter().all(|d| *d == want.to_string());
        r.check(format!("dim {label} twisted"), "orbit dimension is invariant", ok, dims.join(","));
    }
    let top = table.get(OrbitLabel::Sigma(n / 2)).unwrap();
    let tangent_top = table.get(OrbitLabel::Theta(n / 2)).unwrap();
    r.check("dim secant variety", "dense orbit fills the secant variety", top == table.secant, format!("{top} vs {}", table.secant));
    r.check(
        "dim tangential variety",
        "largest tangent orbit fills the tangential variety",
        tangent_top == table.tangential,
        format!("{tangent_top} vs {}", table.tangential),
    );
    Ok(r)
}

/// `d(Pf-chart(A), 𝟙) = rank(A)/2`, and the `e_[n]` coordinate `Pf(A)`
/// vanishes exactly when the rank drops below `n`.
pub fn verify_distance_rank(n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    check_n(n, 4)?;
    let mut r = VerificationReport::new("distance-rank", n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Spinor::one(n);
    let top = IndexSet::prefix(n);
    for l in 0..=n / 2 {
        let mut law = 0;
        let mut divisor = 0;
        for _ in 0..trials {
            let a = random_skew_of_rank(&mut rng, n, l);
            let Ok(x) = pfaffian_chart(&a) else { continue };
            if hamming_distance(&x, &one).ok() == Some(l) {
                law += 1;
            }
            if x.coeff(top).is_zero() == (2 * l <= n - 2) {
                divisor += 1;
            }
        }
        r.check(format!("distance rank {}", 2 * l), "distance to 𝟙 is half the rank", law == trials, format!("{law}/{trials}"));
        r.check(
            format!("pfaffian divisor rank {}", 2 * l),
            "non-dense chart points are cut out by the pfaffian",
            divisor == trials,
            format!("{divisor}/{trials}"),
        );
    }
    Ok(r)
}

/// Deficiency of the tangent-space sum against `distance <= 2`.
pub fn verify_terracini(n: usize, seed: u64) -> Result<VerificationReport> {
    check_n(n, 6)?;
    let mut r = VerificationReport::new("terracini", n, seed);
    let expected = (n * (n - 1) + 2).min(1 << (n - 1));
    let a = Spinor::top(n, n);
    for d in 1..=n / 2 {
        let b = Spinor::top(n, n - 2 * d);
        r.check_result(format!("terracini d={d}"), "deficient iff distance <= 2", terracini_deficient(&a, &b), |&(def, s)| {
            let ok = def == (d <= 2) && (def || s == expected);
            (ok, format!("deficient={def} span={s} expected={expected}"))
        });
    }
    let mut agree = 0;
    let mut spans = std::collections::BTreeSet::new();
    let mut first_error = None;
    for k in 0..TERRACINI_PAIRS {
        let d = 1 + k % (n / 2);
        let outcome = random_group_element(n, derive(seed, k), 2).and_then(|g| {
            let x = group_apply(&g, &a)?;
            let y = group_apply(&g, &Spinor::top(n, n - 2 * d))?;
            let dist = hamming_distance(&x, &y)?;
            let (def, s) = terracini_deficient(&x, &y)?;
            if !def {
                spans.insert(s);
            }
            Ok(dist == d && def == (dist <= 2) && (def || s == expected))
        });
        match outcome {
            Ok(true) => agree += 1,
            Ok(false) => {}
            Err(e) => {
                first_error.get_or_insert(e.to_string());
            }
        }
    }
    let mut measured = format!("{agree}/{TERRACINI_PAIRS} agree; non-deficient spans {spans:?}");
    if let Some(e) = first_error {
        measured.push_str(&format!("; first error: {e}"));
    }
    r.check("terracini conjugates", "deficient iff distance <= 2", agree == TERRACINI_PAIRS, measured);
    Ok(r)
}

/// Dimension counts showing the distance-2 locus cannot be a divisor in the
/// abstract secant variety. Arithmetic only.
pub fn singularity_evidence(n: usize) -> Result<VerificationReport> {
    let table = closed_form_dims(n)?;
    let mut r = VerificationReport::new("evidence", n, 0);
    let s = n * (n - 1) / 2;
    let abstract_secant = 2 * s + 1;
    // decompositions of a distance-2 point are parametrised by the pure spinors on 4 letters
    let locus = 4 * 3 / 2;
    let sigma2 = table.get(OrbitLabel::Sigma(2)).unwrap();
    let codim = abstract_secant as i64 - (sigma2 + locus) as i64;
    let count = s as i64 - 4 * n as i64 + 10;
    r.check(
        "preimage codimension",
        "codimension of the distance-2 preimage in the abstract secant variety",
        codim == count,
        format!("{abstract_secant} - ({sigma2} + {locus}) = {codim}; n(n-1)/2 - 4n + 10 = {count}"),
    );
    if n >= 8 {
        r.check("not a divisor", "distance-2 preimage has codimension > 1", count > 1, format!("{count} > 1"));
    } else {
        r.note("not a divisor", "distance-2 preimage has codimension > 1", format!("{count}; only claimed for n >= 8"));
    }
    r.check(
        "tangential is a hypersurface",
        "tangential variety has codimension 1 in the secant variety",
        table.tangential + 1 == table.secant,
        format!("{} + 1 vs {}", table.tangential, table.secant),
    );
    r.note(
        "singular locus",
        "the singular locus of the secant variety equals the distance-2 closure",
        "open conjecture; only the bounds between the distance-2 closure and the tangential variety are established",
    );
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Dims,
    DistanceRank,
    Evidence,
    Identifiability,
    Poset,
    Terracini,
}

impl Suite {
    /// Sorted by name.
    pub const ALL: [Suite; 6] =
        [Suite::Dims, Suite::DistanceRank, Suite::Evidence, Suite::Identifiability, Suite::Poset, Suite::Terracini];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dims => "dims",
            Suite::DistanceRank => "distance-rank",
            Suite::Evidence => "evidence",
            Suite::Identifiability => "identifiability",
            Suite::Poset => "poset",
            Suite::Terracini => "terracini",
        }
    }

    /// Runs with the default trial counts and records the wall-clock time.
    pub fn run(self, n: usize, seed: u64) -> Result<VerificationReport> {
        let start = Instant::now();
        let mut r = match self {
            Suite::Dims => verify_dimensions(n, seed),
            Suite::DistanceRank => verify_distance_rank(n, 20, seed),
            Suite::Evidence => singularity_evidence(n),
            Suite::Identifiability => verify_identifiability(n, seed, 5),
            Suite::Poset => verify_poset(n, seed),
            Suite::Terracini => verify_terracini(n, seed),
        }?;
        r.duration = start.elapsed();
        Ok(r)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SpinorError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SpinorError::OutOfRange(format!("unknown suite {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Dims, Suite::Evidence, Suite::DistanceRank, Suite::Terracini] {
            let r = suite.run(6, 3).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn evidence_counts() {
        for (n, c) in [(8, 6), (10, 15), (12, 28)] {
            let r = singularity_evidence(n).unwrap();
            assert!(r.passed());
            assert!(r.claims.iter().any(|x| x.measured.contains(&format!("= {c}"))));
        }
    }

    #[test]
    fn poset_n6() {
        let r = verify_poset(6, 1).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn identifiability_n6() {
        let r = verify_identifiability(6, 2, 2).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }
}
