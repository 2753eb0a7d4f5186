use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinorError};
use crate::multilinear::{IndexSet, Spinor};

/// The orbits of the spin group on the secant variety of lines.
///
/// `Sigma(l)` holds points on a secant line through two pure points at
/// distance `l`; `Theta(l)` holds points on a tangent line whose kernel has
/// codimension `2l`. `Theta(2)` coincides with `Sigma(2)` and is never used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitLabel {
    Pure,
    Sigma(usize),
    Theta(usize),
}

impl OrbitLabel {
    pub fn validate(self, n: usize) -> Result<Self> {
        let ok = match self {
            OrbitLabel::Pure => true,
            OrbitLabel::Sigma(l) => (2..=n / 2).contains(&l),
            OrbitLabel::Theta(l) => (3..=n / 2).contains(&l),
        };
        if ok {
            Ok(self)
        } else {
            Err(SpinorError::OutOfRange(format!("{self} is not an orbit for n = {n}")))
        }
    }

    /// Every label for `n`, ordered along the orbit poset.
    pub fn all(n: usize) -> Vec<OrbitLabel> {
        let mut out = vec![OrbitLabel::Pure];
        if n >= 4 {
            out.push(OrbitLabel::Sigma(2));
        }
        for l in 3..=n / 2 {
            out.push(OrbitLabel::Theta(l));
            out.push(OrbitLabel::Sigma(l));
        }
        out
    }

    /// `l`, or 0 for `Pure`.
    pub fn distance(self) -> usize {
        match self {
            OrbitLabel::Pure => 0,
            OrbitLabel::Sigma(l) | OrbitLabel::Theta(l) => l,
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Pure => write!(f, "Pure"),
            OrbitLabel::Sigma(l) => write!(f, "Sigma({l})"),
            OrbitLabel::Theta(l) => write!(f, "Theta({l})"),
        }
    }
}

impl FromStr for OrbitLabel {
    type Err = SpinorError;

    /// `pure`, `sigma:L` or `theta:L` (case-insensitive); also accepts the
    /// display forms `Sigma(L)` and `Theta(L)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || SpinorError::OutOfRange(format!("unknown orbit label {s:?}"));
        if t == "pure" {
            return Ok(OrbitLabel::Pure);
        }
        let (kind, rest) = t
            .split_once(':')
            .or_else(|| t.strip_suffix(')').and_then(|u| u.split_once('(')))
            .ok_or_else(bad)?;
        let l: usize = rest.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "sigma" => Ok(OrbitLabel::Sigma(l)),
            "theta" => Ok(OrbitLabel::Theta(l)),
            _ => Err(bad()),
        }
    }
}

/// Proof attached to a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `q` is itself pure.
    Pure,
    /// Pure `a`, `b` with `a + b = q`.
    Pair(Spinor, Spinor),
    /// Pure `p` with `q` in the affine tangent cone at `p`.
    Tangent(Spinor),
    /// A `Sigma(2)` point reported without a witness pair.
    Unwitnessed,
}

/// `e_[n]` for `Pure`, `e_[n] + e_[n-2l]` for `Sigma(l)`,
/// `Σ_{i≤l} e_{2i-1} ∧ e_{2i}` for `Theta(l)`.
pub fn representative(label: OrbitLabel, n: usize) -> Result<Spinor> {
    label.validate(n)?;
    Ok(match label {
        OrbitLabel::Pure => Spinor::top(n, n),
        OrbitLabel::Sigma(l) => &Spinor::top(n, n) + &Spinor::top(n, n - 2 * l),
        OrbitLabel::Theta(l) => tangent_representative(n, l),
    })
}

/// `q_l = Σ_{i≤l} e_{2i-1} ∧ e_{2i}`.
pub fn tangent_representative(n: usize, l: usize) -> Spinor {
    (1..=l).fold(Spinor::zero(n), |acc, i| {
        &acc + &Spinor::monomial(n, IndexSet::from_indices(&[2 * i - 1, 2 * i]).unwrap())
    })
}

/// The pure points a representative was built from: the pair for `Sigma`,
/// the tangency point `𝟙` for `Theta`.
pub fn generating_certificate(label: OrbitLabel, n: usize) -> Result<Certificate> {
    label.validate(n)?;
    Ok(match label {
        OrbitLabel::Pure => Certificate::Pure,
        OrbitLabel::Sigma(l) => Certificate::Pair(Spinor::top(n, n), Spinor::top(n, n - 2 * l)),
        OrbitLabel::Theta(_) => Certificate::Tangent(Spinor::one(n)),
    })
}
