//! Executable checks of the structural statements about the orbits: closure
//! inclusions, identifiability, dimensions, the distance–rank law, the
//! Terracini criterion and the singularity count.

mod families;
mod suites;

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use families::{degeneration_family, sigma_down_subspace, verify_inclusion, FamilyKind};
pub use suites::{
    singularity_evidence, verify_dimensions, verify_distance_rank, verify_identifiability, verify_poset,
    verify_terracini, Suite,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for context; not a checkable statement.
    Open,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Open => "OPEN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// Short description of the statement being checked.
    pub anchor: String,
    pub status: Status,
    pub measured: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    pub seed: u64,
    pub claims: Vec<Claim>,
    #[serde(skip)]
    pub duration: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, n: usize, seed: u64) -> Self {
        VerificationReport { suite: suite.into(), n, seed, claims: Vec::new(), duration: Duration::ZERO }
    }

    pub fn check(&mut self, id: impl Into<String>, anchor: &str, ok: bool, measured: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.claims.push(Claim { id: id.into(), anchor: anchor.into(), status, measured: measured.into() });
    }

    pub fn note(&mut self, id: impl Into<String>, anchor: &str, measured: impl Into<String>) {
        self.claims.push(Claim { id: id.into(), anchor: anchor.into(), status: Status::Open, measured: measured.into() });
    }

    /// Turns an error into a failed claim instead of aborting the suite.
    pub fn check_result<T>(
        &mut self,
        id: impl Into<String>,
        anchor: &str,
        r: crate::Result<T>,
        judge: impl FnOnce(&T) -> (bool, String),
    ) {
        match r {
            Ok(v) => {
                let (ok, measured) = judge(&v);
                self.check(id, anchor, ok, measured);
            }
            Err(e) => self.check(id, anchor, false, format!("error: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (n = {}, seed = {})", self.suite, self.n, self.seed)?;
        for c in &self.claims {
            writeln!(f, "  {} {} [{}] {}", c.status, c.id, c.anchor, c.measured)?;
        }
        let checked = self.claims.iter().filter(|c| c.status != Status::Open).count();
        let passed = self.claims.iter().filter(|c| c.status == Status::Pass).count();
        write!(f, "  {passed}/{checked} checks passed")
    }
}
