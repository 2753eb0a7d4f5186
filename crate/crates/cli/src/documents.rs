//! JSON interchange formats. Coefficients are exact strings (`"p"` or `"p/q"`).

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use spinorlab_core::isotropic::IsotropicSubspace;
use spinorlab_core::{IndexSet, Scalar, Spinor, Vector};

use crate::error::CliError;

pub const MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub indices: Vec<usize>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinorDocument {
    pub n: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDocument {
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

/// Rejects odd `n`, and `n` outside `4..=12` unless `allow_large`.
pub fn check_n(n: usize, allow_large: bool) -> Result<(), CliError> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(CliError::Input(format!("n must be an even integer >= 4, got {n}")));
    }
    if n > MAX_N && !allow_large {
        return Err(CliError::Input(format!("n = {n} exceeds {MAX_N}; pass --allow-large to lift the cap")));
    }
    Ok(())
}

fn parse_coef(s: &str) -> Result<Scalar, CliError> {
    s.trim().parse::<Scalar>().map_err(|e| CliError::Input(format!("bad coefficient {s:?}: {e}")))
}

impl SpinorDocument {
    pub fn from_spinor(x: &Spinor) -> Self {
        SpinorDocument {
            n: x.n(),
            terms: x.terms().map(|(s, c)| Term { indices: s.indices(), coef: c.to_string() }).collect(),
        }
    }

    pub fn to_spinor(&self, allow_large: bool) -> Result<Spinor, CliError> {
        check_n(self.n, allow_large)?;
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !t.indices.windows(2).all(|w| w[0] < w[1]) {
                return Err(CliError::Input(format!("indices {:?} are not strictly ascending", t.indices)));
            }
            if t.indices.len() % 2 != 0 {
                return Err(CliError::Input(format!("indices {:?} have odd cardinality", t.indices)));
            }
            if t.indices.iter().any(|&i| i == 0 || i > self.n) {
                return Err(CliError::Input(format!("indices {:?} fall outside 1..={}", t.indices, self.n)));
            }
            let set = IndexSet::from_indices(&t.indices).map_err(|e| CliError::Input(e.to_string()))?;
            if !seen.insert(set) {
                return Err(CliError::Input(format!("duplicate index set {:?}", t.indices)));
            }
            terms.push((set, parse_coef(&t.coef)?));
        }
        Spinor::from_terms(self.n, terms).map_err(|e| CliError::Input(e.to_string()))
    }
}

impl SubspaceDocument {
    pub fn to_subspace(&self, allow_large: bool) -> Result<IsotropicSubspace, CliError> {
        check_n(self.n, allow_large)?;
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            if r.len() != 2 * self.n {
                return Err(CliError::Input(format!("row has {} entries, expected {}", r.len(), 2 * self.n)));
            }
            let coords = r.iter().map(|s| parse_coef(s)).collect::<Result<Vec<_>, _>>()?;
            rows.push(Vector::from_coords(coords).map_err(|e| CliError::Input(e.to_string()))?);
        }
        IsotropicSubspace::new(self.n, rows).map_err(|e| CliError::Input(e.to_string()))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_spinor(path: &Path, allow_large: bool) -> Result<Spinor, CliError> {
    read_json::<SpinorDocument>(path)?.to_spinor(allow_large)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let doc = SpinorDocument {
            n: 6,
            terms: vec![
                Term { indices: vec![], coef: "1".into() },
                Term { indices: vec![1, 2], coef: "-3/2".into() },
                Term { indices: vec![1, 2, 3, 4, 5, 6], coef: "7".into() },
            ],
        };
        let x = doc.to_spinor(false).unwrap();
        assert_eq!(SpinorDocument::from_spinor(&x), doc);
    }

    #[test]
    fn rejects_malformed() {
        let bad = |indices: Vec<usize>| SpinorDocument { n: 6, terms: vec![Term { indices, coef: "1".into() }] };
        assert!(bad(vec![2, 1]).to_spinor(false).is_err());
        assert!(bad(vec![1]).to_spinor(false).is_err());
        assert!(bad(vec![1, 7]).to_spinor(false).is_err());
        let dup = SpinorDocument {
            n: 6,
            terms: vec![Term { indices: vec![1, 2], coef: "1".into() }, Term { indices: vec![1, 2], coef: "2".into() }],
        };
        assert!(dup.to_spinor(false).is_err());
        assert!(SpinorDocument { n: 14, terms: vec![] }.to_spinor(false).is_err());
        assert!(SpinorDocument { n: 7, terms: vec![] }.to_spinor(true).is_err());
    }
}
