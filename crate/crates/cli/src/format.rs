//! JSON shapes for the core types.
//!
//! The core crate stays free of serde; each type here mirrors one core type and
//! converts to and from it, validating on the way in.

use core_fibres::{
    BetaSet, ConstraintSystem, ExactPolynomial, FibreProblem, MarginPair, Matching, Partition,
    Quasipolynomial, ResidueMultiset,
};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Serde adapter for the partition text format: `"5,4,3,1"`, or `"-"` for the empty partition.
pub mod partition_text {
    use core_fibres::Partition;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Partition, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Partition, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

pub fn beta_set_json(b: &BetaSet) -> Vec<usize> {
    b.elements().to_vec()
}

pub fn beta_set_from_json(v: &[usize]) -> Result<BetaSet, CliError> {
    let set: BetaSet = v.iter().copied().collect();
    if set.len() != v.len() {
        return Err(CliError::Usage("β-set elements must be distinct".into()));
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueMultisetJson {
    pub t: usize,
    pub counts: Vec<usize>,
}

impl From<&ResidueMultiset> for ResidueMultisetJson {
    fn from(r: &ResidueMultiset) -> Self {
        ResidueMultisetJson {
            t: r.modulus(),
            counts: r.counts().to_vec(),
        }
    }
}

impl TryFrom<ResidueMultisetJson> for ResidueMultiset {
    type Error = CliError;

    fn try_from(j: ResidueMultisetJson) -> Result<Self, CliError> {
        if j.counts.len() != j.t {
            return Err(CliError::Usage(format!(
                "{} counts given for modulus {}",
                j.counts.len(),
                j.t
            )));
        }
        Ok(ResidueMultiset::new(j.counts)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginPairJson {
    pub rows: Vec<u64>,
    pub cols: Vec<u64>,
}

impl From<&MarginPair> for MarginPairJson {
    fn from(m: &MarginPair) -> Self {
        MarginPairJson {
            rows: m.rows.clone(),
            cols: m.cols.clone(),
        }
    }
}

impl From<MarginPairJson> for MarginPair {
    fn from(j: MarginPairJson) -> Self {
        MarginPair::new(j.rows, j.cols)
    }
}

/// Matchings are plain arrays of rows.
pub fn matching_json(m: &Matching) -> Vec<Vec<u64>> {
    m.entries.clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreProblemJson {
    pub s: usize,
    pub t: usize,
    #[serde(with = "partition_text")]
    pub sigma: Partition,
    #[serde(with = "partition_text")]
    pub tau: Partition,
}

impl From<&FibreProblem> for FibreProblemJson {
    fn from(p: &FibreProblem) -> Self {
        FibreProblemJson {
            s: p.s(),
            t: p.t(),
            sigma: p.sigma().clone(),
            tau: p.tau().clone(),
        }
    }
}

impl TryFrom<FibreProblemJson> for FibreProblem {
    type Error = CliError;

    fn try_from(j: FibreProblemJson) -> Result<Self, CliError> {
        Ok(FibreProblem::new(j.s, j.t, j.sigma, j.tau)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystemJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

impl From<&ConstraintSystem> for ConstraintSystemJson {
    fn from(c: &ConstraintSystem) -> Self {
        ConstraintSystemJson {
            a: c.matrix().to_vec(),
            b: c.rhs().to_vec(),
        }
    }
}

impl TryFrom<ConstraintSystemJson> for ConstraintSystem {
    type Error = CliError;

    fn try_from(j: ConstraintSystemJson) -> Result<Self, CliError> {
        Ok(ConstraintSystem::from_rows(j.a, j.b)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchJson {
    /// The anchored index `i`: this branch gives the value at `i + period·k`.
    pub residue: usize,
    /// Coefficients in `k`, constant term first, as `"p/q"` or `"p"`.
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasipolynomialJson {
    pub period: usize,
    pub anchor: usize,
    pub threshold: usize,
    pub branches: Vec<BranchJson>,
    /// Inclusive range of arguments checked against direct counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Quasipolynomial> for QuasipolynomialJson {
    fn from(q: &Quasipolynomial) -> Self {
        QuasipolynomialJson {
            period: q.period,
            anchor: q.anchor,
            threshold: q.threshold,
            branches: q
                .branches
                .iter()
                .enumerate()
                .map(|(r, b)| BranchJson {
                    residue: q.anchor + r,
                    coeffs: b.coeffs().iter().map(ToString::to_string).collect(),
                })
                .collect(),
            certificate: q.certified.map(|(lo, hi)| [lo, hi]),
            reason: None,
        }
    }
}

impl TryFrom<QuasipolynomialJson> for Quasipolynomial {
    type Error = CliError;

    fn try_from(j: QuasipolynomialJson) -> Result<Self, CliError> {
        if j.period == 0 || j.branches.len() != j.period {
            return Err(CliError::Usage(format!(
                "{} branches for period {}",
                j.branches.len(),
                j.period
            )));
        }
        let mut branches = vec![ExactPolynomial::zero(); j.period];
        let mut seen = vec![false; j.period];
        for b in j.branches {
            let r = b
                .residue
                .checked_sub(j.anchor)
                .filter(|&r| r < j.period && !seen[r])
                .ok_or_else(|| CliError::Usage(format!("unexpected residue {}", b.residue)))?;
            seen[r] = true;
            let coeffs = b
                .coeffs
                .iter()
                .map(|c| {
                    c.parse::<BigRational>()
                        .map_err(|_| CliError::Usage(format!("bad coefficient {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            branches[r] = ExactPolynomial::new(coeffs);
        }
        Ok(Quasipolynomial {
            period: j.period,
            anchor: j.anchor,
            threshold: j.threshold,
            branches,
            certified: j.certificate.map(|[lo, hi]| (lo, hi)),
        })
    }
}
