use alloc::collections::BTreeMap;
use core::fmt;

use crate::linalg::{hermitian_eig_with, HermitianMatrix};
use crate::{NumericPolicy, Result};

/// Eigenvalues above `RANK_REL_TOL·Tr(Q)` count towards the rank.
pub const RANK_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    FullRankClosedForm,
    ReducedEquivalent,
    RankOne,
    WaterFilling,
    ZeroCapacity,
    NumericalOracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FullRankClosedForm => "FullRankClosedForm",
            Method::ReducedEquivalent => "ReducedEquivalent",
            Method::RankOne => "RankOne",
            Method::WaterFilling => "WaterFilling",
            Method::ZeroCapacity => "ZeroCapacity",
            Method::NumericalOracle => "NumericalOracle",
        }
    }

    /// Stable numeric code, used when a method is stored in diagnostics.
    pub fn code(self) -> f64 {
        match self {
            Method::FullRankClosedForm => 0.0,
            Method::ReducedEquivalent => 1.0,
            Method::RankOne => 2.0,
            Method::WaterFilling => 3.0,
            Method::ZeroCapacity => 4.0,
            Method::NumericalOracle => 5.0,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Transmit covariance together with its rate and provenance.
///
/// For a [`Method::FullRankClosedForm`] result with `full_rank_valid == false`
/// (only returned by [`super::solve_full_rank`] directly), `q` is the
/// closed-form candidate, which is not PSD, and `capacity_nats` is the
/// closed-form expression evaluated at it. [`super::solve`] never returns
/// such a value.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub q: HermitianMatrix,
    pub capacity_nats: f64,
    pub rank: usize,
    /// Power multiplier, when the method has one.
    pub mu: Option<f64>,
    pub method: Method,
    pub full_rank_valid: bool,
    pub diagnostics: BTreeMap<&'static str, f64>,
}

impl Solution {
    pub(crate) fn zero(dim: usize) -> Self {
        Self {
            q: HermitianMatrix::zeros(dim),
            capacity_nats: 0.0,
            rank: 0,
            mu: None,
            method: Method::ZeroCapacity,
            full_rank_valid: false,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn diagnostic(&self, key: &str) -> Option<f64> {
        self.diagnostics.get(key).copied()
    }
}

/// Number of eigenvalues of `q` above `rel·Tr(q)`.
pub fn numerical_rank(q: &HermitianMatrix, rel: f64, policy: &NumericPolicy) -> Result<usize> {
    let cutoff = rel * q.trace().abs();
    let e = hermitian_eig_with(q, policy)?;
    Ok(e.values.iter().filter(|&&v| v > cutoff).count())
}
