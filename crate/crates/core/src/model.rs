//! Wiretap channel data model: channels, Gram pairs, the secrecy-rate
//! objective and the classification of the Gram difference.
//!
//! Everything downstream of [`gram_pair`] consumes only `A = HᴴH` and
//! `B = GᴴG`, which is what lets the equivalent-channel reduction produce a
//! new problem without factoring Gram matrices back into channels.

use alloc::vec::Vec;

use crate::linalg::{
    hermitian_eig_with, logdet_hpd, ComplexMatrix, EigDecomposition, HermitianMatrix,
};
use crate::solver::build_workspace;
use crate::{Error, NumericPolicy, Result};

/// Legitimate channel `H` (`n_r × n_t`) and eavesdropper channel `G` (`n_e × n_t`).
#[derive(Debug, Clone, PartialEq)]
pub struct WiretapChannel {
    h: ComplexMatrix,
    g: ComplexMatrix,
}

impl WiretapChannel {
    pub fn new(h: ComplexMatrix, g: ComplexMatrix) -> Result<Self> {
        if h.cols() != g.cols() {
            return Err(Error::DimensionMismatch {
                expected: (g.rows(), h.cols()),
                found: g.shape(),
            });
        }
        Ok(Self { h, g })
    }

    pub fn h(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn g(&self) -> &ComplexMatrix {
        &self.g
    }

    pub fn n_t(&self) -> usize {
        self.h.cols()
    }
}

/// The pair `(HᴴH, GᴴG)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramPair {
    a: HermitianMatrix,
    b: HermitianMatrix,
}

impl GramPair {
    /// Checks equal dimensions and `A, B ⪰ -τ_psd`.
    pub fn new(a: HermitianMatrix, b: HermitianMatrix) -> Result<Self> {
        Self::new_with(a, b, &NumericPolicy::default())
    }

    pub fn new_with(
        a: HermitianMatrix,
        b: HermitianMatrix,
        policy: &NumericPolicy,
    ) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: (a.dim(), a.dim()),
                found: (b.dim(), b.dim()),
            });
        }
        for m in [&a, &b] {
            let e = hermitian_eig_with(m, policy)?;
            if e.min() < -policy.psd_rel * e.spectral_norm() {
                return Err(Error::NotPositiveSemidefinite {
                    min_eigenvalue: e.min(),
                });
            }
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &HermitianMatrix {
        &self.a
    }

    pub fn b(&self) -> &HermitianMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `A − B`.
    pub fn difference(&self) -> HermitianMatrix {
        self.a.sub(&self.b)
    }
}

pub fn gram_pair(channel: &WiretapChannel) -> Result<GramPair> {
    GramPair::new(
        HermitianMatrix::inner_gram(channel.h()),
        HermitianMatrix::inner_gram(channel.g()),
    )
}

/// `R(Q) = log|I + AQ| − log|I + BQ|` in nats.
///
/// Evaluated as `log|I + Q^{1/2} A Q^{1/2}| − log|I + Q^{1/2} B Q^{1/2}|`
/// with eigenvalues of `Q` in `[-τ_psd, 0)` clipped to zero.
pub fn secrecy_rate(grams: &GramPair, q: &HermitianMatrix) -> Result<f64> {
    secrecy_rate_with(grams, q, &NumericPolicy::default())
}

pub fn secrecy_rate_with(
    grams: &GramPair,
    q: &HermitianMatrix,
    policy: &NumericPolicy,
) -> Result<f64> {
    check_dim(grams, q)?;
    let e = hermitian_eig_with(q, policy)?;
    let root = crate::linalg::psd_sqrt_from_eig(&e, false, policy)?;
    rate_from_factor(grams, root.as_matrix())
}

/// `R(F Fᴴ)` for any factor `F` (`n × k`), via `|I + AFFᴴ| = |I + FᴴAF|`.
pub(crate) fn rate_from_factor(grams: &GramPair, f: &ComplexMatrix) -> Result<f64> {
    let fh = f.adjoint();
    let left = HermitianMatrix::symmetrize(&(&(&fh * grams.a.as_matrix()) * f)).add_identity(1.0);
    let right = HermitianMatrix::symmetrize(&(&(&fh * grams.b.as_matrix()) * f)).add_identity(1.0);
    Ok(logdet_hpd(&left)? - logdet_hpd(&right)?)
}

fn check_dim(grams: &GramPair, q: &HermitianMatrix) -> Result<()> {
    if q.dim() != grams.dim() {
        return Err(Error::DimensionMismatch {
            expected: (grams.dim(), grams.dim()),
            found: (q.dim(), q.dim()),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceKind {
    PositiveDefinite,
    PsdSingular,
    Indefinite,
    NegativeSemidefinite,
}

/// Sign structure of `A − B`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceClass {
    pub kind: DifferenceKind,
    /// Number of eigenvalues of `A − B` strictly above `tol`.
    pub m: usize,
    pub eigen: EigDecomposition,
    pub tol: f64,
}

/// Default classification threshold `classify_rel · ‖A − B‖₂`.
pub fn default_classify_tol(grams: &GramPair, policy: &NumericPolicy) -> Result<f64> {
    let e = hermitian_eig_with(&grams.difference(), policy)?;
    Ok(policy.classify_rel * e.spectral_norm())
}

pub fn classify_difference(grams: &GramPair, tol: f64) -> Result<DifferenceClass> {
    classify_difference_with(grams, tol, &NumericPolicy::default())
}

pub fn classify_difference_with(
    grams: &GramPair,
    tol: f64,
    policy: &NumericPolicy,
) -> Result<DifferenceClass> {
    let eigen = hermitian_eig_with(&grams.difference(), policy)?;
    Ok(classify_eigen(eigen, tol))
}

/// Classification with the default relative tolerance.
pub fn classify(grams: &GramPair, policy: &NumericPolicy) -> Result<DifferenceClass> {
    let eigen = hermitian_eig_with(&grams.difference(), policy)?;
    let tol = policy.classify_rel * eigen.spectral_norm();
    Ok(classify_eigen(eigen, tol))
}

fn classify_eigen(eigen: EigDecomposition, tol: f64) -> DifferenceClass {
    let m = eigen.values.iter().filter(|&&v| v > tol).count();
    let n = eigen.dim();
    let kind = if m == 0 {
        DifferenceKind::NegativeSemidefinite
    } else if m == n {
        DifferenceKind::PositiveDefinite
    } else if eigen.min() >= -tol {
        DifferenceKind::PsdSingular
    } else {
        DifferenceKind::Indefinite
    };
    DifferenceClass {
        kind,
        m,
        eigen,
        tol,
    }
}

/// A generalized eigenvalue of `(HᴴH, GᴴG)`, which is infinite along
/// directions the eavesdropper does not see.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinity => None,
        }
    }
}

/// Generalized singular values of `(H, G)` derived from the full-rank
/// workspace: `γ_i = σ_i² = 1 + 1/(d_i − 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    /// One entry per diagonal element of `D`, in the order of `D`.
    pub gamma: Vec<ExtendedReal>,
    /// `Σ log σ_i²`, present only when every `γ_i` is finite.
    pub log_term: Option<f64>,
}

impl SpectralSummary {
    pub fn sigma_sq(&self) -> &[ExtendedReal] {
        &self.gamma
    }
}

pub fn spectral_summary(grams: &GramPair) -> Result<SpectralSummary> {
    spectral_summary_with(grams, &NumericPolicy::default())
}

pub fn spectral_summary_with(grams: &GramPair, policy: &NumericPolicy) -> Result<SpectralSummary> {
    let ws = build_workspace(grams, policy)?;
    let gamma: Vec<ExtendedReal> = ws
        .d_raw
        .iter()
        .map(|&d| {
            if d > 1.0 + policy.lambda_tol {
                ExtendedReal::Finite(1.0 + 1.0 / (d - 1.0))
            } else {
                ExtendedReal::Infinity
            }
        })
        .collect();
    let log_term = gamma
        .iter()
        .map(|g| g.finite().map(libm::log))
        .sum::<Option<f64>>();
    Ok(SpectralSummary { gamma, log_term })
}
