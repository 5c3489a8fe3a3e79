use super::rate_gradient;
use crate::linalg::{hermitian_eig_with, HermitianMatrix};
use crate::model::GramPair;
use crate::{NumericPolicy, Result};

/// Residuals of the optimality conditions at a candidate covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct KktReport {
    pub gradient: HermitianMatrix,
    /// `Re Tr(∇R·Q)/P`.
    pub mu_est: f64,
    /// `μI − ∇R`.
    pub multiplier: HermitianMatrix,
    /// `‖MQ‖_F`.
    pub stationarity: f64,
    /// `max(0, −λ_min(M))`.
    pub dual_feasibility: f64,
    /// `|Tr Q − P|`.
    pub primal_trace: f64,
    /// `max(0, −λ_min(Q))`.
    pub primal_psd: f64,
}

impl KktReport {
    pub const STATIONARITY_REL: f64 = 1e-6;
    pub const DUAL_TOL: f64 = 1e-8;
    pub const PRIMAL_TOL: f64 = 1e-8;

    /// Stationarity within `1e-6·‖∇R‖_F`, dual and primal residuals within `1e-8`.
    pub fn verified(&self) -> bool {
        self.stationarity <= Self::STATIONARITY_REL * self.gradient.frobenius_norm()
            && self.dual_feasibility <= Self::DUAL_TOL
            && self.primal_trace <= Self::PRIMAL_TOL
            && self.primal_psd <= Self::PRIMAL_TOL
    }
}

pub fn kkt_residuals(
    grams: &GramPair,
    q: &HermitianMatrix,
    p: f64,
    policy: &NumericPolicy,
) -> Result<KktReport> {
    let gradient = rate_gradient(grams, q)?;
    let mu_est = gradient.inner(q) / p;
    let multiplier = gradient.scale(-1.0).add_identity(mu_est);
    let stationarity = (multiplier.as_matrix() * q.as_matrix()).frobenius_norm();
    let dual_feasibility = (-hermitian_eig_with(&multiplier, policy)?.min()).max(0.0);
    let primal_trace = (q.trace() - p).abs();
    let primal_psd = (-hermitian_eig_with(q, policy)?.min()).max(0.0);
    Ok(KktReport {
        gradient,
        mu_est,
        multiplier,
        stationarity,
        dual_feasibility,
        primal_trace,
        primal_psd,
    })
}
