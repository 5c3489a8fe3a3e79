use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_power, water_filling, Method, Solution};
use crate::linalg::{
    hermitian_eig_with, hpd_inverse, psd_sqrt_from_eig, ComplexMatrix, EigDecomposition,
    HermitianMatrix,
};
use crate::model::{rate_from_factor, GramPair};
use crate::{Error, NumericPolicy, Result};

/// Channel-only quantities of the full-rank construction, valid when
/// `A − B ≻ 0`.
///
/// `S̄ = (A − B)⁻¹`, `S̄^{1/2} B S̄^{1/2} + I = Φ D Φᴴ`, and
/// `Σ̄ = (I − D⁻¹)^{-1/2} D⁻¹ Φᴴ S̄ Φ D⁻¹ (I − D⁻¹)^{-1/2} = U Ω Uᴴ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullRankWorkspace {
    pub s_bar: HermitianMatrix,
    pub s_bar_sqrt: HermitianMatrix,
    pub phi: ComplexMatrix,
    /// Diagonal of `D` after flooring `d_i − 1` at `eps_reg`.
    pub d: Vec<f64>,
    /// Diagonal of `D` as computed, sorted descending.
    pub d_raw: Vec<f64>,
    /// Whether any `d_i` was floored.
    pub regularized: bool,
    pub sigma_bar: HermitianMatrix,
    pub u: ComplexMatrix,
    pub omega: Vec<f64>,
    /// Eigenpairs of `B + B S̄ B`, the inverse of `V Vᴴ` below.
    resolvent: EigDecomposition,
    gram_h_inv: HermitianMatrix,
}

impl FullRankWorkspace {
    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// `V = S̄^{1/2} Φ D⁻¹ (I − D⁻¹)^{-1/2}`, so that `Q(μ) = V (UΛ₁Uᴴ + I − D) Vᴴ`.
    pub fn v(&self) -> ComplexMatrix {
        let cols: Vec<f64> = self
            .d
            .iter()
            .map(|&d| 1.0 / (d * libm::sqrt(1.0 - 1.0 / d)))
            .collect();
        (self.s_bar_sqrt.as_matrix() * &self.phi).scale_columns(&cols)
    }

    /// `(HᴴH)⁻¹`, the limit of `−Q(μ)` as `μ → ∞`.
    pub fn gram_h_inverse(&self) -> &HermitianMatrix {
        &self.gram_h_inv
    }

    fn trace_of_q(&self, mu: f64) -> f64 {
        self.resolvent
            .values
            .iter()
            .map(|&e| resolvent_weight(e, mu))
            .sum::<f64>()
            - self.gram_h_inv.trace()
    }
}

/// `2/(μ(1 + √(1 + 4e/μ)))`, the spectral weight of `Q(μ) + A⁻¹` along an
/// eigenvector of `B + B S̄ B` with eigenvalue `e`.
fn resolvent_weight(e: f64, mu: f64) -> f64 {
    2.0 / (mu * (1.0 + libm::sqrt(1.0 + 4.0 * e.max(0.0) / mu)))
}

pub fn build_workspace(grams: &GramPair, policy: &NumericPolicy) -> Result<FullRankWorkspace> {
    let diff = grams.difference();
    let ed = hermitian_eig_with(&diff, policy)?;
    let tol = policy.classify_rel * ed.spectral_norm();
    if !(ed.min() > tol) {
        return Err(Error::Precondition("HᴴH − GᴴG must be positive definite"));
    }
    let s_bar = ed.map(|v| 1.0 / v);
    let s_bar_sqrt = ed.map(|v| 1.0 / libm::sqrt(v));

    let t = grams
        .b()
        .congruence(s_bar_sqrt.as_matrix())
        .add_identity(1.0);
    let et = hermitian_eig_with(&t, policy)?;
    let d_raw = et.values.clone();
    let floor = 1.0 + policy.eps_reg;
    let regularized = d_raw.iter().any(|&d| d <= floor);
    let d: Vec<f64> = d_raw.iter().map(|&d| d.max(floor)).collect();
    let phi = et.vectors;

    // (I − D⁻¹)^{-1/2} D⁻¹ Φᴴ S̄ Φ D⁻¹ (I − D⁻¹)^{-1/2}
    let scaling: Vec<f64> = d
        .iter()
        .map(|&d| 1.0 / (d * libm::sqrt(1.0 - 1.0 / d)))
        .collect();
    let inner = s_bar.congruence(&phi.adjoint());
    let sigma_bar = HermitianMatrix::symmetrize(
        &inner
            .as_matrix()
            .scale_rows(&scaling)
            .scale_columns(&scaling),
    );
    let es = hermitian_eig_with(&sigma_bar, policy)?;

    let b = grams.b().as_matrix();
    let e_mat = HermitianMatrix::symmetrize(&(b + &(&(b * s_bar.as_matrix()) * b)));
    let resolvent = hermitian_eig_with(&e_mat, policy)?;
    let gram_h_inv = hpd_inverse(grams.a(), policy)?;

    Ok(FullRankWorkspace {
        s_bar,
        s_bar_sqrt,
        phi,
        d,
        d_raw,
        regularized,
        sigma_bar,
        u: es.vectors,
        omega: es.values,
        resolvent,
        gram_h_inv,
    })
}

fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "multiplier must be positive and finite",
        ))
    }
}

/// `λ_i = ½(−1 + √(1 + 4/(μω_i)))`, evaluated without cancellation.
pub fn lambda1_of_mu(ws: &FullRankWorkspace, mu: f64) -> Result<Vec<f64>> {
    check_mu(mu)?;
    if ws.omega.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::Precondition("Σ̄ must be positive definite"));
    }
    Ok(ws
        .omega
        .iter()
        .map(|&w| {
            let x = mu * w;
            2.0 / (x * (1.0 + libm::sqrt(1.0 + 4.0 / x)))
        })
        .collect())
}

/// Covariance candidate for multiplier `μ`.
///
/// Uses `Q(μ) = V U Λ₁ Uᴴ Vᴴ − (HᴴH)⁻¹ = g(B + B S̄ B) − (HᴴH)⁻¹` with
/// `g(e) = 2/(μ(1 + √(1 + 4e/μ)))`. This is algebraically the same matrix as
/// [`q_of_mu_direct`], but does not pass through `(D − I)⁻¹`, so it stays
/// accurate when `GᴴG` is singular or nearly so.
pub fn q_of_mu(ws: &FullRankWorkspace, mu: f64) -> Result<HermitianMatrix> {
    check_mu(mu)?;
    let weights: Vec<f64> = ws
        .resolvent
        .values
        .iter()
        .map(|&e| resolvent_weight(e, mu))
        .collect();
    let part = HermitianMatrix::from_spectrum(&ws.resolvent.vectors, &weights);
    Ok(part.sub(&ws.gram_h_inv))
}

/// `Q(μ) = V (UΛ₁Uᴴ + I − D) Vᴴ` evaluated literally from the workspace.
pub fn q_of_mu_direct(ws: &FullRankWorkspace, mu: f64) -> Result<HermitianMatrix> {
    let lambda = lambda1_of_mu(ws, mu)?;
    let core = middle_matrix(ws, &lambda).add_identity(1.0);
    Ok(core.congruence(&ws.v()))
}

/// `UΛ₁Uᴴ − D`.
fn middle_matrix(ws: &FullRankWorkspace, lambda: &[f64]) -> HermitianMatrix {
    let ul = HermitianMatrix::from_spectrum(&ws.u, lambda);
    ul.sub(&HermitianMatrix::from_real_diagonal(&ws.d))
}

/// Smallest eigenvalue of `UΛ₁Uᴴ − (D − I)`.
fn validity_margin(ws: &FullRankWorkspace, lambda: &[f64], policy: &NumericPolicy) -> Result<f64> {
    let m = middle_matrix(ws, lambda).add_identity(1.0);
    Ok(hermitian_eig_with(&m, policy)?.min())
}

struct Bisection {
    mu: f64,
    iterations: usize,
}

/// Finds `μ` with `|Tr Q(μ) − P| ≤ bisect_rel·max(1, P)`.
fn bisect_mu(ws: &FullRankWorkspace, p: f64, policy: &NumericPolicy) -> Result<Bisection> {
    let tol = policy.bisect_rel * p.max(1.0);
    let failure = |mu: f64| Error::Bisection {
        mu,
        trace: ws.trace_of_q(mu),
        target: p,
    };

    let mut lo = policy.mu_floor;
    let mut widened = 0;
    while ws.trace_of_q(lo) < p {
        lo *= 1e-3;
        widened += 1;
        if widened > 60 || lo == 0.0 {
            return Err(failure(lo));
        }
    }
    let mut hi = 1.0_f64;
    let mut doubled = 0;
    while ws.trace_of_q(hi) >= p {
        hi *= 2.0;
        doubled += 1;
        if doubled > 2000 || !hi.is_finite() {
            return Err(failure(hi));
        }
    }
    if !(ws.trace_of_q(lo) > ws.trace_of_q(hi)) {
        return Err(failure(hi));
    }

    let mut mu = libm::sqrt(lo * hi);
    for it in 1..=policy.bisect_max_iter {
        mu = libm::sqrt(lo * hi);
        let t = ws.trace_of_q(mu);
        if !t.is_finite() {
            return Err(failure(mu));
        }
        if (t - p).abs() <= tol {
            return Ok(Bisection { mu, iterations: it });
        }
        if t > p {
            lo = mu;
        } else {
            hi = mu;
        }
        if hi / lo - 1.0 <= 4.0 * f64::EPSILON {
            break;
        }
    }
    Err(failure(mu))
}

/// Full-rank closed form with multiplier bisection and one validity check.
///
/// When `GᴴG = 0` exactly this is water-filling on `HᴴH`. Otherwise the
/// returned solution always has method [`Method::FullRankClosedForm`]; see
/// [`Solution`] for the meaning of the fields when `full_rank_valid` is false.
/// The diagnostics carry `validity_margin` and `closed_form_capacity`.
pub fn solve_full_rank(grams: &GramPair, p: f64, policy: &NumericPolicy) -> Result<Solution> {
    check_power(p)?;
    if grams.b().is_zero() {
        return water_filling(grams.a(), p, policy);
    }
    let ws = build_workspace(grams, policy)?;
    let bis = bisect_mu(&ws, p, policy)?;
    let mu = bis.mu;
    let q = q_of_mu(&ws, mu)?;
    let lambda = lambda1_of_mu(&ws, mu)?;
    let n = ws.dim();

    let closed_form = lambda
        .iter()
        .map(|&l| libm::log(l) - libm::log1p(l))
        .chain(ws.d.iter().map(|&d| libm::log(d) - libm::log(d - 1.0)))
        .sum::<f64>();

    // With a floored D the margin lives at the scale of eps_reg and the
    // closed-form log terms are not meaningful; Q itself is still exact, and
    // V is invertible, so the same sign test is applied to Q.
    let eq = hermitian_eig_with(&q, policy)?;
    let (margin, valid) = if ws.regularized {
        (eq.min(), eq.min() > policy.lambda_tol * eq.spectral_norm())
    } else {
        let dmax = ws.d.iter().copied().fold(0.0, f64::max);
        let margin = validity_margin(&ws, &lambda, policy)?;
        (margin, margin > policy.lambda_tol * dmax)
    };

    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("validity_margin", margin);
    diagnostics.insert("closed_form_capacity", closed_form);
    diagnostics.insert("bisection_iterations", bis.iterations as f64);
    diagnostics.insert("regularized", if ws.regularized { 1.0 } else { 0.0 });
    diagnostics.insert("min_eig_q", eq.min());

    let capacity = if valid {
        let root = psd_sqrt_from_eig(&eq, false, policy)?;
        let rate = rate_from_factor(grams, root.as_matrix())?;
        diagnostics.insert("rate_of_q", rate);
        if ws.regularized {
            rate
        } else {
            closed_form
        }
    } else {
        closed_form
    };

    Ok(Solution {
        q,
        capacity_nats: capacity,
        rank: if valid {
            n
        } else {
            eq.values.iter().filter(|&&v| v > 0.0).count()
        },
        mu: Some(mu),
        method: Method::FullRankClosedForm,
        full_rank_valid: valid,
        diagnostics,
    })
}

/// `log|I + (D − I)⁻¹| = Σ log σ_i²`, the large-power limit of the capacity.
///
/// Requires `A − B ≻ 0` and `GᴴG` of full rank.
pub fn high_snr_capacity(grams: &GramPair, policy: &NumericPolicy) -> Result<f64> {
    let ws = build_workspace(grams, policy)?;
    if ws.d_raw.iter().any(|&d| d <= 1.0 + policy.lambda_tol) {
        return Err(Error::UndefinedAsymptote);
    }
    Ok(ws
        .d_raw
        .iter()
        .map(|&d| libm::log(d) - libm::log(d - 1.0))
        .sum())
}

/// Rate of the candidate at `μ`; used by tests of the closed form.
#[cfg(test)]
pub(crate) fn rate_at(grams: &GramPair, ws: &FullRankWorkspace, mu: f64) -> Result<f64> {
    crate::model::secrecy_rate_with(grams, &q_of_mu(ws, mu)?, &NumericPolicy::default())
}
