use super::{
    check_power, lift_solution, reduce_equivalent, solve_full_rank, solve_rank_one, water_filling,
    Method, Solution,
};
use crate::linalg::clip_psd;
use crate::model::{classify, DifferenceKind, GramPair};
use crate::oracle::{
    default_starts, kkt_residuals, project_trace_psd, projected_gradient_ascent, AscentOptions,
};
use crate::{Error, NumericPolicy, Result};

/// Secrecy capacity and an optimal covariance under `Tr Q ≤ P`.
///
/// Routing by the sign structure of `A − B`:
///
/// | difference | route |
/// |---|---|
/// | negative semidefinite | zero capacity |
/// | positive definite | full-rank closed form; ascent if the validity check fails |
/// | singular PSD | reduction to the positive eigenspace, then the PD route; ascent if the lifted covariance fails the KKT check |
/// | indefinite | multi-start ascent, not certified |
pub fn solve(grams: &GramPair, p: f64, policy: &NumericPolicy) -> Result<Solution> {
    solve_with(grams, p, policy, &AscentOptions::default())
}

/// [`solve`] with explicit options for the ascent fallback.
pub fn solve_with(
    grams: &GramPair,
    p: f64,
    policy: &NumericPolicy,
    opts: &AscentOptions,
) -> Result<Solution> {
    check_power(p)?;
    solve_depth(grams, p, policy, opts, 0)
}

fn solve_depth(
    grams: &GramPair,
    p: f64,
    policy: &NumericPolicy,
    opts: &AscentOptions,
    depth: usize,
) -> Result<Solution> {
    let class = classify(grams, policy)?;
    match class.kind {
        DifferenceKind::NegativeSemidefinite => Ok(Solution::zero(grams.dim())),
        DifferenceKind::PositiveDefinite => solve_definite(grams, p, policy, opts),
        DifferenceKind::PsdSingular => {
            if depth > 0 {
                return Err(Error::Precondition(
                    "reduced problem is not positive definite",
                ));
            }
            let eq = reduce_equivalent(grams, class.tol, policy)?;
            let inner = solve_depth(&eq.reduced, p, policy, opts, depth + 1)?;
            let mut out = inner.clone();
            out.q = lift_solution(&inner.q, &eq.basis)?;
            out.method = Method::ReducedEquivalent;
            out.diagnostics.insert("reduced_dim", eq.m as f64);
            out.diagnostics
                .insert("reduced_method", inner.method.code());
            if kkt_residuals(grams, &out.q, p, policy)?.verified() {
                return Ok(out);
            }
            // The lifted covariance is only optimal when GᴴG does not couple
            // the range and null space of A − B. Otherwise continue from it
            // with the ascent on the full problem.
            let mut fallback_opts = opts.clone();
            if fallback_opts.starts.is_empty() {
                let mut starts = alloc::vec![out.q.clone()];
                starts.extend(default_starts(grams, p, opts.seed, policy)?);
                fallback_opts.starts = starts;
            }
            let mut s = projected_gradient_ascent(grams, p, &fallback_opts, policy)?;
            s.diagnostics.insert("reduced_dim", eq.m as f64);
            s.diagnostics.insert("reduced_capacity", out.capacity_nats);
            s.diagnostics.insert("certified", 1.0);
            Ok(s)
        }
        DifferenceKind::Indefinite => {
            let mut s = projected_gradient_ascent(grams, p, opts, policy)?;
            s.diagnostics.insert("rank_bound", class.m as f64);
            s.diagnostics.insert("certified", 0.0);
            Ok(s)
        }
    }
}

fn solve_definite(
    grams: &GramPair,
    p: f64,
    policy: &NumericPolicy,
    opts: &AscentOptions,
) -> Result<Solution> {
    if grams.b().is_zero() {
        return water_filling(grams.a(), p, policy);
    }
    let closed = solve_full_rank(grams, p, policy)?;
    if closed.full_rank_valid {
        return Ok(closed);
    }

    // The problem is concave here, so the ascent result is the optimum; the
    // closed-form attempt is kept as a warm start and in the diagnostics.
    let mut fallback_opts = opts.clone();
    if fallback_opts.starts.is_empty() {
        let mut starts = alloc::vec![project_trace_psd(&closed.q, p, policy)?];
        starts.extend(default_starts(grams, p, opts.seed, policy)?);
        fallback_opts.starts = starts;
    }
    let mut s = projected_gradient_ascent(grams, p, &fallback_opts, policy)?;
    let rank_one = solve_rank_one(grams, p, policy)?;
    s.diagnostics
        .insert("rank_one_lower_bound", rank_one.capacity_nats);
    s.diagnostics.insert("certified", 1.0);
    for key in ["validity_margin", "closed_form_capacity"] {
        if let Some(v) = closed.diagnostic(key) {
            s.diagnostics.insert(key, v);
        }
    }
    if let Some(mu) = closed.mu {
        s.diagnostics.insert("closed_form_mu", mu);
    }
    // A rank-one beam can never beat the optimum; guard against an ascent
    // that stopped early.
    if rank_one.capacity_nats > s.capacity_nats {
        s.q = clip_psd(&rank_one.q, policy)?;
        s.capacity_nats = rank_one.capacity_nats;
        s.rank = 1;
    }
    Ok(s)
}
