use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_power, Method, Solution};
use crate::linalg::{c64, gevd_definite_with, ComplexMatrix, HermitianMatrix};
use crate::model::GramPair;
use crate::{NumericPolicy, Result};

/// Beamforming along the principal generalized eigenvector of
/// `(I + P·A, I + P·B)`.
///
/// The rate is `log λ₁` when `λ₁ > 1 + τ_λ`; otherwise the result is the
/// zero-capacity solution.
pub fn solve_rank_one(grams: &GramPair, p: f64, policy: &NumericPolicy) -> Result<Solution> {
    check_power(p)?;
    let n = grams.dim();
    let pa = grams.a().scale(p).add_identity(1.0);
    let pb = grams.b().scale(p).add_identity(1.0);
    let gevd = gevd_definite_with(&pa, &pb, policy)?;
    let lambda = gevd.values[0];
    if !(lambda > 1.0 + policy.lambda_tol) {
        let mut s = Solution::zero(n);
        s.diagnostics.insert("lambda_max", lambda);
        return Ok(s);
    }
    let mut u: Vec<c64> = gevd.vectors.column(0);
    let norm = libm::sqrt(u.iter().map(|z| z.norm_sqr()).sum::<f64>());
    for z in &mut u {
        *z /= norm;
    }
    let u = ComplexMatrix::from_vec(n, 1, u)?;
    let q = HermitianMatrix::outer_gram(&u).scale(p);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("lambda_max", lambda);
    Ok(Solution {
        q,
        capacity_nats: libm::log(lambda),
        rank: 1,
        mu: None,
        method: Method::RankOne,
        full_rank_valid: n == 1,
        diagnostics,
    })
}
