use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_power, Method, Solution};
use crate::linalg::{hermitian_eig_with, HermitianMatrix};
use crate::{NumericPolicy, Result};

/// Classical water-filling over the eigenmodes of `gram_h`.
///
/// The active set is found by sorting, so the trace constraint is met
/// exactly. `mu` is the inverse water level.
pub fn water_filling(gram_h: &HermitianMatrix, p: f64, policy: &NumericPolicy) -> Result<Solution> {
    check_power(p)?;
    let n = gram_h.dim();
    let e = hermitian_eig_with(gram_h, policy)?;
    let floor = policy.psd_rel * e.spectral_norm();
    let gains: Vec<f64> = e
        .values
        .iter()
        .copied()
        .take_while(|&v| v > floor)
        .collect();
    if gains.is_empty() {
        return Ok(Solution::zero(n));
    }

    let mut active = 1;
    let mut level = p + 1.0 / gains[0];
    let mut inv_sum = 0.0;
    for (k, &g) in gains.iter().enumerate() {
        inv_sum += 1.0 / g;
        let candidate = (p + inv_sum) / (k + 1) as f64;
        if candidate > 1.0 / g {
            active = k + 1;
            level = candidate;
        } else {
            break;
        }
    }

    let mut powers = alloc::vec![0.0; n];
    for k in 0..active {
        powers[k] = level - 1.0 / gains[k];
    }
    let q = HermitianMatrix::from_spectrum(&e.vectors, &powers);
    let capacity_nats = gains[..active].iter().map(|&g| libm::log(g * level)).sum();
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("water_level", level);
    Ok(Solution {
        q,
        capacity_nats,
        rank: active,
        mu: Some(1.0 / level),
        method: Method::WaterFilling,
        full_rank_valid: active == n,
        diagnostics,
    })
}
