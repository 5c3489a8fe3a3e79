use alloc::vec::Vec;

use crate::linalg::{hermitian_eig_with, ComplexMatrix, HermitianMatrix};
use crate::{Error, NumericPolicy, Result};

/// Frobenius-nearest point of `{Q ⪰ 0, Tr Q = P}`.
///
/// The eigenvalues of `X` are projected onto the scaled simplex
/// `{w ≥ 0, Σw = P}` by the sorted-threshold rule and the eigenvectors kept.
pub fn project_trace_psd(
    x: &HermitianMatrix,
    p: f64,
    policy: &NumericPolicy,
) -> Result<HermitianMatrix> {
    let (vectors, weights) = project_spectrum(x, p, policy)?;
    Ok(HermitianMatrix::from_spectrum(&vectors, &weights))
}

/// Eigenvectors and projected eigenvalues of `X`.
pub(crate) fn project_spectrum(
    x: &HermitianMatrix,
    p: f64,
    policy: &NumericPolicy,
) -> Result<(ComplexMatrix, Vec<f64>)> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidArgument(
            "total power must be positive and finite",
        ));
    }
    let e = hermitian_eig_with(x, policy)?;
    let weights = simplex_projection(&e.values, p);
    Ok((e.vectors, weights))
}

/// Projection of `v` (sorted descending) onto `{w ≥ 0, Σw = p}`.
pub(crate) fn simplex_projection(v: &[f64], p: f64) -> Vec<f64> {
    let mut acc = 0.0;
    let mut theta = 0.0;
    for (k, &vk) in v.iter().enumerate() {
        acc += vk;
        let t = (acc - p) / (k + 1) as f64;
        if vk - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&vk| (vk - theta).max(0.0)).collect()
}
