use alloc::vec::Vec;

use super::eig::hermitian_eig_with;
use super::{c64, ComplexMatrix, EigDecomposition, HermitianMatrix};
use crate::{Error, NumericPolicy, Result};

/// Lower-triangular `L` with `A = L Lᴴ`.
pub fn cholesky(a: &HermitianMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: d });
        }
        let ljj = libm::sqrt(d);
        l[(j, j)] = c64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// Natural-log determinant of a Hermitian positive definite matrix.
pub fn logdet_hpd(a: &HermitianMatrix) -> Result<f64> {
    let l = cholesky(a)?;
    Ok(2.0 * (0..a.dim()).map(|i| libm::log(l[(i, i)].re)).sum::<f64>())
}

/// Solves `A X = B` by LU with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows();
    if !a.is_square() || b.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: a.shape(),
        });
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
            .unwrap();
        if lu[(p, k)].norm() <= f64::EPSILON * scale * n as f64 {
            return Err(Error::Singular);
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(k, j)] = x[(p, j)];
                x[(p, j)] = t;
            }
        }
        let pivot = lu[(k, k)];
        for i in (k + 1)..n {
            let f = lu[(i, k)] / pivot;
            if f == c64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for j in 0..x.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for k in (i + 1)..n {
                s -= lu[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}

fn psd_threshold(e: &EigDecomposition, policy: &NumericPolicy) -> f64 {
    policy.psd_rel * e.spectral_norm()
}

/// PSD square root `A^{1/2}`, or `A^{-1/2}` when `inverse` is set.
///
/// Eigenvalues in `[-τ_psd, 0)` are clipped to zero.
pub fn psd_sqrt(a: &HermitianMatrix, inverse: bool) -> Result<HermitianMatrix> {
    psd_sqrt_with(a, inverse, &NumericPolicy::default())
}

pub fn psd_sqrt_with(
    a: &HermitianMatrix,
    inverse: bool,
    policy: &NumericPolicy,
) -> Result<HermitianMatrix> {
    let e = hermitian_eig_with(a, policy)?;
    psd_sqrt_from_eig(&e, inverse, policy)
}

pub(crate) fn psd_sqrt_from_eig(
    e: &EigDecomposition,
    inverse: bool,
    policy: &NumericPolicy,
) -> Result<HermitianMatrix> {
    let tau = psd_threshold(e, policy);
    let min = e.min();
    if min < -tau {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    if inverse {
        if !(min > tau) {
            return Err(Error::Singular);
        }
        Ok(e.map(|v| 1.0 / libm::sqrt(v)))
    } else {
        Ok(e.map(|v| libm::sqrt(v.max(0.0))))
    }
}

/// `A^{-1}` for `A ≻ 0`.
pub fn hpd_inverse(a: &HermitianMatrix, policy: &NumericPolicy) -> Result<HermitianMatrix> {
    let e = hermitian_eig_with(a, policy)?;
    if !(e.min() > psd_threshold(&e, policy)) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: e.min(),
        });
    }
    Ok(e.map(|v| 1.0 / v))
}

/// Clips a nearly-PSD Hermitian matrix onto the PSD cone.
///
/// Fails if an eigenvalue is below `-τ_psd`.
pub fn clip_psd(a: &HermitianMatrix, policy: &NumericPolicy) -> Result<HermitianMatrix> {
    let e = hermitian_eig_with(a, policy)?;
    if e.min() < -psd_threshold(&e, policy) {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: e.min(),
        });
    }
    if e.min() >= 0.0 {
        return Ok(a.clone());
    }
    Ok(e.map(|v| v.max(0.0)))
}

/// Generalized eigendecomposition of a definite Hermitian pencil `(A, B)`,
/// `B ≻ 0`: `Cᴴ B C = I`, `Cᴴ A C = Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gevd {
    pub vectors: ComplexMatrix,
    /// Sorted descending.
    pub values: Vec<f64>,
    /// Number of values strictly above `1 + τ_λ`.
    pub count_above_one: usize,
}

impl Gevd {
    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

pub fn gevd_definite(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<Gevd> {
    gevd_definite_with(a, b, &NumericPolicy::default())
}

/// Whitens with `B^{-1/2}` and diagonalises `B^{-1/2} A B^{-1/2}`.
pub fn gevd_definite_with(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    policy: &NumericPolicy,
) -> Result<Gevd> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: (b.dim(), b.dim()),
            found: (a.dim(), a.dim()),
        });
    }
    let eb = hermitian_eig_with(b, policy)?;
    if !(eb.min() > psd_threshold(&eb, policy)) {
        return Err(Error::Precondition(
            "pencil matrix B must be positive definite",
        ));
    }
    let b_isqrt = eb.map(|v| 1.0 / libm::sqrt(v));
    let whitened = a.congruence(b_isqrt.as_matrix());
    let e = hermitian_eig_with(&whitened, policy)?;
    let vectors = b_isqrt.as_matrix() * &e.vectors;
    let count_above_one = e
        .values
        .iter()
        .filter(|&&v| v > 1.0 + policy.lambda_tol)
        .count();
    Ok(Gevd {
        vectors,
        values: e.values,
        count_above_one,
    })
}
