use alloc::vec::Vec;

use super::{c64, ComplexMatrix, HermitianMatrix};
use crate::{Error, NumericPolicy, Result};

/// `A = Φ diag(values) Φᴴ` with `Φ` unitary and `values` sorted descending.
///
/// The phase of each eigenvector is fixed so that its largest-magnitude
/// component is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigDecomposition {
    pub vectors: ComplexMatrix,
    pub values: Vec<f64>,
}

impl EigDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        HermitianMatrix::from_spectrum(&self.vectors, &self.values)
    }

    /// `Φ f(Λ) Φᴴ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        HermitianMatrix::from_spectrum(&self.vectors, &mapped)
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Largest eigenvalue magnitude, i.e. the spectral norm.
    pub fn spectral_norm(&self) -> f64 {
        self.max().abs().max(self.min().abs())
    }
}

pub fn hermitian_eig(a: &HermitianMatrix) -> Result<EigDecomposition> {
    hermitian_eig_with(a, &NumericPolicy::default())
}

/// Cyclic complex Jacobi.
///
/// A rotation is skipped once `|a_pq| ≤ ε·√|a_pp a_qq|` (or is negligible
/// against `‖A‖_F`), and the iteration ends after a sweep with no rotation.
/// This is tighter than the `policy.jacobi_tol` bound on the off-diagonal
/// mass, which is checked on exit.
pub fn hermitian_eig_with(a: &HermitianMatrix, policy: &NumericPolicy) -> Result<EigDecomposition> {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return Ok(EigDecomposition {
            vectors: v,
            values: alloc::vec![0.0; n],
        });
    }
    let floor = 1e-18 * norm;

    let mut converged = false;
    for _ in 0..policy.jacobi_max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                if r <= floor || r <= f64::EPSILON * libm::sqrt((app * aqq).abs()) {
                    m[(p, q)] = c64::new(0.0, 0.0);
                    m[(q, p)] = c64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                rotate(&mut m, &mut v, p, q, apq / r, r, app, aqq);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    let off = off_diagonal_norm(&m);
    if !converged && off > policy.jacobi_tol * norm {
        return Err(Error::NoConvergence {
            sweeps: policy.jacobi_max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut k = 0;
        for i in 1..n {
            if v[(i, src)].norm() > v[(k, src)].norm() {
                k = i;
            }
        }
        let pivot = v[(k, src)];
        let phase = pivot.conj() / pivot.norm();
        for i in 0..n {
            vectors[(i, col)] = v[(i, src)] * phase;
        }
        vectors[(k, col)] = c64::new(pivot.norm(), 0.0);
    }
    Ok(EigDecomposition { vectors, values })
}

#[allow(clippy::too_many_arguments)]
fn rotate(
    m: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    e: c64,
    r: f64,
    app: f64,
    aqq: f64,
) {
    let n = m.rows();
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    let ec = e.conj();

    // A ← A J, V ← V J with J = [[c, s], [-s·ē, c·ē]] on (p, q)
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c - akq * ec * s;
        m[(k, q)] = akp * s + akq * ec * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * ec * s;
        v[(k, q)] = vkp * s + vkq * ec * c;
    }
    // A ← Jᴴ A
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c - aqk * e * s;
        m[(q, k)] = apk * s + aqk * e * c;
    }
    m[(p, q)] = c64::new(0.0, 0.0);
    m[(q, p)] = c64::new(0.0, 0.0);
    m[(p, p)] = c64::new(app - t * r, 0.0);
    m[(q, q)] = c64::new(aqq + t * r, 0.0);
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}
