use crate::linalg::{
    gevd_definite_with, hermitian_eig_with, psd_sqrt_from_eig, solve, ComplexMatrix, Gevd,
    HermitianMatrix,
};
use crate::model::GramPair;
use crate::{Error, NumericPolicy, Result};

/// Capacity and optimal covariance under `Q ⪯ S`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixConstraintSolution {
    /// Decomposition of `(S^{1/2}AS^{1/2} + I, S^{1/2}BS^{1/2} + I)`.
    pub gevd: Gevd,
    /// `Σ log λ_i` over the generalized eigenvalues above one.
    pub capacity_nats: f64,
    pub q_s: HermitianMatrix,
}

impl MatrixConstraintSolution {
    /// Number of generalized eigenvalues above `1 + τ_λ`.
    pub fn active(&self) -> usize {
        self.gevd.count_above_one
    }
}

/// Secrecy capacity under the matrix power constraint `Q ⪯ S`.
///
/// With `C₁` the generalized eigenvectors whose eigenvalues exceed one, the
/// optimum is `S^{1/2} C₁ (C₁ᴴC₁)⁻¹ C₁ᴴ S^{1/2}`.
pub fn solve_matrix_constraint(
    grams: &GramPair,
    s: &HermitianMatrix,
    policy: &NumericPolicy,
) -> Result<MatrixConstraintSolution> {
    let n = grams.dim();
    if s.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: (s.dim(), s.dim()),
        });
    }
    let root = psd_sqrt_from_eig(&hermitian_eig_with(s, policy)?, false, policy)?;
    let pa = grams.a().congruence(root.as_matrix()).add_identity(1.0);
    let pb = grams.b().congruence(root.as_matrix()).add_identity(1.0);
    let gevd = gevd_definite_with(&pa, &pb, policy)?;
    let b = gevd.count_above_one;
    if b == 0 {
        return Ok(MatrixConstraintSolution {
            gevd,
            capacity_nats: 0.0,
            q_s: HermitianMatrix::zeros(n),
        });
    }
    let c1 = gevd.vectors.columns(0, b);
    let gram = &c1.adjoint() * &c1;
    let gram_inv = HermitianMatrix::symmetrize(&solve(&gram, &ComplexMatrix::identity(b))?);
    let projector = gram_inv.congruence(&c1);
    let q_s = projector.congruence(root.as_matrix());
    let capacity_nats = gevd.values[..b].iter().map(|&v| libm::log(v)).sum();
    Ok(MatrixConstraintSolution {
        gevd,
        capacity_nats,
        q_s,
    })
}
