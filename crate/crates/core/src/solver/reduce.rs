use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::model::{classify_difference_with, DifferenceKind, GramPair};
use crate::{Error, NumericPolicy, Result};

/// The `m`-dimensional problem equivalent to one with a singular PSD
/// difference.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalentChannel {
    /// `(Λ_m + J₁, J₁)`, whose difference is `Λ_m ≻ 0`.
    pub reduced: GramPair,
    /// Eigenvectors `Ψ` of `A − B`, descending; the first `m` columns span
    /// the support of the optimal covariance.
    pub basis: ComplexMatrix,
    pub m: usize,
}

impl EquivalentChannel {
    pub fn lift(&self, reduced_q: &HermitianMatrix) -> Result<HermitianMatrix> {
        lift_solution(reduced_q, &self.basis)
    }
}

/// Restricts the problem to the positive eigenspace of `A − B`.
///
/// With `A − B = Ψ diag(Λ_m, 0) Ψᴴ` and `J₁` the leading `m × m` block of
/// `ΨᴴBΨ`, the reduced Grams are `(Λ_m + J₁, J₁)`.
pub fn reduce_equivalent(
    grams: &GramPair,
    tol: f64,
    policy: &NumericPolicy,
) -> Result<EquivalentChannel> {
    let class = classify_difference_with(grams, tol, policy)?;
    if class.kind != DifferenceKind::PsdSingular {
        return Err(Error::Precondition(
            "reduction needs a singular PSD difference",
        ));
    }
    let m = class.m;
    let basis = class.eigen.vectors;
    let j1 = grams
        .b()
        .congruence(&basis.adjoint())
        .as_matrix()
        .leading_block(m, m);
    let j1 = HermitianMatrix::symmetrize(&j1);
    let lambda_m = HermitianMatrix::from_real_diagonal(&class.eigen.values[..m]);
    let reduced = GramPair::new_with(lambda_m.add(&j1), j1, policy)?;
    Ok(EquivalentChannel { reduced, basis, m })
}

/// `Ψ [Q̄ 0; 0 0] Ψᴴ`.
pub fn lift_solution(
    reduced_q: &HermitianMatrix,
    basis: &ComplexMatrix,
) -> Result<HermitianMatrix> {
    let m = reduced_q.dim();
    if m > basis.cols() {
        return Err(Error::DimensionMismatch {
            expected: (basis.rows(), basis.cols()),
            found: (m, m),
        });
    }
    Ok(reduced_q.congruence(&basis.columns(0, m)))
}
