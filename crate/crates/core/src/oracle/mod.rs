//! Numerical verification independent of the closed forms: gradient of the
//! secrecy rate, projection onto `{Q ⪰ 0, Tr Q = P}`, projected-gradient
//! ascent and KKT residuals.

mod ascent;
mod kkt;
mod project;

pub use ascent::{
    ascent_report, default_starts, projected_gradient_ascent, AscentOptions, AscentReport,
    StartRun, DEFAULT_SEED,
};
pub use kkt::{kkt_residuals, KktReport};
pub use project::project_trace_psd;

use crate::linalg::{c64, solve, HermitianMatrix};
use crate::model::GramPair;
use crate::{Error, Result};

/// `∇R(Q) = (I + AQ)⁻¹A − (I + BQ)⁻¹B`, symmetrized.
///
/// Both terms are Hermitian in exact arithmetic by the push-through identity.
/// The gradient is taken with respect to the real inner product
/// `⟨X, Y⟩ = Re Tr(XY)` on Hermitian matrices.
pub fn rate_gradient(grams: &GramPair, q: &HermitianMatrix) -> Result<HermitianMatrix> {
    let n = grams.dim();
    if q.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: (q.dim(), q.dim()),
        });
    }
    let term = |g: &HermitianMatrix| -> Result<HermitianMatrix> {
        let mut lhs = g.as_matrix() * q.as_matrix();
        for i in 0..n {
            lhs[(i, i)] += c64::new(1.0, 0.0);
        }
        Ok(HermitianMatrix::symmetrize(&solve(&lhs, g.as_matrix())?))
    };
    Ok(term(grams.a())?.sub(&term(grams.b())?))
}
