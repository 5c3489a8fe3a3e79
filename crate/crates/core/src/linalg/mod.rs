//! Dense complex Hermitian linear algebra for the small (`n ≤ 8`) matrices
//! this crate works with.

mod decomp;
mod eig;
mod matrix;
#[cfg(test)]
pub(crate) mod test_util;

pub(crate) use decomp::psd_sqrt_from_eig;
pub use decomp::{
    cholesky, clip_psd, gevd_definite, gevd_definite_with, hpd_inverse, logdet_hpd, psd_sqrt,
    psd_sqrt_with, solve, Gevd,
};
pub use eig::{hermitian_eig, hermitian_eig_with, EigDecomposition};
pub use matrix::{c64, ComplexMatrix, HermitianMatrix};
