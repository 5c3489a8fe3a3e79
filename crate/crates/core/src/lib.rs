//! Secrecy capacity of the MIMO Gaussian wiretap channel under an average
//! transmit power constraint.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`linalg`]: dense complex Hermitian kernels (Jacobi eigensolver, PSD
//!   square roots, definite-pencil GEVD, log-determinants).
//! - [`model`]: channels, Gram pairs, the secrecy-rate objective and the
//!   classification of `HᴴH − GᴴG`.
//! - [`solver`]: closed-form solvers (matrix power constraint, full-rank
//!   solution with multiplier bisection, equivalent-channel reduction,
//!   rank-one beamforming, water-filling) and the [`solver::solve`]
//!   dispatcher.
//! - [`oracle`]: independent numerical verification (gradient, projection
//!   onto `{Q ⪰ 0, Tr Q = P}`, projected-gradient ascent, KKT residuals).
//!
//! All capacities are in nats.

#![no_std]
// `!(x > t)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod linalg;
pub mod model;
pub mod oracle;
mod policy;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::{c64, ComplexMatrix, EigDecomposition, Gevd, HermitianMatrix};
pub use model::{
    classify, classify_difference, gram_pair, secrecy_rate, spectral_summary, DifferenceClass,
    DifferenceKind, ExtendedReal, GramPair, SpectralSummary, WiretapChannel,
};
pub use policy::NumericPolicy;
pub use solver::{solve, Method, Solution};
