//! Closed-form secrecy-capacity solvers and the [`solve`] dispatcher.

mod dispatch;
mod full_rank;
mod matrix_constraint;
mod rank_one;
mod reduce;
mod solution;
mod water_filling;

pub use dispatch::{solve, solve_with};
pub use full_rank::{
    build_workspace, high_snr_capacity, lambda1_of_mu, q_of_mu, q_of_mu_direct, solve_full_rank,
    FullRankWorkspace,
};
pub use matrix_constraint::{solve_matrix_constraint, MatrixConstraintSolution};
pub use rank_one::solve_rank_one;
pub use reduce::{lift_solution, reduce_equivalent, EquivalentChannel};
pub use solution::{numerical_rank, Method, Solution, RANK_REL_TOL};
pub use water_filling::water_filling;

use crate::{Error, Result};

pub(crate) fn check_power(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "total power must be positive and finite",
        ))
    }
}
