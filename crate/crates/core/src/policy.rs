/// Tolerances shared by every solver.
///
/// Relative tolerances are scaled by the norm of the matrix they are applied
/// to at the point of use; see the individual field docs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// PSD membership: `A ⪰ -psd_rel·‖A‖₂`.
    pub psd_rel: f64,
    /// Comparisons of eigenvalues against one (`b`, `λ₁ > 1`, Eq. 55 margin).
    pub lambda_tol: f64,
    /// Classification of `A − B`, relative to `‖A − B‖₂`.
    pub classify_rel: f64,
    /// Floor applied to `d_i − 1` when the eavesdropper Gram is singular.
    pub eps_reg: f64,
    /// Jacobi stopping threshold, relative to `‖A‖_F`.
    pub jacobi_tol: f64,
    pub jacobi_max_sweeps: usize,
    /// Initial lower end of the multiplier bracket.
    pub mu_floor: f64,
    /// Bisection stops when `|Tr Q − P| ≤ bisect_rel·max(1, P)`.
    pub bisect_rel: f64,
    pub bisect_max_iter: usize,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            psd_rel: 1e-10,
            lambda_tol: 1e-9,
            classify_rel: 1e-9,
            eps_reg: 1e-8,
            jacobi_tol: 1e-13,
            jacobi_max_sweeps: 100,
            mu_floor: 1e-12,
            bisect_rel: 1e-10,
            bisect_max_iter: 200,
        }
    }
}
