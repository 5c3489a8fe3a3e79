use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::project::project_spectrum;
use super::rate_gradient;
use crate::linalg::{c64, gevd_definite_with, ComplexMatrix, HermitianMatrix};
use crate::model::{rate_from_factor, GramPair};
use crate::solver::{numerical_rank, Method, Solution, RANK_REL_TOL};
use crate::{Error, NumericPolicy, Result};

/// Seed of the random starts in [`default_starts`].
pub const DEFAULT_SEED: u64 = 0x5EC2_E7A9;

const DEFAULT_START_COUNT: usize = 8;
const PENCIL_STARTS: usize = 3;
const MAX_BACKTRACKS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct AscentOptions {
    pub max_iters: usize,
    pub step_init: f64,
    pub backtrack_factor: f64,
    /// Armijo constant.
    pub sufficient_increase: f64,
    /// Stop once the objective moved by at most `stop_tol·max(1, |R|)` over
    /// the last `stop_window` iterations.
    pub stop_tol: f64,
    pub stop_window: usize,
    /// Initial covariances. Empty means [`default_starts`] with `seed`.
    pub starts: Vec<HermitianMatrix>,
    pub seed: u64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            step_init: 1.0,
            backtrack_factor: 0.5,
            sufficient_increase: 1e-4,
            stop_tol: 1e-12,
            stop_window: 10,
            starts: Vec::new(),
            seed: DEFAULT_SEED,
        }
    }
}

impl AscentOptions {
    pub fn with_starts(mut self, starts: Vec<HermitianMatrix>) -> Self {
        self.starts = starts;
        self
    }

    fn validate(&self) -> Result<()> {
        let ok = self.max_iters > 0
            && self.step_init > 0.0
            && self.backtrack_factor > 0.0
            && self.backtrack_factor < 1.0
            && self.sufficient_increase > 0.0
            && self.sufficient_increase < 1.0
            && self.stop_tol > 0.0
            && self.stop_window > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("ascent options out of range"))
        }
    }
}

/// Objective trace of one start.
#[derive(Debug, Clone, PartialEq)]
pub struct StartRun {
    /// Objective after each accepted step, starting with the projected start.
    pub history: Vec<f64>,
    pub converged: bool,
}

impl StartRun {
    pub fn iterations(&self) -> usize {
        self.history.len() - 1
    }

    pub fn objective(&self) -> f64 {
        *self
            .history
            .last()
            .expect("history holds at least the start")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AscentReport {
    pub solution: Solution,
    pub runs: Vec<StartRun>,
    pub best_start: usize,
}

/// The eight deterministic starts, in order: `(P/n)·I`; `P·uuᴴ` for up to
/// three leading generalized eigenvectors `u` of `(I + P·A, I + P·B)`;
/// random `MMᴴ` scaled to trace `P`, drawn from ChaCha8 seeded with `seed`.
pub fn default_starts(
    grams: &GramPair,
    p: f64,
    seed: u64,
    policy: &NumericPolicy,
) -> Result<Vec<HermitianMatrix>> {
    let n = grams.dim();
    let mut starts = Vec::with_capacity(DEFAULT_START_COUNT);
    starts.push(HermitianMatrix::identity(n).scale(p / n as f64));

    let pencil = gevd_definite_with(
        &grams.a().scale(p).add_identity(1.0),
        &grams.b().scale(p).add_identity(1.0),
        policy,
    )?;
    for k in 0..PENCIL_STARTS.min(n) {
        let u = ComplexMatrix::from_vec(n, 1, pencil.vectors.column(k))?;
        let uu = HermitianMatrix::outer_gram(&u);
        starts.push(uu.scale(p / uu.trace()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while starts.len() < DEFAULT_START_COUNT {
        let data = (0..n * n)
            .map(|_| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let x = HermitianMatrix::outer_gram(&ComplexMatrix::from_vec(n, n, data)?);
        starts.push(x.scale(p / x.trace()));
    }
    Ok(starts)
}

pub fn projected_gradient_ascent(
    grams: &GramPair,
    p: f64,
    opts: &AscentOptions,
    policy: &NumericPolicy,
) -> Result<Solution> {
    Ok(ascent_report(grams, p, opts, policy)?.solution)
}

/// Multi-start projected-gradient ascent with per-start objective traces.
///
/// Each iteration projects `Q + t∇R(Q)` and backtracks on `t` until the
/// Armijo condition holds, so every recorded objective is at least the
/// previous one. The trial step is the Barzilai–Borwein length from the
/// last two iterates (the previous step doubled when the curvature estimate
/// is unusable), and `step_init` on the first iteration.
///
/// The result is the best iterate over all starts, ties going to the lower
/// start index. A `convergence_warning` diagnostic of 1 marks a best start
/// that hit `max_iters` before its objective settled.
pub fn ascent_report(
    grams: &GramPair,
    p: f64,
    opts: &AscentOptions,
    policy: &NumericPolicy,
) -> Result<AscentReport> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidArgument(
            "total power must be positive and finite",
        ));
    }
    opts.validate()?;
    let starts = if opts.starts.is_empty() {
        default_starts(grams, p, opts.seed, policy)?
    } else {
        opts.starts.clone()
    };

    let mut runs = Vec::with_capacity(starts.len());
    let mut best: Option<(usize, HermitianMatrix)> = None;
    for (idx, start) in starts.iter().enumerate() {
        if start.dim() != grams.dim() {
            return Err(Error::DimensionMismatch {
                expected: (grams.dim(), grams.dim()),
                found: (start.dim(), start.dim()),
            });
        }
        let (q, run) = ascend(grams, p, start, opts, policy)?;
        let better = match &best {
            None => true,
            Some((b, _)) => run.objective() > runs_objective(&runs, *b),
        };
        runs.push(run);
        if better {
            best = Some((idx, q));
        }
    }
    let (best_start, q) = best.ok_or(Error::InvalidArgument("at least one start is required"))?;
    let run = &runs[best_start];

    let gradient = rate_gradient(grams, &q)?;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("best_start", best_start as f64);
    diagnostics.insert(
        "iterations",
        runs.iter().map(StartRun::iterations).sum::<usize>() as f64,
    );
    diagnostics.insert("converged", if run.converged { 1.0 } else { 0.0 });
    diagnostics.insert("convergence_warning", if run.converged { 0.0 } else { 1.0 });
    let solution = Solution {
        rank: numerical_rank(&q, RANK_REL_TOL, policy)?,
        capacity_nats: run.objective(),
        mu: Some(gradient.inner(&q) / p),
        q,
        method: Method::NumericalOracle,
        full_rank_valid: false,
        diagnostics,
    };
    Ok(AscentReport {
        solution,
        runs,
        best_start,
    })
}

fn runs_objective(runs: &[StartRun], idx: usize) -> f64 {
    runs[idx].objective()
}

struct Iterate {
    q: HermitianMatrix,
    objective: f64,
}

fn project(
    grams: &GramPair,
    x: &HermitianMatrix,
    p: f64,
    policy: &NumericPolicy,
) -> Result<Iterate> {
    let (vectors, weights) = project_spectrum(x, p, policy)?;
    let roots: Vec<f64> = weights.iter().map(|&w| libm::sqrt(w)).collect();
    let objective = rate_from_factor(grams, &vectors.scale_columns(&roots))?;
    Ok(Iterate {
        q: HermitianMatrix::from_spectrum(&vectors, &weights),
        objective,
    })
}

fn ascend(
    grams: &GramPair,
    p: f64,
    start: &HermitianMatrix,
    opts: &AscentOptions,
    policy: &NumericPolicy,
) -> Result<(HermitianMatrix, StartRun)> {
    let mut cur = project(grams, start, p, policy)?;
    let mut history = alloc::vec![cur.objective];
    let mut previous: Option<(HermitianMatrix, HermitianMatrix)> = None;
    let mut step = opts.step_init;
    let mut converged = false;

    for _ in 0..opts.max_iters {
        let grad = rate_gradient(grams, &cur.q)?;
        if let Some((q_prev, g_prev)) = &previous {
            let s = cur.q.sub(q_prev);
            let y = grad.sub(g_prev);
            let sy = s.inner(&y);
            let ss = s.inner(&s);
            step = if sy < 0.0 && ss > 0.0 {
                (ss / -sy).clamp(1e-12, 1e12)
            } else {
                (step * 2.0).min(1e12)
            };
        }

        let mut t = step;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial = project(grams, &cur.q.add(&grad.scale(t)), p, policy)?;
            let predicted = grad.inner(&trial.q.sub(&cur.q));
            if trial.objective >= cur.objective + opts.sufficient_increase * predicted {
                accepted = Some(trial);
                break;
            }
            t *= opts.backtrack_factor;
        }
        let Some(next) = accepted else {
            converged = true;
            break;
        };
        step = t;
        previous = Some((core::mem::replace(&mut cur, next).q, grad));
        history.push(cur.objective);

        let len = history.len();
        if len > opts.stop_window {
            let past = history[len - 1 - opts.stop_window];
            if (cur.objective - past).abs() <= opts.stop_tol * cur.objective.abs().max(1.0) {
                converged = true;
                break;
            }
        }
    }
    Ok((cur.q, StartRun { history, converged }))
}
