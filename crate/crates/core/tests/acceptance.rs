//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line (visible with `--nocapture`) and then
//! asserts.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use wiretap_core::linalg::{gevd_definite, hermitian_eig};
use wiretap_core::oracle::{
    kkt_residuals, project_trace_psd, projected_gradient_ascent, rate_gradient, AscentOptions,
};
use wiretap_core::solver::{
    high_snr_capacity, lift_solution, reduce_equivalent, solve_full_rank, solve_rank_one,
    water_filling,
};
use wiretap_core::{
    classify, secrecy_rate, solve, DifferenceKind, GramPair, HermitianMatrix, Method, NumericPolicy,
};

fn report(id: u32, pass: bool, detail: String, elapsed: Duration) -> bool {
    println!(
        "criterion {id}: {} {detail} [{:.3} s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    pass
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

fn valid_at(grams: &GramPair, p: f64) -> bool {
    solve_full_rank(grams, p, &NumericPolicy::default())
        .unwrap()
        .full_rank_valid
}

/// Scans the validity flag on a fine grid, requires a single false→true
/// switch, and refines it by bisection.
fn validity_transition(grams: &GramPair, lo: f64, hi: f64) -> Option<f64> {
    let grid = linspace(lo, hi, 400);
    let flags: Vec<bool> = grid.iter().map(|&p| valid_at(grams, p)).collect();
    let switches = flags.windows(2).filter(|w| w[0] != w[1]).count();
    if switches != 1 || flags[0] || !flags[flags.len() - 1] {
        return None;
    }
    let k = flags.iter().position(|&f| f)?;
    let (mut a, mut b) = (grid[k - 1], grid[k]);
    while b - a > 1e-9 {
        let mid = 0.5 * (a + b);
        if valid_at(grams, mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    Some(b)
}

fn threshold_criterion(id: u32, grams: &GramPair, window: (f64, f64)) {
    let start = Instant::now();
    let transition = validity_transition(grams, 0.05, 10.0);
    let elapsed = start.elapsed();
    let inside = transition.is_some_and(|t| t >= window.0 && t <= window.1);
    let pass = report(
        id,
        inside && elapsed < Duration::from_secs(1),
        format!(
            "transition at P_t = {}, required in [{}, {}]",
            transition.map_or_else(|| "none".to_string(), |t| format!("{t:.5}")),
            window.0,
            window.1
        ),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn criterion_01_example1_threshold() {
    threshold_criterion(1, &common::grams1(), (2.6, 3.0));
}

#[test]
fn criterion_02_example2_threshold() {
    threshold_criterion(2, &common::grams2(), (0.4, 0.6));
}

#[test]
fn criterion_03_alpha_boundary() {
    let start = Instant::now();
    let policy = NumericPolicy::default();
    let a = HermitianMatrix::inner_gram(&common::example2_h());
    let kind = |alpha: f64| {
        let grams = GramPair::new(a.clone(), HermitianMatrix::identity(3).scale(alpha)).unwrap();
        classify(&grams, &policy).unwrap().kind
    };
    let below = linspace(0.0, 1.90, 96)
        .into_iter()
        .all(|al| kind(al) == DifferenceKind::PositiveDefinite);
    let above = linspace(2.0, 4.0, 41)
        .into_iter()
        .all(|al| kind(al) != DifferenceKind::PositiveDefinite);
    let elapsed = start.elapsed();
    let pass = report(
        3,
        below && above && elapsed < Duration::from_secs(1),
        format!("PD for all α ≤ 1.90: {below}; not PD for all α ≥ 2.00: {above}"),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn criterion_04_closed_form_matches_oracle() {
    let start = Instant::now();
    let policy = NumericPolicy::default();
    let mut worst: f64 = 0.0;
    let mut valid_points = 0;
    let mut fallback_ok = true;
    for grams in [common::grams1(), common::grams2()] {
        for p in linspace(0.5, 20.0, 20) {
            let closed = solve_full_rank(&grams, p, &policy).unwrap();
            if closed.full_rank_valid {
                valid_points += 1;
                let oracle =
                    projected_gradient_ascent(&grams, p, &AscentOptions::default(), &policy)
                        .unwrap();
                worst = worst.max((closed.capacity_nats - oracle.capacity_nats).abs());
            } else {
                fallback_ok &= solve(&grams, p, &policy).unwrap().method == Method::NumericalOracle;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = report(
        4,
        worst <= 1e-5 && fallback_ok && elapsed < Duration::from_secs(30),
        format!("max |closed − oracle| = {worst:.3e} over {valid_points} valid points; fallback reported: {fallback_ok}"),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn criterion_05_kkt_on_closed_forms() {
    let start = Instant::now();
    let policy = NumericPolicy::default();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, grams) in [
        ("example1", common::grams1()),
        ("example2", common::grams2()),
    ] {
        let mut grid = linspace(0.5, 20.0, 20);
        grid.extend([5.0, 10.0, 100.0]);
        for p in grid {
            let s = solve(&grams, p, &policy).unwrap();
            if s.method != Method::FullRankClosedForm {
                continue;
            }
            checked += 1;
            if !kkt_residuals(&grams, &s.q, p, &policy).unwrap().verified() {
                failures.push(format!("{name}@{p}"));
            }
        }
    }
    let pass = report(
        5,
        failures.is_empty() && checked > 0,
        format!("{checked} closed-form solutions checked, failures: {failures:?}"),
        start.elapsed(),
    );
    assert!(pass);
}

#[test]
fn criterion_06_high_snr_asymptote() {
    let start = Instant::now();
    let policy = NumericPolicy::default();
    let grams = common::grams2();
    let cap = solve(&grams, 1e6, &policy).unwrap().capacity_nats;
    let asym = high_snr_capacity(&grams, &policy).unwrap();
    let gap = (cap - asym).abs();
    let pass = report(
        6,
        gap <= 1e-3,
        format!("capacity(1e6) = {cap:.9}, asymptote = {asym:.9}, gap = {gap:.3e}"),
        start.elapsed(),
    );
    assert!(pass);
}

/// Water-filling by bisection on the water level.
fn reference_water_filling(a: &HermitianMatrix, p: f64) -> HermitianMatrix {
    let e = hermitian_eig(a).unwrap();
    let gains: Vec<f64> = e.values.iter().map(|&g| g.max(0.0)).collect();
    let fill = |level: f64| -> f64 {
        gains
            .iter()
            .filter(|&&g| g > 0.0)
            .map(|&g| (level - 1.0 / g).max(0.0))
            .sum()
    };
    let (mut lo, mut hi) = (
        0.0,
        p + gains
            .iter()
            .filter(|&&g| g > 0.0)
            .map(|g| 1.0 / g)
            .sum::<f64>(),
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if fill(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let level = 0.5 * (lo + hi);
    let powers: Vec<f64> = gains
        .iter()
        .map(|&g| {
            if g > 0.0 {
                (level - 1.0 / g).max(0.0)
            } else {
                0.0
            }
        })
        .collect();
    HermitianMatrix::from_spectrum(&e.vectors, &powers)
}

#[test]
fn criterion_07_water_filling_limit() {
    let start = Instant::now();
    let policy = NumericPolicy::default();
    let a = HermitianMatrix::inner_gram(&common::example2_h());
    let p = 20.0;
    let wf = water_filling(&a, p, &policy).unwrap();
    let tiny = GramPair::new(a.clone(), HermitianMatrix::identity(3).scale(1e-10)).unwrap();
    let near = solve(&tiny, p, &policy).unwrap();
    let dist = near.q.sub(&wf.q).frobenius_norm();

    let zero = GramPair::new(a.clone(), HermitianMatrix::zeros(3)).unwrap();
    let exact = solve(&zero, p, &policy).unwrap();
    let reference = reference_water_filling(&a, p);
    let exact_dist = exact.q.sub(&reference).frobenius_norm();
    let pass = report(
        7,
        dist <= 1e-6 && exact_dist <= 1e-10 && exact.method == Method::WaterFilling,
        format!(
            "‖Q(α=1e-10) − WF‖_F = {dist:.3e}; exact G = 0 path vs reference = {exact_dist:.3e}"
        ),
        start.elapsed(),
    );
    assert!(pass);
}

#[test]
fn criterion_08_reduction_matches_oracle() {
    let start = Instant::now();
    let policy = NumericPolicy::default();
    let mut rng = common::rng(8);
    let mut worst: f64 = 0.0;
    let mut worst_coupling: f64 = 0.0;
    for i in 0..50 {
        let n = 3 + i % 3;
        let m = 1 + (i / 3) % (n - 1);
        let grams = common::psd_singular_instance(&mut rng, n, m);
        let p = rng.gen_range(0.5..10.0);
        let class = classify(&grams, &policy).unwrap();
        assert_eq!((class.kind, class.m), (DifferenceKind::PsdSingular, m));
        let eq = reduce_equivalent(&grams, class.tol, &policy).unwrap();
        let reduced = solve(&eq.reduced, p, &policy).unwrap();
        let lifted = lift_solution(&reduced.q, &eq.basis).unwrap();
        let via_reduction = secrecy_rate(&grams, &lifted).unwrap();
        let oracle =
            projected_gradient_ascent(&grams, p, &AscentOptions::default(), &policy).unwrap();
        worst = worst.max((via_reduction - oracle.capacity_nats).abs());

        // ‖J₂‖_F, the block of ΨᴴBΨ coupling range and null space of A − B
        let rotated = grams.b().congruence(&eq.basis.adjoint());
        let coupling = (0..m)
            .flat_map(|r| (m..n).map(move |c| (r, c)))
            .map(|(r, c)| rotated[(r, c)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst_coupling = worst_coupling.max(coupling);
    }
    let pass = report(
        8,
        worst <= 1e-5,
        format!("50 instances, max |reduce+lift − oracle| = {worst:.3e}, max ‖J₂‖_F = {worst_coupling:.3e}"),
        start.elapsed(),
    );
    assert!(pass);
}

#[test]
fn criterion_09_rank_bound() {
    let start = Instant::now();
    let policy = NumericPolicy::default();
    let mut rng = common::rng(9);
    let mut count = 0;
    let mut violations = 0;
    while count < 50 {
        let n = 2 + count % 4;
        let m = 1 + (count / 4) % (n - 1);
        let grams = common::indefinite_instance(&mut rng, n, m);
        let class = classify(&grams, &policy).unwrap();
        if class.kind != DifferenceKind::Indefinite {
            continue;
        }
        count += 1;
        let p = rng.gen_range(0.5..10.0);
        let s = solve(&grams, p, &policy).unwrap();
        let cutoff = 1e-6 * s.q.trace();
        let rank = hermitian_eig(&s.q)
            .unwrap()
            .values
            .iter()
            .filter(|&&v| v > cutoff)
            .count();
        if rank > class.m {
            violations += 1;
        }
    }
    let pass = report(
        9,
        violations == 0,
        format!("{count} indefinite instances, rank above m in {violations}"),
        start.elapsed(),
    );
    assert!(pass);
}

fn gevd_reconstruction_suite(rng: &mut impl Rng) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let n = 1 + i % 5;
        let a = common::random_psd(rng, n, n);
        let b = common::random_psd(rng, n, n).add_identity(0.05);
        let g = gevd_definite(&a, &b).unwrap();
        let c = &g.vectors;
        let ch = c.adjoint();
        let cbc = &(&ch * b.as_matrix()) * c;
        let cac = &(&ch * a.as_matrix()) * c;
        let ident = wiretap_core::ComplexMatrix::identity(n);
        let lam = wiretap_core::ComplexMatrix::from_real_diagonal(&g.values);
        let err_b = (&cbc - &ident).frobenius_norm();
        let err_a = (&cac - &lam).frobenius_norm() / g.values[0].abs().max(1.0);
        worst = worst.max(err_a).max(err_b);
    }
    worst
}

fn gradient_suite(rng: &mut impl Rng) -> f64 {
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n = 1 + i % 5;
        let grams =
            GramPair::new(common::random_psd(rng, n, n), common::random_psd(rng, n, n)).unwrap();
        let q = common::random_psd(rng, n, n).add_identity(0.5);
        let grad = rate_gradient(&grams, &q).unwrap();
        let scale = grad.frobenius_norm().max(1e-3);
        for j in 0..n {
            for k in j..n {
                let mut perturbations = Vec::new();
                let mut re = wiretap_core::ComplexMatrix::zeros(n, n);
                re[(j, k)] += wiretap_core::c64::new(1.0, 0.0);
                re[(k, j)] += wiretap_core::c64::new(1.0, 0.0);
                let expect_re = if j == k {
                    2.0 * grad[(j, j)].re
                } else {
                    2.0 * grad[(j, k)].re
                };
                perturbations.push((re, expect_re));
                if j != k {
                    let mut im = wiretap_core::ComplexMatrix::zeros(n, n);
                    im[(j, k)] = wiretap_core::c64::new(0.0, 1.0);
                    im[(k, j)] = wiretap_core::c64::new(0.0, -1.0);
                    perturbations.push((im, 2.0 * grad[(j, k)].im));
                }
                for (e, analytic) in perturbations {
                    let e = HermitianMatrix::new(e).unwrap();
                    let fd = (secrecy_rate(&grams, &q.add(&e.scale(h))).unwrap()
                        - secrecy_rate(&grams, &q.sub(&e.scale(h))).unwrap())
                        / (2.0 * h);
                    worst = worst.max((fd - analytic).abs() / analytic.abs().max(scale));
                }
            }
        }
    }
    worst
}

fn projection_suite(rng: &mut impl Rng) -> f64 {
    let policy = NumericPolicy::default();
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let n = 1 + i % 5;
        let x = common::random_psd(rng, n, n).sub(&common::random_psd(rng, n, n));
        let p = rng.gen_range(0.1..5.0);
        let q = project_trace_psd(&x, p, &policy).unwrap();
        let again = project_trace_psd(&q, p, &policy).unwrap();
        worst = worst
            .max((q.trace() - p).abs())
            .max(again.sub(&q).frobenius_norm());
    }
    worst
}

/// Returns (worst dominance shortfall, worst monotonicity drop).
fn dominance_and_monotonicity(rng: &mut impl Rng) -> (f64, f64) {
    let policy = NumericPolicy::default();
    let mut instances = vec![common::grams1(), common::grams2()];
    for i in 0..18 {
        let n = 1 + i % 4;
        let h = common::random_matrix(rng, n + 1, n);
        let g = common::random_matrix(rng, n, n).scale(0.8);
        instances.push(
            GramPair::new(
                HermitianMatrix::inner_gram(&h),
                HermitianMatrix::inner_gram(&g),
            )
            .unwrap(),
        );
    }
    let mut shortfall: f64 = 0.0;
    let mut drop: f64 = 0.0;
    for grams in &instances {
        let mut prev = 0.0;
        for p in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
            let s = solve(grams, p, &policy).unwrap();
            let r1 = solve_rank_one(grams, p, &policy).unwrap();
            shortfall = shortfall.max(r1.capacity_nats - s.capacity_nats);
            drop = drop.max(prev - s.capacity_nats);
            prev = s.capacity_nats;
        }
    }
    (shortfall, drop)
}

#[test]
fn criterion_10_property_suites() {
    let start = Instant::now();
    let mut rng = common::rng(10);
    let gevd = gevd_reconstruction_suite(&mut rng);
    let grad = gradient_suite(&mut rng);
    let proj = projection_suite(&mut rng);
    let (shortfall, drop) = dominance_and_monotonicity(&mut rng);
    let elapsed = start.elapsed();
    let pass = gevd <= 1e-9
        && grad <= 1e-5
        && proj <= 1e-12
        && shortfall <= 1e-8
        && drop <= 1e-8
        && elapsed < Duration::from_secs(120);
    let pass = report(
        10,
        pass,
        format!(
            "gevd {gevd:.2e} (≤1e-9), gradient {grad:.2e} (≤1e-5), projection {proj:.2e} (≤1e-12), \
             rank-one shortfall {shortfall:.2e} (≤1e-8), monotonicity drop {drop:.2e} (≤1e-8)"
        ),
        elapsed,
    );
    assert!(pass);
}
