use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use wiretap_core::model::gram_pair;
use wiretap_core::oracle::{kkt_residuals, projected_gradient_ascent, AscentOptions, KktReport};
use wiretap_core::solver::{solve_rank_one, water_filling};
use wiretap_core::{solve, GramPair, HermitianMatrix, Method, NumericPolicy, Solution};

use crate::args::Grid;
use crate::error::{CliError, Outcome};
use crate::files::{load_channel, load_covariance, save_covariance};
use crate::format::{optional, shortest, sig12, Unit};

/// Closed-form and oracle capacities further apart than this are flagged by
/// `compare`.
pub const COMPARE_FLAG_TOL: f64 = 1e-4;

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Context {
    pub power: Option<f64>,
    pub unit: Unit,
    pub policy: NumericPolicy,
}

impl Context {
    fn power(&self) -> Result<f64, CliError> {
        match self.power {
            Some(p) if p.is_finite() && p > 0.0 => Ok(p),
            Some(p) => Err(CliError::Input(format!(
                "--power must be positive and finite, got {p}"
            ))),
            None => Err(CliError::Input(
                "--power is required for this command".into(),
            )),
        }
    }
}

fn kkt_if_applicable(
    grams: &GramPair,
    s: &Solution,
    p: f64,
    policy: &NumericPolicy,
) -> Result<Option<KktReport>, CliError> {
    // Q = 0 is optimal with an inactive power constraint, which the
    // full-power residuals do not describe.
    if s.method == Method::ZeroCapacity {
        return Ok(None);
    }
    Ok(Some(kkt_residuals(grams, &s.q, p, policy)?))
}

pub fn capacity(
    ctx: &Context,
    channel: &Path,
    out: Option<&Path>,
    w: &mut impl Write,
) -> Result<Outcome, CliError> {
    let p = ctx.power()?;
    let loaded = load_channel(channel)?;
    let grams = gram_pair(&loaded.channel)?;
    let s = solve(&grams, p, &ctx.policy)?;
    let kkt = kkt_if_applicable(&grams, &s, p, &ctx.policy)?;
    if let Some(path) = out {
        save_covariance(path, &s.q)?;
    }

    writeln!(w, "channel: {}", loaded.name)?;
    writeln!(w, "power: {}", shortest(p))?;
    writeln!(
        w,
        "capacity_{}: {}",
        ctx.unit.suffix(),
        sig12(ctx.unit.convert(s.capacity_nats))
    )?;
    writeln!(w, "method: {}", s.method)?;
    writeln!(w, "rank: {}", s.rank)?;
    writeln!(w, "full_rank_valid: {}", s.full_rank_valid)?;
    writeln!(w, "mu: {}", s.mu.map_or_else(|| "-".into(), shortest))?;
    match &kkt {
        Some(k) => writeln!(w, "kkt_verified: {}", k.verified())?,
        None => writeln!(w, "kkt_verified: n/a")?,
    }
    for (key, value) in &s.diagnostics {
        writeln!(w, "diagnostic.{key}: {}", shortest(*value))?;
    }
    Ok(Outcome::Verified)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub capacity_nats: f64,
    /// Rank-one rate for a power sweep, point-to-point capacity for an
    /// eavesdropper-gain sweep.
    pub reference_nats: Option<f64>,
    pub method: Method,
    pub full_rank_valid: bool,
    pub rank: usize,
    pub mu: Option<f64>,
}

pub fn power_sweep(
    grams: &GramPair,
    grid: &Grid,
    rank_one: bool,
    policy: &NumericPolicy,
) -> Result<Vec<SweepRow>, CliError> {
    if grid.min <= 0.0 {
        return Err(CliError::Input("power sweep needs p_min > 0".into()));
    }
    grid.values()
        .into_par_iter()
        .map(|p| {
            let s = solve(grams, p, policy)?;
            let reference = if rank_one {
                Some(solve_rank_one(grams, p, policy)?.capacity_nats)
            } else {
                None
            };
            Ok(SweepRow {
                x: p,
                capacity_nats: s.capacity_nats,
                reference_nats: reference,
                method: s.method,
                full_rank_valid: s.full_rank_valid,
                rank: s.rank,
                mu: s.mu,
            })
        })
        .collect()
}

/// Replaces the eavesdropper Gram with `αI` at fixed power.
pub fn alpha_sweep(
    gram_h: &HermitianMatrix,
    p: f64,
    grid: &Grid,
    policy: &NumericPolicy,
) -> Result<Vec<SweepRow>, CliError> {
    if grid.min < 0.0 {
        return Err(CliError::Input(
            "eavesdropper-gain sweep needs a_min ≥ 0".into(),
        ));
    }
    let p2p = water_filling(gram_h, p, policy)?.capacity_nats;
    let n = gram_h.dim();
    grid.values()
        .into_par_iter()
        .map(|alpha| {
            let grams = GramPair::new_with(
                gram_h.clone(),
                HermitianMatrix::identity(n).scale(alpha),
                policy,
            )?;
            let s = solve(&grams, p, policy)?;
            Ok(SweepRow {
                x: alpha,
                capacity_nats: s.capacity_nats,
                reference_nats: Some(p2p),
                method: s.method,
                full_rank_valid: s.full_rank_valid,
                rank: s.rank,
                mu: s.mu,
            })
        })
        .collect()
}

pub fn write_csv(
    rows: &[SweepRow],
    header: [&str; 7],
    unit: Unit,
    w: impl Write,
) -> Result<(), CliError> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record([
            shortest(r.x),
            shortest(unit.convert(r.capacity_nats)),
            optional(r.reference_nats.map(|v| unit.convert(v))),
            r.method.to_string(),
            r.full_rank_valid.to_string(),
            r.rank.to_string(),
            optional(r.mu),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn sweep(
    ctx: &Context,
    channel: &Path,
    power_grid: Option<&Grid>,
    alpha_grid: Option<&Grid>,
    rank_one: bool,
    out: Option<&Path>,
    w: &mut impl Write,
) -> Result<Outcome, CliError> {
    let loaded = load_channel(channel)?;
    let grams = gram_pair(&loaded.channel)?;
    let u = ctx.unit.suffix();
    let (rows, header) = match (power_grid, alpha_grid) {
        (Some(grid), None) => {
            let rows = power_sweep(&grams, grid, rank_one, &ctx.policy)?;
            let header = [
                "p_t",
                "capacity_",
                "rank_one_",
                "method",
                "full_rank_valid",
                "rank",
                "mu",
            ];
            (rows, header)
        }
        (None, Some(grid)) => {
            let rows = alpha_sweep(grams.a(), ctx.power()?, grid, &ctx.policy)?;
            let header = [
                "alpha",
                "capacity_",
                "p2p_",
                "method",
                "full_rank_valid",
                "rank",
                "mu",
            ];
            (rows, header)
        }
        _ => {
            return Err(CliError::Input(
                "give exactly one of --sweep and --alpha-sweep".into(),
            ))
        }
    };
    let named: Vec<String> = header
        .iter()
        .map(|h| {
            if h.ends_with('_') {
                format!("{h}{u}")
            } else {
                (*h).to_string()
            }
        })
        .collect();
    let header: [&str; 7] = core::array::from_fn(|i| named[i].as_str());
    match out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|source| CliError::Write {
                path: path.to_path_buf(),
                source,
            })?;
            write_csv(&rows, header, ctx.unit, std::io::BufWriter::new(file))?;
        }
        None => write_csv(&rows, header, ctx.unit, &mut *w)?,
    }
    Ok(Outcome::Verified)
}

pub fn validate(
    ctx: &Context,
    channel: &Path,
    covariance: &Path,
    w: &mut impl Write,
) -> Result<Outcome, CliError> {
    let p = ctx.power()?;
    let loaded = load_channel(channel)?;
    let grams = gram_pair(&loaded.channel)?;
    let q = load_covariance(covariance)?;
    if q.dim() != grams.dim() {
        return Err(CliError::Input(format!(
            "covariance is {0}×{0} but the channel has {1} transmit antennas",
            q.dim(),
            grams.dim()
        )));
    }
    let k = kkt_residuals(&grams, &q, p, &ctx.policy)?;
    writeln!(w, "channel: {}", loaded.name)?;
    writeln!(w, "power: {}", shortest(p))?;
    writeln!(w, "mu_est: {}", shortest(k.mu_est))?;
    writeln!(
        w,
        "gradient_norm: {}",
        shortest(k.gradient.frobenius_norm())
    )?;
    writeln!(w, "stationarity: {:e}", k.stationarity)?;
    writeln!(w, "dual_feasibility: {:e}", k.dual_feasibility)?;
    writeln!(w, "primal_trace: {:e}", k.primal_trace)?;
    writeln!(w, "primal_psd: {:e}", k.primal_psd)?;
    let verified = k.verified();
    writeln!(
        w,
        "verdict: {}",
        if verified { "verified" } else { "unverified" }
    )?;
    Ok(if verified {
        Outcome::Verified
    } else {
        Outcome::Unverified
    })
}

struct Timed {
    label: &'static str,
    capacity_nats: f64,
    millis: f64,
    detail: String,
}

fn timed(
    label: &'static str,
    f: impl FnOnce() -> Result<(f64, String), CliError>,
) -> Result<Timed, CliError> {
    let start = Instant::now();
    let (capacity_nats, detail) = f()?;
    Ok(Timed {
        label,
        capacity_nats,
        millis: start.elapsed().as_secs_f64() * 1e3,
        detail,
    })
}

pub fn compare(ctx: &Context, channel: &Path, w: &mut impl Write) -> Result<Outcome, CliError> {
    let p = ctx.power()?;
    let loaded = load_channel(channel)?;
    let grams = gram_pair(&loaded.channel)?;
    let policy = &ctx.policy;

    let rows = [
        timed("closed_form", || {
            let s = solve(&grams, p, policy)?;
            Ok((s.capacity_nats, s.method.to_string()))
        })?,
        timed("rank_one", || {
            let s = solve_rank_one(&grams, p, policy)?;
            Ok((s.capacity_nats, s.method.to_string()))
        })?,
        timed("oracle", || {
            let s = projected_gradient_ascent(&grams, p, &AscentOptions::default(), policy)?;
            // The ascent keeps Tr Q = P; Q = 0 is also feasible.
            if s.capacity_nats < 0.0 {
                Ok((0.0, "NumericalOracle (Q = 0)".into()))
            } else {
                Ok((s.capacity_nats, s.method.to_string()))
            }
        })?,
    ];

    let u = ctx.unit;
    writeln!(w, "channel: {}", loaded.name)?;
    writeln!(w, "power: {}", shortest(p))?;
    writeln!(
        w,
        "{:<12} {:>20} {:>12}  method",
        "row",
        format!("capacity_{}", u.suffix()),
        "time_ms"
    )?;
    for r in &rows {
        writeln!(
            w,
            "{:<12} {:>20} {:>12.3}  {}",
            r.label,
            sig12(u.convert(r.capacity_nats)),
            r.millis,
            r.detail
        )?;
    }
    for (i, j) in [(0, 2), (0, 1), (2, 1)] {
        let d = u.convert(rows[i].capacity_nats - rows[j].capacity_nats);
        writeln!(w, "delta {}-{}: {:.3e}", rows[i].label, rows[j].label, d)?;
    }
    let gap = (rows[0].capacity_nats - rows[2].capacity_nats).abs();
    if gap > COMPARE_FLAG_TOL {
        writeln!(
            w,
            "flag: closed_form and oracle differ by {gap:.3e} nats (> {COMPARE_FLAG_TOL:e})"
        )?;
        return Ok(Outcome::Unverified);
    }
    Ok(Outcome::Verified)
}
