use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "wiretap",
    version,
    about = "Secrecy capacity of MIMO Gaussian wiretap channels"
)]
pub struct Cli {
    /// Total transmit power P.
    #[arg(long, global = true)]
    pub power: Option<f64>,
    /// Report capacities in bits instead of nats.
    #[arg(long, global = true)]
    pub bits: bool,
    /// JSON file overriding fields of the numeric tolerance policy.
    #[arg(long, global = true, value_name = "PATH")]
    pub tol_policy: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one channel at one power and print the result.
    Capacity {
        channel: PathBuf,
        /// Also write the optimal covariance as `{"Q": ...}`.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Capacity over a grid of powers, or of eavesdropper gains with GᴴG = αI.
    #[command(group(ArgGroup::new("grid").required(true).args(["sweep", "alpha_sweep"])))]
    Sweep {
        channel: PathBuf,
        /// Power grid `p_min:p_max:points`.
        #[arg(long, value_name = "P_MIN:P_MAX:POINTS")]
        sweep: Option<Grid>,
        /// Eavesdropper-gain grid `a_min:a_max:points` at fixed `--power`.
        #[arg(long, value_name = "A_MIN:A_MAX:POINTS")]
        alpha_sweep: Option<Grid>,
        /// Fill the rank-one column.
        #[arg(long)]
        rank_one: bool,
        /// CSV destination; stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check the optimality conditions of a covariance file.
    Validate {
        channel: PathBuf,
        covariance: PathBuf,
    },
    /// Closed form, rank-one beamforming and the numerical oracle side by side.
    Compare { channel: PathBuf },
}

/// Evenly spaced grid with both end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, points] = parts[..] else {
            return Err(format!("expected min:max:points, got {s:?}"));
        };
        let min: f64 = min
            .trim()
            .parse()
            .map_err(|e| format!("bad lower end {min:?}: {e}"))?;
        let max: f64 = max
            .trim()
            .parse()
            .map_err(|e| format!("bad upper end {max:?}: {e}"))?;
        let points: usize = points
            .trim()
            .parse()
            .map_err(|e| format!("bad point count {points:?}: {e}"))?;
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(format!("need finite min < max, got {min} and {max}"));
        }
        if points < 2 {
            return Err("need at least 2 points".into());
        }
        Ok(Grid { min, max, points })
    }
}
