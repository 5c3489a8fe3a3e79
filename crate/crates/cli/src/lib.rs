//! Command-line front end for `wiretap-core`.
//!
//! Channel files are JSON documents holding the legitimate (`H`) and
//! eavesdropper (`G`) channel matrices as arrays of rows of `[re, im]`
//! pairs; see [`files`].

pub mod args;
pub mod commands;
pub mod error;
pub mod files;
pub mod format;

use std::io::Write;

use args::{Cli, Command};
use commands::Context;
use error::{CliError, Outcome};
use format::Unit;

pub fn run(cli: &Cli, w: &mut impl Write) -> Result<Outcome, CliError> {
    let ctx = Context {
        power: cli.power,
        unit: Unit::from_flag(cli.bits),
        policy: files::load_policy(cli.tol_policy.as_ref())?,
    };
    match &cli.command {
        Command::Capacity { channel, out } => commands::capacity(&ctx, channel, out.as_deref(), w),
        Command::Sweep {
            channel,
            sweep,
            alpha_sweep,
            rank_one,
            out,
        } => commands::sweep(
            &ctx,
            channel,
            sweep.as_ref(),
            alpha_sweep.as_ref(),
            *rank_one,
            out.as_deref(),
            w,
        ),
        Command::Validate {
            channel,
            covariance,
        } => commands::validate(&ctx, channel, covariance, w),
        Command::Compare { channel } => commands::compare(&ctx, channel, w),
    }
}
