//! Channel, covariance and tolerance-policy files.
//!
//! Complex entries are `[re, im]` pairs and matrices are arrays of rows:
//!
//! ```json
//! { "label": "toy", "H": [[[1.0, 0.0]]], "G": [[[0.5, 0.0]]] }
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wiretap_core::{c64, ComplexMatrix, HermitianMatrix, NumericPolicy, WiretapChannel};

use crate::error::CliError;

pub type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(rename = "H")]
    pub h: RawMatrix,
    #[serde(rename = "G")]
    pub g: RawMatrix,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceFile {
    #[serde(rename = "Q")]
    pub q: RawMatrix,
}

/// Partial [`NumericPolicy`]; absent fields keep their defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyOverrides {
    pub psd_rel: Option<f64>,
    pub lambda_tol: Option<f64>,
    pub classify_rel: Option<f64>,
    pub eps_reg: Option<f64>,
    pub jacobi_tol: Option<f64>,
    pub jacobi_max_sweeps: Option<usize>,
    pub mu_floor: Option<f64>,
    pub bisect_rel: Option<f64>,
    pub bisect_max_iter: Option<usize>,
}

impl PolicyOverrides {
    pub fn apply(&self, base: NumericPolicy) -> Result<NumericPolicy, CliError> {
        let mut p = base;
        let reals = [
            ("psd_rel", self.psd_rel, &mut p.psd_rel),
            ("lambda_tol", self.lambda_tol, &mut p.lambda_tol),
            ("classify_rel", self.classify_rel, &mut p.classify_rel),
            ("eps_reg", self.eps_reg, &mut p.eps_reg),
            ("jacobi_tol", self.jacobi_tol, &mut p.jacobi_tol),
            ("mu_floor", self.mu_floor, &mut p.mu_floor),
            ("bisect_rel", self.bisect_rel, &mut p.bisect_rel),
        ];
        for (name, value, slot) in reals {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::Input(format!(
                        "tolerance {name} must be positive and finite"
                    )));
                }
                *slot = v;
            }
        }
        for (name, value, slot) in [
            (
                "jacobi_max_sweeps",
                self.jacobi_max_sweeps,
                &mut p.jacobi_max_sweeps,
            ),
            (
                "bisect_max_iter",
                self.bisect_max_iter,
                &mut p.bisect_max_iter,
            ),
        ] {
            if let Some(v) = value {
                if v == 0 {
                    return Err(CliError::Input(format!("{name} must be at least 1")));
                }
                *slot = v;
            }
        }
        Ok(p)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn to_matrix(name: &str, rows: &RawMatrix) -> Result<ComplexMatrix, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 {
        return Err(CliError::Input(format!("{name} is empty")));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(CliError::Input(format!(
            "{name} is ragged: row {i} has {} entries, row 0 has {cols}",
            rows[i].len()
        )));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|&[re, im]| c64::new(re, im))
        .collect();
    Ok(ComplexMatrix::from_vec(rows.len(), cols, data)?)
}

pub fn from_matrix(m: &ComplexMatrix) -> RawMatrix {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

/// A parsed channel file with a display name.
#[derive(Debug, Clone)]
pub struct LoadedChannel {
    pub name: String,
    pub channel: WiretapChannel,
}

pub fn load_channel(path: &Path) -> Result<LoadedChannel, CliError> {
    let file: ChannelFile = read_json(path)?;
    let h = to_matrix("H", &file.h)?;
    let g = to_matrix("G", &file.g)?;
    if h.cols() != g.cols() {
        return Err(CliError::Input(format!(
            "H has {} columns but G has {}",
            h.cols(),
            g.cols()
        )));
    }
    let name = file.label.unwrap_or_else(|| {
        path.file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned())
    });
    Ok(LoadedChannel {
        name,
        channel: WiretapChannel::new(h, g)?,
    })
}

pub fn load_covariance(path: &Path) -> Result<HermitianMatrix, CliError> {
    let file: CovarianceFile = read_json(path)?;
    let m = to_matrix("Q", &file.q)?;
    Ok(HermitianMatrix::new(m)?)
}

pub fn save_covariance(path: &Path, q: &HermitianMatrix) -> Result<(), CliError> {
    let file = CovarianceFile {
        q: from_matrix(q.as_matrix()),
    };
    let mut text = serde_json::to_string(&file).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_policy(path: Option<&PathBuf>) -> Result<NumericPolicy, CliError> {
    match path {
        None => Ok(NumericPolicy::default()),
        Some(p) => read_json::<PolicyOverrides>(p)?.apply(NumericPolicy::default()),
    }
}
