use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::states::colored_dyck_state;

use super::{
    colored_entropy_asymptotic, entropy, entropy_of_probabilities, schmidt_colored, schmidt_rank, schmidt_svd,
};

/// How `S_exact` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntropyMode {
    /// SVD of the explicit state vector.
    Svd,
    /// Closed-form Schmidt spectrum in log space.
    #[default]
    Formula,
    /// Only the asymptotic estimate; no exact value.
    Asymptotic,
}

impl FromStr for EntropyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svd" => Ok(EntropyMode::Svd),
            "formula" => Ok(EntropyMode::Formula),
            "asymptotic" => Ok(EntropyMode::Asymptotic),
            _ => Err(Error::Parse(format!("unknown entropy mode `{s}`"))),
        }
    }
}

impl fmt::Display for EntropyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyMode::Svd => "svd",
            EntropyMode::Formula => "formula",
            EntropyMode::Asymptotic => "asymptotic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepPoint {
    pub n_sites: usize,
    pub cut: usize,
    pub n_colors: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub point: SweepPoint,
    pub s_exact: Option<f64>,
    pub s_asymptotic: f64,
    pub rank: Option<u128>,
    pub height_expectation: Option<f64>,
}

fn evaluate(point: SweepPoint, mode: EntropyMode) -> Result<SweepRow> {
    let SweepPoint { n_sites, cut, n_colors } = point;
    if n_sites % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "the Dyck state needs an even number of sites, got {n_sites}"
        )));
    }
    let n = n_sites / 2;
    let s_asymptotic = colored_entropy_asymptotic(n_sites, cut, n_colors);
    if mode == EntropyMode::Asymptotic {
        super::check_cut(n_sites, cut)?;
        return Ok(SweepRow {
            point,
            s_exact: None,
            s_asymptotic,
            rank: None,
            height_expectation: None,
        });
    }
    let spec = schmidt_colored(n, cut, n_colors)?;
    let height = spec.entries.iter().map(|e| e.m as f64 * e.weight()).sum();
    let (s_exact, rank) = match mode {
        EntropyMode::Svd => {
            let state = colored_dyck_state(n, n_colors)?;
            let values = schmidt_svd(&state, n_sites, 2 * n_colors, cut)?;
            let threshold = 1e-10 * values.first().copied().unwrap_or(0.0);
            let probabilities: Vec<f64> = values.iter().filter(|&&s| s > threshold).map(|s| s * s).collect();
            (entropy_of_probabilities(&probabilities)?, probabilities.len() as u128)
        }
        _ => (entropy(&spec)?, schmidt_rank(&spec)),
    };
    Ok(SweepRow {
        point,
        s_exact: Some(s_exact),
        s_asymptotic,
        rank: Some(rank),
        height_expectation: Some(height),
    })
}

/// Evaluates every point independently, in parallel when `exec` allows.
pub fn entropy_sweep(points: &[SweepPoint], mode: EntropyMode, exec: Execution) -> Result<Vec<SweepRow>> {
    exec::map_ordered(exec, points, |&p| evaluate(p, mode))
        .into_iter()
        .collect()
}
