//! Schmidt spectra of the Dyck and colored Dyck states across a cut and the
//! entanglement entropies built from them. Natural logarithms throughout.

mod asymptotic;
mod sweep;

pub use asymptotic::{
    asymptotic_entropy, asymptotic_entropy_corrected, colored_entropy_asymptotic, entropy_constant, LATTICE_OFFSET,
};
pub use sweep::{entropy_sweep, EntropyMode, SweepPoint, SweepRow};

use nalgebra::DMatrix;

use crate::caps::Caps;
use crate::combinatorics::LogFactorials;
use crate::error::{Error, Result};
use crate::solver::StateVector;

/// Tolerance on `Σ multiplicity · p = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Schmidt vectors sharing height `m` at the cut: `multiplicity` of them, each
/// with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtEntry {
    pub m: usize,
    /// Saturates at `u128::MAX`; [`SchmidtEntry::ln_multiplicity`] is exact.
    pub multiplicity: u128,
    pub ln_multiplicity: f64,
    pub p: f64,
    pub ln_p: f64,
}

impl SchmidtEntry {
    /// Total probability `multiplicity · p` of the group.
    pub fn weight(&self) -> f64 {
        (self.ln_multiplicity + self.ln_p).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub n_sites: usize,
    pub cut: usize,
    pub n_colors: usize,
    /// Nonzero entries, ascending in `m`.
    pub entries: Vec<SchmidtEntry>,
}

impl SchmidtSpectrum {
    pub fn total_weight(&self) -> f64 {
        self.entries.iter().map(SchmidtEntry::weight).sum()
    }

    /// Every Schmidt coefficient `sqrt(p)` with multiplicity, descending.
    /// Only sensible when the rank is small.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for e in &self.entries {
            out.extend(std::iter::repeat_n(e.p.sqrt(), e.multiplicity as usize));
        }
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }
}

fn check_cut(n_sites: usize, cut: usize) -> Result<()> {
    if cut == 0 || cut >= n_sites {
        return Err(Error::CutOutOfRange { cut, n_sites });
    }
    Ok(())
}

/// `p_m = |C_{0,m}(L)| |C_{m,0}(N-L)| / |C_{0,0}(N)|` for the Dyck state on
/// `N = 2n` sites cut after `L` sites.
pub fn schmidt_exact(n: usize, cut: usize) -> Result<SchmidtSpectrum> {
    schmidt_colored(n, cut, 1)
}

/// Colored spectrum: for each `m`, `k^m` vectors with `p = k^{-m} p_m`.
pub fn schmidt_colored(n: usize, cut: usize, n_colors: usize) -> Result<SchmidtSpectrum> {
    let n_sites = 2 * n;
    check_cut(n_sites, cut)?;
    if n_colors == 0 {
        return Err(Error::InvalidArgument("number of colors must be at least 1".into()));
    }
    let lf = LogFactorials::new(n_sites);
    let ln_k = (n_colors as f64).ln();
    let ln_total = lf.ln_catalan(n);
    let mut entries = Vec::new();
    for m in (cut % 2..=cut.min(n_sites - cut)).step_by(2) {
        let (Some(left), Some(right)) = (lf.ln_class_size(cut, m), lf.ln_class_size(n_sites - cut, m)) else {
            continue;
        };
        let ln_p = left + right - ln_total - m as f64 * ln_k;
        let multiplicity = (n_colors as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        entries.push(SchmidtEntry {
            m,
            multiplicity,
            ln_multiplicity: m as f64 * ln_k,
            p: ln_p.exp(),
            ln_p,
        });
    }
    Ok(SchmidtSpectrum {
        n_sites,
        cut,
        n_colors,
        entries,
    })
}

/// Singular values of `state` reshaped to `d^L × d^{N-L}`, descending.
pub fn schmidt_svd(state: &StateVector, n_sites: usize, local_dim: usize, cut: usize) -> Result<Vec<f64>> {
    check_cut(n_sites, cut)?;
    let rows = local_dim.pow(cut as u32);
    let cols = local_dim.pow((n_sites - cut) as u32);
    if rows * cols != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            got: state.dim(),
        });
    }
    Caps::global().check_dense(rows.min(cols))?;
    // site 0 is the most significant digit, so the index splits as left * cols + right
    let m = DMatrix::from_row_slice(rows, cols, state.amplitudes());
    let mut values: Vec<f64> = m.singular_values().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// `-Σ multiplicity · p · ln p`.
pub fn entropy(spec: &SchmidtSpectrum) -> Result<f64> {
    let total = spec.total_weight();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { total });
    }
    Ok(spec.entries.iter().map(|e| -e.weight() * e.ln_p).sum::<f64>().max(0.0))
}

/// Entropy of a list of Schmidt probabilities (squared singular values).
pub fn entropy_of_probabilities(probabilities: &[f64]) -> Result<f64> {
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { total });
    }
    Ok(probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum::<f64>()
        .max(0.0))
}

/// Number of Schmidt vectors with `p > 0`, saturating.
pub fn schmidt_rank(spec: &SchmidtSpectrum) -> u128 {
    spec.entries
        .iter()
        .fold(0u128, |acc, e| acc.saturating_add(e.multiplicity))
}

/// Closed form of the rank: with `l = min(L, N-L)`,
/// `k^{l mod 2} (k^{2⌊l/2⌋+2} - 1) / (k² - 1)`, or `⌊l/2⌋ + 1` when `k = 1`.
pub fn schmidt_rank_formula(n_sites: usize, cut: usize, n_colors: usize) -> u128 {
    let l = cut.min(n_sites - cut);
    let half = (l / 2) as u32;
    if n_colors == 1 {
        return half as u128 + 1;
    }
    let k = n_colors as u128;
    k.pow((l % 2) as u32) * (k.pow(2 * half + 2) - 1) / (k * k - 1)
}

/// `Σ m p_m`, the mean height of the Dyck path at the cut.
pub fn height_expectation(n: usize, cut: usize) -> Result<f64> {
    let spec = schmidt_exact(n, cut)?;
    Ok(spec.entries.iter().map(|e| e.m as f64 * e.weight()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::dyck_state;

    #[test]
    fn n2_half_cut() {
        let s = schmidt_exact(2, 2).unwrap();
        let pairs: Vec<(usize, f64)> = s.entries.iter().map(|e| (e.m, e.p)).collect();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].0, 0);
        assert_eq!(pairs[1].0, 2);
        assert!((pairs[0].1 - 0.5).abs() < 1e-15 && (pairs[1].1 - 0.5).abs() < 1e-15);
        assert!((entropy(&s).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(schmidt_rank(&s), 2);
    }

    #[test]
    fn single_pair() {
        let s = schmidt_exact(1, 1).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].m, 1);
        assert!((s.entries[0].p - 1.0).abs() < 1e-15);
        assert_eq!(entropy(&s).unwrap(), 0.0);
    }

    #[test]
    fn colored_half_cut() {
        let s = schmidt_colored(2, 2, 2).unwrap();
        let e: Vec<(usize, u128, f64)> = s.entries.iter().map(|e| (e.m, e.multiplicity, e.p)).collect();
        assert_eq!((e[0].0, e[0].1), (0, 1));
        assert_eq!((e[1].0, e[1].1), (2, 4));
        assert!((e[0].2 - 0.5).abs() < 1e-15 && (e[1].2 - 0.125).abs() < 1e-15);
        assert_eq!(schmidt_rank(&s), 5);
    }

    #[test]
    fn svd_of_n2() {
        let sv = schmidt_svd(&dyck_state(2).unwrap(), 4, 2, 2).unwrap();
        assert!((sv[0] - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((sv[1] - 0.5f64.sqrt()).abs() < 1e-14);
        assert!(sv[2].abs() < 1e-14);
    }

    #[test]
    fn heights() {
        assert!((height_expectation(1, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((height_expectation(2, 2).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bad_cuts() {
        assert!(matches!(schmidt_exact(2, 0), Err(Error::CutOutOfRange { .. })));
        assert!(matches!(schmidt_exact(2, 4), Err(Error::CutOutOfRange { .. })));
    }

    #[test]
    fn unnormalized_rejected() {
        assert!(matches!(
            entropy_of_probabilities(&[0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
    }
}
