use nalgebra::{DMatrix, DVector};

use crate::combinatorics::SpinWord;

/// Shift-matrix MPS of the Dyck state truncated to bond dimension `χ`.
/// The bond index is the path height.
#[derive(Debug, Clone, PartialEq)]
pub struct MpsRep {
    pub n_sites: usize,
    pub bond_dim: usize,
    /// `A^(`: raises the height by one.
    pub up: DMatrix<f64>,
    /// `A^)`: lowers the height by one.
    pub down: DMatrix<f64>,
    pub boundary: DVector<f64>,
}

impl MpsRep {
    /// Bond dimension `n_sites/2 + 1`, the smallest that is exact.
    pub fn exact_for(n_sites: usize) -> Self {
        mps_matrices(n_sites, n_sites / 2 + 1)
    }
}

/// `A^(_{ij} = δ_{i+1,j}`, `A^)_{ij} = δ_{i,j+1}`, `v = e_0`, truncated to `χ`.
///
/// # Panics
///
/// If `bond_dim` is zero.
pub fn mps_matrices(n_sites: usize, bond_dim: usize) -> MpsRep {
    assert!(bond_dim >= 1, "bond dimension must be at least 1");
    let up = DMatrix::from_fn(bond_dim, bond_dim, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
    let down = up.transpose();
    let mut boundary = DVector::zeros(bond_dim);
    boundary[0] = 1.0;
    MpsRep {
        n_sites,
        bond_dim,
        up,
        down,
        boundary,
    }
}

/// `v^T A^{w_1} ... A^{w_N} v`.
pub fn mps_amplitude(rep: &MpsRep, w: &SpinWord) -> f64 {
    let mut row = rep.boundary.transpose();
    for up in w.steps() {
        row *= if up { &rep.up } else { &rep.down };
    }
    (row * &rep.boundary)[(0, 0)]
}

/// Accuracy of a truncated MPS relative to the exact Dyck state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub n_sites: usize,
    pub bond_dim: usize,
    /// `|<D|D_χ>|²` of the normalized states.
    pub fidelity: f64,
    /// Largest amplitude difference of the normalized states.
    pub max_amplitude_error: f64,
}

/// ln of the number of Dyck paths of length `n_sites` with height `< cap`.
fn ln_bounded_paths(n_sites: usize, cap: usize) -> f64 {
    let mut counts = vec![0.0f64; cap.max(1)];
    counts[0] = 1.0;
    let mut ln_scale = 0.0;
    for _ in 0..n_sites {
        let mut next = vec![0.0; counts.len()];
        for (h, &c) in counts.iter().enumerate() {
            if h + 1 < counts.len() {
                next[h + 1] += c;
            }
            if h > 0 {
                next[h - 1] += c;
            }
        }
        let max = next.iter().cloned().fold(0.0, f64::max);
        if max == 0.0 {
            return f64::NEG_INFINITY;
        }
        next.iter_mut().for_each(|c| *c /= max);
        ln_scale += max.ln();
        counts = next;
    }
    if counts[0] == 0.0 {
        f64::NEG_INFINITY
    } else {
        ln_scale + counts[0].ln()
    }
}

/// Compares the bond-dimension-`χ` truncation against the exact Dyck state of
/// `n_sites` sites (which must be even).
pub fn truncation_report(n_sites: usize, bond_dim: usize) -> TruncationReport {
    let exact = ln_bounded_paths(n_sites, n_sites / 2 + 1);
    let kept = ln_bounded_paths(n_sites, bond_dim);
    let (fidelity, max_amplitude_error) = if kept == f64::NEG_INFINITY {
        (0.0, (-0.5 * exact).exp())
    } else {
        let fidelity = (kept - exact).exp();
        let dropped = if kept < exact { (-0.5 * exact).exp() } else { 0.0 };
        let rescaled = (-0.5 * kept).exp() - (-0.5 * exact).exp();
        (fidelity, dropped.max(rescaled))
    };
    TruncationReport {
        n_sites,
        bond_dim,
        fidelity,
        max_amplitude_error,
    }
}
