//! Orbits of the Fredkin-move group on the product basis and the check that
//! their number equals the ground-state degeneracy of the bulk Hamiltonian.

mod phase;

pub use phase::{phase_diagram, PhaseDiagram, PhaseSample, Quadrant, PHASE_MAGNITUDES};

use crate::caps::Caps;
use crate::combinatorics::{colored_fredkin_neighbors_with, for_each_move, ColoredSpinWord, SpinWord};
use crate::error::{Error, Result};
use crate::model::{build_bulk_hamiltonian, colored_terms, ColoredParts, Operator};
use crate::solver::{dense_eigenvalues, norm_estimate, KERNEL_TOL};

use petgraph::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub n_sites: usize,
    /// `None` for the uncolored chain.
    pub n_colors: Option<usize>,
    pub n_states: usize,
    /// Orbit of each basis index; orbits are numbered by their smallest member.
    pub orbit_id: Vec<u32>,
    pub orbit_count: usize,
    /// Smallest basis index of each orbit.
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl OrbitPartition {
    /// Basis word of `index` in this partition's encoding.
    pub fn word(&self, index: usize) -> String {
        match self.n_colors {
            None => SpinWord::new(self.n_sites, index as u64).to_string(),
            Some(k) => ColoredSpinWord::from_index(index, self.n_sites, k).to_string(),
        }
    }

    /// Members of every orbit, each ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.orbit_count];
        for (i, &o) in self.orbit_id.iter().enumerate() {
            out[o as usize].push(i);
        }
        out
    }
}

/// Connected components of the Fredkin-move graph on all `2^N` (or `(2k)^N`)
/// basis states.
pub fn orbit_partition(n_sites: usize, periodic: bool, colored: Option<usize>) -> Result<OrbitPartition> {
    let local_dim = 2 * colored.unwrap_or(1);
    if colored == Some(0) {
        return Err(Error::InvalidArgument("number of colors must be at least 1".into()));
    }
    if n_sites == 0 || n_sites >= 63 {
        return Err(Error::InvalidArgument(format!("unsupported chain length {n_sites}")));
    }
    Caps::global().check_states((local_dim as f64).powi(n_sites as i32))?;
    let n_states = local_dim.pow(n_sites as u32);
    let mut uf = UnionFind::<usize>::new(n_states);
    match colored {
        None => {
            for i in 0..n_states {
                for_each_move(i as u64, n_sites, periodic, |j| {
                    uf.union(i, j as usize);
                });
            }
        }
        Some(k) => {
            for i in 0..n_states {
                let w = ColoredSpinWord::from_index(i, n_sites, k);
                for v in colored_fredkin_neighbors_with(&w, periodic) {
                    uf.union(i, v.index());
                }
            }
        }
    }
    let mut label = vec![u32::MAX; n_states];
    let mut orbit_id = vec![0u32; n_states];
    let (mut representatives, mut sizes) = (Vec::new(), Vec::new());
    for (i, id) in orbit_id.iter_mut().enumerate() {
        let root = uf.find_mut(i);
        if label[root] == u32::MAX {
            label[root] = representatives.len() as u32;
            representatives.push(i);
            sizes.push(0);
        }
        *id = label[root];
        sizes[label[root] as usize] += 1;
    }
    Ok(OrbitPartition {
        n_sites,
        n_colors: colored,
        n_states,
        orbit_id,
        orbit_count: representatives.len(),
        representatives,
        sizes,
    })
}

/// Bulk Hamiltonian whose ground space the orbits describe: the uncolored
/// three-site terms, or the colored `H_F`.
pub fn bulk_operator(n_sites: usize, periodic: bool, colored: Option<usize>) -> Result<Operator> {
    match colored {
        None => build_bulk_hamiltonian(n_sites, periodic),
        Some(k) => {
            let parts = ColoredParts {
                periodic,
                ..ColoredParts::BULK_ONLY
            };
            Ok(colored_terms(n_sites, k, parts)?.to_sparse())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTheoremReport {
    pub n_sites: usize,
    pub periodic: bool,
    pub n_colors: Option<usize>,
    pub orbit_count: usize,
    pub kernel_dim: usize,
    /// Largest `‖H u‖` over the normalized uniform orbit superpositions `u`.
    pub max_orbit_energy: f64,
    /// Matrix entries of `H` joining different orbits.
    pub cross_orbit_entries: usize,
}

impl OrbitTheoremReport {
    pub fn holds(&self) -> bool {
        self.orbit_count == self.kernel_dim && self.max_orbit_energy <= 1e-10 && self.cross_orbit_entries == 0
    }
}

/// Tolerance on `‖H u‖` for orbit superpositions.
pub const ORBIT_ENERGY_TOL: f64 = 1e-10;

/// Builds the orbit partition and the bulk Hamiltonian, measures the kernel
/// dimension densely and checks each orbit superposition is annihilated.
/// Fails with [`Error::MismatchDetected`] when the counts or energies disagree.
pub fn verify_orbit_theorem(n_sites: usize, periodic: bool, colored: Option<usize>) -> Result<OrbitTheoremReport> {
    let partition = orbit_partition(n_sites, periodic, colored)?;
    let h = bulk_operator(n_sites, periodic, colored)?;
    let csr = h.csr().expect("bulk operator is sparse");

    let mut row_defect = vec![0.0f64; partition.n_states];
    let mut cross_orbit_entries = 0;
    for (r, c, v) in csr.triplets() {
        if partition.orbit_id[r] == partition.orbit_id[c] {
            row_defect[r] += v;
        } else {
            cross_orbit_entries += 1;
        }
    }
    // with no cross-orbit entries, ‖H u_o‖² = Σ_{r ∈ o} (row sum over o)² / |o|
    let mut energy_sq = vec![0.0f64; partition.orbit_count];
    for (r, d) in row_defect.iter().enumerate() {
        energy_sq[partition.orbit_id[r] as usize] += d * d;
    }
    let max_orbit_energy = energy_sq
        .iter()
        .zip(&partition.sizes)
        .map(|(e, &s)| (e / s as f64).sqrt())
        .fold(0.0, f64::max);

    let threshold = KERNEL_TOL * norm_estimate(&h)?;
    let kernel_dim = dense_eigenvalues(&h).iter().filter(|l| l.abs() <= threshold).count();

    let report = OrbitTheoremReport {
        n_sites,
        periodic,
        n_colors: colored,
        orbit_count: partition.orbit_count,
        kernel_dim,
        max_orbit_energy,
        cross_orbit_entries,
    };
    if !report.holds() {
        return Err(Error::MismatchDetected(format!(
            "N={n_sites} periodic={periodic} colors={colored:?}: {} orbits, kernel dimension {}, max orbit energy {:e}, {} cross-orbit entries",
            report.orbit_count, report.kernel_dim, report.max_orbit_energy, report.cross_orbit_entries
        )));
    }
    Ok(report)
}

/// Matching of a zero-magnetization word on a ring: pairs `(open, close)` of
/// the Dyck word obtained by some cyclic rotation, mapped back to the
/// original sites. `None` when the magnetization is nonzero.
pub fn periodic_matching(w: &SpinWord) -> Option<Vec<(usize, usize)>> {
    let n = w.n_sites();
    if w.magnetization() != 0 {
        return None;
    }
    let ups: Vec<bool> = w.steps().collect();
    for shift in 0..n.max(1) {
        let rotated: Vec<bool> = (0..n).map(|i| ups[(i + shift) % n]).collect();
        let mut stack = Vec::new();
        let mut pairs = Vec::new();
        let mut ok = true;
        for (i, &up) in rotated.iter().enumerate() {
            if up {
                stack.push(i);
            } else if let Some(open) = stack.pop() {
                pairs.push(((open + shift) % n, (i + shift) % n));
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            return Some(pairs);
        }
    }
    None
}

/// Number of ring-matched pairs whose arc crosses the edge between the last
/// and first site.
pub fn edge_crossings(w: &SpinWord) -> Option<usize> {
    periodic_matching(w).map(|pairs| pairs.iter().filter(|(open, close)| open > close).count())
}
