use crate::combinatorics::{classify, ClassId, SpinWord};
use crate::error::{Error, Result};
use crate::model::{build_bulk_hamiltonian, Operator};
use crate::solver::StateVector;

/// Restricted Fredkin matrix = `MAGNON_NORMALIZATION` × XXX one-magnon matrix.
pub const MAGNON_NORMALIZATION: f64 = 0.5;

/// The single-peak states `ψ_j`: a `()` peak at sites `j, j+1` on top of the
/// dip `)^a (^b`, `a + b = N - 2`. Ordered by peak position.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnonSector {
    pub n_sites: usize,
    pub class: ClassId,
    pub basis: Vec<SpinWord>,
}

impl MagnonSector {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `ψ_j` as a vector of the full `2^N` space.
    pub fn state(&self, j: usize) -> StateVector {
        StateVector::basis(1 << self.n_sites, self.basis[j].index())
    }
}

/// Sector on the dip with `a = ⌊(N-2)/2⌋` unmatched downs.
pub fn magnon_sector(n_sites: usize) -> Result<MagnonSector> {
    if n_sites < 3 {
        return Err(Error::InvalidArgument(format!(
            "magnon sector needs at least 3 sites, got {n_sites}"
        )));
    }
    magnon_sector_on(n_sites, (n_sites - 2) / 2)
}

/// Sector on the dip `)^a (^{N-2-a}`.
pub fn magnon_sector_on(n_sites: usize, a: usize) -> Result<MagnonSector> {
    if n_sites < 3 || a > n_sites - 2 || n_sites > 62 {
        return Err(Error::InvalidArgument(format!(
            "no magnon sector with a={a} on {n_sites} sites"
        )));
    }
    let dip: Vec<bool> = (0..n_sites - 2).map(|i| i >= a).collect();
    let basis: Vec<SpinWord> = (0..n_sites - 1)
        .map(|j| {
            let mut ups = dip.clone();
            ups.splice(j..j, [true, false]);
            SpinWord::from_ups(&ups)
        })
        .collect();
    let class = classify(&basis[0]);
    debug_assert!(basis.iter().all(|w| classify(w) == class));
    Ok(MagnonSector { n_sites, class, basis })
}

/// `<ψ_i| H_bulk |ψ_j>`, an `(N-1) × (N-1)` tridiagonal matrix.
pub fn magnon_restricted_hamiltonian(n_sites: usize) -> Result<Operator> {
    let sector = magnon_sector(n_sites)?;
    let h = build_bulk_hamiltonian(n_sites, false)?;
    let position: std::collections::HashMap<usize, usize> =
        sector.basis.iter().enumerate().map(|(j, w)| (w.index(), j)).collect();
    let csr = h.to_sparse();
    let csr = csr.csr().expect("sparse operator");
    let mut triplets = Vec::new();
    for (i, w) in sector.basis.iter().enumerate() {
        for (c, v) in csr.row(w.index()) {
            if let Some(&j) = position.get(&c) {
                triplets.push((i, j, v));
            }
        }
    }
    Ok(Operator::from_triplets(sector.dim(), triplets))
}

/// Largest norm of the component of `H ψ_j` outside `span{ψ}`.
pub fn sector_closure_defect(sector: &MagnonSector, op: &Operator) -> Result<f64> {
    let mut worst = 0.0f64;
    for j in 0..sector.dim() {
        let mut out = op.apply(sector.state(j).amplitudes())?;
        for w in &sector.basis {
            out[w.index()] = 0.0;
        }
        worst = worst.max(out.iter().map(|x| x * x).sum::<f64>().sqrt());
    }
    Ok(worst)
}

/// Open-chain XXX one-magnon matrix on `m` sites: coordination number on the
/// diagonal, `-1` between neighbors.
pub fn xxx_one_magnon(m: usize) -> Result<Operator> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "one-magnon chain needs at least 2 sites, got {m}"
        )));
    }
    let mut triplets = Vec::new();
    for i in 0..m {
        let coordination = (i > 0) as usize + (i + 1 < m) as usize;
        triplets.push((i, i, coordination as f64));
        if i + 1 < m {
            triplets.push((i, i + 1, -1.0));
            triplets.push((i + 1, i, -1.0));
        }
    }
    Ok(Operator::from_triplets(m, triplets))
}
