//! The exact states of the chain: Dyck and class states, the colored Dyck
//! state, the anomalous periodic state, the MPS form of the Dyck state and
//! the one-magnon sector.

mod magnon;
mod mps;

pub use magnon::{
    magnon_restricted_hamiltonian, magnon_sector, sector_closure_defect, xxx_one_magnon, MagnonSector,
    MAGNON_NORMALIZATION,
};
pub use mps::{mps_amplitude, mps_matrices, truncation_report, MpsRep, TruncationReport};

use crate::caps::Caps;
use crate::combinatorics::{binomial, classify, enumerate_class, properly_colored_dyck_words, ClassId, SpinWord};
use crate::error::{Error, Result};
use crate::solver::StateVector;

fn check_dim(n_sites: usize, local_dim: usize) -> Result<usize> {
    let size = (local_dim as f64).powi(n_sites as i32);
    Caps::global().check_states(size)?;
    Ok(local_dim.pow(n_sites as u32))
}

fn uniform(dim: usize, indices: impl IntoIterator<Item = usize>) -> StateVector {
    let mut amplitudes = vec![0.0; dim];
    let mut count = 0usize;
    for i in indices {
        amplitudes[i] = 1.0;
        count += 1;
    }
    let c = 1.0 / (count as f64).sqrt();
    amplitudes.iter_mut().for_each(|a| *a *= c);
    StateVector::new(amplitudes)
}

/// Uniform superposition of the Dyck words of length `2n`.
pub fn dyck_state(n: usize) -> Result<StateVector> {
    class_state(ClassId::DYCK, 2 * n)
}

/// Uniform unit-norm superposition of `C_{a,b}(n_sites)`.
pub fn class_state(class: ClassId, n_sites: usize) -> Result<StateVector> {
    if !class.is_nonempty(n_sites) {
        return Err(Error::EmptyClass {
            a: class.a,
            b: class.b,
            n_sites,
        });
    }
    let dim = check_dim(n_sites, 2)?;
    let words = enumerate_class(class, n_sites)?;
    Ok(uniform(dim, words.iter().map(SpinWord::index)))
}

/// Uniform superposition of properly colored Dyck words of length `2n` with
/// `k` colors, in the `(2k)^{2n}` product basis.
pub fn colored_dyck_state(n: usize, n_colors: usize) -> Result<StateVector> {
    if n_colors == 0 {
        return Err(Error::InvalidArgument("number of colors must be at least 1".into()));
    }
    let dim = check_dim(2 * n, 2 * n_colors)?;
    let words = properly_colored_dyck_words(n, n_colors)?;
    Ok(uniform(dim, words.iter().map(|w| w.index())))
}

/// `Σ_m (-1)^m |C_{m,m}(2n)|`, normalized: every zero-magnetization word with
/// amplitude `(-1)^m / sqrt(binom(2n, n))`.
pub fn anomalous_state(n: usize) -> Result<StateVector> {
    let n_sites = 2 * n;
    let dim = check_dim(n_sites, 2)?;
    let c = 1.0 / (binomial(n_sites as u64, n as u64) as f64).sqrt();
    let mut amplitudes = vec![0.0; dim];
    for (i, a) in amplitudes.iter_mut().enumerate() {
        let w = SpinWord::new(n_sites, i as u64);
        if w.magnetization() == 0 {
            let m = classify(&w).a;
            *a = if m.is_multiple_of(2) { c } else { -c };
        }
    }
    Ok(StateVector::new(amplitudes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amp(state: &StateVector, word: &str) -> f64 {
        state[word.parse::<SpinWord>().unwrap().index()]
    }

    #[test]
    fn small_dyck_states() {
        let d1 = dyck_state(1).unwrap();
        assert_eq!(amp(&d1, "()"), 1.0);
        let d2 = dyck_state(2).unwrap();
        let h = 0.5f64.sqrt();
        assert!((amp(&d2, "(())") - h).abs() < 1e-15);
        assert!((amp(&d2, "()()") - h).abs() < 1e-15);
        assert_eq!(d2.support().count(), 2);
        assert_eq!(dyck_state(4).unwrap().support().count(), 14);
    }

    #[test]
    fn class_states() {
        assert_eq!(class_state(ClassId::new(1, 1), 4).unwrap().support().count(), 3);
        let single = class_state(ClassId::new(4, 0), 4).unwrap();
        assert_eq!(amp(&single, "))))"), 1.0);
        assert!(matches!(
            class_state(ClassId::new(1, 0), 4),
            Err(Error::EmptyClass { .. })
        ));
    }

    #[test]
    fn colored_pairs() {
        let s = colored_dyck_state(1, 2).unwrap();
        assert_eq!(s.support().count(), 2);
        assert_eq!(colored_dyck_state(2, 2).unwrap().support().count(), 8);
        assert_eq!(colored_dyck_state(3, 1).unwrap(), dyck_state(3).unwrap());
    }

    #[test]
    fn anomalous_n2_signs() {
        let s = anomalous_state(2).unwrap();
        let c = 1.0 / 6f64.sqrt();
        for (w, sign) in [
            ("(())", 1.0),
            ("()()", 1.0),
            (")(()", -1.0),
            ("())(", -1.0),
            (")()(", -1.0),
            ("))((", 1.0),
        ] {
            assert!((amp(&s, w) - sign * c).abs() < 1e-15, "{w}");
        }
        assert!((s.norm() - 1.0).abs() < 1e-14);
    }
}
