use crate::combinatorics::ClassId;
use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, BoundarySpec, ModelForm};
use crate::solver::{cluster_eigenvalues, lowest_eigenpairs_with, Method, SolverOptions, StateVector};
use crate::states::class_state;

/// Boundary-coupling magnitudes sampled in every sign quadrant.
pub const PHASE_MAGNITUDES: [f64; 2] = [0.5, 2.0];

/// A class state counts as a ground state when its weight in the ground
/// space is at least `1 - GROUND_OVERLAP_TOL`.
const GROUND_OVERLAP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSample {
    pub alpha: f64,
    pub beta: f64,
    pub ground_energy: f64,
    pub degeneracy: usize,
    /// Classes whose uniform state lies in the ground space.
    pub ground_classes: Vec<ClassId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quadrant {
    pub sign_alpha: i8,
    pub sign_beta: i8,
    pub samples: Vec<PhaseSample>,
}

impl Quadrant {
    /// Degeneracy of the first sample.
    pub fn degeneracy(&self) -> usize {
        self.samples[0].degeneracy
    }

    /// Whether degeneracy and ground classes agree across all magnitudes.
    pub fn is_consistent(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.degeneracy == self.samples[0].degeneracy && s.ground_classes == self.samples[0].ground_classes)
    }

    pub fn ground_classes(&self) -> &[ClassId] {
        &self.samples[0].ground_classes
    }

    /// Whether the class states found span the whole ground space.
    pub fn classes_span(&self) -> bool {
        self.samples.iter().all(|s| s.ground_classes.len() == s.degeneracy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    pub n_sites: usize,
    /// In the order `(+,+)`, `(+,-)`, `(-,+)`, `(-,-)`.
    pub quadrants: Vec<Quadrant>,
}

impl PhaseDiagram {
    pub fn quadrant(&self, sign_alpha: i8, sign_beta: i8) -> &Quadrant {
        self.quadrants
            .iter()
            .find(|q| q.sign_alpha == sign_alpha && q.sign_beta == sign_beta)
            .expect("all four quadrants present")
    }
}

fn sample(n_sites: usize, alpha: f64, beta: f64) -> Result<PhaseSample> {
    let h = build_hamiltonian(n_sites, BoundarySpec::open(alpha, beta), ModelForm::Projector)?;
    let opts = SolverOptions::default().with_method(Method::Dense);
    let all = lowest_eigenpairs_with(&h, h.dim(), 1e-8, &opts)?;
    let (ground_energy, degeneracy) = cluster_eigenvalues(&all.eigenvalues)[0];
    let ground: Vec<StateVector> = all.eigenvectors.unwrap().into_iter().take(degeneracy).collect();
    let mut ground_classes = Vec::new();
    for a in 0..=n_sites {
        for b in 0..=n_sites - a {
            let class = ClassId::new(a, b);
            if !class.is_nonempty(n_sites) {
                continue;
            }
            let state = class_state(class, n_sites)?;
            let weight: f64 = ground
                .iter()
                .map(|g| g.dot(&state).map(|x| x * x))
                .sum::<Result<f64>>()?;
            if weight >= 1.0 - GROUND_OVERLAP_TOL {
                ground_classes.push(class);
            }
        }
    }
    Ok(PhaseSample {
        alpha,
        beta,
        ground_energy,
        degeneracy,
        ground_classes,
    })
}

/// Ground degeneracy and ground class states for each sign pattern of
/// `(α, β)`, each sampled at every pair of magnitudes in [`PHASE_MAGNITUDES`].
pub fn phase_diagram(n_sites: usize) -> Result<PhaseDiagram> {
    if n_sites < 2 {
        return Err(Error::InvalidArgument(format!(
            "phase diagram needs at least 2 sites, got {n_sites}"
        )));
    }
    let mut quadrants = Vec::new();
    for (sa, sb) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        let mut samples = Vec::new();
        for ma in PHASE_MAGNITUDES {
            for mb in PHASE_MAGNITUDES {
                samples.push(sample(n_sites, sa as f64 * ma, sb as f64 * mb)?);
            }
        }
        quadrants.push(Quadrant {
            sign_alpha: sa,
            sign_beta: sb,
            samples,
        });
    }
    Ok(PhaseDiagram { n_sites, quadrants })
}
