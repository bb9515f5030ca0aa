use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::caps::Caps;
use crate::combinatorics::windows;
use crate::error::{Error, Result};

use super::forms;
use super::local::{LocalHamiltonian, LocalMatrix, LocalTerm, TermKind};
use super::operator::Operator;

/// Boundary condition of the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundarySpec {
    /// Boundary fields `½(1 - α σ^z_first) + ½(1 + β σ^z_last)`.
    Open { alpha: f64, beta: f64 },
    /// Bulk terms on every cyclic window, no boundary fields.
    Periodic,
}

impl BoundarySpec {
    pub const fn open(alpha: f64, beta: f64) -> Self {
        BoundarySpec::Open { alpha, beta }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, BoundarySpec::Periodic)
    }
}

impl Default for BoundarySpec {
    fn default() -> Self {
        BoundarySpec::open(1.0, 1.0)
    }
}

impl fmt::Display for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundarySpec::Open { alpha, beta } if *alpha == 1.0 && *beta == 1.0 => f.write_str("open"),
            BoundarySpec::Open { alpha, beta } => write!(f, "open({alpha},{beta})"),
            BoundarySpec::Periodic => f.write_str("periodic"),
        }
    }
}

impl FromStr for BoundarySpec {
    type Err = Error;

    /// Accepts `open`, `periodic` and `open(α,β)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "open" => return Ok(BoundarySpec::default()),
            "periodic" => return Ok(BoundarySpec::Periodic),
            _ => {}
        }
        let inner = s
            .strip_prefix("open(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown boundary {s:?}")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let parse = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad boundary field {x:?}")))
        };
        match parts.as_slice() {
            [a, b] => {
                let (alpha, beta) = (parse(a)?, parse(b)?);
                if !alpha.is_finite() || !beta.is_finite() {
                    return Err(Error::Parse("boundary fields must be finite".into()));
                }
                Ok(BoundarySpec::open(alpha, beta))
            }
            _ => Err(Error::Parse(format!("expected open(alpha,beta), got {s:?}"))),
        }
    }
}

/// Which of the equivalent expressions of the three-site bulk term to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModelForm {
    /// Projectors onto a singlet next to an up (left) or down (right) spin.
    #[default]
    Projector,
    /// Written with Pauli operators; eight times the projector form.
    Pauli,
    /// Written with controlled-swap gates; twice the projector form.
    FredkinGate,
}

impl ModelForm {
    pub(crate) fn local_matrix(self) -> DMatrix<f64> {
        match self {
            ModelForm::Projector => forms::bulk_projector(),
            ModelForm::Pauli => forms::bulk_pauli(),
            ModelForm::FredkinGate => forms::bulk_fredkin_gate(),
        }
    }
}

impl fmt::Display for ModelForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelForm::Projector => "projector",
            ModelForm::Pauli => "pauli",
            ModelForm::FredkinGate => "fredkin-gate",
        })
    }
}

impl FromStr for ModelForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "projector" => Ok(ModelForm::Projector),
            "pauli" => Ok(ModelForm::Pauli),
            "fredkin-gate" | "fredkin" | "gate" => Ok(ModelForm::FredkinGate),
            _ => Err(Error::Parse(format!("unknown form {s:?}"))),
        }
    }
}

fn term(kind: TermKind, sites: Vec<usize>, m: &Arc<LocalMatrix>) -> LocalTerm {
    LocalTerm {
        kind,
        sites,
        matrix: Arc::clone(m),
    }
}

fn check_sites(n_sites: usize, min: usize, local_dim: usize) -> Result<()> {
    if n_sites < min {
        return Err(Error::SiteOutOfRange { site: 0, n_sites });
    }
    let bits = (n_sites as f64) * (local_dim as f64).log2();
    Caps::global().check_states(2f64.powf(bits))
}

/// Local terms of the uncolored chain.
pub fn hamiltonian_terms(n_sites: usize, boundary: BoundarySpec, form: ModelForm) -> Result<LocalHamiltonian> {
    let min = if boundary.is_periodic() { 3 } else { 2 };
    check_sites(n_sites, min, 2)?;
    let bulk = Arc::new(LocalMatrix::from_dense(&form.local_matrix()));
    let mut terms: Vec<LocalTerm> = windows(n_sites, boundary.is_periodic())
        .into_iter()
        .map(|w| term(TermKind::Bulk, w.to_vec(), &bulk))
        .collect();
    if let BoundarySpec::Open { alpha, beta } = boundary {
        let left = Arc::new(LocalMatrix::from_dense(&forms::left_boundary(alpha)));
        let right = Arc::new(LocalMatrix::from_dense(&forms::right_boundary(beta)));
        terms.push(term(TermKind::Boundary, vec![0], &left));
        terms.push(term(TermKind::Boundary, vec![n_sites - 1], &right));
    }
    Ok(LocalHamiltonian::new(n_sites, 2, terms))
}

/// Bulk term on the window starting at site `j` (0-indexed, `j ≤ N-3`).
pub fn build_bulk_term(j: usize, n_sites: usize, form: ModelForm) -> Result<Operator> {
    if n_sites < 3 || j + 2 >= n_sites {
        return Err(Error::SiteOutOfRange { site: j, n_sites });
    }
    check_sites(n_sites, 3, 2)?;
    let bulk = Arc::new(LocalMatrix::from_dense(&form.local_matrix()));
    let h = LocalHamiltonian::new(n_sites, 2, vec![term(TermKind::Bulk, vec![j, j + 1, j + 2], &bulk)]);
    Ok(h.to_sparse())
}

/// `H = Σ_j H_j + H_∂` as an explicit sparse operator, labelled by
/// magnetization sector.
pub fn build_hamiltonian(n_sites: usize, boundary: BoundarySpec, form: ModelForm) -> Result<Operator> {
    Ok(hamiltonian_terms(n_sites, boundary, form)?.to_sparse())
}

/// Bulk part only, open or cyclic windows.
pub fn build_bulk_hamiltonian(n_sites: usize, periodic: bool) -> Result<Operator> {
    let boundary = if periodic {
        BoundarySpec::Periodic
    } else {
        BoundarySpec::default()
    };
    Ok(hamiltonian_terms(n_sites, boundary, ModelForm::Projector)?.part(TermKind::Bulk))
}

/// Scalars relating the alternative bulk forms to the projector form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormRatios {
    pub pauli: f64,
    pub fredkin_gate: f64,
    pub projector: f64,
}

impl FormRatios {
    pub fn for_form(&self, form: ModelForm) -> f64 {
        match form {
            ModelForm::Projector => self.projector,
            ModelForm::Pauli => self.pauli,
            ModelForm::FredkinGate => self.fredkin_gate,
        }
    }
}

/// Least-squares scalar `λ` with `H_form ≈ λ H_projector` for every bulk term
/// of an `n_sites` chain, failing if any term deviates by more than `tol`.
pub fn check_form_equivalence(n_sites: usize, tol: f64) -> Result<FormRatios> {
    let caps = Caps::global();
    if (1usize << n_sites.min(63)) > caps.dense_dim {
        return Err(Error::CapExceeded {
            required_bits: n_sites as u32,
            cap_bits: caps.dense_dim.ilog2(),
        });
    }
    let ratio = |form: ModelForm| -> Result<f64> {
        let mut lambda: Option<f64> = None;
        for j in 0..n_sites.saturating_sub(2) {
            let reference = build_bulk_term(j, n_sites, ModelForm::Projector)?.triplets();
            let other = build_bulk_term(j, n_sites, form)?;
            let other_t = other.triplets();
            let (mut num, mut den) = (0.0, 0.0);
            for &(r, c, v) in &reference {
                let w = other_t.iter().find(|t| t.0 == r && t.1 == c).map_or(0.0, |t| t.2);
                num += v * w;
                den += v * v;
            }
            let l = num / den;
            let proj = build_bulk_term(j, n_sites, ModelForm::Projector)?;
            let diff = other.max_abs_diff(&proj, l)?;
            if diff > tol || l <= 0.0 {
                return Err(Error::FormsInequivalent(format!(
                    "{form} term at site {j}: residual {diff:e}"
                )));
            }
            if let Some(prev) = lambda {
                if (prev - l).abs() > tol {
                    return Err(Error::FormsInequivalent(format!("{form} scale varies: {prev} vs {l}")));
                }
            }
            lambda = Some(l);
        }
        lambda.ok_or(Error::SiteOutOfRange { site: 0, n_sites })
    };
    Ok(FormRatios {
        pauli: ratio(ModelForm::Pauli)?,
        fredkin_gate: ratio(ModelForm::FredkinGate)?,
        projector: ratio(ModelForm::Projector)?,
    })
}

/// Which parts of the colored Hamiltonian to include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoredParts {
    pub bulk: bool,
    pub exchange: bool,
    pub boundary: bool,
    pub periodic: bool,
}

impl ColoredParts {
    pub const FULL: ColoredParts = ColoredParts {
        bulk: true,
        exchange: true,
        boundary: true,
        periodic: false,
    };
    pub const BULK_ONLY: ColoredParts = ColoredParts {
        bulk: true,
        exchange: false,
        boundary: false,
        periodic: false,
    };
}

/// Local terms of the colored chain, `2k` states per site.
pub fn colored_terms(n_sites: usize, n_colors: usize, parts: ColoredParts) -> Result<LocalHamiltonian> {
    if n_colors == 0 {
        return Err(Error::InvalidArgument("number of colors must be at least 1".into()));
    }
    let min = if parts.periodic { 3 } else { 2 };
    check_sites(n_sites, min, 2 * n_colors)?;
    let mut terms = Vec::new();
    if parts.bulk {
        let bulk = Arc::new(LocalMatrix::from_dense(&forms::colored_bulk(n_colors)));
        terms.extend(
            windows(n_sites, parts.periodic)
                .into_iter()
                .map(|w| term(TermKind::Bulk, w.to_vec(), &bulk)),
        );
    }
    if parts.exchange {
        let x = Arc::new(LocalMatrix::from_dense(&forms::colored_exchange(n_colors)));
        let pairs = if parts.periodic { n_sites } else { n_sites - 1 };
        terms.extend((0..pairs).map(|j| term(TermKind::Exchange, vec![j, (j + 1) % n_sites], &x)));
    }
    if parts.boundary && !parts.periodic {
        let down = Arc::new(LocalMatrix::from_dense(&forms::colored_direction_projector(
            n_colors, false,
        )));
        let up = Arc::new(LocalMatrix::from_dense(&forms::colored_direction_projector(
            n_colors, true,
        )));
        terms.push(term(TermKind::Boundary, vec![0], &down));
        terms.push(term(TermKind::Boundary, vec![n_sites - 1], &up));
    }
    Ok(LocalHamiltonian::new(n_sites, 2 * n_colors, terms))
}

/// `H_F + H_X + H_∂` of the colored chain in the product basis.
pub fn build_colored_hamiltonian(n_sites: usize, n_colors: usize) -> Result<Operator> {
    Ok(colored_terms(n_sites, n_colors, ColoredParts::FULL)?.to_sparse())
}

/// Total magnetization `Σ σ^z` as a diagonal operator.
pub fn magnetization_operator(n_sites: usize, local_dim: usize) -> Operator {
    let labels = super::local::magnetization_labels(n_sites, local_dim);
    let values: Vec<f64> = labels.iter().map(|&z| z as f64).collect();
    Operator::diagonal(&values)
}

/// One-site translation: the state of site `j` moves to site `j+1` (mod N).
pub fn translation_operator(n_sites: usize, local_dim: usize) -> Operator {
    let dim = local_dim.pow(n_sites as u32);
    let top = local_dim.pow(n_sites as u32 - 1);
    Operator::from_triplets(
        dim,
        (0..dim)
            .map(|i| ((i % local_dim) * top + i / local_dim, i, 1.0))
            .collect(),
    )
}

/// Global relabelling of colors `a ↔ b` on every site of a colored chain.
pub fn color_transposition(n_sites: usize, n_colors: usize, a: usize, b: usize) -> Operator {
    let d = 2 * n_colors;
    let dim = d.pow(n_sites as u32);
    let swap = |digit: usize| {
        let (dir, c) = (digit / n_colors, digit % n_colors);
        let c = if c == a {
            b
        } else if c == b {
            a
        } else {
            c
        };
        dir * n_colors + c
    };
    let image = |mut i: usize| {
        let mut out = 0;
        let mut pv = 1;
        for _ in 0..n_sites {
            out += swap(i % d) * pv;
            i /= d;
            pv *= d;
        }
        out
    };
    Operator::from_triplets(dim, (0..dim).map(|i| (image(i), i, 1.0)).collect())
}
