use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

/// Difference between the continuum estimate and the lattice entropy at large
/// `N`: heights at a cut share the parity of `L`, so only every other height
/// carries weight.
pub const LATTICE_OFFSET: f64 = 0.5 * LN_2;

/// `-ρ ln ρ` with `ρ(α) = α² e^{-α²} / (√π / 4)`.
fn integrand(alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let rho = alpha * alpha * (-alpha * alpha).exp() / (PI.sqrt() / 4.0);
    if rho == 0.0 {
        0.0
    } else {
        -rho * rho.ln()
    }
}

/// `c₀ = -∫₀^∞ ρ ln ρ dα`, by double-exponential quadrature (computed once).
pub fn entropy_constant() -> f64 {
    static C0: OnceLock<f64> = OnceLock::new();
    *C0.get_or_init(|| {
        // the integrand is below 1e-60 past α = 12
        quadrature::integrate(integrand, 0.0, 12.0, 1e-14).integral
    })
}

/// `½ ln(L(N-L)/N) + c₀`.
pub fn asymptotic_entropy(n_sites: usize, cut: usize) -> f64 {
    let (n, l) = (n_sites as f64, cut as f64);
    0.5 * (l * (n - l) / n).ln() + entropy_constant()
}

/// [`asymptotic_entropy`] shifted by the lattice offset; this is the large-`N`
/// limit of the exact entropy.
pub fn asymptotic_entropy_corrected(n_sites: usize, cut: usize) -> f64 {
    asymptotic_entropy(n_sites, cut) - LATTICE_OFFSET
}

/// `asymptotic_entropy + (2/√π) ln k sqrt(2 L (N-L) / N)`.
pub fn colored_entropy_asymptotic(n_sites: usize, cut: usize, n_colors: usize) -> f64 {
    let (n, l) = (n_sites as f64, cut as f64);
    asymptotic_entropy(n_sites, cut) + 2.0 / PI.sqrt() * (n_colors as f64).ln() * (2.0 * l * (n - l) / n).sqrt()
}
