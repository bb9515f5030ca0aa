use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::Operator;

use super::vector::{axpy, dot, norm, scale};

/// Settings of the restarted Lanczos iteration.
#[derive(Debug, Clone, Copy)]
pub struct LanczosConfig {
    pub max_krylov: usize,
    pub max_restarts: usize,
    pub check_every: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        LanczosConfig {
            max_krylov: 400,
            max_restarts: 40,
            check_every: 10,
            seed: 0x5eed,
            exec: Execution::default(),
        }
    }
}

pub(crate) fn random_unit(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect();
    let n = norm(&v);
    scale(1.0 / n, &mut v);
    v
}

fn orthogonalize(w: &mut [f64], against: &[Vec<f64>]) {
    for q in against {
        let c = dot(w, q);
        axpy(-c, q, w);
    }
}

fn lowest_ritz(alphas: &[f64], betas: &[f64]) -> (f64, Vec<f64>) {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let k = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect())
}

/// Lowest eigenpair of `op` restricted to the orthogonal complement of
/// `locked`, to explicit residual `tol`. Returns `(λ, v, ‖Hv - λv‖)`.
pub(crate) fn lowest_deflated(
    op: &Operator,
    locked: &[Vec<f64>],
    tol: f64,
    config: &LanczosConfig,
    stream: u64,
) -> Result<(f64, Vec<f64>, f64)> {
    let dim = op.dim();
    let mut start = random_unit(dim, config.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut hv = vec![0.0; dim];
    let mut best_residual = f64::INFINITY;
    for _restart in 0..=config.max_restarts {
        orthogonalize(&mut start, locked);
        orthogonalize(&mut start, locked);
        let n0 = norm(&start);
        if n0 < 1e-300 {
            return Err(Error::ConvergenceFailure(
                "start vector lies in the locked subspace".into(),
            ));
        }
        scale(1.0 / n0, &mut start);
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let (mut alphas, mut betas) = (Vec::new(), Vec::new());
        let limit = config.max_krylov.min(dim.saturating_sub(locked.len())).max(1);
        loop {
            let m = basis.len() - 1;
            op.apply_into(&basis[m], &mut hv, config.exec)?;
            let mut w = hv.clone();
            orthogonalize(&mut w, locked);
            let alpha = dot(&w, &basis[m]);
            // full reorthogonalization, twice
            orthogonalize(&mut w, &basis);
            orthogonalize(&mut w, &basis);
            orthogonalize(&mut w, locked);
            alphas.push(alpha);
            let beta = norm(&w);
            let exhausted = beta < 1e-12 || basis.len() >= limit;
            if exhausted || basis.len().is_multiple_of(config.check_every) {
                let (_, s) = lowest_ritz(&alphas, &betas);
                let estimate = beta * s[s.len() - 1].abs();
                if estimate <= tol || exhausted {
                    let mut v = vec![0.0; dim];
                    for (q, &c) in basis.iter().zip(&s) {
                        axpy(c, q, &mut v);
                    }
                    orthogonalize(&mut v, locked);
                    let nv = norm(&v);
                    scale(1.0 / nv, &mut v);
                    op.apply_into(&v, &mut hv, config.exec)?;
                    let lambda = dot(&v, &hv);
                    axpy(-lambda, &v, &mut hv);
                    orthogonalize(&mut hv, locked);
                    let residual = norm(&hv);
                    if residual <= tol {
                        return Ok((lambda, v, residual));
                    }
                    best_residual = best_residual.min(residual);
                    start = v;
                    break;
                }
            }
            betas.push(beta);
            scale(1.0 / beta, &mut w);
            basis.push(w);
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "residual {best_residual:e} above tolerance {tol:e} after {} restarts",
        config.max_restarts
    )))
}
