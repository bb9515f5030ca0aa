use nalgebra::SymmetricEigen;

use crate::exec::{self, Execution};
use crate::model::Operator;

/// All eigenpairs of `op`, diagonalizing each magnetization block on its own.
/// Sorted ascending by eigenvalue; vectors are embedded in the full basis.
pub(crate) fn eigenpairs(op: &Operator, vectors: bool, exec: Execution) -> Vec<(f64, Option<Vec<f64>>)> {
    let dim = op.dim();
    let blocks = op.sector_blocks();
    let per_block = exec::map_ordered(exec, &blocks, |(_, indices)| {
        let m = op.dense_block(indices);
        let mut out = Vec::with_capacity(indices.len());
        if vectors {
            let eig = SymmetricEigen::new(m);
            for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
                let mut v = vec![0.0; dim];
                for (p, &i) in indices.iter().enumerate() {
                    v[i] = eig.eigenvectors[(p, k)];
                }
                out.push((lambda, Some(v)));
            }
        } else {
            for lambda in m.symmetric_eigenvalues().iter() {
                out.push((*lambda, None));
            }
        }
        out
    });
    let mut all: Vec<(f64, Option<Vec<f64>>)> = per_block.into_iter().flatten().collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    all
}
