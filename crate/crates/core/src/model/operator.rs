use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Compressed sparse rows with column indices sorted within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Sums duplicate entries and drops exact zeros.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|x| (x.0, x.1));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut rows = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside dimension {dim}");
            if rows.last() == Some(&r) && cols.last() == Some(&(c as u32)) {
                *vals.last_mut().unwrap() += v;
            } else {
                rows.push(r);
                cols.push(c as u32);
                vals.push(v);
            }
        }
        let mut keep_cols = Vec::with_capacity(cols.len());
        let mut keep_vals = Vec::with_capacity(vals.len());
        for ((r, c), v) in rows.into_iter().zip(cols).zip(vals) {
            if v != 0.0 {
                row_ptr[r + 1] += 1;
                keep_cols.push(c);
                keep_vals.push(v);
            }
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        CsrMatrix {
            dim,
            row_ptr,
            cols: keep_cols,
            vals: keep_vals,
        }
    }

    /// Builds from per-row entry lists already free of duplicates.
    pub(crate) fn from_rows(dim: usize, rows: Vec<Vec<(u32, f64)>>) -> Self {
        let mut row_ptr = Vec::with_capacity(dim + 1);
        row_ptr.push(0);
        let nnz = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        CsrMatrix {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .zip(&self.vals[span])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    fn row_dot(&self, r: usize, v: &[f64]) -> f64 {
        self.row(r).map(|(c, x)| x * v[c]).sum()
    }
}

type ApplyFn = dyn Fn(&[f64], &mut [f64], Execution) + Send + Sync;

#[derive(Clone)]
enum Repr {
    Sparse(Arc<CsrMatrix>),
    MatrixFree(Arc<ApplyFn>),
}

/// Real symmetric linear operator on a basis of `dim` states.
///
/// Storage is either sparse rows or a matrix-free closure. An operator may
/// carry a conserved label per basis state (the magnetization sector for the
/// chain Hamiltonians); operators with labels are block diagonal in them.
#[derive(Clone)]
pub struct Operator {
    dim: usize,
    repr: Repr,
    sectors: Option<Arc<[i32]>>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Sparse(m) => format!("sparse, nnz={}", m.nnz()),
            Repr::MatrixFree(_) => "matrix-free".to_string(),
        };
        write!(
            f,
            "Operator(dim={}, {kind}, sectors={})",
            self.dim,
            self.sectors.is_some()
        )
    }
}

impl Operator {
    pub fn from_csr(csr: CsrMatrix) -> Self {
        Operator {
            dim: csr.dim(),
            repr: Repr::Sparse(Arc::new(csr)),
            sectors: None,
        }
    }

    pub fn from_triplets(dim: usize, triplets: Vec<(usize, usize, f64)>) -> Self {
        Operator::from_csr(CsrMatrix::from_triplets(dim, triplets))
    }

    pub fn matrix_free<F>(dim: usize, apply: F) -> Self
    where
        F: Fn(&[f64], &mut [f64], Execution) + Send + Sync + 'static,
    {
        Operator {
            dim,
            repr: Repr::MatrixFree(Arc::new(apply)),
            sectors: None,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Operator::from_triplets(dim, Vec::new())
    }

    pub fn identity(dim: usize) -> Self {
        Operator::from_triplets(dim, (0..dim).map(|i| (i, i, 1.0)).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Operator::from_triplets(
            values.len(),
            values.iter().enumerate().map(|(i, &v)| (i, i, v)).collect(),
        )
    }

    /// Attaches a conserved label per basis state.
    pub fn with_sectors(mut self, labels: Arc<[i32]>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.sectors = Some(labels);
        self
    }

    pub fn sectors(&self) -> Option<&[i32]> {
        self.sectors.as_deref()
    }

    /// Basis indices grouped by conserved label, labels ascending. A single
    /// block covering everything when no labels are attached.
    pub fn sector_blocks(&self) -> Vec<(i32, Vec<usize>)> {
        match &self.sectors {
            None => vec![(0, (0..self.dim).collect())],
            Some(labels) => {
                let mut keys: Vec<i32> = labels.to_vec();
                keys.sort_unstable();
                keys.dedup();
                let mut blocks: Vec<(i32, Vec<usize>)> = keys.iter().map(|&k| (k, Vec::new())).collect();
                for (i, l) in labels.iter().enumerate() {
                    let at = keys.binary_search(l).unwrap();
                    blocks[at].1.push(i);
                }
                blocks
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_matrix_free(&self) -> bool {
        matches!(self.repr, Repr::MatrixFree(_))
    }

    pub fn csr(&self) -> Option<&CsrMatrix> {
        match &self.repr {
            Repr::Sparse(m) => Some(m),
            Repr::MatrixFree(_) => None,
        }
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        self.apply_into(v, &mut out, Execution::default())?;
        Ok(out)
    }

    pub fn apply_into(&self, v: &[f64], out: &mut [f64], exec: Execution) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if out.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: out.len(),
            });
        }
        match &self.repr {
            Repr::Sparse(m) => exec::fill_indexed(exec, out, |r| m.row_dot(r, v)),
            Repr::MatrixFree(f) => f(v, out, exec),
        }
        Ok(())
    }

    /// Materializes a matrix-free operator column by column.
    pub fn to_sparse(&self) -> Operator {
        match &self.repr {
            Repr::Sparse(_) => self.clone(),
            Repr::MatrixFree(_) => {
                let mut triplets = Vec::new();
                let mut e = vec![0.0; self.dim];
                let mut col = vec![0.0; self.dim];
                for j in 0..self.dim {
                    e[j] = 1.0;
                    self.apply_into(&e, &mut col, Execution::default()).unwrap();
                    e[j] = 0.0;
                    triplets.extend(
                        col.iter()
                            .enumerate()
                            .filter(|(_, &x)| x != 0.0)
                            .map(|(i, &x)| (i, j, x)),
                    );
                }
                let mut op = Operator::from_triplets(self.dim, triplets);
                op.sectors = self.sectors.clone();
                op
            }
        }
    }

    /// Sorted row-major `(row, col, value)` entries.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let sparse = self.to_sparse();
        sparse.csr().unwrap().triplets().collect()
    }

    /// Dense submatrix on the given basis indices.
    pub fn dense_block(&self, indices: &[usize]) -> DMatrix<f64> {
        let mut position = vec![usize::MAX; self.dim];
        for (p, &i) in indices.iter().enumerate() {
            position[i] = p;
        }
        let sparse = self.to_sparse();
        let csr = sparse.csr().unwrap();
        let mut m = DMatrix::zeros(indices.len(), indices.len());
        for (p, &i) in indices.iter().enumerate() {
            for (j, v) in csr.row(i) {
                let q = position[j];
                if q != usize::MAX {
                    m[(p, q)] += v;
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.dense_block(&(0..self.dim).collect::<Vec<_>>())
    }

    /// Largest `|A_ij - A_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let sparse = self.to_sparse();
        let csr = sparse.csr().unwrap();
        let mut worst = 0.0f64;
        for (r, c, v) in csr.triplets() {
            let mirror = csr.row(c).find(|&(cc, _)| cc == r).map_or(0.0, |(_, x)| x);
            worst = worst.max((v - mirror).abs());
        }
        worst
    }

    /// Largest `|A_ij - scale * B_ij|` over the union of supports.
    pub fn max_abs_diff(&self, other: &Operator, scale: f64) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut merged: Vec<(usize, usize, f64)> = self.triplets();
        merged.extend(other.triplets().into_iter().map(|(r, c, v)| (r, c, -scale * v)));
        let diff = CsrMatrix::from_triplets(self.dim, merged);
        Ok(diff.triplets().map(|(_, _, v)| v.abs()).fold(0.0, f64::max))
    }

    /// Sum of operators with matching dimension; sectors kept only if every
    /// operand carries the same labels.
    pub fn sum(ops: &[Operator]) -> Result<Operator> {
        let dim = ops.first().map_or(0, |o| o.dim);
        let mut triplets = Vec::new();
        for op in ops {
            if op.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: op.dim,
                });
            }
            triplets.extend(op.triplets());
        }
        let mut out = Operator::from_triplets(dim, triplets);
        if let Some(first) = ops.first().and_then(|o| o.sectors.clone()) {
            if ops.iter().all(|o| o.sectors.as_deref() == Some(&first[..])) {
                out.sectors = Some(first);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> Operator {
        let mut out = Operator::from_triplets(
            self.dim,
            self.triplets()
                .into_iter()
                .map(|(r, c, v)| (r, c, factor * v))
                .collect(),
        );
        out.sectors = self.sectors.clone();
        out
    }

    /// Coordinate dump: `row col value` per line, 0-indexed, row-major.
    pub fn write_coordinate<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (r, c, v) in self.triplets() {
            writeln!(out, "{r} {c} {v:.17e}")?;
        }
        Ok(())
    }
}
