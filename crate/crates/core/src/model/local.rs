use std::sync::Arc;

use nalgebra::DMatrix;

use crate::exec::{self, Execution};

use super::operator::{CsrMatrix, Operator};

/// Matrix of a term acting on a few consecutive-or-wrapped sites, stored as
/// sparse rows over the local product basis (first site most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMatrix {
    size: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl LocalMatrix {
    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        let rows = (0..m.nrows())
            .map(|r| {
                (0..m.ncols())
                    .filter(|&c| m[(r, c)] != 0.0)
                    .map(|c| (c, m[(r, c)]))
                    .collect()
            })
            .collect();
        LocalMatrix { size: m.nrows(), rows }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.size, self.size);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m[(r, c)] = v;
            }
        }
        m
    }
}

/// Which part of the Hamiltonian a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    Bulk,
    Exchange,
    Boundary,
}

/// A local matrix placed on specific sites of the chain.
#[derive(Debug, Clone)]
pub struct LocalTerm {
    pub kind: TermKind,
    pub sites: Vec<usize>,
    pub matrix: Arc<LocalMatrix>,
}

/// Precomputed row action of one placed term on global basis indices.
#[derive(Debug, Clone)]
struct Placed {
    place_values: Vec<usize>,
    // bit offsets of the sites when local_dim is a power of two
    shifts: Option<Vec<u32>>,
    // per local row: (index offset, value)
    rows: Vec<Vec<(isize, f64)>>,
}

/// A Hamiltonian given as a sum of placed local terms on `n_sites` sites with
/// `local_dim` states per site.
#[derive(Debug, Clone)]
pub struct LocalHamiltonian {
    n_sites: usize,
    local_dim: usize,
    terms: Vec<LocalTerm>,
    placed: Vec<Placed>,
}

impl LocalHamiltonian {
    pub fn new(n_sites: usize, local_dim: usize, terms: Vec<LocalTerm>) -> Self {
        let site_pv: Vec<usize> = (0..n_sites).map(|s| local_dim.pow((n_sites - 1 - s) as u32)).collect();
        let placed = terms
            .iter()
            .map(|t| {
                let m = t.sites.len();
                assert_eq!(
                    t.matrix.size(),
                    local_dim.pow(m as u32),
                    "term size does not match its sites"
                );
                let place_values: Vec<usize> = t.sites.iter().map(|&s| site_pv[s]).collect();
                let digits = |local: usize| -> Vec<usize> {
                    (0..m)
                        .map(|q| (local / local_dim.pow((m - 1 - q) as u32)) % local_dim)
                        .collect()
                };
                let offset = |r: usize, c: usize| -> isize {
                    let (dr, dc) = (digits(r), digits(c));
                    (0..m)
                        .map(|q| (dc[q] as isize - dr[q] as isize) * place_values[q] as isize)
                        .sum()
                };
                let rows = t
                    .matrix
                    .rows
                    .iter()
                    .enumerate()
                    .map(|(r, row)| row.iter().map(|&(c, v)| (offset(r, c), v)).collect())
                    .collect();
                let shifts = local_dim
                    .is_power_of_two()
                    .then(|| place_values.iter().map(|pv| pv.trailing_zeros()).collect());
                Placed {
                    place_values,
                    shifts,
                    rows,
                }
            })
            .collect();
        LocalHamiltonian {
            n_sites,
            local_dim,
            terms,
            placed,
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn dim(&self) -> usize {
        self.local_dim.pow(self.n_sites as u32)
    }

    pub fn terms(&self) -> &[LocalTerm] {
        &self.terms
    }

    #[inline]
    fn local_index(&self, placed: &Placed, i: usize) -> usize {
        if let Some(shifts) = &placed.shifts {
            let bits = self.local_dim.trailing_zeros();
            let mask = self.local_dim - 1;
            return shifts.iter().fold(0, |acc, &s| (acc << bits) | ((i >> s) & mask));
        }
        placed
            .place_values
            .iter()
            .fold(0, |acc, &pv| acc * self.local_dim + (i / pv) % self.local_dim)
    }

    #[inline]
    fn row_dot(&self, which: &[usize], i: usize, v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for &t in which {
            let p = &self.placed[t];
            for &(off, val) in &p.rows[self.local_index(p, i)] {
                acc += val * v[(i as isize + off) as usize];
            }
        }
        acc
    }

    fn row_entries(&self, which: &[usize], i: usize) -> Vec<(u32, f64)> {
        let mut entries: Vec<(u32, f64)> = Vec::new();
        for &t in which {
            let p = &self.placed[t];
            for &(off, val) in &p.rows[self.local_index(p, i)] {
                entries.push(((i as isize + off) as u32, val));
            }
        }
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        merged
    }

    /// Magnetization label (ups minus downs) of every basis state; local
    /// digits `>= local_dim / 2` are up.
    pub fn magnetization_labels(&self) -> Arc<[i32]> {
        magnetization_labels(self.n_sites, self.local_dim)
    }

    fn selection(&self, filter: impl Fn(&LocalTerm) -> bool) -> Vec<usize> {
        (0..self.terms.len()).filter(|&t| filter(&self.terms[t])).collect()
    }

    fn sparse_of(&self, which: &[usize], exec: Execution) -> Operator {
        let dim = self.dim();
        let indices: Vec<usize> = (0..dim).collect();
        let rows = exec::map_ordered(exec, &indices, |&i| self.row_entries(which, i));
        Operator::from_csr(CsrMatrix::from_rows(dim, rows)).with_sectors(self.magnetization_labels())
    }

    /// Explicit sparse operator for the full sum.
    pub fn to_sparse(&self) -> Operator {
        self.to_sparse_with(Execution::default())
    }

    pub fn to_sparse_with(&self, exec: Execution) -> Operator {
        self.sparse_of(&self.selection(|_| true), exec)
    }

    /// Sparse operator for the terms of one kind.
    pub fn part(&self, kind: TermKind) -> Operator {
        self.sparse_of(&self.selection(|t| t.kind == kind), Execution::default())
    }

    /// Sparse operator of a single placed term.
    pub fn term_operator(&self, t: usize) -> Operator {
        self.sparse_of(&[t], Execution::default())
    }

    /// Matrix-free operator for the full sum.
    pub fn matrix_free(self: &Arc<Self>) -> Operator {
        let me = Arc::clone(self);
        let all = me.selection(|_| true);
        let labels = me.magnetization_labels();
        Operator::matrix_free(me.dim(), move |v, out, exec| {
            exec::fill_indexed(exec, out, |i| me.row_dot(&all, i, v));
        })
        .with_sectors(labels)
    }
}

pub fn magnetization_labels(n_sites: usize, local_dim: usize) -> Arc<[i32]> {
    let dim = local_dim.pow(n_sites as u32);
    let half = local_dim / 2;
    (0..dim)
        .map(|mut i| {
            let mut z = 0i32;
            for _ in 0..n_sites {
                z += if i % local_dim >= half { 1 } else { -1 };
                i /= local_dim;
            }
            z
        })
        .collect::<Vec<_>>()
        .into()
}
