use std::ops::Index;

use crate::error::{Error, Result};

/// Real amplitudes over a computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<f64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn zeros(dim: usize) -> Self {
        StateVector {
            amplitudes: vec![0.0; dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = StateVector::zeros(dim);
        v.amplitudes[index] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [f64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<f64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            self.amplitudes.iter_mut().for_each(|x| *x /= n);
        }
        self
    }

    pub fn dot(&self, other: &StateVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(dot(&self.amplitudes, &other.amplitudes))
    }

    /// Squared overlap `|<self|other>|² / (|self|² |other|²)`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        let d = self.dot(other)?;
        Ok(d * d / (dot(&self.amplitudes, &self.amplitudes) * dot(&other.amplitudes, &other.amplitudes)))
    }

    /// Nonzero entries as `(index, amplitude)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.amplitudes.iter().copied().enumerate().filter(|(_, a)| *a != 0.0)
    }
}

impl Index<usize> for StateVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.amplitudes[i]
    }
}

impl From<Vec<f64>> for StateVector {
    fn from(v: Vec<f64>) -> Self {
        StateVector::new(v)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(y, x)| *y += alpha * x);
}

pub(crate) fn scale(alpha: f64, x: &mut [f64]) {
    x.iter_mut().for_each(|v| *v *= alpha);
}
