use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use super::mesh::Mesh;

/// Piecewise constant function, one value per cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellField(pub Vec<f64>);

/// Continuous piecewise linear function, one value per node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalField(pub Vec<f64>);

macro_rules! slice_newtype {
    ($ty:ident) => {
        impl Deref for $ty {
            type Target = [f64];
            fn deref(&self) -> &[f64] {
                &self.0
            }
        }

        impl DerefMut for $ty {
            fn deref_mut(&mut self) -> &mut [f64] {
                &mut self.0
            }
        }

        impl From<Vec<f64>> for $ty {
            fn from(v: Vec<f64>) -> Self {
                Self(v)
            }
        }

        impl $ty {
            pub fn filled(len: usize, value: f64) -> Self {
                Self(vec![value; len])
            }

            pub fn into_inner(self) -> Vec<f64> {
                self.0
            }
        }
    };
}

slice_newtype!(CellField);
slice_newtype!(NodalField);

impl CellField {
    /// Value of the cell containing `x`.
    pub fn eval(&self, mesh: &Mesh, x: f64) -> f64 {
        self.0[mesh.locate(x)]
    }
}

impl NodalField {
    /// Evaluates the P1 interpolant at `x`.
    pub fn eval(&self, mesh: &Mesh, x: f64) -> f64 {
        let j = mesh.locate(x);
        let (a, _) = mesh.cell(j);
        let t = (x - a) / mesh.h();
        self.0[j] + t * (self.0[j + 1] - self.0[j])
    }

    /// Cellwise slope `(f_{j+1} - f_j) / h`.
    pub fn slope(&self, j: usize, h: f64) -> f64 {
        (self.0[j + 1] - self.0[j]) / h
    }
}

/// P1 interpolant `I_h` through one sample per node.
pub fn interpolate_linear(samples: Vec<f64>) -> NodalField {
    NodalField(samples)
}

/// One time level of the discrete solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct State {
    /// Time index.
    pub n: usize,
    pub alpha: CellField,
    pub u: NodalField,
    pub c: NodalField,
    /// Radius index `J_n`, the domain is `(0, J_n h)`.
    pub radius_index: usize,
}

impl State {
    pub fn time(&self, delta: f64) -> f64 {
        self.n as f64 * delta
    }

    pub fn radius(&self, h: f64) -> f64 {
        self.radius_index as f64 * h
    }

    /// Cells of the tumour domain.
    pub fn domain_alpha(&self) -> &[f64] {
        &self.alpha[..self.radius_index]
    }
}
