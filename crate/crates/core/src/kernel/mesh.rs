use crate::error::Result;

use super::params::SchemeConfig;

/// Uniform mesh `x_j = j h` of the bounding box `(0, ellm)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    h: f64,
    cells: usize,
}

impl Mesh {
    pub fn new(h: f64, cells: usize) -> Self {
        Self { h, cells }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of cells `J`.
    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Number of nodes `J + 1`.
    pub fn nodes(&self) -> usize {
        self.cells + 1
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 * self.h
    }

    pub fn length(&self) -> f64 {
        self.node(self.cells)
    }

    /// Cell `X_j = (x_j, x_{j+1})`.
    pub fn cell(&self, j: usize) -> (f64, f64) {
        (self.node(j), self.node(j + 1))
    }

    pub fn node_coordinates(&self) -> Vec<f64> {
        (0..self.nodes()).map(|j| self.node(j)).collect()
    }

    /// Index of the cell containing `x`, clamped to the mesh.
    pub fn locate(&self, x: f64) -> usize {
        let j = (x / self.h).floor();
        if j <= 0.0 {
            0
        } else {
            (j as usize).min(self.cells - 1)
        }
    }
}

pub fn build_mesh(config: &SchemeConfig) -> Result<Mesh> {
    let cells = config.cell_count()?;
    config.initial_radius_index()?;
    Ok(Mesh::new(config.h, cells))
}
