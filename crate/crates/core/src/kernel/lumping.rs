use super::field::NodalField;
use super::mesh::Mesh;

/// Piecewise constant function on the node-centred intervals
/// `(x_j - h/2, x_j + h/2)` clipped to the domain: `Π_h f`.
#[derive(Debug, Clone, PartialEq)]
pub struct LumpedField {
    pub values: Vec<f64>,
    /// Measure of each node-centred interval.
    pub widths: Vec<f64>,
    h: f64,
}

impl LumpedField {
    /// Lumps the first `nodes` nodal values on a domain `(0, (nodes - 1) h)`.
    pub fn from_nodal(values: &[f64], h: f64) -> Self {
        let n = values.len();
        let widths = (0..n)
            .map(|j| if n == 1 { 0.0 } else if j == 0 || j == n - 1 { 0.5 * h } else { h })
            .collect();
        Self {
            values: values.to_vec(),
            widths,
            h,
        }
    }

    /// Restriction to `(0, jn h)`.
    pub fn restrict(&self, jn: usize) -> Self {
        Self::from_nodal(&self.values[..=jn], self.h)
    }

    pub fn integral(&self) -> f64 {
        self.values.iter().zip(&self.widths).map(|(v, w)| v * w).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.widths)
            .map(|(v, w)| v * v * w)
            .sum::<f64>()
            .sqrt()
    }

    /// Value at `x`; a point on a half-cell boundary belongs to the right node.
    pub fn eval(&self, x: f64) -> f64 {
        let j = ((x / self.h) + 0.5).floor().max(0.0) as usize;
        self.values[j.min(self.values.len() - 1)]
    }
}

/// Mass lumping operator over the whole mesh.
pub fn lump(f: &NodalField, mesh: &Mesh) -> LumpedField {
    debug_assert_eq!(f.len(), mesh.nodes());
    LumpedField::from_nodal(f, mesh.h())
}

/// Exact `L^2` norm of the P1 function with the given nodal values.
pub fn p1_l2_norm(values: &[f64], h: f64) -> f64 {
    values
        .windows(2)
        .map(|w| h / 3.0 * (w[0] * w[0] + w[0] * w[1] + w[1] * w[1]))
        .sum::<f64>()
        .sqrt()
}
