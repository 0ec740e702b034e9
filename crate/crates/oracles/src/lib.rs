//! Dense reference computations used only by tests.
//!
//! Everything here is deliberately naive: full matrices, per-element
//! summation, partial pivoting. Nothing is shared with the banded code paths
//! under test.

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub data: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }
}

/// Gaussian elimination with partial pivoting. Panics on a zero pivot.
pub fn gauss_solve(a: &Dense, b: &[f64]) -> Vec<f64> {
    let n = a.n;
    let mut m = a.data.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&p, &q| m[p * n + col].abs().total_cmp(&m[q * n + col].abs()))
            .unwrap();
        assert!(m[piv * n + col] != 0.0, "singular matrix");
        if piv != col {
            for k in 0..n {
                m.swap(piv * n + k, col * n + k);
            }
            rhs.swap(piv, col);
        }
        for row in col + 1..n {
            let f = m[row * n + col] / m[col * n + col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[row * n + k] -= f * m[col * n + k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i * n + k] * x[k]).sum();
        x[i] = (rhs[i] - s) / m[i * n + i];
    }
    x
}

fn stress(a: f64, alpha_r: f64) -> f64 {
    a * (a - alpha_r).max(0.0) / ((1.0 - a) * (1.0 - a))
}

/// Velocity matrix and load over all nodes `0..=jn`, built element by
/// element, then restricted to `1..=jn`.
pub fn velocity_dense(
    alpha: &[f64],
    jn: usize,
    k: f64,
    mu: f64,
    alpha_r: f64,
    h: f64,
) -> (Dense, Vec<f64>) {
    let mut full = Dense::zeros(jn + 1);
    let mut load = vec![0.0; jn + 1];
    for (e, &a) in alpha.iter().enumerate().take(jn) {
        let r = a / (1.0 - a);
        let mass = [[1.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 1.0 / 3.0]];
        let stiff = [[1.0, -1.0], [-1.0, 1.0]];
        // derivative of the local basis functions
        let dphi = [-1.0 / h, 1.0 / h];
        for p in 0..2 {
            for q in 0..2 {
                full.add(e + p, e + q, k * h * r * mass[p][q] + mu * a / h * stiff[p][q]);
            }
            load[e + p] += stress(a, alpha_r) * dphi[p] * h;
        }
    }
    let mut inner = Dense::zeros(jn);
    for i in 0..jn {
        for j in 0..jn {
            inner.add(i, j, full.get(i + 1, j + 1));
        }
    }
    (inner, load[1..].to_vec())
}

/// Oxygen system over nodes `0..jn` with the unknown shifted by the boundary
/// value. Mass and reaction are lumped per element onto the element's nodes
/// (half the element each); diffusion is the exact P1 stiffness.
#[allow(clippy::too_many_arguments)]
pub fn oxygen_dense(
    alpha: &[f64],
    c_prev: &[f64],
    jn: usize,
    lambda: f64,
    q: f64,
    q1hat: f64,
    delta: f64,
    h: f64,
) -> (Dense, Vec<f64>) {
    let n = jn + 1;
    let mut mass = vec![0.0; n];
    let mut react = vec![0.0; n];
    let mut stiff = Dense::zeros(n);
    for (e, &a) in alpha.iter().enumerate().take(jn) {
        for p in 0..2 {
            let node = e + p;
            mass[node] += h / 2.0;
            // (Pi phi)^2 is 1 on half the cell, so its cell average is 1/2
            react[node] += a * h / 2.0 * 0.5 / (1.0 + q1hat * c_prev[node].abs());
            for r in 0..2 {
                let s = if p == r { 1.0 } else { -1.0 };
                stiff.add(node, e + r, s / h);
            }
        }
    }
    let mut a = Dense::zeros(jn);
    let mut rhs = vec![0.0; jn];
    for i in 0..jn {
        let mut row_sum_to_boundary = 0.0;
        for j in 0..n {
            let v = delta * lambda * stiff.get(i, j) + if i == j { mass[i] + q * delta * react[i] } else { 0.0 };
            if j < jn {
                a.add(i, j, v);
            } else {
                row_sum_to_boundary += v;
            }
        }
        // the boundary node carries the value 1
        rhs[i] = mass[i] * c_prev[i] - row_sum_to_boundary;
    }
    (a, rhs)
}

/// One cell of the upwind update, written out term by term.
pub fn upwind_cell(
    alpha_left: f64,
    alpha: f64,
    alpha_right: f64,
    u_left: f64,
    u_right: f64,
    ratio: f64,
) -> f64 {
    let p = |v: f64| if v > 0.0 { v } else { 0.0 };
    let m = |v: f64| if v < 0.0 { -v } else { 0.0 };
    let outflow_right = p(u_right) * alpha;
    let inflow_right = m(u_right) * alpha_right;
    let inflow_left = p(u_left) * alpha_left;
    let outflow_left = m(u_left) * alpha;
    alpha - ratio * (outflow_right - inflow_right - inflow_left + outflow_left)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_recovers_known_solution() {
        let mut a = Dense::zeros(3);
        let vals = [[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]];
        for (i, row) in vals.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                a.add(i, j, v);
            }
        }
        let x = [1.0, -2.0, 0.5];
        let b = a.mul_vec(&x);
        let y = gauss_solve(&a, &b);
        for i in 0..3 {
            assert!((x[i] - y[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn oxygen_two_node_example() {
        let (a, rhs) = oxygen_dense(&[0.3, 0.3], &[0.5, 0.8, 1.0], 2, 1.0, 0.0, 0.0, 0.1, 0.5);
        assert!((a.get(0, 0) - 0.45).abs() < 1e-15);
        assert!((a.get(0, 1) + 0.2).abs() < 1e-15);
        assert!((a.get(1, 1) - 0.9).abs() < 1e-15);
        assert!((rhs[0] - 0.125).abs() < 1e-15);
        assert!((rhs[1] - 0.6).abs() < 1e-15);
    }
}
