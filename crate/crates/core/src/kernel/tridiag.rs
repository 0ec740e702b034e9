use crate::error::{Error, Result};

/// Relative pivot threshold below which a system is declared singular.
const PIVOT_TOL: f64 = 1e-14;

/// Tridiagonal matrix stored by diagonals. `lower[i]` sits at `(i + 1, i)`
/// and `upper[i]` at `(i, i + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn zeros(n: usize) -> Self {
        let off = n.saturating_sub(1);
        Self {
            lower: vec![0.0; off],
            diag: vec![0.0; n],
            upper: vec![0.0; off],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if j + 1 == i {
            self.lower[j]
        } else if i + 1 == j {
            self.upper[i]
        } else {
            0.0
        }
    }

    /// Adds `value` at `(i, j)`, which must lie on the band.
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        if i == j {
            self.diag[i] += value;
        } else if j + 1 == i {
            self.lower[j] += value;
        } else if i + 1 == j {
            self.upper[i] += value;
        } else {
            panic!("({i}, {j}) is outside the tridiagonal band");
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Largest `|A_ij - A_ji|`.
    pub fn asymmetry(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (l - u).abs())
            .fold(0.0, f64::max)
    }

    /// `sum_j |A_ij|` for row `i`.
    fn row_magnitude(&self, i: usize) -> f64 {
        let mut s = self.diag[i].abs();
        if i > 0 {
            s += self.lower[i - 1].abs();
        }
        if i + 1 < self.dim() {
            s += self.upper[i].abs();
        }
        s
    }

    /// Pivots produced by forward elimination without pivoting.
    pub fn pivots(&self) -> Vec<f64> {
        let n = self.dim();
        let mut piv = Vec::with_capacity(n);
        for i in 0..n {
            let p = if i == 0 {
                self.diag[0]
            } else {
                self.diag[i] - self.lower[i - 1] * self.upper[i - 1] / piv[i - 1]
            };
            piv.push(p);
        }
        piv
    }

    /// Thomas algorithm: forward elimination then back substitution.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if n == 0 {
            return Err(Error::Dimension("empty tridiagonal system".into()));
        }
        if self.lower.len() != n - 1 || self.upper.len() != n - 1 || rhs.len() != n {
            return Err(Error::Dimension(format!(
                "diag {n}, lower {}, upper {}, rhs {}",
                self.lower.len(),
                self.upper.len(),
                rhs.len()
            )));
        }
        let scale = (0..n).map(|i| self.row_magnitude(i)).fold(0.0, f64::max);
        let check = |row: usize, pivot: f64| {
            if pivot.is_nan() || pivot.abs() < PIVOT_TOL * scale || scale == 0.0 {
                Err(Error::SingularSystem { row, pivot })
            } else {
                Ok(pivot)
            }
        };

        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut pivot = check(0, self.diag[0])?;
        if n > 1 {
            c[0] = self.upper[0] / pivot;
        }
        d[0] = rhs[0] / pivot;
        for i in 1..n {
            pivot = check(i, self.diag[i] - self.lower[i - 1] * c[i - 1])?;
            if i + 1 < n {
                c[i] = self.upper[i] / pivot;
            }
            d[i] = (rhs[i] - self.lower[i - 1] * d[i - 1]) / pivot;
        }

        let mut x = d;
        for i in (0..n - 1).rev() {
            x[i] -= c[i] * x[i + 1];
        }
        Ok(x)
    }
}

/// Solves `A x = rhs` for the tridiagonal `A` given by its three diagonals.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    Tridiagonal {
        lower: lower.to_vec(),
        diag: diag.to_vec(),
        upper: upper.to_vec(),
    }
    .solve(rhs)
}
