use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Traction between the cell and fluid phases.
    pub k: f64,
    /// Cell-phase viscosity.
    pub mu: f64,
    /// Oxygen diffusivity.
    pub lambda: f64,
    /// Oxygen consumption rate.
    #[serde(rename = "Q")]
    pub q: f64,
    /// Consumption saturation.
    #[serde(rename = "Q1hat")]
    pub q1hat: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s4: f64,
    /// Repulsion threshold of the cell stress.
    #[serde(rename = "alphaR")]
    pub alpha_r: f64,
}

impl ModelParams {
    /// Reference parameter set: `k = mu = 1`, `Q = 0.5`, `Q1hat = 0`,
    /// `s1 = s4 = 10`, `s2 = s3 = 0.5`, `alphaR = 0.8`, with unit diffusivity.
    pub fn reference() -> Self {
        Self {
            k: 1.0,
            mu: 1.0,
            lambda: 1.0,
            q: 0.5,
            q1hat: 0.0,
            s1: 10.0,
            s2: 0.5,
            s3: 0.5,
            s4: 10.0,
            alpha_r: 0.8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("k", self.k),
            ("mu", self.mu),
            ("lambda", self.lambda),
            ("Q", self.q),
            ("Q1hat", self.q1hat),
            ("s1", self.s1),
            ("s2", self.s2),
            ("s3", self.s3),
            ("s4", self.s4),
            ("alphaR", self.alpha_r),
        ];
        for (name, value) in all {
            if !value.is_finite() {
                return Err(invalid(name, value, "must be finite"));
            }
        }
        for (name, value) in [
            ("k", self.k),
            ("mu", self.mu),
            ("lambda", self.lambda),
            ("s1", self.s1),
            ("s2", self.s2),
            ("s3", self.s3),
            ("s4", self.s4),
        ] {
            if value <= 0.0 {
                return Err(invalid(name, value, "must be positive"));
            }
        }
        for (name, value) in [("Q", self.q), ("Q1hat", self.q1hat)] {
            if value < 0.0 {
                return Err(invalid(name, value, "must be nonnegative"));
            }
        }
        if !(self.alpha_r > 0.0 && self.alpha_r < 1.0) {
            return Err(invalid("alphaR", self.alpha_r, "must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Stress nonlinearity `H(a) = a (a - alphaR)^+ / (1 - a)^2`.
    #[inline]
    pub fn stress(&self, alpha: f64) -> f64 {
        let d = 1.0 - alpha;
        alpha * crate::pos(alpha - self.alpha_r) / (d * d)
    }

    /// Growth factor `(1 + s1) c / (1 + s1 c)`.
    #[inline]
    pub fn growth(&self, c: f64) -> f64 {
        (1.0 + self.s1) * c / (1.0 + self.s1 * c)
    }

    /// Death factor `(s2 + s3 c) / (1 + s4 c)`.
    #[inline]
    pub fn death(&self, c: f64) -> f64 {
        (self.s2 + self.s3 * c) / (1.0 + self.s4 * c)
    }
}

/// Discretisation and threshold-analysis constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    /// Cell width.
    pub h: f64,
    /// Time step.
    pub delta: f64,
    /// Initial tumour radius.
    pub ell0: f64,
    /// Length of the bounding box.
    pub ellm: f64,
    pub alpha_thr: f64,
    /// Lower fraction of the CFL window.
    pub rho: f64,
    /// Lower volume-fraction bound `a_*`.
    pub a_star_lo: f64,
    /// Upper volume-fraction bound `a^*`.
    pub a_star_hi: f64,
    pub m01: f64,
    pub m02: f64,
    #[serde(rename = "T_final")]
    pub t_final: f64,
}

/// Relative tolerance for grid integrality.
pub(crate) const GRID_TOL: f64 = 1e-12;

impl SchemeConfig {
    /// Reference discretisation on `(0, 10)` with `h = 0.05`, `delta = 1e-3`.
    pub fn reference() -> Self {
        Self {
            h: 5e-2,
            delta: 1e-3,
            ell0: 1.0,
            ellm: 10.0,
            alpha_thr: 0.1,
            rho: 0.1,
            a_star_lo: 0.4,
            a_star_hi: 0.82,
            m01: 0.8,
            m02: 0.8,
            t_final: 50.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("h", self.h),
            ("delta", self.delta),
            ("ell0", self.ell0),
            ("ellm", self.ellm),
            ("alpha_thr", self.alpha_thr),
            ("rho", self.rho),
            ("a_star_lo", self.a_star_lo),
            ("a_star_hi", self.a_star_hi),
            ("m01", self.m01),
            ("m02", self.m02),
            ("T_final", self.t_final),
        ];
        for (name, value) in all {
            if !value.is_finite() {
                return Err(invalid(name, value, "must be finite"));
            }
        }
        if self.h <= 0.0 {
            return Err(invalid("h", self.h, "must be positive"));
        }
        if self.delta <= 0.0 {
            return Err(invalid("delta", self.delta, "must be positive"));
        }
        if self.t_final < 0.0 {
            return Err(invalid("T_final", self.t_final, "must be nonnegative"));
        }
        if !(self.ell0 > 0.0 && self.ell0 < self.ellm) {
            return Err(invalid("ell0", self.ell0, "must lie in (0, ellm)"));
        }
        if !(self.alpha_thr > 0.0 && self.alpha_thr < 1.0) {
            return Err(invalid("alpha_thr", self.alpha_thr, "must lie in (0, 1)"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(invalid("rho", self.rho, "must lie in (0, 1)"));
        }
        if self.a_star_lo <= 0.0 {
            return Err(invalid("a_star_lo", self.a_star_lo, "must be positive"));
        }
        if self.m01 < self.a_star_lo {
            return Err(invalid("m01", self.m01, "must be >= a_star_lo"));
        }
        if self.m02 < self.m01 {
            return Err(invalid("m02", self.m02, "must be >= m01"));
        }
        if self.a_star_hi < self.m02 {
            return Err(invalid("a_star_hi", self.a_star_hi, "must be >= m02"));
        }
        if self.a_star_hi >= 1.0 {
            return Err(invalid("a_star_hi", self.a_star_hi, "must be < 1"));
        }
        grid_count("ellm", self.ellm, self.h)?;
        grid_count("ell0", self.ell0, self.h)?;
        Ok(())
    }

    /// Number of cells of the bounding box.
    pub fn cell_count(&self) -> Result<usize> {
        grid_count("ellm", self.ellm, self.h)
    }

    /// Index of the node at the initial radius.
    pub fn initial_radius_index(&self) -> Result<usize> {
        grid_count("ell0", self.ell0, self.h)
    }

    /// Number of time steps needed to reach `t_final`.
    pub fn step_count(&self) -> usize {
        let n = self.t_final / self.delta;
        let r = n.round();
        if (n - r).abs() <= 1e-9 * r.max(1.0) {
            r as usize
        } else {
            n.ceil() as usize
        }
    }

    /// `delta / h`.
    pub fn ratio(&self) -> f64 {
        self.delta / self.h
    }
}

pub(crate) fn grid_count(name: &'static str, length: f64, h: f64) -> Result<usize> {
    let ratio = length / h;
    let r = ratio.round();
    if r < 1.0 || (ratio - r).abs() > GRID_TOL * r {
        return Err(Error::NonIntegerGrid { name, ratio });
    }
    Ok(r as usize)
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
