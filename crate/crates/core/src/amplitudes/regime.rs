//! Defect data per regime: branch index, shifted spin and the shift constants.

use super::kernels::branch_index;
use crate::error::{Error, Result};
use crate::linalg::I;
use crate::spin_algebra::{Family, ModelParameters, Regime};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectRegimeData {
    pub params: ModelParameters,
    /// Defect spin S.
    pub spin: f64,
    /// Defect rapidity Θ.
    pub theta: f64,
    /// Branch index m; 0 in the rational case.
    pub branch: i64,
    /// S̃: S − 1/2 rational, S − m − 1/2 repulsive, m attractive.
    pub shifted_spin: f64,
    /// ξ = S + γ/2 (attractive; 0 otherwise).
    pub xi: f64,
    pub eta1: C64,
    pub eta2: C64,
    /// Λ, the arbitrary shift of iλ̂.
    pub lambda_shift: f64,
}

impl DefectRegimeData {
    pub fn new(params: &ModelParameters, spin: f64, theta: f64, lambda_shift: f64) -> Result<Self> {
        if !(spin > 0.0) || !spin.is_finite() {
            return Err(Error::Domain(format!("defect spin {spin} must be positive")));
        }
        let y = 2.0 * spin;
        let mut data = DefectRegimeData {
            params: *params,
            spin,
            theta,
            branch: 0,
            shifted_spin: spin - 0.5,
            xi: 0.0,
            eta1: C64::new(0.0, 0.0),
            eta2: C64::new(0.0, 0.0),
            lambda_shift,
        };
        if params.family() == Family::Rational {
            if y < 1.0 - 1e-12 {
                return Err(Error::Domain(format!("rational defect needs S >= 1/2, got {spin}")));
            }
            return Ok(data);
        }
        let nu = params.nu()?;
        let gamma = params.gamma()?;
        match params.regime()? {
            Regime::Repulsive => {
                let m = branch_index(y, 2.0 * nu)?;
                data.branch = m;
                data.shifted_spin = spin - m as f64 - 0.5;
            }
            Regime::Attractive => {
                let m = branch_index(y, nu)?;
                if m > 1 {
                    return Err(Error::Domain(format!(
                        "2S = {y} lies in branch m = {m} (nu = {nu}); only m in {{0, 1}} is convergent"
                    )));
                }
                data.branch = m;
                data.shifted_spin = m as f64;
                data.xi = spin + gamma / 2.0;
                data.eta1 = I * (PI / gamma) * (lambda_shift + data.xi);
                data.eta2 = I * (PI / gamma) * (lambda_shift - data.xi);
            }
        }
        Ok(data)
    }

    /// y = 2S.
    pub fn y(&self) -> f64 {
        2.0 * self.spin
    }
}

/// S^z = ν/(ν−1)·(S̃ + 1/2) of the repulsive one-hole state.
pub fn repulsive_one_hole_spin(shifted_spin: f64, nu: f64) -> f64 {
    nu / (nu - 1.0) * (shifted_spin + 0.5)
}

/// Divides out the renormalization factor ν/(ν−1).
pub fn physical_spin(bare_sz: f64, nu: f64) -> f64 {
    bare_sz / (nu / (nu - 1.0))
}
