//! Dispersion relations and finite-size state densities.

use super::kernels::{Kernel, KernelName};
use super::regime::DefectRegimeData;
use crate::error::{Error, Result};
use crate::special_functions::{inverse_cosine_transform, sine_log_integral};
use crate::spin_algebra::{Family, ModelParameters, Regime};
use std::f64::consts::PI;

const DENSITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Excitation {
    Hole,
    /// Lightest breather (attractive regime).
    Breather,
}

/// Ground-state density σ₀(λ): the sech transform in closed form.
pub fn ground_density(params: &ModelParameters, lambda: f64) -> Result<f64> {
    let width = match params.family() {
        Family::Rational => 1.0,
        Family::Trigonometric => match params.regime()? {
            Regime::Repulsive => 1.0,
            Regime::Attractive => params.nu()? - 1.0,
        },
    };
    Ok(1.0 / (2.0 * width * (PI * lambda / width).cosh()))
}

/// (ε(λ), p(λ)) with ε = σ₀ and p = 2π∫_0^λ σ₀, odd in λ.
pub fn dispersion(kind: Excitation, params: &ModelParameters, lambda: f64) -> Result<(f64, f64)> {
    let name = match kind {
        Excitation::Hole => KernelName::Sigma0,
        Excitation::Breather => KernelName::BreatherSigma0,
    };
    let k = Kernel::new(name, params)?;
    let eps = match kind {
        Excitation::Hole => ground_density(params, lambda)?,
        Excitation::Breather => inverse_cosine_transform(|w| k.eval(w), lambda, DENSITY_TOL)?,
    };
    let p = 2.0 * sine_log_integral(|w| k.eval(w), lambda, DENSITY_TOL)?.value;
    Ok((eps, p))
}

/// Position-space kernel by inverse cosine transform.
pub fn position_kernel(name: KernelName, params: &ModelParameters, lambda: f64) -> Result<f64> {
    let k = Kernel::new(name, params)?;
    inverse_cosine_transform(|w| k.eval(w), lambda, DENSITY_TOL)
}

/// σ(λ) = σ₀(λ) + (Σ_k r_s(λ − λ̃_k) + r_t(λ − Θ))/N.
pub fn state_density(
    params: &ModelParameters,
    data: &DefectRegimeData,
    holes: &[f64],
    lambda: f64,
    n_sites: usize,
) -> Result<f64> {
    if n_sites == 0 {
        return Err(Error::Domain("chain length must be positive".into()));
    }
    let mut correction = position_kernel(KernelName::HoleTransmission { y: data.y() }, params, lambda - data.theta)?;
    for &h in holes {
        correction += position_kernel(KernelName::HoleScattering, params, lambda - h)?;
    }
    Ok(ground_density(params, lambda)? + correction / n_sites as f64)
}
