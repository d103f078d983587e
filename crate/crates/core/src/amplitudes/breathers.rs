//! Breather scattering and transmission amplitudes with fusion.
//!
//! The hyperbolic closed forms equal −A(−λ), where A is the exponentiated
//! kernel integral; the integral helpers below apply that map so both paths
//! are directly comparable.

use super::kernels::{Kernel, KernelName};
use super::regime::DefectRegimeData;
use crate::error::{Error, Result};
use crate::linalg::I;
use crate::special_functions::{fourier_log_integral, AmplitudeValue};
use crate::spin_algebra::{ModelParameters, Regime};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const DENOM_FLOOR: f64 = 1e-14;

fn ratio(num: C64, den: C64, at: C64) -> Result<C64> {
    if den.norm() < DENOM_FLOOR {
        return Err(Error::Pole { arg: at });
    }
    Ok(num / den)
}

fn lightest_s(lambda: C64, gamma: f64) -> Result<C64> {
    let h = lambda * (PI / gamma) / 2.0;
    let a = I * PI / (2.0 * gamma);
    let q = I * PI / 2.0;
    let num = (h - a).sinh() * (h + a + q).sinh();
    let den = (h + a).sinh() * (h - a - q).sinh();
    Ok(-ratio(num, den, lambda)?)
}

fn lightest_t(lambda_hat: C64, gamma: f64, eta1: C64, eta2: C64) -> Result<C64> {
    let th = lambda_hat * (PI / gamma);
    let q = I * PI / 4.0;
    let (u1, u2) = ((th - eta1) / 2.0, (th - eta2) / 2.0);
    let num = (u1 - q).sinh() * (u2 - q).sinh();
    let den = (u1 + q).sinh() * (u2 + q).sinh();
    Ok(-ratio(num, den, lambda_hat)?)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("breather order must be at least 1".into()));
    }
    Ok(())
}

/// S_b^{(n1,n2)}(λ) by fusion of the lightest amplitude, θ = πλ/γ.
pub fn breather_S(n1: usize, n2: usize, lambda: C64, gamma: f64) -> Result<C64> {
    check_order(n1)?;
    check_order(n2)?;
    let mut out = C64::new(1.0, 0.0);
    for l1 in 1..=n1 {
        for l2 in 1..=n2 {
            let shift = (n1 as f64 - n2 as f64 - 2.0 * l1 as f64 + 2.0 * l2 as f64) / 2.0;
            out *= lightest_s(lambda + I * shift, gamma)?;
        }
    }
    Ok(out)
}

/// T_b^{(n)}(λ̂) by fusion, θ̂ = πλ̂/γ.
pub fn breather_T(n: usize, lambda_hat: C64, gamma: f64, eta1: C64, eta2: C64) -> Result<C64> {
    check_order(n)?;
    let mut out = C64::new(1.0, 0.0);
    for l in 1..=n {
        let shift = (n as f64 + 1.0 - 2.0 * l as f64) / 2.0;
        out *= lightest_t(lambda_hat + I * shift, gamma, eta1, eta2)?;
    }
    Ok(out)
}

fn attractive(params: &ModelParameters) -> Result<f64> {
    if params.is_rational() || params.regime()? != Regime::Attractive {
        return Err(Error::Domain("breathers live in the attractive regime".into()));
    }
    params.gamma()
}

fn closed_convention(a: AmplitudeValue) -> AmplitudeValue {
    a.scale(C64::new(-1.0, 0.0))
}

/// −A(−λ) with A the exponentiated r̂_b integral; comparable with
/// `breather_S(1, 1, λ, γ)`.
pub fn breather_S_integral(params: &ModelParameters, lambda: f64) -> Result<AmplitudeValue> {
    attractive(params)?;
    let k = Kernel::new(KernelName::BreatherScattering, params)?;
    Ok(closed_convention(fourier_log_integral(|w| k.eval(w), -lambda)?))
}

/// −A(−λ̂) with A the exponentiated t̂_b integral (Λ = 0); comparable with
/// `breather_T(1, λ̂, γ, η1, η2)`.
pub fn breather_T_integral(params: &ModelParameters, data: &DefectRegimeData, lambda_hat: f64) -> Result<AmplitudeValue> {
    attractive(params)?;
    if data.lambda_shift != 0.0 {
        return Err(Error::Domain("the integral form is defined for Lambda = 0 only".into()));
    }
    let k = Kernel::new(KernelName::BreatherTransmission { y: data.y() }, params)?;
    Ok(closed_convention(fourier_log_integral(|w| k.eval(w), -lambda_hat)?))
}
