//! Checks of the two Gamma-function integral representations behind the
//! amplitude formulas.
//!
//! Taken literally both integrals diverge at ω → 0, so each is checked in a
//! convergent form that leaves the μ-dependence intact:
//! * the single-sech identity with the Frullani counterterm e^{−2ω}, and
//! * the double-sinh identity through its third forward difference in μ
//!   (step [`USE2_STEP`]), which removes the quadratic polynomial in μ by which
//!   the two divergent sides differ.

use super::gamma::log_gamma;
use super::product::{gamma_product, GammaFactor, GammaProductSpec};
use super::quadrature::integrate_half_line;
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

pub const USE2_STEP: f64 = 0.5;

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdentityKind {
    Use1 { mu: f64 },
    Use2 { mu: f64, beta: f64 },
}

/// ½∫_0^∞ dω/ω [e^{−μω/2}/cosh(ω/2) − e^{−2ω}].
pub fn use1_integral(mu: f64) -> Result<f64> {
    check_use1(mu)?;
    let q = integrate_half_line(
        |w| 0.5 * ((-mu * w / 2.0).exp() / (w / 2.0).cosh() - (-2.0 * w).exp()) / w,
        0.0,
        TOL,
    )?;
    Ok(q.value)
}

/// ln Γ((μ+1)/4) − ln Γ((μ+3)/4).
pub fn use1_closed_form(mu: f64) -> Result<f64> {
    check_use1(mu)?;
    let a = log_gamma(C64::new((mu + 1.0) / 4.0, 0.0))?;
    let b = log_gamma(C64::new((mu + 3.0) / 4.0, 0.0))?;
    Ok((a - b).re)
}

/// −¼∫_0^∞ dx/x e^{−μx}(1 − e^{−hx})³ / (sinh x sinh βx), h = [`USE2_STEP`].
pub fn use2_difference_integral(mu: f64, beta: f64) -> Result<f64> {
    check_use2(mu, beta)?;
    let h = USE2_STEP;
    let q = integrate_half_line(
        |x| {
            let d = -(-h * x).exp_m1();
            -0.25 * (-mu * x).exp() * d * d * d / (x * x.sinh() * (beta * x).sinh())
        },
        0.0,
        TOL,
    )?;
    Ok(q.value)
}

/// ln ∏_k Γ(z_k+3h/2)Γ(z_k+h/2)³ / (Γ(z_k+h)³Γ(z_k)), z_k = μ/2 + β/2 + kβ + ½.
pub fn use2_difference_product(mu: f64, beta: f64) -> Result<f64> {
    check_use2(mu, beta)?;
    let h = USE2_STEP;
    let z = C64::new(mu / 2.0 + beta / 2.0 + 0.5, 0.0);
    let mut f = vec![GammaFactor::num(z + 1.5 * h, beta)];
    for _ in 0..3 {
        f.push(GammaFactor::num(z + 0.5 * h, beta));
        f.push(GammaFactor::den(z + h, beta));
    }
    f.push(GammaFactor::den(z, beta));
    let spec = GammaProductSpec::new(f)?;
    let v = gamma_product(&spec, TOL)?;
    Ok(v.value.ln().re)
}

/// |integral side − Gamma side| for the chosen identity.
pub fn verify_gamma_integral_identity(kind: IdentityKind) -> Result<f64> {
    match kind {
        IdentityKind::Use1 { mu } => Ok((use1_integral(mu)? - use1_closed_form(mu)?).abs()),
        IdentityKind::Use2 { mu, beta } => {
            Ok((use2_difference_integral(mu, beta)? - use2_difference_product(mu, beta)?).abs())
        }
    }
}

fn check_use1(mu: f64) -> Result<()> {
    if mu > -1.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("use1 requires mu > -1, got {mu}")))
    }
}

fn check_use2(mu: f64, beta: f64) -> Result<()> {
    if mu > 0.0 && beta > 0.0 && mu.is_finite() && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("use2 requires mu > 0 and beta > 0, got mu={mu}, beta={beta}")))
    }
}
