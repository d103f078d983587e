//! Special functions and the two evaluation engines behind every amplitude:
//! infinite Gamma products and Fourier log-integrals.

mod gamma;
mod identities;
mod product;
mod quadrature;

pub use gamma::{gamma, log_gamma, POLE_RADIUS};
pub use identities::{use1_closed_form, use1_integral, use2_difference_integral, use2_difference_product, verify_gamma_integral_identity, IdentityKind, USE2_STEP};
pub use product::{bernoulli_poly, finite_gamma_ratio, gamma_product, hurwitz_zeta_int, GammaFactor, GammaProductSpec, DEFAULT_TERMS, MAX_TERMS};
pub use quadrature::{half_line_cutoff, integrate, integrate_half_line, Quadrature};

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

/// Default absolute tolerance for the Fourier log-integral.
pub const FOURIER_TOL: f64 = 1e-12;

/// A complex amplitude with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeValue {
    pub value: C64,
    pub err_estimate: f64,
    /// Product truncation K, or quadrature node count.
    pub terms_used: usize,
}

impl AmplitudeValue {
    pub fn exact(value: C64) -> Self {
        AmplitudeValue { value, err_estimate: 0.0, terms_used: 0 }
    }

    pub fn scale(self, factor: C64) -> Self {
        AmplitudeValue {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.norm(),
            terms_used: self.terms_used,
        }
    }

    pub fn times(self, other: AmplitudeValue) -> Self {
        AmplitudeValue {
            value: self.value * other.value,
            err_estimate: self.err_estimate * other.value.norm() + other.err_estimate * self.value.norm(),
            terms_used: self.terms_used.max(other.terms_used),
        }
    }

    pub(crate) fn checked(self) -> Result<Self> {
        if self.value.re.is_finite() && self.value.im.is_finite() && self.err_estimate.is_finite() {
            Ok(self)
        } else {
            Err(Error::Domain(format!("non-finite amplitude {}", self.value)))
        }
    }
}

/// exp(2i ∫_0^∞ sin(ωλ) k(ω)/ω dω), i.e. exp(−∫_ℝ dω/ω e^{−iωλ} k(ω)) for an
/// even kernel `k`.
pub fn fourier_log_integral<K: Fn(f64) -> f64>(kernel: K, lambda: f64) -> Result<AmplitudeValue> {
    fourier_log_integral_tol(kernel, lambda, FOURIER_TOL)
}

pub fn fourier_log_integral_tol<K: Fn(f64) -> f64>(kernel: K, lambda: f64, tol: f64) -> Result<AmplitudeValue> {
    if lambda == 0.0 {
        return Ok(AmplitudeValue::exact(C64::new(1.0, 0.0)));
    }
    let q = sine_log_integral(kernel, lambda, tol)?;
    let value = (C64::new(0.0, 2.0 * q.value)).exp();
    AmplitudeValue { value, err_estimate: 2.0 * q.err, terms_used: q.nodes }.checked()
}

/// ∫_0^∞ sin(ωλ) k(ω)/ω dω.
pub fn sine_log_integral<K: Fn(f64) -> f64>(kernel: K, lambda: f64, tol: f64) -> Result<Quadrature> {
    if lambda == 0.0 {
        return Ok(Quadrature { value: 0.0, err: 0.0, nodes: 0 });
    }
    integrate_half_line(|w| (w * lambda).sin() * kernel(w) / w, lambda, tol)
}

/// (1/π)∫_0^∞ cos(ωλ) f̂(ω) dω: inverse transform of an even kernel.
pub fn inverse_cosine_transform<K: Fn(f64) -> f64>(kernel: K, lambda: f64, tol: f64) -> Result<f64> {
    let q = integrate_half_line(|w| (w * lambda).cos() * kernel(w), lambda, tol * std::f64::consts::PI)?;
    Ok(q.value / std::f64::consts::PI)
}
