//! Elementary ratio functions e_n and g_n.

use crate::error::{Error, Result};
use crate::linalg::I;
use crate::spin_algebra::{Family, ModelParameters};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioKind {
    /// e_n: (λ + in/2)/(λ − in/2), or its sinh analogue.
    E,
    /// g_n: cosh(μ(λ + in/2))/cosh(μ(λ − in/2)); trigonometric only.
    G,
}

const DENOM_FLOOR: f64 = 1e-14;

fn parts(kind: RatioKind, params: &ModelParameters, n: f64, lambda: C64) -> Result<(C64, C64)> {
    let plus = lambda + I * (n / 2.0);
    let minus = lambda - I * (n / 2.0);
    match (kind, params.family()) {
        (RatioKind::E, Family::Rational) => Ok((plus, minus)),
        (RatioKind::E, Family::Trigonometric) => {
            let mu = params.mu()?;
            Ok(((mu * plus).sinh(), (mu * minus).sinh()))
        }
        (RatioKind::G, Family::Trigonometric) => {
            let mu = params.mu()?;
            Ok(((mu * plus).cosh(), (mu * minus).cosh()))
        }
        (RatioKind::G, Family::Rational) => {
            Err(Error::Domain("g_n is only defined for the trigonometric family".into()))
        }
    }
}

pub fn elementary_ratio(kind: RatioKind, params: &ModelParameters, n: f64, lambda: C64) -> Result<C64> {
    let (num, den) = parts(kind, params, n, lambda)?;
    if den.norm() < DENOM_FLOOR {
        return Err(Error::Pole { arg: lambda });
    }
    Ok(num / den)
}

/// d/dλ ln of the ratio.
pub fn elementary_log_derivative(kind: RatioKind, params: &ModelParameters, n: f64, lambda: C64) -> Result<C64> {
    let plus = lambda + I * (n / 2.0);
    let minus = lambda - I * (n / 2.0);
    let (num, den) = parts(kind, params, n, lambda)?;
    if den.norm() < DENOM_FLOOR || num.norm() < DENOM_FLOOR {
        return Err(Error::Pole { arg: lambda });
    }
    Ok(match (kind, params.family()) {
        (RatioKind::E, Family::Rational) => 1.0 / plus - 1.0 / minus,
        (RatioKind::E, Family::Trigonometric) => {
            let mu = params.mu()?;
            mu * ((mu * plus).cosh() / num - (mu * minus).cosh() / den)
        }
        _ => {
            let mu = params.mu()?;
            mu * ((mu * plus).sinh() / num - (mu * minus).sinh() / den)
        }
    })
}
