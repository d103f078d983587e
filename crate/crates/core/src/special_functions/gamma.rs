//! Complex log-gamma.
//!
//! Stirling series with Bernoulli coefficients B_2..B_16, applied after
//! shifting the argument up by the recurrence until |z| ≥ 12. Valid for
//! Re z ≥ 1/2; the left half-plane is reached by reflection. A Lanczos sum was
//! tried first but loses ~1e-12 relative accuracy to cancellation at complex
//! arguments with |z| ≳ 10.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Distance to a nonpositive integer below which an argument counts as a pole.
pub const POLE_RADIUS: f64 = 1e-12;

const SHIFT_RADIUS: f64 = 12.0;

/// B_{2j} / (2j(2j−1)) for j = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_617_639_861_397_473_637_8;

/// Log of Γ(z) for complex z. The imaginary part is defined modulo 2π; only
/// `exp` of the result (and differences along continuous paths) is meaningful.
pub fn log_gamma(z: C64) -> Result<C64> {
    check_pole(z)?;
    if z.re < 0.5 {
        Ok(C64::new(PI.ln(), 0.0) - ln_sin_pi(z) - stirling(C64::new(1.0, 0.0) - z))
    } else {
        Ok(stirling(z))
    }
}

/// Γ(z) itself.
pub fn gamma(z: C64) -> Result<C64> {
    log_gamma(z).map(|l| l.exp())
}

pub(crate) fn check_pole(z: C64) -> Result<()> {
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - C64::new(nearest, 0.0)).norm() < POLE_RADIUS {
        return Err(Error::Pole { arg: z });
    }
    Ok(())
}

fn stirling(z: C64) -> C64 {
    let mut z = z;
    let mut shift = C64::new(0.0, 0.0);
    while z.norm() < SHIFT_RADIUS {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    for coef in STIRLING.iter().rev() {
        series = series * inv2 + *coef;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series * inv - shift
}

/// ln(1 + w) without cancellation for small |w|.
pub(crate) fn ln_1p(w: C64) -> C64 {
    let modulus = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    C64::new(modulus, w.im.atan2(1.0 + w.re))
}

/// ln Γ(x + δ) minus its leading part (x + δ − ½) ln x − (x + δ) + ½ ln 2π,
/// for real x ≥ 12 + 2|δ|. Sums of these over a balanced set of factors
/// sharing x avoid the cancellation of the O(x ln x) pieces.
pub(crate) fn log_gamma_remainder(x: f64, delta: C64) -> C64 {
    let z = delta + x;
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    for coef in STIRLING.iter().rev() {
        series = series * inv2 + *coef;
    }
    (z - 0.5) * ln_1p(delta / x) + series * inv
}

/// ln sin(πz), stable for large |Im z|.
fn ln_sin_pi(z: C64) -> C64 {
    let i = C64::new(0.0, 1.0);
    if z.im.abs() < 5.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(πz) = (i/2)·e^{−iπz}·(1 − e^{2iπz})
        -i * PI * z + (i * 0.5).ln() + (1.0 - (2.0 * i * PI * z).exp()).ln()
    } else {
        i * PI * z + (-i * 0.5).ln() + (1.0 - (-2.0 * i * PI * z).exp()).ln()
    }
}

/// Digamma for real x ≥ 6 by its asymptotic series.
pub(crate) fn digamma_large(x: f64) -> f64 {
    let x2 = 1.0 / (x * x);
    // Σ B_{2j}/(2j x^{2j}) for j = 1..6
    let series = x2
        * (1.0 / 12.0
            - x2 * (1.0 / 120.0
                - x2 * (1.0 / 252.0 - x2 * (1.0 / 240.0 - x2 * (1.0 / 132.0 - x2 * 691.0 / 32760.0)))));
    x.ln() - 0.5 / x - series
}
