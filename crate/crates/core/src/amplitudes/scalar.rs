//! Scalar kink and transmission amplitudes: closed Γ forms and their
//! Fourier-integral counterparts.

use super::kernels::{Kernel, KernelName};
use super::regime::DefectRegimeData;
use crate::error::{Error, Result};
use crate::linalg::I;
use crate::special_functions::{
    finite_gamma_ratio, fourier_log_integral, gamma_product, AmplitudeValue, GammaFactor, GammaProductSpec,
};
use crate::spin_algebra::{Family, ModelParameters, Regime};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Log-accuracy requested from the product engine.
pub const PRODUCT_TOL: f64 = 1e-12;

#[cfg(test)]
fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn factors(slope: f64, rows: &[(i8, C64)]) -> Vec<GammaFactor> {
    rows.iter()
        .map(|&(s, a)| if s > 0 { GammaFactor::num(a, slope) } else { GammaFactor::den(a, slope) })
        .collect()
}

/// Rational kink amplitude Γ(1/2 − iλ/2)Γ(1 + iλ/2)/(Γ(1 − iλ/2)Γ(1/2 + iλ/2)).
pub fn rational_kink_terms(lambda: C64) -> [(i8, C64); 4] {
    let h = I * lambda / 2.0;
    [(1, 0.5 - h), (1, 1.0 + h), (-1, 1.0 - h), (-1, 0.5 + h)]
}

/// Rational transmission amplitude as a four-term Γ ratio in λ̂ and S̃.
pub fn rational_transmission_terms(lambda_hat: C64, shifted_spin: f64) -> [(i8, C64); 4] {
    let h = I * lambda_hat / 2.0;
    let s = shifted_spin / 2.0;
    [(1, h + s + 0.75), (1, -h + s + 0.25), (-1, h + s + 0.25), (-1, -h + s + 0.75)]
}

/// Soliton-soliton product with slope 2γ at argument z.
pub fn kink_product_spec(gamma: f64, z: C64) -> Result<GammaProductSpec> {
    let g = gamma;
    GammaProductSpec::new(factors(
        2.0 * g,
        &[
            (1, z + 2.0 * g),
            (1, z + 1.0),
            (-1, z + g),
            (-1, z + g + 1.0),
            (1, -z + g),
            (1, -z + g + 1.0),
            (-1, -z + 2.0 * g),
            (-1, -z + 1.0),
        ],
    ))
}

/// Repulsive transmission product with the branch shift m.
pub fn repulsive_transmission_spec(gamma: f64, shifted_spin: f64, m: i64, z: C64) -> Result<GammaProductSpec> {
    let g = gamma;
    let a = g * shifted_spin - m as f64 + g / 2.0;
    let b = -a;
    GammaProductSpec::new(factors(
        2.0 * g,
        &[
            (1, z + a + g),
            (1, z + b + g + 1.0),
            (-1, z + a),
            (-1, z + b + 2.0 * g + 1.0),
            (1, -z + a),
            (1, -z + b + 2.0 * g + 1.0),
            (-1, -z + a + g),
            (-1, -z + b + g + 1.0),
        ],
    ))
}

/// Attractive transmission product; ξ enters shifted by m(γ + 1).
pub fn attractive_transmission_spec(gamma: f64, xi: f64, m: i64, z: C64) -> Result<GammaProductSpec> {
    let g = gamma;
    let x = -xi + m as f64 * (g + 1.0);
    let y = -x;
    GammaProductSpec::new(factors(
        2.0 * g,
        &[
            (1, z + x + 2.0 * g + 0.5),
            (1, z + y + 0.5),
            (-1, z + x + g + 0.5),
            (-1, z + y + g + 0.5),
            (1, -z + x + g + 0.5),
            (1, -z + y + g + 0.5),
            (-1, -z + x + 2.0 * g + 0.5),
            (-1, -z + y + 0.5),
        ],
    ))
}

/// Infinite part of ρ_d, re-indexed from k = 1 to k = 0. Balanced only when
/// z1 + z2 = 0, so the product is taken in its regularized form.
pub fn rho_d_spec(z1: C64, z2: C64, gamma: f64) -> Result<GammaProductSpec> {
    let g = gamma;
    let mut rows = Vec::with_capacity(8);
    for z in [z1, z2] {
        rows.extend_from_slice(&[
            (1, z + g + 0.5),
            (-1, z + 2.0 * g + 0.5),
            (1, -z + 2.0 * g + 0.5),
            (-1, -z + g + 0.5),
        ]);
    }
    GammaProductSpec::regularized(factors(2.0 * g, &rows))
}

/// Kink-kink (soliton-soliton) scattering amplitude.
pub fn kink_S_amplitude(params: &ModelParameters, lambda: C64) -> Result<AmplitudeValue> {
    match params.family() {
        Family::Rational => finite_gamma_ratio(&rational_kink_terms(lambda)),
        Family::Trigonometric => {
            let g = params.gamma()?;
            let z = match params.regime()? {
                Regime::Repulsive => I * g * lambda,
                Regime::Attractive => I * lambda,
            };
            gamma_product(&kink_product_spec(g, z)?, PRODUCT_TOL)
        }
    }
}

/// Same amplitude from the exponentiated integral of r̂_s.
pub fn kink_S_integral(params: &ModelParameters, lambda: f64) -> Result<AmplitudeValue> {
    let k = Kernel::new(KernelName::HoleScattering, params)?;
    fourier_log_integral(|w| k.eval(w), lambda)
}

fn check_data(params: &ModelParameters, data: &DefectRegimeData) -> Result<()> {
    if *params != data.params {
        return Err(Error::Domain("regime data was built for different model parameters".into()));
    }
    Ok(())
}

/// First transmission eigenvalue T(λ̂), λ̂ = λ̃ − Θ.
pub fn transmission_amplitude(
    params: &ModelParameters,
    data: &DefectRegimeData,
    lambda_hat: C64,
) -> Result<AmplitudeValue> {
    check_data(params, data)?;
    match params.family() {
        Family::Rational => finite_gamma_ratio(&rational_transmission_terms(lambda_hat, data.shifted_spin)),
        Family::Trigonometric => {
            let g = params.gamma()?;
            match params.regime()? {
                Regime::Repulsive => gamma_product(
                    &repulsive_transmission_spec(g, data.shifted_spin, data.branch, I * g * lambda_hat)?,
                    PRODUCT_TOL,
                ),
                Regime::Attractive => {
                    let z = I * lambda_hat - data.lambda_shift;
                    gamma_product(&attractive_transmission_spec(g, data.xi, data.branch, z)?, PRODUCT_TOL)
                }
            }
        }
    }
}

/// T(λ̂) from the exponentiated integral of r̂_t. The integral form has no
/// Λ shift, so Λ must vanish.
pub fn transmission_integral(params: &ModelParameters, data: &DefectRegimeData, lambda_hat: f64) -> Result<AmplitudeValue> {
    check_data(params, data)?;
    if data.lambda_shift != 0.0 {
        return Err(Error::Domain("the integral form is defined for Lambda = 0 only".into()));
    }
    let k = Kernel::new(KernelName::HoleTransmission { y: data.y() }, params)?;
    fourier_log_integral(|w| k.eval(w), lambda_hat)
}

/// Rational second eigenvalue T₂ = T·(iλ̂ − S̃ − 1/2)/(iλ̂ + S̃ + 1/2).
pub fn rational_second_eigenvalue(data: &DefectRegimeData, lambda_hat: C64) -> Result<AmplitudeValue> {
    if !data.params.is_rational() {
        return Err(Error::Domain("the second eigenvalue is only known in the rational case".into()));
    }
    let t = transmission_amplitude(&data.params, data, lambda_hat)?;
    let s = data.shifted_spin + 0.5;
    let den = I * lambda_hat + s;
    if den.norm() < 1e-14 {
        return Err(Error::Pole { arg: lambda_hat });
    }
    Ok(t.scale((I * lambda_hat - s) / den))
}

/// z₁, z₂ of the alternative parametrization for the attractive data.
pub fn defect_pair_arguments(data: &DefectRegimeData, lambda_hat: C64) -> Result<(C64, C64)> {
    let g = data.params.gamma()?;
    if data.params.regime()? != Regime::Attractive || data.branch != 0 {
        return Err(Error::Domain("the z1, z2 parametrization applies to the attractive branch m = 0".into()));
    }
    let z1 = -I * lambda_hat - I * (g / PI) * data.eta1;
    let z2 = -I * lambda_hat - I * (g / PI) * data.eta2;
    Ok((z1, z2))
}

/// (T, ρ_d) with T = sin π(z₁ + 1/2)/π · ρ_d.
pub fn defect_pair_form(z1: C64, z2: C64, gamma: f64) -> Result<(AmplitudeValue, AmplitudeValue)> {
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!("gamma = {gamma} must be positive")));
    }
    let front = finite_gamma_ratio(&[(1, 0.5 - z1), (1, 0.5 - z2)])?;
    let rho = front.times(gamma_product(&rho_d_spec(z1, z2, gamma)?, PRODUCT_TOL)?);
    let t = rho.scale((PI * (z1 + 0.5)).sin() / PI);
    Ok((t, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::log_gamma;

    fn direct_row(rows: &[(i8, C64)]) -> C64 {
        rows.iter().map(|&(s, a)| s as f64 * log_gamma(a).unwrap()).sum::<C64>().exp()
    }

    fn first_factor(spec: &GammaProductSpec) -> C64 {
        let rows: Vec<(i8, C64)> = spec.factors().iter().map(|f| (f.sign, f.a + f.c)).collect();
        direct_row(&rows)
    }

    #[test]
    fn kink_builder_first_factor() {
        // k = 0 row written out by hand
        let (g, z) = (0.4, C64::new(0.1, 0.3));
        let spec = kink_product_spec(g, z).unwrap();
        let hand = direct_row(&[
            (1, z + 0.8),
            (1, z + 1.0),
            (-1, z + 0.4),
            (-1, z + 1.4),
            (1, -z + 0.4),
            (1, -z + 1.4),
            (-1, -z + 0.8),
            (-1, -z + 1.0),
        ]);
        assert!((first_factor(&spec) - hand).norm() < 1e-13);
    }

    #[test]
    fn transmission_builders_first_factor() {
        let (g, st, z) = (0.5, 0.5, C64::new(0.0, 0.35));
        let spec = repulsive_transmission_spec(g, st, 0, z).unwrap();
        let c = g * st + g / 2.0;
        let hand = direct_row(&[
            (1, z + c + g),
            (1, z - c + g + 1.0),
            (-1, z + c),
            (-1, z - c + 2.0 * g + 1.0),
            (1, -z + c),
            (1, -z - c + 2.0 * g + 1.0),
            (-1, -z + c + g),
            (-1, -z - c + g + 1.0),
        ]);
        assert!((first_factor(&spec) - hand).norm() < 1e-13);

        let (g, xi) = (1.5, 0.5 + 0.75);
        let spec = attractive_transmission_spec(g, xi, 0, z).unwrap();
        let hand = direct_row(&[
            (1, z - xi + 2.0 * g + 0.5),
            (1, z + xi + 0.5),
            (-1, z - xi + g + 0.5),
            (-1, z + xi + g + 0.5),
            (1, -z - xi + g + 0.5),
            (1, -z + xi + g + 0.5),
            (-1, -z - xi + 2.0 * g + 0.5),
            (-1, -z + xi + 0.5),
        ]);
        assert!((first_factor(&spec) - hand).norm() < 1e-13);
    }

    #[test]
    fn trivial_values() {
        let r = ModelParameters::rational();
        assert!((kink_S_amplitude(&r, re(0.0)).unwrap().value - 1.0).norm() < 1e-15);
        let p = ModelParameters::from_nu(3.0, Regime::Repulsive).unwrap();
        assert!((kink_S_amplitude(&p, re(0.0)).unwrap().value - 1.0).norm() < 1e-12);
        for s in [0.5, 1.0, 2.5] {
            let d = DefectRegimeData::new(&r, s, 0.0, 0.0).unwrap();
            assert!((transmission_amplitude(&r, &d, re(0.0)).unwrap().value - 1.0).norm() < 1e-15);
            let t2 = rational_second_eigenvalue(&d, re(0.0)).unwrap();
            assert!((t2.value + 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn rational_duality() {
        let r = ModelParameters::rational();
        let lam = 1.3;
        let a = kink_S_amplitude(&r, re(lam)).unwrap().value;
        let b = kink_S_integral(&r, lam).unwrap().value;
        assert!((a - b).norm() < 1e-8);
        let d = DefectRegimeData::new(&r, 0.5, 0.0, 0.0).unwrap();
        let a = transmission_amplitude(&r, &d, re(0.8)).unwrap().value;
        let b = transmission_integral(&r, &d, 0.8).unwrap().value;
        assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn trig_duality_samples() {
        for regime in [Regime::Repulsive, Regime::Attractive] {
            let p = ModelParameters::from_nu(3.0, regime).unwrap();
            let a = kink_S_amplitude(&p, re(0.7)).unwrap();
            let b = kink_S_integral(&p, 0.7).unwrap();
            assert!((a.value - b.value).norm() < 1e-8, "{regime:?}: {} vs {}", a.value, b.value);
            assert!(a.err_estimate < 1e-10);
        }
        let p = ModelParameters::from_nu(3.0, Regime::Repulsive).unwrap();
        for s in [0.5, 1.0, 3.5] {
            let d = DefectRegimeData::new(&p, s, 0.0, 0.0).unwrap();
            let a = transmission_amplitude(&p, &d, re(0.8)).unwrap().value;
            let b = transmission_integral(&p, &d, 0.8).unwrap().value;
            assert!((a - b).norm() < 1e-8, "S = {s}: {a} vs {b}");
        }
        let p = ModelParameters::from_nu(3.0, Regime::Attractive).unwrap();
        for s in [0.5, 2.0] {
            let d = DefectRegimeData::new(&p, s, 0.0, 0.0).unwrap();
            let a = transmission_amplitude(&p, &d, re(0.8)).unwrap().value;
            let b = transmission_integral(&p, &d, 0.8).unwrap().value;
            assert!((a - b).norm() < 1e-8, "S = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn defect_pair_matches_transmission() {
        let p = ModelParameters::from_nu(1.5, Regime::Attractive).unwrap();
        let d = DefectRegimeData::new(&p, 0.5, 0.0, 0.0).unwrap();
        let lh = re(0.4);
        let (z1, z2) = defect_pair_arguments(&d, lh).unwrap();
        let (t, _) = defect_pair_form(z1, z2, 0.5).unwrap();
        let direct = transmission_amplitude(&p, &d, lh).unwrap();
        assert!((t.value - direct.value).norm() < 1e-9, "{} vs {}", t.value, direct.value);
    }

    #[test]
    fn defect_pair_symmetric_and_finite() {
        let (a, b) = (C64::new(0.2, 0.1), C64::new(-0.1, 0.4));
        let (_, r1) = defect_pair_form(a, b, 0.7).unwrap();
        let (_, r2) = defect_pair_form(b, a, 0.7).unwrap();
        assert!((r1.value - r2.value).norm() < 1e-10 * r1.value.norm());
        let (t, _) = defect_pair_form(re(0.2), re(-0.2), 1.0).unwrap();
        assert!(t.value.norm().is_finite() && t.err_estimate <= 1e-9);
    }
}
