//! Cross-checks of closed-form claims against direct numerics: defect
//! spectra, unitarity, crossing, Casimir identities and the RTT algebra.

use crate::amplitudes::{defect_block, s_matrix, transmission_amplitude, transmission_matrix, DefectRegimeData};
use crate::error::{Error, Result};
use crate::lax_operators::{defect_lax, rll_residual_of};
use crate::linalg::{eigenvalues, eye, hermitian_eigenvalues, max_abs, multiset_distance, transpose_aux, CMat, I};
use crate::spin_algebra::{casimir, total_spin_closed_form, total_spin_operator, Family, ModelParameters, Regime, SpinRepresentation};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const AMBIGUITY: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub closed_form: Vec<C64>,
    pub numerical: Vec<C64>,
    /// Largest distance in the multiset matching.
    pub residual: f64,
}

/// Closed-form eigenvalues of the defect Lax operator. Rational: λ + in/2
/// with multiplicity n+1 and λ − in/2 with multiplicity n−1. Trigonometric:
/// sinh(μ(λ + in/2)) twice plus the pair ε^{(1,2)}_k for k = 1..n−1.
pub fn defect_eigenvalues(params: &ModelParameters, rep: &SpinRepresentation, lambda: C64) -> Result<Vec<C64>> {
    let n = rep.dim;
    let nf = n as f64;
    let mut out = Vec::with_capacity(2 * n);
    match params.family() {
        Family::Rational => {
            out.extend(std::iter::repeat_n(lambda + I * (nf / 2.0), n + 1));
            out.extend(std::iter::repeat_n(lambda - I * (nf / 2.0), n - 1));
        }
        Family::Trigonometric => {
            let mu = params.mu()?;
            let edge = (mu * (lambda + I * (nf / 2.0))).sinh();
            out.push(edge);
            out.push(edge);
            for k in 1..n {
                let d = nf - 2.0 * k as f64;
                let base = (mu * d / 2.0).cos() * (lambda * mu).sinh();
                let rad = -1.0 - (mu * d).cos() + 2.0 * (nf * mu).cos()
                    + (2.0 * lambda * mu).cosh() * (-1.0 + (mu * d).cos());
                let r = rad.sqrt() * 0.5;
                out.push(base + r);
                out.push(base - r);
            }
        }
    }
    Ok(out)
}

/// Closed form against diagonalization of the defect Lax operator.
pub fn defect_spectrum_closed_form(params: &ModelParameters, rep: &SpinRepresentation, lambda: C64) -> Result<SpectrumReport> {
    let closed_form = defect_eigenvalues(params, rep, lambda)?;
    for (i, a) in closed_form.iter().enumerate() {
        for b in &closed_form[i + 1..] {
            let gap = (a - b).norm();
            if gap > 0.0 && gap < AMBIGUITY {
                return Err(Error::DegenerateSpectrum { gap });
            }
        }
    }
    let numerical = eigenvalues(&defect_lax(params, rep, lambda)?);
    let residual = multiset_distance(&closed_form, &numerical);
    Ok(SpectrumReport { closed_form, numerical, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinSpectrumReport {
    pub closed_form: Vec<f64>,
    pub numerical: Vec<f64>,
    pub residual: f64,
}

/// Total-spin spectrum on C² ⊗ V against the listed values.
pub fn defect_spin_spectrum(rep: &SpinRepresentation) -> SpinSpectrumReport {
    let mut numerical = hermitian_eigenvalues(&total_spin_operator(rep));
    numerical.reverse();
    let closed_form = total_spin_closed_form(rep.spin);
    let residual = numerical
        .iter()
        .zip(&closed_form)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    SpinSpectrumReport { closed_form, numerical, residual }
}

/// ‖𝕋(λ)𝕋(−λ) − I‖.
pub fn matrix_unitarity_residual<F: Fn(C64) -> Result<CMat>>(t_fn: F, lambda: C64) -> Result<f64> {
    let p = t_fn(lambda)? * t_fn(-lambda)?;
    Ok(max_abs(&(&p - eye(p.nrows()))))
}

/// ‖𝕋^{t1}(−λ + i)𝕋^{t1}(λ + i) − I‖ with trivial gradation matrix.
pub fn matrix_crossing_residual<F: Fn(C64) -> Result<CMat>>(t_fn: F, lambda: C64) -> Result<f64> {
    let p = transpose_aux(&t_fn(-lambda + I)?) * transpose_aux(&t_fn(lambda + I)?);
    Ok(max_abs(&(&p - eye(p.nrows()))))
}

/// ‖𝕊12(λ1−λ2)𝕋1(λ1)𝕋2(λ2) − 𝕋2(λ2)𝕋1(λ1)𝕊12(λ1−λ2)‖.
pub fn rtt_residual(params: &ModelParameters, data: &DefectRegimeData, l1: C64, l2: C64) -> Result<f64> {
    let s = s_matrix(params, l1 - l2)?;
    let t1 = transmission_matrix(params, data, None, l1)?;
    let t2 = transmission_matrix(params, data, None, l2)?;
    Ok(rll_residual_of(&s, &t1, &t2))
}

fn crossing_factor(params: &ModelParameters, st: f64, lambda: C64) -> Result<C64> {
    let f = |x: C64| -> Result<C64> {
        Ok(match params.family() {
            Family::Rational => x,
            Family::Trigonometric => (PI * params.gamma()? * x).sin(),
        })
    };
    let num = f(I * lambda + st + 0.5)? * f(-I * lambda + st + 0.5)?;
    let den = f(I * lambda + st - 0.5)? * f(-I * lambda + st - 0.5)?;
    if den.norm() < 1e-14 {
        return Err(Error::Pole { arg: lambda });
    }
    Ok(num / den)
}

/// |T(λ)T(−λ) − 1|.
pub fn scalar_unitarity_residual(params: &ModelParameters, data: &DefectRegimeData, lambda: C64) -> Result<f64> {
    let a = transmission_amplitude(params, data, lambda)?.value;
    let b = transmission_amplitude(params, data, -lambda)?.value;
    Ok((a * b - 1.0).norm())
}

/// |T(λ+i)T(−λ+i)·ratio(λ) − 1| with the linear (rational) or sin(πγ ·)
/// ratio of shifted-spin factors.
pub fn scalar_crossing_residual(params: &ModelParameters, data: &DefectRegimeData, lambda: C64) -> Result<f64> {
    if !params.is_rational() && params.regime()? == Regime::Attractive {
        return Err(Error::NotRealizable("crossing is stated for the rational and repulsive transmission".into()));
    }
    let a = transmission_amplitude(params, data, lambda + I)?.value;
    let b = transmission_amplitude(params, data, -lambda + I)?.value;
    Ok((a * b * crossing_factor(params, data.shifted_spin, lambda)? - 1.0).norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockIdentityReport {
    /// (λ² + C) rational, ½cos(2iμλ) − ¼C_q deformed.
    pub scalar: C64,
    /// The product form sin/linear in S + 1/2.
    pub product_form: C64,
    pub casimir: f64,
    pub residual: f64,
}

/// 𝕄(λ)𝕄(−λ) = 𝕄^{t1}(λ+i)𝕄^{t1}(−λ+i) = scalar·I with the scalar built
/// from the Casimir value.
pub fn block_casimir_identity(params: &ModelParameters, rep: &SpinRepresentation, lambda: C64) -> Result<BlockIdentityReport> {
    if params.is_rational() != rep.deformation.is_none() {
        return Err(Error::RepMismatch("representation deformation does not match the model family".into()));
    }
    let (_, c) = casimir(rep)?;
    let top = rep.spin + 0.5;
    let (scalar, product_form) = match rep.deformation {
        None => (lambda * lambda + c, (I * lambda + top) * (-I * lambda + top)),
        Some(mu) => (
            0.5 * (2.0 * I * mu * lambda).cos() - 0.25 * c,
            (mu * (I * lambda + top)).sin() * (mu * (-I * lambda + top)).sin(),
        ),
    };
    let id = eye(2 * rep.dim) * scalar;
    let unit = defect_block(rep, lambda) * defect_block(rep, -lambda);
    let cross = transpose_aux(&defect_block(rep, lambda + I)) * transpose_aux(&defect_block(rep, -lambda + I));
    let residual = max_abs(&(unit - &id))
        .max(max_abs(&(cross - &id)))
        .max((scalar - product_form).norm());
    Ok(BlockIdentityReport { scalar, product_form, casimir: c, residual })
}
