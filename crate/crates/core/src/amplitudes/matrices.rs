//! Kink S-matrices and transmission matrices.

use super::regime::DefectRegimeData;
use super::scalar::{kink_S_amplitude, transmission_amplitude};
use crate::error::{Error, Result};
use crate::linalg::{CMat, I};
use crate::special_functions::AmplitudeValue;
use crate::spin_algebra::{Family, ModelParameters, Regime, SpinRepresentation};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const DENOM_FLOOR: f64 = 1e-14;

fn divide(num: C64, den: C64, at: C64) -> Result<C64> {
    if den.norm() < DENOM_FLOOR {
        return Err(Error::Pole { arg: at });
    }
    Ok(num / den)
}

/// (a, b, c) entries of the 4×4 structure.
pub fn s_matrix_entries(params: &ModelParameters, lambda: C64) -> Result<(C64, C64, C64)> {
    Ok(match params.family() {
        Family::Rational => (I * lambda + 1.0, I * lambda, C64::new(1.0, 0.0)),
        Family::Trigonometric => {
            let g = params.gamma()?;
            match params.regime()? {
                Regime::Repulsive => (
                    (PI * g * (I * lambda + 1.0)).sin(),
                    (I * PI * g * lambda).sin(),
                    C64::new((PI * g).sin(), 0.0),
                ),
                Regime::Attractive => (
                    (PI * (I * lambda + g)).sin(),
                    (I * PI * lambda).sin(),
                    C64::new((PI * g).sin(), 0.0),
                ),
            }
        }
    })
}

/// S_s(λ)/a(λ) times the a, b, c structure in the basis ↑↑, ↑↓, ↓↑, ↓↓.
pub fn s_matrix(params: &ModelParameters, lambda: C64) -> Result<CMat> {
    let (a, b, c) = s_matrix_entries(params, lambda)?;
    let pref = divide(kink_S_amplitude(params, lambda)?.value, a, lambda)?;
    let mut m = CMat::zeros(4, 4);
    m[(0, 0)] = a;
    m[(3, 3)] = a;
    m[(1, 1)] = b;
    m[(2, 2)] = b;
    m[(1, 2)] = c;
    m[(2, 1)] = c;
    Ok(m * pref)
}

/// The 2×2-block operator 𝕄(λ) over `rep`: linear entries for the plain
/// algebra, sin(μ ·) entries when the representation is deformed at μ.
pub fn defect_block(rep: &SpinRepresentation, lambda: C64) -> CMat {
    let n = rep.dim;
    let (upper, lower, off) = match rep.deformation {
        None => (
            rep.diag_fn(|a| I * lambda + a + 0.5),
            rep.diag_fn(|a| I * lambda - a + 0.5),
            C64::new(1.0, 0.0),
        ),
        Some(mu) => (
            rep.diag_fn(|a| (mu * (I * lambda + a + 0.5)).sin()),
            rep.diag_fn(|a| (mu * (I * lambda - a + 0.5)).sin()),
            C64::new(mu.sin(), 0.0),
        ),
    };
    let mut m = CMat::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&upper);
    m.view_mut((n, n), (n, n)).copy_from(&lower);
    m.view_mut((0, n), (n, n)).copy_from(&(&rep.sm * off));
    m.view_mut((n, 0), (n, n)).copy_from(&(&rep.sp * off));
    m
}

/// Representation the transmission matrix lives on: spin S̃, deformed at
/// μ' = πγ in the repulsive regime.
pub fn transmission_rep(data: &DefectRegimeData) -> Result<SpinRepresentation> {
    let st = data.shifted_spin;
    match data.params.family() {
        Family::Rational => SpinRepresentation::rational(st),
        Family::Trigonometric => match data.params.regime()? {
            Regime::Repulsive => SpinRepresentation::deformed(st, PI * data.params.gamma()?),
            Regime::Attractive => Err(Error::NotRealizable(
                "the attractive transmission matrix needs the infinite-dimensional spin-0 representation".into(),
            )),
        },
    }
}

fn check_rep(rep: &SpinRepresentation, expected: &SpinRepresentation) -> Result<()> {
    let same_def = match (rep.deformation, expected.deformation) {
        (None, None) => true,
        (Some(a), Some(b)) => (a - b).abs() < 1e-12,
        _ => false,
    };
    if (rep.spin - expected.spin).abs() > 1e-12 || !same_def {
        return Err(Error::RepMismatch(format!(
            "need spin {} with deformation {:?}, got spin {} with deformation {:?}",
            expected.spin, expected.deformation, rep.spin, rep.deformation
        )));
    }
    Ok(())
}

/// 𝕋(λ̂) = T(λ̂)/𝕄-normalization · 𝕄(λ̂) over the spin-S̃ representation.
pub fn transmission_matrix(
    params: &ModelParameters,
    data: &DefectRegimeData,
    rep: Option<&SpinRepresentation>,
    lambda_hat: C64,
) -> Result<CMat> {
    if data.shifted_spin < 0.5 - 1e-12 {
        return Err(Error::Domain(format!(
            "shifted spin {} has no matrix form; it must be at least 1/2",
            data.shifted_spin
        )));
    }
    let expected = transmission_rep(data)?;
    let rep = match rep {
        Some(r) => {
            check_rep(r, &expected)?;
            r
        }
        None => &expected,
    };
    let t = transmission_amplitude(params, data, lambda_hat)?.value;
    let top = data.shifted_spin + 0.5;
    let norm = match rep.deformation {
        None => I * lambda_hat + top,
        Some(mu) => (mu * (I * lambda_hat + top)).sin(),
    };
    Ok(defect_block(rep, lambda_hat) * divide(t, norm, lambda_hat)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefactorBranch {
    Sin,
    Cos,
}

/// sin(πγ(iu + 1/2) − π(S + 1/2)) rewritten as ± sin or ± cos of πγ(iu + 1/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefactorIdentity {
    pub branch: PrefactorBranch,
    pub sign: f64,
    pub lhs: C64,
    pub rhs: C64,
}

pub fn attractive_prefactor_identity(gamma: f64, spin: f64, u: C64) -> Result<PrefactorIdentity> {
    let k = spin + 0.5;
    let twice = 2.0 * k;
    if (twice - twice.round()).abs() > 1e-12 {
        return Err(Error::Domain(format!("S + 1/2 = {k} is neither integer nor half-integer")));
    }
    let x = PI * gamma * (I * u + 0.5);
    let lhs = (PI * gamma * (I * u + 0.5 - k / gamma)).sin();
    let parity = |j: i64| if j.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (branch, sign, rhs) = if (k - k.round()).abs() < 1e-12 {
        let s = parity(k.round() as i64);
        (PrefactorBranch::Sin, s, x.sin() * s)
    } else {
        let s = parity((k - 0.5).round() as i64 + 1);
        (PrefactorBranch::Cos, s, x.cos() * s)
    };
    Ok(PrefactorIdentity { branch, sign, lhs, rhs })
}

/// Attractive transmission matrix with S^z, S^± left unevaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionTemplate {
    /// u = λ̂/γ.
    pub u: C64,
    pub gamma: f64,
    pub amplitude: AmplitudeValue,
    /// T/sin(πγ(iu + S̃ + 1/2)) with S̃ = 0.
    pub prefactor: C64,
    /// Coefficient sin(πγ) of S^∓ off the diagonal.
    pub off_diagonal: f64,
    pub identity: PrefactorIdentity,
}

impl TransmissionTemplate {
    /// Diagonal entries at an S^z weight.
    pub fn diagonal(&self, sz: f64) -> (C64, C64) {
        let g = self.gamma;
        ((PI * g * (I * self.u + sz + 0.5)).sin(), (PI * g * (I * self.u - sz + 0.5)).sin())
    }

    pub fn symbolic(&self) -> String {
        let g = self.gamma;
        format!(
            "({p}) * [[sin({pg}(i u + Sz + 1/2)), {c}*S-], [{c}*S+, sin({pg}(i u - Sz + 1/2))]], u = {u}",
            p = self.prefactor,
            pg = PI * g,
            c = self.off_diagonal,
            u = self.u
        )
    }
}

/// Opt-in symbolic form of the attractive transmission matrix.
pub fn attractive_transmission_template(
    params: &ModelParameters,
    data: &DefectRegimeData,
    lambda_hat: C64,
) -> Result<TransmissionTemplate> {
    if params.is_rational() || params.regime()? != Regime::Attractive {
        return Err(Error::Domain("the symbolic template is for the attractive regime".into()));
    }
    let g = params.gamma()?;
    let u = lambda_hat / g;
    let amplitude = transmission_amplitude(params, data, lambda_hat)?;
    let prefactor = divide(amplitude.value, (PI * g * (I * u + 0.5)).sin(), lambda_hat)?;
    Ok(TransmissionTemplate {
        u,
        gamma: g,
        amplitude,
        prefactor,
        off_diagonal: (PI * g).sin(),
        identity: attractive_prefactor_identity(g, data.spin, u)?,
    })
}
