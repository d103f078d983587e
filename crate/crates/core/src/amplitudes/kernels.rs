//! Fourier-space kernels k̂(ω) of the densities and amplitudes.
//!
//! Every kernel is a product of sinh(aω/2), cosh(aω/2) and e^{−a|ω|/2}
//! factors, evaluated in log form so that large |ω| never overflows.

use crate::error::{Error, Result};
use crate::spin_algebra::{Family, ModelParameters, Regime};

/// Registered kernels. `y = 2S` is the defect parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelName {
    /// â_n: Fourier transform of the e_n log-derivative.
    A { n: f64 },
    /// b̂_n: same for g_n (attractive only).
    B { n: f64 },
    /// â_y for generic y, branch m from the window 2mν < y < 2(m+1)ν.
    AGeneric { y: f64 },
    /// b̂_y for generic y, branch m from the window mν < y < (m+1)ν.
    BGeneric { y: f64 },
    /// Ground-state density σ̂₀.
    Sigma0,
    /// Hole-hole kernel r̂_s.
    HoleScattering,
    /// Hole-defect kernel r̂_t.
    HoleTransmission { y: f64 },
    /// R̂ of the negative-parity density in the breather state.
    BreatherR,
    /// B̂ of the negative-parity density in the breather state.
    BreatherB { y: f64 },
    /// Breather ground-state density.
    BreatherSigma0,
    /// Breather-breather kernel r̂_b.
    BreatherScattering,
    /// Breather-defect kernel t̂_b.
    BreatherTransmission { y: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Sinh,
    Cosh,
    /// e^{−a|ω|/2}
    Decay,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Factor {
    shape: Shape,
    a: f64,
    power: i32,
}

/// A validated kernel, cheap to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub name: KernelName,
    scale: f64,
    factors: Vec<Factor>,
}

fn sinh(a: f64) -> Factor {
    Factor { shape: Shape::Sinh, a, power: 1 }
}
fn cosh(a: f64) -> Factor {
    Factor { shape: Shape::Cosh, a, power: 1 }
}
fn decay(a: f64) -> Factor {
    Factor { shape: Shape::Decay, a, power: 1 }
}
fn inv(f: Factor) -> Factor {
    Factor { power: -f.power, ..f }
}

fn window(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(what()))
    }
}

/// Strict branch index m with lo·m < x < lo·(m+1).
pub(crate) fn branch_index(x: f64, width: f64) -> Result<i64> {
    let r = x / width;
    let m = r.floor();
    if !(x > 0.0) || (r - m).abs() < 1e-12 || (r - m - 1.0).abs() < 1e-12 {
        return Err(Error::Domain(format!("y = {x} sits on a branch boundary (width {width}) or is not positive")));
    }
    Ok(m as i64)
}

impl Kernel {
    pub fn new(name: KernelName, params: &ModelParameters) -> Result<Kernel> {
        let (scale, factors) = match params.family() {
            Family::Rational => rational(name)?,
            Family::Trigonometric => {
                let nu = params.nu()?;
                match params.regime()? {
                    Regime::Repulsive => repulsive(name, nu)?,
                    Regime::Attractive => attractive(name, nu)?,
                }
            }
        };
        Ok(Kernel { name, scale, factors })
    }

    /// k̂(ω); the removable limit at ω = 0.
    pub fn eval(&self, omega: f64) -> f64 {
        let x = omega.abs() / 2.0;
        let mut log = 0.0;
        let mut sign = self.scale.signum();
        for f in &self.factors {
            let p = f.power as f64;
            match f.shape {
                Shape::Decay => log -= p * f.a * x,
                Shape::Cosh => {
                    let t = f.a.abs() * x;
                    log += p * (t + (-2.0 * t).exp().ln_1p() - std::f64::consts::LN_2);
                }
                Shape::Sinh => {
                    if f.a == 0.0 {
                        return 0.0;
                    }
                    if f.a < 0.0 {
                        sign = -sign;
                    }
                    // ln|sinh(a x)/x|: the x's cancel since sinh factors balance
                    let t = f.a.abs() * x;
                    let l = if t < 0.5 {
                        let ratio = if t == 0.0 { 1.0 } else { t.sinh() / t };
                        f.a.abs().ln() + ratio.ln()
                    } else {
                        t + (-(-2.0 * t).exp()).ln_1p() - std::f64::consts::LN_2 - x.ln()
                    };
                    log += p * l;
                }
            }
        }
        sign * self.scale.abs() * log.exp()
    }
}

/// Value of a registered kernel; windows are checked on every call.
pub fn kernel_hat(name: KernelName, omega: f64, params: &ModelParameters) -> Result<f64> {
    Ok(Kernel::new(name, params)?.eval(omega))
}

type Form = (f64, Vec<Factor>);

fn rational(name: KernelName) -> Result<Form> {
    use KernelName::*;
    Ok(match name {
        A { n } | AGeneric { y: n } => {
            window(n > 0.0, || format!("rational a_n needs n > 0, got {n}"))?;
            (1.0, vec![decay(n)])
        }
        Sigma0 => (0.5, vec![inv(cosh(1.0))]),
        HoleScattering => (0.5, vec![decay(1.0), inv(cosh(1.0))]),
        HoleTransmission { y } => {
            window(y >= 1.0 - 1e-12, || format!("rational r_t needs y = 2S >= 1, got {y}"))?;
            (0.5, vec![decay(y - 1.0), inv(cosh(1.0))])
        }
        _ => return Err(Error::Domain(format!("{name:?} is not defined for the rational family"))),
    })
}

fn repulsive(name: KernelName, nu: f64) -> Result<Form> {
    use KernelName::*;
    Ok(match name {
        A { n } => {
            window(n > 0.0 && n < 2.0 * nu, || format!("a_n needs 0 < n < 2nu = {}, got {n}", 2.0 * nu))?;
            (1.0, vec![sinh(nu - n), inv(sinh(nu))])
        }
        AGeneric { y } => {
            let m = branch_index(y, 2.0 * nu)? as f64;
            (1.0, vec![sinh((2.0 * m + 1.0) * nu - y), inv(sinh(nu))])
        }
        Sigma0 => (0.5, vec![inv(cosh(1.0))]),
        HoleScattering => (0.5, vec![sinh(nu - 2.0), inv(sinh(nu - 1.0)), inv(cosh(1.0))]),
        HoleTransmission { y } => {
            let m = branch_index(y, 2.0 * nu)? as f64;
            (0.5, vec![sinh((2.0 * m + 1.0) * nu - y), inv(sinh(nu - 1.0)), inv(cosh(1.0))])
        }
        _ => return Err(Error::Domain(format!("{name:?} is not defined in the repulsive regime"))),
    })
}

fn attractive(name: KernelName, nu: f64) -> Result<Form> {
    use KernelName::*;
    let generic = |y: f64| -> Result<f64> {
        let m = branch_index(y, nu)?;
        window(m <= 1, || format!("y = {y} lies in branch m = {m}; the kernel only decays for m in {{0, 1}}"))?;
        Ok(y - 2.0 * m as f64 * nu)
    };
    Ok(match name {
        B { n } => {
            window(n > 0.0 && n < 2.0 * nu && (n - nu).abs() > 1e-12, || {
                format!("b_n needs 0 < n < 2nu with n != nu (nu = {nu}), got {n}")
            })?;
            let a = if n < nu { n } else { n - 2.0 * nu };
            (-1.0, vec![sinh(a), inv(sinh(nu))])
        }
        BGeneric { y } => (-1.0, vec![sinh(generic(y)?), inv(sinh(nu))]),
        Sigma0 => (0.5, vec![inv(cosh(nu - 1.0))]),
        HoleScattering => (-0.5, vec![sinh(nu - 2.0), inv(sinh(1.0)), inv(cosh(nu - 1.0))]),
        HoleTransmission { y } => (0.5, vec![sinh(generic(y)?), inv(sinh(1.0)), inv(cosh(nu - 1.0))]),
        BreatherR => {
            window(nu > 2.0, || format!("R needs nu > 2, got {nu}"))?;
            (-1.0, vec![cosh(1.0), inv(cosh(nu - 1.0))])
        }
        BreatherB { y } => {
            window(y > 0.0 && y < nu, || format!("B needs 0 < y < nu = {nu}, got {y}"))?;
            (0.5, vec![sinh(y), inv(sinh(1.0)), inv(cosh(nu - 1.0))])
        }
        BreatherSigma0 => (1.0, vec![cosh(nu - 2.0), inv(cosh(nu - 1.0))]),
        BreatherScattering => {
            window(nu > 2.0, || format!("r_b needs nu > 2, got {nu}"))?;
            (-1.0, vec![cosh(nu - 3.0), inv(cosh(nu - 1.0))])
        }
        BreatherTransmission { y } => {
            window(y > 0.0 && y < 2.0 * nu - 2.0, || format!("t_b needs 0 < y < 2nu - 2 = {}, got {y}", 2.0 * nu - 2.0))?;
            (1.0, vec![cosh(nu - y - 1.0), inv(cosh(nu - 1.0))])
        }
        _ => return Err(Error::Domain(format!("{name:?} is not defined in the attractive regime"))),
    })
}
