//! Spin-S representations of sl2 and U_q(sl2) with q = e^{iμ}, model
//! parameters, Casimirs and the total-spin operator.

use crate::error::{Error, Result};
use crate::linalg::{eye, kron, max_abs, CMat};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Rational,
    Trigonometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Repulsive,
    Attractive,
}

/// Model family plus, for the trigonometric case, the anisotropy μ and regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParameters {
    family: Family,
    mu: f64,
    regime: Regime,
}

impl ModelParameters {
    pub fn rational() -> Self {
        ModelParameters { family: Family::Rational, mu: 0.0, regime: Regime::Repulsive }
    }

    /// μ ∈ (0, π), so ν = π/μ > 1.
    pub fn trigonometric(mu: f64, regime: Regime) -> Result<Self> {
        if !(mu > 0.0 && mu < PI) {
            return Err(Error::Domain(format!("anisotropy mu = {mu} must lie in (0, pi)")));
        }
        Ok(ModelParameters { family: Family::Trigonometric, mu, regime })
    }

    /// Trigonometric parameters from ν = π/μ > 1.
    pub fn from_nu(nu: f64, regime: Regime) -> Result<Self> {
        if !(nu > 1.0) {
            return Err(Error::Domain(format!("nu = {nu} must exceed 1")));
        }
        Self::trigonometric(PI / nu, regime)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_rational(&self) -> bool {
        self.family == Family::Rational
    }

    fn trig_only(&self, what: &str) -> Result<()> {
        match self.family {
            Family::Trigonometric => Ok(()),
            Family::Rational => Err(Error::Domain(format!("{what} is undefined for the rational family"))),
        }
    }

    pub fn mu(&self) -> Result<f64> {
        self.trig_only("mu")?;
        Ok(self.mu)
    }

    pub fn nu(&self) -> Result<f64> {
        self.trig_only("nu")?;
        Ok(PI / self.mu)
    }

    pub fn regime(&self) -> Result<Regime> {
        self.trig_only("regime")?;
        Ok(self.regime)
    }

    /// Renormalized coupling: 1/(ν−1) repulsive, ν−1 attractive.
    pub fn gamma(&self) -> Result<f64> {
        let nu = self.nu()?;
        Ok(match self.regime {
            Regime::Repulsive => 1.0 / (nu - 1.0),
            Regime::Attractive => nu - 1.0,
        })
    }

    /// Δ = cosh(iμ) = cos μ.
    pub fn delta(&self) -> Result<f64> {
        Ok(self.mu()?.cos())
    }

    pub fn q(&self) -> Result<C64> {
        Ok(C64::from_polar(1.0, self.mu()?))
    }
}

/// [x]_q = sin(μx)/sin(μ) for q = e^{iμ}; requires sin μ ≠ 0.
pub fn q_number(x: f64, mu: f64) -> f64 {
    (mu * x).sin() / mu.sin()
}

/// Spin-S matrices in the basis |S⟩, |S−1⟩, …, |−S⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinRepresentation {
    pub spin: f64,
    pub dim: usize,
    /// μ of q = e^{iμ}; `None` for the undeformed algebra.
    pub deformation: Option<f64>,
    pub sz: CMat,
    pub sp: CMat,
    pub sm: CMat,
}

fn dimension(spin: f64) -> Result<usize> {
    let two_s = 2.0 * spin;
    if !(spin >= 0.5 - 1e-12) || (two_s - two_s.round()).abs() > 1e-12 {
        return Err(Error::Domain(format!("spin {spin} must be a half-integer >= 1/2")));
    }
    Ok(two_s.round() as usize + 1)
}

impl SpinRepresentation {
    pub fn rational(spin: f64) -> Result<Self> {
        let n = dimension(spin)?;
        let c: Vec<f64> = (1..n).map(|k| ((k * (n - k)) as f64).sqrt()).collect();
        Ok(Self::assemble(spin, n, None, &c))
    }

    /// U_q(sl2) representation with C̃_k = √([k]_q [n−k]_q).
    pub fn deformed(spin: f64, mu: f64) -> Result<Self> {
        let n = dimension(spin)?;
        if mu.sin().abs() < 1e-12 {
            return Err(Error::RootOfUnity { k: 1, value: 0.0 });
        }
        let mut c = Vec::with_capacity(n - 1);
        for k in 1..n {
            let prod = q_number(k as f64, mu) * q_number((n - k) as f64, mu);
            for kk in [k, n - k] {
                let v = q_number(kk as f64, mu);
                if v <= 1e-12 {
                    return Err(Error::RootOfUnity { k: kk, value: v });
                }
            }
            c.push(prod.sqrt());
        }
        Ok(Self::assemble(spin, n, Some(mu), &c))
    }

    fn assemble(spin: f64, n: usize, deformation: Option<f64>, c: &[f64]) -> Self {
        let mut sz = CMat::zeros(n, n);
        let mut sp = CMat::zeros(n, n);
        for k in 1..=n {
            sz[(k - 1, k - 1)] = C64::new((n as f64 + 1.0 - 2.0 * k as f64) / 2.0, 0.0);
        }
        for k in 1..n {
            sp[(k - 1, k)] = C64::new(c[k - 1], 0.0);
        }
        let sm = sp.transpose();
        SpinRepresentation { spin, dim: n, deformation, sz, sp, sm }
    }

    /// Eigenvalues α_k of S^z, k = 1..n.
    pub fn weights(&self) -> Vec<f64> {
        (0..self.dim).map(|k| self.sz[(k, k)].re).collect()
    }

    /// [S^z, S^±] ∓ S^± and [S^+, S^−] − [2S^z]_q, max entry.
    pub fn algebra_residual(&self) -> f64 {
        let r1 = max_abs(&(&self.sz * &self.sp - &self.sp * &self.sz - &self.sp));
        let r2 = max_abs(&(&self.sz * &self.sm - &self.sm * &self.sz + &self.sm));
        let rhs = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dim,
            self.weights().into_iter().map(|a| {
                C64::new(
                    match self.deformation {
                        None => 2.0 * a,
                        Some(mu) => q_number(2.0 * a, mu),
                    },
                    0.0,
                )
            }),
        ));
        let r3 = max_abs(&(&self.sp * &self.sm - &self.sm * &self.sp - rhs));
        r1.max(r2).max(r3)
    }

    /// f(S^z) for a diagonal S^z.
    pub fn diag_fn<F: Fn(f64) -> C64>(&self, f: F) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dim,
            self.weights().into_iter().map(f),
        ))
    }
}

/// Representation matching the model family: rational, or deformed with q = e^{iμ}.
pub fn build_rep(spin: f64, params: &ModelParameters) -> Result<SpinRepresentation> {
    match params.family() {
        Family::Rational => SpinRepresentation::rational(spin),
        Family::Trigonometric => SpinRepresentation::deformed(spin, params.mu()?),
    }
}

/// Casimir matrix and its scalar value. Rational: (S^z)² + ½{S^−,S^+} + ¼;
/// deformed: q q^{2S^z} + q^{−1} q^{−2S^z} + (q − q^{−1})² S^− S^+.
pub fn casimir(rep: &SpinRepresentation) -> Result<(CMat, f64)> {
    let m = match rep.deformation {
        None => {
            &rep.sz * &rep.sz
                + (&rep.sm * &rep.sp + &rep.sp * &rep.sm) * C64::new(0.5, 0.0)
                + eye(rep.dim) * C64::new(0.25, 0.0)
        }
        Some(mu) => {
            rep.diag_fn(|a| C64::new(2.0 * (mu * (2.0 * a + 1.0)).cos(), 0.0))
                - &rep.sm * &rep.sp * C64::new(4.0 * mu.sin().powi(2), 0.0)
        }
    };
    let scalar = m[(0, 0)];
    let residual = max_abs(&(&m - eye(rep.dim) * scalar));
    if residual > 1e-10 || scalar.im.abs() > 1e-10 {
        return Err(Error::NotScalar { residual: residual.max(scalar.im.abs()) });
    }
    Ok((m, scalar.re))
}

/// Closed-form Casimir value: (2S+1)²/4, or 2cos(μ(2S+1)) when deformed.
pub fn casimir_closed_form(rep: &SpinRepresentation) -> f64 {
    match rep.deformation {
        None => (2.0 * rep.spin + 1.0).powi(2) / 4.0,
        Some(mu) => 2.0 * (mu * (2.0 * rep.spin + 1.0)).cos(),
    }
}

/// σ^z/2 ⊗ I + I ⊗ S^z on C² ⊗ rep.
pub fn total_spin_operator(rep: &SpinRepresentation) -> CMat {
    let mut half_sz = CMat::zeros(2, 2);
    half_sz[(0, 0)] = C64::new(0.5, 0.0);
    half_sz[(1, 1)] = C64::new(-0.5, 0.0);
    kron(&half_sz, &eye(rep.dim)) + kron(&eye(2), &rep.sz)
}

/// The listed total-spin spectrum {S+½} ∪ {S+½−k (twice), k = 1..n−1} ∪ {−S−½}.
pub fn total_spin_closed_form(spin: f64) -> Vec<f64> {
    let n = (2.0 * spin).round() as usize + 1;
    let mut out = vec![spin + 0.5, -spin - 0.5];
    for k in 1..n {
        out.push(spin + 0.5 - k as f64);
        out.push(spin + 0.5 - k as f64);
    }
    out.sort_by(|a, b| b.total_cmp(a));
    out
}
