//! Infinite products of Gamma-function ratios.
//!
//! A product ∏_{k≥0} ∏_i Γ(a_i + b_i k + c_i)^{s_i} is evaluated as K explicit
//! terms plus the Stirling tail Σ_{n≥2} d_n ζ(n, K), where
//! d_n = Σ_i s_i (−1)^{n+1} B_{n+1}(a_i + c_i) / (n(n+1) b_i^n).
//! Balance makes the ln k, constant and (unless regularized) 1/k terms vanish.

use super::gamma::{check_pole, digamma_large, log_gamma, log_gamma_remainder};
use super::AmplitudeValue;
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

pub const DEFAULT_TERMS: usize = 200;
pub const MAX_TERMS: usize = 20_000;
const TAIL_ORDER: usize = 12;
const BALANCE_TOL: f64 = 1e-10;

/// One Γ factor Γ(a + b·k + c)^{±1} of the product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub sign: i8,
    pub a: C64,
    pub b: f64,
    pub c: C64,
}

impl GammaFactor {
    pub fn num(a: C64, b: f64) -> Self {
        GammaFactor { sign: 1, a, b, c: C64::new(0.0, 0.0) }
    }

    pub fn den(a: C64, b: f64) -> Self {
        GammaFactor { sign: -1, a, b, c: C64::new(0.0, 0.0) }
    }

    pub fn with_offset(mut self, c: C64) -> Self {
        self.c = c;
        self
    }

    fn intercept(&self) -> C64 {
        self.a + self.c
    }

    fn arg(&self, k: usize) -> C64 {
        self.a + self.b * k as f64 + self.c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaProductSpec {
    factors: Vec<GammaFactor>,
    regularized: bool,
}

impl GammaProductSpec {
    /// Validates the convergence invariants. Numerator/denominator pairs with
    /// identical arguments cancel structurally.
    pub fn new(factors: Vec<GammaFactor>) -> Result<Self> {
        let spec = Self::build(factors, false)?;
        let d1 = spec.d1_total();
        if d1.norm() > BALANCE_TOL * (1.0 + spec.scale()) {
            return Err(Error::Unbalanced(format!("1/k coefficient {d1}")));
        }
        Ok(spec)
    }

    /// Like [`GammaProductSpec::new`] but tolerates an O(1/k) imbalance d₁,
    /// defining the product as lim_K ∏_i (b_i K)^{−d₁ᵢ} ∏_{k<K}.
    pub fn regularized(factors: Vec<GammaFactor>) -> Result<Self> {
        Self::build(factors, true)
    }

    fn build(factors: Vec<GammaFactor>, regularized: bool) -> Result<Self> {
        let mut kept: Vec<GammaFactor> = Vec::with_capacity(factors.len());
        for f in factors {
            if f.sign != 1 && f.sign != -1 {
                return Err(Error::Domain(format!("factor sign {} not ±1", f.sign)));
            }
            if !(f.b > 0.0) || !f.b.is_finite() {
                return Err(Error::Domain(format!("factor slope {} must be positive", f.b)));
            }
            let twin = kept.iter().position(|g| {
                g.sign == -f.sign && g.b == f.b && g.intercept() == f.intercept()
            });
            match twin {
                Some(j) => {
                    kept.swap_remove(j);
                }
                None => kept.push(f),
            }
        }
        let mut slopes: Vec<f64> = Vec::new();
        for f in &kept {
            if !slopes.iter().any(|&b| (b - f.b).abs() <= 1e-12 * b) {
                slopes.push(f.b);
            }
        }
        for b in slopes {
            let group = kept.iter().filter(|f| (f.b - b).abs() <= 1e-12 * b);
            let (count, first) = group.fold((0i32, C64::new(0.0, 0.0)), |(n, m), f| {
                (n + f.sign as i32, m + f.sign as f64 * f.intercept())
            });
            if count != 0 {
                return Err(Error::Unbalanced(format!("slope {b}: sign sum {count}")));
            }
            if first.norm() > BALANCE_TOL * (1.0 + b) {
                return Err(Error::Unbalanced(format!("slope {b}: intercept sum {first}")));
            }
        }
        Ok(GammaProductSpec { factors: kept, regularized })
    }

    pub fn factors(&self) -> &[GammaFactor] {
        &self.factors
    }

    pub fn is_regularized(&self) -> bool {
        self.regularized
    }

    /// Same product with numerator and denominator exchanged.
    pub fn inverted(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|f| GammaFactor { sign: -f.sign, ..*f })
            .collect();
        GammaProductSpec { factors, regularized: self.regularized }
    }

    fn scale(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.intercept().norm_sqr() / f.b)
            .sum()
    }

    fn d1_total(&self) -> C64 {
        self.factors.iter().map(|f| d_coefficient(f, 1)).sum()
    }
}

fn d_coefficient(f: &GammaFactor, n: usize) -> C64 {
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    f.sign as f64 * sign * bernoulli_poly(n + 1, f.intercept())
        / ((n * (n + 1)) as f64 * f.b.powi(n as i32))
}

const BERNOULLI: [f64; 17] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
];

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Bernoulli polynomial B_m(x), m ≤ 16.
pub fn bernoulli_poly(m: usize, x: C64) -> C64 {
    (0..=m).fold(C64::new(0.0, 0.0), |acc, j| {
        acc + binomial(m, j) * BERNOULLI[j] * x.powu((m - j) as u32)
    })
}

/// Hurwitz ζ(n, K) = Σ_{k≥K} k^{−n} for n ≥ 2 and integer K ≥ 20.
pub fn hurwitz_zeta_int(n: usize, k: usize) -> f64 {
    let kf = k as f64;
    let nf = n as f64;
    let mut s = kf.powf(1.0 - nf) / (nf - 1.0) + 0.5 * kf.powf(-nf);
    let mut rising = nf;
    let mut fact = 2.0;
    let mut pow = kf.powf(-nf - 1.0);
    for j in 1..=6 {
        s += BERNOULLI[2 * j] / fact * rising * pow;
        rising *= (nf + 2.0 * j as f64 - 1.0) * (nf + 2.0 * j as f64);
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
        pow /= kf * kf;
    }
    s
}

struct Partial {
    log: C64,
    err: f64,
}

fn evaluate(spec: &GammaProductSpec, k_terms: usize) -> Result<Partial> {
    let reach = spec
        .factors
        .iter()
        .map(|f| (12.0 + 2.0 * f.intercept().norm()) / f.b)
        .fold(0.0, f64::max);
    let mut log = C64::new(0.0, 0.0);
    let mut round_sq = 0.0;
    for k in 0..k_terms {
        let mut row = C64::new(0.0, 0.0);
        if k as f64 >= reach {
            // balanced groups share x = b·k, so the leading Stirling parts
            // reduce to (ln x − 1)·Σ s δ = 0; only the remainders survive
            for f in &spec.factors {
                let r = log_gamma_remainder(f.b * k as f64, f.intercept());
                round_sq += r.norm_sqr();
                row += f.sign as f64 * r;
            }
        } else {
            for f in &spec.factors {
                let z = f.arg(k);
                check_pole(z)?;
                let l = log_gamma(z)?;
                round_sq += l.norm_sqr();
                row += f.sign as f64 * l;
            }
        }
        log += row;
    }
    for n in 2..=TAIL_ORDER {
        let dn: C64 = spec.factors.iter().map(|f| d_coefficient(f, n)).sum();
        log += dn * hurwitz_zeta_int(n, k_terms);
    }
    if spec.regularized {
        let psi = digamma_large(k_terms as f64);
        for f in &spec.factors {
            log += d_coefficient(f, 1) * (-psi - f.b.ln());
        }
    }
    let next: C64 = spec
        .factors
        .iter()
        .map(|f| d_coefficient(f, TAIL_ORDER + 1))
        .sum();
    let truncation = (next * hurwitz_zeta_int(TAIL_ORDER + 1, k_terms)).norm();
    let roundoff = 4.0 * f64::EPSILON * round_sq.sqrt();
    Ok(Partial { log, err: truncation + roundoff })
}

/// Evaluates the product to absolute log-accuracy `tol`.
pub fn gamma_product(spec: &GammaProductSpec, tol: f64) -> Result<AmplitudeValue> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    if spec.factors.is_empty() {
        return Ok(AmplitudeValue::exact(C64::new(1.0, 0.0)));
    }
    let reach = spec
        .factors
        .iter()
        .map(|f| f.intercept().norm() / f.b)
        .fold(0.0, f64::max);
    let mut k_terms = DEFAULT_TERMS.max((8.0 * reach).ceil() as usize);
    loop {
        if k_terms > MAX_TERMS {
            return Err(Error::NonConvergence { what: "gamma product", estimate: reach });
        }
        let p = evaluate(spec, k_terms)?;
        if p.err <= tol {
            let value = p.log.exp();
            return Ok(AmplitudeValue { value, err_estimate: value.norm() * p.err, terms_used: k_terms });
        }
        if k_terms == MAX_TERMS {
            return Err(Error::NonConvergence { what: "gamma product", estimate: p.err });
        }
        k_terms = (k_terms * 4).min(MAX_TERMS);
    }
}

/// Finite ratio ∏ Γ(a_j)^{s_j} evaluated through log-gamma.
pub fn finite_gamma_ratio(terms: &[(i8, C64)]) -> Result<AmplitudeValue> {
    let mut log = C64::new(0.0, 0.0);
    let mut round_sq = 0.0;
    for &(sign, a) in terms {
        if sign != 1 && sign != -1 {
            return Err(Error::Domain(format!("factor sign {sign} not ±1")));
        }
        check_pole(a)?;
        let l = log_gamma(a)?;
        round_sq += l.norm_sqr() + 1.0;
        log += sign as f64 * l;
    }
    let value = log.exp();
    AmplitudeValue { value, err_estimate: 4.0 * f64::EPSILON * round_sq.sqrt() * value.norm(), terms_used: terms.len() }
        .checked()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn bernoulli_polynomials_low_order() {
        let x = C64::new(0.3, -1.2);
        assert!((bernoulli_poly(1, x) - (x - 0.5)).norm() < 1e-15);
        assert!((bernoulli_poly(2, x) - (x * x - x + 1.0 / 6.0)).norm() < 1e-14);
        let b3 = x * x * x - 1.5 * x * x + 0.5 * x;
        assert!((bernoulli_poly(3, x) - b3).norm() < 1e-14);
        // B_n(1) = B_n for n ≥ 2
        for n in 2..=16 {
            assert!((bernoulli_poly(n, re(1.0)).re - BERNOULLI[n]).abs() < 1e-9 * (1.0 + BERNOULLI[n].abs()));
        }
    }

    #[test]
    fn hurwitz_against_direct_sum() {
        for n in [2usize, 3, 5] {
            let direct: f64 = (50..2_000_000).map(|k| (k as f64).powi(-(n as i32))).sum();
            let rest = hurwitz_zeta_int(n, 2_000_000);
            assert!((hurwitz_zeta_int(n, 50) - direct - rest).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn identical_sets_cancel_exactly() {
        let f = vec![GammaFactor::num(C64::new(0.3, 0.2), 0.7), GammaFactor::den(C64::new(0.3, 0.2), 0.7)];
        let spec = GammaProductSpec::new(f).unwrap();
        let v = gamma_product(&spec, 1e-12).unwrap();
        assert_eq!(v.value, C64::new(1.0, 0.0));
        assert_eq!(v.err_estimate, 0.0);
    }

    #[test]
    fn rejects_unbalanced_specs() {
        let f = vec![GammaFactor::num(re(1.0), 1.0)];
        assert!(matches!(GammaProductSpec::new(f), Err(Error::Unbalanced(_))));
        let f = vec![GammaFactor::num(re(1.0), 1.0), GammaFactor::den(re(1.5), 1.0)];
        assert!(matches!(GammaProductSpec::new(f), Err(Error::Unbalanced(_))));
        let f = vec![GammaFactor::num(re(1.0), 1.0), GammaFactor::den(re(1.0), 2.0)];
        assert!(matches!(GammaProductSpec::new(f), Err(Error::Unbalanced(_))));
        let f = vec![GammaFactor::num(re(1.0), 0.0), GammaFactor::den(re(1.0), 0.0)];
        assert!(matches!(GammaProductSpec::new(f), Err(Error::Domain(_))));
    }

    #[test]
    fn wallis_product() {
        // ∏_{k≥0} Γ(k+1)²Γ(k+... ) : use ∏ (2k+2)²/((2k+1)(2k+3)) = π/2 written with Γ
        // (2k+2)/(2k+1) = Γ(k+2)Γ(k+1/2)/(Γ(k+1)Γ(k+3/2)) with slope 1
        let f = vec![
            GammaFactor::num(re(2.0), 1.0),
            GammaFactor::num(re(0.5), 1.0),
            GammaFactor::den(re(1.0), 1.0),
            GammaFactor::den(re(1.5), 1.0),
            GammaFactor::num(re(2.0), 1.0),
            GammaFactor::num(re(1.5), 1.0),
            GammaFactor::den(re(1.0), 1.0),
            GammaFactor::den(re(2.5), 1.0),
        ];
        let spec = GammaProductSpec::new(f).unwrap();
        let v = gamma_product(&spec, 1e-12).unwrap();
        assert!((v.value - re(std::f64::consts::FRAC_PI_2)).norm() < 1e-12, "{}", v.value);
    }

    #[test]
    fn regularized_harmonic_limit() {
        // ∏_{k<K} Γ(k+2)/Γ(k+1)·Γ(k+1)/Γ(k+... ) : ∏ (k+1) / K! → use Γ(k+2)Γ(k+1)/(Γ(k+1)Γ(k+2)) trivial;
        // instead ∏_{k<K} (k+1)/(k+1/2)·K^{-1/2} → Γ(1/2) = √π
        let f = vec![
            GammaFactor::num(re(2.0), 1.0),
            GammaFactor::den(re(1.0), 1.0),
            GammaFactor::num(re(0.5), 1.0),
            GammaFactor::den(re(1.5), 1.0),
        ];
        assert!(GammaProductSpec::new(f.clone()).is_err());
        let spec = GammaProductSpec::regularized(f).unwrap();
        let v = gamma_product(&spec, 1e-12).unwrap();
        assert!((v.value - re(std::f64::consts::PI.sqrt())).norm() < 1e-12, "{}", v.value);
    }

    #[test]
    fn finite_ratio_reflection() {
        // Γ(1/2 + x)Γ(1/2 − x) = π / cos(πx)
        let x = 0.3;
        let v = finite_gamma_ratio(&[(1, re(0.5 + x)), (1, re(0.5 - x))]).unwrap();
        let expect = std::f64::consts::PI / (std::f64::consts::PI * x).cos();
        assert!((v.value - re(expect)).norm() < 1e-14 * expect);
        assert!(finite_gamma_ratio(&[(1, re(-2.0))]).is_err());
    }

    #[test]
    fn pole_in_product_is_reported() {
        let f = vec![
            GammaFactor::num(re(-3.0), 1.0),
            GammaFactor::num(re(0.0), 1.0),
            GammaFactor::num(re(0.0), 1.0),
            GammaFactor::den(re(-2.0), 1.0),
            GammaFactor::den(re(-2.0), 1.0),
            GammaFactor::den(re(1.0), 1.0),
        ];
        let spec = GammaProductSpec::new(f).unwrap();
        assert!(matches!(gamma_product(&spec, 1e-10), Err(Error::Pole { .. })));
    }
}
