//! Periodic chains of spin-½ sites with one spin-S defect: monodromy,
//! transfer matrix, local Hamiltonian and Bethe roots.

use crate::amplitudes::{elementary_log_derivative, elementary_ratio, RatioKind};
use crate::error::{Error, Result};
use crate::lax_operators::{defect_lax, defect_lax_derivative, r_matrix, r_matrix_derivative};
use crate::linalg::{apply_left, eigenvalues, embed, eye, hermiticity_residual, permutation, CMat, I};
use crate::spin_algebra::{build_rep, Family, ModelParameters, SpinRepresentation};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

pub const DEFAULT_MAX_DIM: usize = 1 << 14;
pub const MAX_DIM_ENV: &str = "DEFECTBETHE_MAX_DIM";

/// Hilbert-space cap, overridable through `DEFECTBETHE_MAX_DIM`.
pub fn max_dim() -> usize {
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub n_bulk: usize,
    /// 1-based position of the defect among the N+1 sites.
    pub defect_site: usize,
    pub spin: f64,
    pub theta: f64,
    pub params: ModelParameters,
}

impl ChainSpec {
    pub fn new(n_bulk: usize, defect_site: usize, spin: f64, theta: f64, params: ModelParameters) -> Result<Self> {
        if defect_site < 1 || defect_site > n_bulk + 1 {
            return Err(Error::Domain(format!("defect site {defect_site} outside 1..={}", n_bulk + 1)));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!("defect rapidity {theta} is not finite")));
        }
        build_rep(spin, &params)?;
        let chain = ChainSpec { n_bulk, defect_site, spin, theta, params };
        chain.check_cap()?;
        Ok(chain)
    }

    pub fn site_dims(&self) -> Vec<usize> {
        let mut dims = vec![2; self.n_bulk + 1];
        dims[self.defect_site - 1] = (2.0 * self.spin).round() as usize + 1;
        dims
    }

    pub fn dim(&self) -> usize {
        self.site_dims().iter().product()
    }

    fn check_cap(&self) -> Result<()> {
        let dim = self.dim();
        let cap = max_dim();
        if dim > cap {
            return Err(Error::DimensionCapExceeded { dim, cap });
        }
        Ok(())
    }

    fn defect_rep(&self) -> Result<SpinRepresentation> {
        build_rep(self.spin, &self.params)
    }

    /// Diagonal of the total S^z.
    pub fn total_sz(&self) -> Vec<f64> {
        let mut diag = vec![0.0];
        for d in self.site_dims() {
            let weights: Vec<f64> = (1..=d).map(|k| (d as f64 + 1.0 - 2.0 * k as f64) / 2.0).collect();
            diag = diag.iter().flat_map(|x| weights.iter().map(move |w| x + w)).collect();
        }
        diag
    }

    /// Basis indices of the sector with total S^z = `sz`.
    pub fn sector(&self, sz: f64) -> Vec<usize> {
        self.total_sz()
            .iter()
            .enumerate()
            .filter(|(_, v)| (*v - sz).abs() < 1e-9)
            .map(|(i, _)| i)
            .collect()
    }
}

/// L_{N+1}(λ) ⋯ L̃_n(λ−Θ) ⋯ L_1(λ) on C² ⊗ (quantum space).
pub fn monodromy(chain: &ChainSpec, lambda: C64) -> Result<CMat> {
    chain.check_cap()?;
    let mut dims = vec![2];
    dims.extend(chain.site_dims());
    let total: usize = dims.iter().product();
    let bulk = r_matrix(&chain.params, lambda)?;
    let defect = defect_lax(&chain.params, &chain.defect_rep()?, lambda - chain.theta)?;
    let mut m = eye(total);
    for site in 1..=chain.n_bulk + 1 {
        let l = if site == chain.defect_site { &defect } else { &bulk };
        m = apply_left(l, &[0, site], &dims, &m);
    }
    Ok(m)
}

/// Trace of the monodromy over the auxiliary space.
pub fn transfer(chain: &ChainSpec, lambda: C64) -> Result<CMat> {
    let m = monodromy(chain, lambda)?;
    let d = m.nrows() / 2;
    Ok(m.view((0, 0), (d, d)).into_owned() + m.view((d, d), (d, d)).into_owned())
}

/// Transfer-matrix eigenvalue on the all-up pseudovacuum.
pub fn pseudovacuum_eigenvalue(chain: &ChainSpec, lambda: C64) -> Result<C64> {
    let n = chain.n_bulk as i32;
    let shift = lambda - chain.theta;
    let s = chain.spin;
    Ok(match chain.params.family() {
        Family::Rational => {
            (lambda + I).powi(n) * (shift + I * (s + 0.5)) + lambda.powi(n) * (shift + I * (0.5 - s))
        }
        Family::Trigonometric => {
            let mu = chain.params.mu()?;
            (mu * (lambda + I)).sinh().powi(n) * (mu * (shift + I * (s + 0.5))).sinh()
                + (mu * lambda).sinh().powi(n) * (mu * (shift + I * (0.5 - s))).sinh()
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    /// Phase-normalized matrix c·H.
    pub matrix: CMat,
    /// The unit phase c applied to the raw local sum.
    pub phase: C64,
    pub hermiticity_residual: f64,
}

/// H = −c·(ρ⁻¹ Σ Ř'_{j,j+1} + L̃'L̃⁻¹ + ρ⁻¹ L̃ Ř'_{n−1,n+1} L̃⁻¹), ρ = L(0)/P.
///
/// The bulk sum skips the two bonds touching the defect; L̃ = L̃(−Θ) acts with
/// site n+1 as auxiliary space. c is the unit phase closest to making H
/// Hermitian (sign fixed so that c ≈ ρ/|ρ|); Hermiticity is exact only at Θ = 0.
/// Before the phase, H = −t(0)⁻¹ t'(0).
pub fn hamiltonian(chain: &ChainSpec) -> Result<Hamiltonian> {
    chain.check_cap()?;
    if chain.n_bulk < 2 {
        return Err(Error::Domain("the local Hamiltonian needs at least two bulk sites".into()));
    }
    let params = &chain.params;
    let dims = chain.site_dims();
    let sites = chain.n_bulk + 1;
    let d = chain.defect_site - 1;
    let left = (d + sites - 1) % sites;
    let right = (d + 1) % sites;
    let zero = C64::new(0.0, 0.0);
    let rho = match params.family() {
        Family::Rational => I,
        Family::Trigonometric => (I * params.mu()?).sinh(),
    };
    let bond = permutation(2) * r_matrix_derivative(params, zero)?;

    let mut bulk = CMat::zeros(chain.dim(), chain.dim());
    for j in 0..sites {
        if j == left || j == d {
            continue;
        }
        bulk += embed(&bond, &[j, (j + 1) % sites], &dims);
    }
    let rep = chain.defect_rep()?;
    let l = embed(&defect_lax(params, &rep, C64::new(-chain.theta, 0.0))?, &[right, d], &dims);
    let dl = embed(&defect_lax_derivative(params, &rep, C64::new(-chain.theta, 0.0))?, &[right, d], &dims);
    let l_inv = l.clone().try_inverse().ok_or_else(|| Error::Domain("defect Lax operator is singular".into()))?;
    let bridge = &l * embed(&bond, &[left, right], &dims) * &l_inv;
    let raw = -((bulk + bridge) / rho + dl * &l_inv);

    let overlap: C64 = raw
        .iter()
        .zip(raw.transpose().iter())
        .map(|(a, b)| a.conj() * b.conj())
        .sum();
    let mut phase = if overlap.norm() > 0.0 { (overlap / overlap.norm()).sqrt() } else { C64::new(1.0, 0.0) };
    let reference = rho / rho.norm();
    if (phase * reference.conj()).re < 0.0 {
        phase = -phase;
    }
    let matrix = raw * phase;
    let hermiticity_residual = hermiticity_residual(&matrix);
    Ok(Hamiltonian { matrix, phase, hermiticity_residual })
}

/// Eigenvalues of the phase-normalized Hamiltonian (real parts sorted).
pub fn hamiltonian_spectrum(chain: &ChainSpec) -> Result<Vec<C64>> {
    let h = hamiltonian(chain)?;
    let mut ev = eigenvalues(&h.matrix);
    ev.sort_by(|a, b| a.re.total_cmp(&b.re));
    Ok(ev)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StringDescriptor {
    pub length: usize,
    /// +1 or −1 (negative parity shifts the center by iπ/(2μ)).
    pub parity: i8,
    pub center: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetheState {
    pub m: usize,
    pub roots: Vec<C64>,
    pub holes: Vec<f64>,
    pub strings: Vec<StringDescriptor>,
}

impl BetheState {
    pub fn from_roots(roots: Vec<C64>) -> Self {
        BetheState { m: roots.len(), roots, holes: Vec::new(), strings: Vec::new() }
    }

    /// Every root has its conjugate in the set (within `tol`).
    pub fn is_self_conjugate(&self, tol: f64) -> bool {
        self.roots.iter().all(|r| self.roots.iter().any(|s| (s - r.conj()).norm() <= tol))
    }

    /// Total S^z of the state: N/2 + S − M.
    pub fn total_sz(&self, chain: &ChainSpec) -> f64 {
        chain.n_bulk as f64 / 2.0 + chain.spin - self.m as f64
    }
}

/// Seeds λ₀ + (i/2)(n+1−2j), j = 1..n, for each string; negative parity adds iπ/(2μ).
pub fn string_seeds(params: &ModelParameters, strings: &[StringDescriptor]) -> Result<Vec<C64>> {
    let mut out = Vec::new();
    for s in strings {
        let shift = if s.parity < 0 {
            I * (std::f64::consts::PI / (2.0 * params.mu()?))
        } else {
            C64::new(0.0, 0.0)
        };
        for j in 1..=s.length {
            out.push(C64::new(s.center, 0.0) + I * (0.5 * (s.length as f64 + 1.0 - 2.0 * j as f64)) + shift);
        }
    }
    Ok(out)
}

fn bae_sides(chain: &ChainSpec, roots: &[C64], i: usize) -> Result<(C64, C64)> {
    let p = &chain.params;
    let y = 2.0 * chain.spin;
    let li = roots[i];
    let lhs = elementary_ratio(RatioKind::E, p, y, li - chain.theta)?
        * elementary_ratio(RatioKind::E, p, 1.0, li)?.powi(chain.n_bulk as i32);
    let mut rhs = C64::new(1.0, 0.0);
    for (j, lj) in roots.iter().enumerate() {
        if j != i {
            rhs *= elementary_ratio(RatioKind::E, p, 2.0, li - lj)?;
        }
    }
    Ok((lhs, rhs))
}

/// max_i |LHS_i/RHS_i − 1| for e_y(λ_i−Θ) e_1(λ_i)^N = ∏_{j≠i} e_2(λ_i−λ_j).
pub fn bae_residual(chain: &ChainSpec, state: &BetheState) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..state.roots.len() {
        let (lhs, rhs) = bae_sides(chain, &state.roots, i)?;
        if rhs.norm() < 1e-300 || !rhs.is_finite() {
            return Err(Error::Pole { arg: state.roots[i] });
        }
        worst = worst.max((lhs / rhs - 1.0).norm());
    }
    Ok(worst)
}

const NEWTON_STEPS: usize = 200;
const DIVERGENCE: f64 = 1e8;
const COINCIDENCE: f64 = 1e-7;

fn log_equations(chain: &ChainSpec, roots: &[C64]) -> Result<DVector<C64>> {
    let mut f = DVector::zeros(roots.len());
    for i in 0..roots.len() {
        let (lhs, rhs) = bae_sides(chain, roots, i)?;
        f[i] = (lhs / rhs).ln();
    }
    Ok(f)
}

fn jacobian(chain: &ChainSpec, roots: &[C64]) -> Result<DMatrix<C64>> {
    let p = &chain.params;
    let y = 2.0 * chain.spin;
    let m = roots.len();
    let mut j = DMatrix::zeros(m, m);
    for i in 0..m {
        let li = roots[i];
        let mut diag = elementary_log_derivative(RatioKind::E, p, y, li - chain.theta)?
            + chain.n_bulk as f64 * elementary_log_derivative(RatioKind::E, p, 1.0, li)?;
        for k in 0..m {
            if k != i {
                let d2 = elementary_log_derivative(RatioKind::E, p, 2.0, li - roots[k])?;
                diag -= d2;
                j[(i, k)] = d2;
            }
        }
        j[(i, i)] = diag;
    }
    Ok(j)
}

fn max_norm(v: &DVector<C64>) -> f64 {
    v.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn check_distinct(roots: &[C64]) -> Result<()> {
    for i in 0..roots.len() {
        for k in 0..i {
            if (roots[i] - roots[k]).norm() < COINCIDENCE {
                return Err(Error::SingularJacobian);
            }
        }
    }
    Ok(())
}

/// Newton iteration on the logarithmic Bethe equations from `seeds`
/// (1-string templates around the origin when empty).
pub fn solve_bae(chain: &ChainSpec, m: usize, seeds: &[C64]) -> Result<BetheState> {
    if m == 0 {
        return Err(Error::Domain("magnon number must be at least 1".into()));
    }
    let mut roots: Vec<C64> = if seeds.is_empty() {
        (0..m).map(|j| C64::new(0.4 * (j as f64 - (m as f64 - 1.0) / 2.0), 0.0)).collect()
    } else if seeds.len() == m {
        seeds.to_vec()
    } else {
        return Err(Error::Domain(format!("{} seeds supplied for {m} magnons", seeds.len())));
    };
    check_distinct(&roots)?;
    let mut f = log_equations(chain, &roots)?;
    let mut best = max_norm(&f);
    for _ in 0..NEWTON_STEPS {
        if best <= 1e-14 {
            break;
        }
        let jac = jacobian(chain, &roots)?;
        let step = jac.lu().solve(&(-&f)).ok_or(Error::SingularJacobian)?;
        if step.iter().any(|z| !z.is_finite()) {
            return Err(Error::SingularJacobian);
        }
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<C64> = roots.iter().zip(step.iter()).map(|(r, s)| r + s * scale).collect();
            if let Ok(ft) = log_equations(chain, &trial) {
                let nt = max_norm(&ft);
                if nt.is_finite() && (nt < best || scale < 1e-6) {
                    roots = trial;
                    f = ft;
                    best = nt;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        let max_root = roots.iter().fold(0.0, |a: f64, r| a.max(r.norm()));
        if !accepted || max_root > DIVERGENCE {
            return Err(Error::NoConvergence { residual: best, max_root });
        }
    }
    check_distinct(&roots)?;
    let state = BetheState::from_roots(roots);
    let residual = bae_residual(chain, &state)?;
    if residual > 1e-10 {
        let max_root = state.roots.iter().fold(0.0, |a: f64, r| a.max(r.norm()));
        return Err(Error::NoConvergence { residual, max_root });
    }
    Ok(state)
}
