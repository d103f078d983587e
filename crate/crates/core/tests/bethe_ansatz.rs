//! Bethe roots against exact diagonalization: the eigenvalue built from the
//! roots must appear in the transfer-matrix spectrum of the matching S^z sector.

use defectbethe::linalg::{eigenvalues, CMat, I};
use defectbethe::spin_algebra::{Family, ModelParameters, Regime};
use defectbethe::spin_chain::{bae_residual, solve_bae, transfer, BetheState, ChainSpec};
use num_complex::Complex64 as C64;

/// Vacuum dressing functions (a, d) with t(u)|0⟩ = (a(u) + d(u))|0⟩.
fn vacuum_parts(chain: &ChainSpec, u: C64) -> (C64, C64) {
    let n = chain.n_bulk as i32;
    let s = chain.spin;
    let w = u - chain.theta;
    let f = |x: C64| match chain.params.family() {
        Family::Rational => x,
        Family::Trigonometric => (chain.params.mu().unwrap() * x).sinh(),
    };
    (f(u + I).powi(n) * f(w + I * (s + 0.5)), f(u).powi(n) * f(w + I * (0.5 - s)))
}

/// Λ(u) = a(u) ∏ f(u−v−i)/f(u−v) + d(u) ∏ f(u−v+i)/f(u−v), v = λ − i/2.
fn aba_eigenvalue(chain: &ChainSpec, state: &BetheState, u: C64) -> C64 {
    let f = |x: C64| match chain.params.family() {
        Family::Rational => x,
        Family::Trigonometric => (chain.params.mu().unwrap() * x).sinh(),
    };
    let (a, d) = vacuum_parts(chain, u);
    let mut qa = C64::new(1.0, 0.0);
    let mut qd = C64::new(1.0, 0.0);
    for r in &state.roots {
        let v = r - I * 0.5;
        qa *= f(u - v - I) / f(u - v);
        qd *= f(u - v + I) / f(u - v);
    }
    a * qa + d * qd
}

fn sector_block(m: &CMat, idx: &[usize]) -> CMat {
    CMat::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

fn check_chain(params: ModelParameters, n_bulk: usize, spin: f64, theta: f64, magnons: usize, seeds: &[Vec<C64>]) -> usize {
    let chain = ChainSpec::new(n_bulk, 2, spin, theta, params).unwrap();
    let u = C64::new(0.37, 0.11);
    let t = transfer(&chain, u).unwrap();
    let sz = n_bulk as f64 / 2.0 + spin - magnons as f64;
    let spectrum = eigenvalues(&sector_block(&t, &chain.sector(sz)));
    let mut found = 0;
    for s in seeds {
        let Ok(state) = solve_bae(&chain, magnons, s) else { continue };
        assert!(bae_residual(&chain, &state).unwrap() <= 1e-10);
        let lam = aba_eigenvalue(&chain, &state, u);
        let scale = spectrum.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        let nearest = spectrum.iter().map(|z| (z - lam).norm()).fold(f64::INFINITY, f64::min);
        assert!(nearest <= 1e-8 * scale, "{params:?} S={spin} M={magnons}: {lam} missing, nearest {nearest:e}");
        found += 1;
    }
    found
}

fn one_magnon_seeds() -> Vec<Vec<C64>> {
    [-0.9, -0.4, -0.15, 0.15, 0.4, 0.9].iter().map(|&x| vec![C64::new(x, 0.02)]).collect()
}

fn two_magnon_seeds() -> Vec<Vec<C64>> {
    [(-0.6, 0.5), (-0.3, 0.2), (-1.0, 0.1), (0.1, 0.9)]
        .iter()
        .map(|&(a, b)| vec![C64::new(a, 0.01), C64::new(b, 0.03)])
        .collect()
}

#[test]
fn rational_roots_reproduce_transfer_eigenvalues() {
    let p = ModelParameters::rational();
    for spin in [0.5, 1.0] {
        assert!(check_chain(p, 2, spin, 0.3, 1, &one_magnon_seeds()) > 0);
        assert!(check_chain(p, 3, spin, -0.2, 2, &two_magnon_seeds()) > 0);
    }
}

#[test]
fn trigonometric_roots_reproduce_transfer_eigenvalues() {
    for regime in [Regime::Repulsive, Regime::Attractive] {
        let p = ModelParameters::trigonometric(0.6, regime).unwrap();
        for spin in [0.5, 1.0] {
            assert!(check_chain(p, 2, spin, 0.3, 1, &one_magnon_seeds()) > 0);
            assert!(check_chain(p, 3, spin, -0.2, 2, &two_magnon_seeds()) > 0);
        }
    }
}

#[test]
fn vacuum_parts_sum_to_the_vacuum_eigenvalue() {
    let chain = ChainSpec::new(2, 2, 1.0, 0.2, ModelParameters::trigonometric(0.4, Regime::Repulsive).unwrap()).unwrap();
    let u = C64::new(0.3, -0.2);
    let (a, d) = vacuum_parts(&chain, u);
    let v = defectbethe::spin_chain::pseudovacuum_eigenvalue(&chain, u).unwrap();
    assert!((a + d - v).norm() < 1e-13);
}
