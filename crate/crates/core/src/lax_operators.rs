//! R-matrices, defect Lax operators and their Yang–Baxter / RLL residuals.
//!
//! Lax operators act on C² ⊗ V (auxiliary first) with block form
//! [[A, B], [C, D]], B ∝ S^−, C ∝ S^+.

use crate::error::{Error, Result};
use crate::linalg::{embed, eye, kron, max_abs, permutation, CMat, I};
use crate::spin_algebra::{build_rep, Family, ModelParameters, SpinRepresentation};
use num_complex::Complex64 as C64;

fn blocks(a: CMat, b: CMat, c: CMat, d: CMat) -> CMat {
    let n = a.nrows();
    let mut out = CMat::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(&a);
    out.view_mut((0, n), (n, n)).copy_from(&b);
    out.view_mut((n, 0), (n, n)).copy_from(&c);
    out.view_mut((n, n), (n, n)).copy_from(&d);
    out
}

fn check_family(params: &ModelParameters, rep: &SpinRepresentation) -> Result<()> {
    match (params.family(), rep.deformation) {
        (Family::Rational, None) => Ok(()),
        (Family::Trigonometric, Some(mu)) if (mu - params.mu()?).abs() < 1e-14 => Ok(()),
        _ => Err(Error::RepMismatch(format!(
            "representation deformation {:?} does not match {:?} parameters",
            rep.deformation,
            params.family()
        ))),
    }
}

/// Rational: [[λ + iS^z + i/2, iS^−], [iS^+, λ − iS^z + i/2]].
/// Trigonometric: sinh(μ(·)) of the diagonal entries, sinh(iμ) S^∓ off-diagonal.
pub fn defect_lax(params: &ModelParameters, rep: &SpinRepresentation, lambda: C64) -> Result<CMat> {
    check_family(params, rep)?;
    Ok(match rep.deformation {
        None => blocks(
            rep.diag_fn(|a| lambda + I * (a + 0.5)),
            &rep.sm * I,
            &rep.sp * I,
            rep.diag_fn(|a| lambda + I * (0.5 - a)),
        ),
        Some(mu) => {
            let off = (I * mu).sinh();
            blocks(
                rep.diag_fn(|a| (mu * (lambda + I * (a + 0.5))).sinh()),
                &rep.sm * off,
                &rep.sp * off,
                rep.diag_fn(|a| (mu * (lambda + I * (0.5 - a))).sinh()),
            )
        }
    })
}

/// d/dλ of [`defect_lax`].
pub fn defect_lax_derivative(params: &ModelParameters, rep: &SpinRepresentation, lambda: C64) -> Result<CMat> {
    check_family(params, rep)?;
    let zero = CMat::zeros(rep.dim, rep.dim);
    Ok(match rep.deformation {
        None => eye(2 * rep.dim),
        Some(mu) => blocks(
            rep.diag_fn(|a| mu * (mu * (lambda + I * (a + 0.5))).cosh()),
            zero.clone(),
            zero,
            rep.diag_fn(|a| mu * (mu * (lambda + I * (0.5 - a))).cosh()),
        ),
    })
}

/// Bulk R-matrix: the spin-½ Lax operator.
pub fn r_matrix(params: &ModelParameters, lambda: C64) -> Result<CMat> {
    defect_lax(params, &build_rep(0.5, params)?, lambda)
}

pub fn r_matrix_derivative(params: &ModelParameters, lambda: C64) -> Result<CMat> {
    defect_lax_derivative(params, &build_rep(0.5, params)?, lambda)
}

/// max |R12(λ1−λ2) R13(λ1) R23(λ2) − R23(λ2) R13(λ1) R12(λ1−λ2)|.
pub fn ybe_residual(params: &ModelParameters, l1: C64, l2: C64) -> Result<f64> {
    let dims = [2, 2, 2];
    let r12 = kron(&r_matrix(params, l1 - l2)?, &eye(2));
    let r13 = embed(&r_matrix(params, l1)?, &[0, 2], &dims);
    let r23 = kron(&eye(2), &r_matrix(params, l2)?);
    Ok(max_abs(&(&r12 * &r13 * &r23 - &r23 * &r13 * &r12)))
}

/// RLL residual on aux ⊗ aux ⊗ V for arbitrary operators: `r` on the two
/// auxiliary spaces, `l1`, `l2` on C² ⊗ V.
pub fn rll_residual_of(r: &CMat, l1: &CMat, l2: &CMat) -> f64 {
    let n = l1.nrows() / 2;
    let dims = [2, 2, n];
    let r12 = kron(r, &eye(n));
    let a = embed(l1, &[0, 2], &dims);
    let b = embed(l2, &[1, 2], &dims);
    max_abs(&(&r12 * &a * &b - &b * &a * &r12))
}

pub fn rll_residual(params: &ModelParameters, rep: &SpinRepresentation, l1: C64, l2: C64) -> Result<f64> {
    Ok(rll_residual_of(
        &r_matrix(params, l1 - l2)?,
        &defect_lax(params, rep, l1)?,
        &defect_lax(params, rep, l2)?,
    ))
}

/// min_s ‖R(0) − s·P‖.
pub fn regularity_check(params: &ModelParameters) -> Result<f64> {
    let r0 = r_matrix(params, C64::new(0.0, 0.0))?;
    let p = permutation(2);
    let s = p.iter().zip(r0.iter()).map(|(a, b)| a.conj() * b).sum::<C64>() / C64::new(4.0, 0.0);
    Ok(max_abs(&(r0 - p * s)))
}
