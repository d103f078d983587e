//! Dense complex linear algebra helpers.
//!
//! Tensor convention: in every Kronecker product the auxiliary space is the
//! left (slowest-varying) factor. Site operators on multi-site spaces are
//! placed with [`embed`] / [`apply_left`], which index sites in the same
//! left-to-right order.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

pub type CMat = DMatrix<C64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Swap operator on C^d ⊗ C^d.
pub fn permutation(d: usize) -> CMat {
    let mut p = CMat::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            p[(a * d + b, b * d + a)] = C64::new(1.0, 0.0);
        }
    }
    p
}

/// Entrywise max modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn commutator_norm(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a * b - b * a))
}

pub fn hermiticity_residual(m: &CMat) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Eigenvalues of a general complex matrix (diagonal of the Schur form).
pub fn eigenvalues(m: &CMat) -> Vec<C64> {
    let (_, t) = m.clone().schur().unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Greedy multiset matching; returns the largest pairing distance.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let mut best = (f64::INFINITY, usize::MAX);
        for (j, y) in b.iter().enumerate() {
            if !used[j] && (x - y).norm() < best.0 {
                best = ((x - y).norm(), j);
            }
        }
        used[best.1] = true;
        worst = worst.max(best.0);
    }
    worst
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Local index of `state` restricted to `sites` (first site slowest).
fn local_index(state: usize, sites: &[usize], dims: &[usize], st: &[usize]) -> usize {
    sites
        .iter()
        .fold(0, |acc, &s| acc * dims[s] + (state / st[s]) % dims[s])
}

/// `state` with the digits on `sites` replaced by the local index `loc`.
fn replace_local(state: usize, loc: usize, sites: &[usize], dims: &[usize], st: &[usize]) -> usize {
    let mut out = state;
    let mut rest = loc;
    for &s in sites.iter().rev() {
        let digit = rest % dims[s];
        rest /= dims[s];
        out = out - ((state / st[s]) % dims[s]) * st[s] + digit * st[s];
    }
    out
}

/// Full-space matrix of an operator acting on the listed sites (in that order).
pub fn embed(op: &CMat, sites: &[usize], dims: &[usize]) -> CMat {
    let total: usize = dims.iter().product();
    let m: usize = sites.iter().map(|&s| dims[s]).product();
    assert_eq!(op.nrows(), m, "operator size does not match the sites");
    let st = strides(dims);
    let mut out = CMat::zeros(total, total);
    for r in 0..total {
        let lr = local_index(r, sites, dims, &st);
        for lc in 0..m {
            let v = op[(lr, lc)];
            if v != C64::new(0.0, 0.0) {
                out[(r, replace_local(r, lc, sites, dims, &st))] += v;
            }
        }
    }
    out
}

/// `embed(op, sites, dims) * mat` without forming the embedded operator.
pub fn apply_left(op: &CMat, sites: &[usize], dims: &[usize], mat: &CMat) -> CMat {
    let total: usize = dims.iter().product();
    let m: usize = sites.iter().map(|&s| dims[s]).product();
    assert_eq!(mat.nrows(), total);
    let st = strides(dims);
    let mut out = CMat::zeros(total, mat.ncols());
    for r in 0..total {
        let lr = local_index(r, sites, dims, &st);
        for lc in 0..m {
            let v = op[(lr, lc)];
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            let src = replace_local(r, lc, sites, dims, &st);
            for col in 0..mat.ncols() {
                out[(r, col)] += v * mat[(src, col)];
            }
        }
    }
    out
}

/// Partial transpose on the leading 2-dimensional factor of C^2 ⊗ C^n.
pub fn transpose_aux(m: &CMat) -> CMat {
    let n = m.nrows() / 2;
    let mut out = m.clone();
    for a in 0..2 {
        for b in 0..2 {
            let blk = m.view((a * n, b * n), (n, n)).into_owned();
            out.view_mut((b * n, a * n), (n, n)).copy_from(&blk);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rand_mat(n: usize, seed: u64) -> CMat {
        let mut x = seed as f64;
        CMat::from_fn(n, n, |_, _| {
            x = (x * 1.618_033_988_7 + 0.3).fract() + 0.01;
            C64::new(x - 0.5, (x * 7.0).fract() - 0.5)
        })
    }

    #[test]
    fn embed_matches_kron() {
        let a = rand_mat(2, 1);
        let b = rand_mat(3, 2);
        let dims = [2, 3, 2];
        let full = kron(&kron(&eye(2), &b), &eye(2));
        assert!(max_abs(&(embed(&b, &[1], &dims) - full)) < 1e-15);
        let ab = kron(&a, &b);
        let full = kron(&ab, &eye(2));
        assert!(max_abs(&(embed(&ab, &[0, 1], &dims) - full)) < 1e-15);
    }

    #[test]
    fn embed_respects_site_order() {
        let p = permutation(2);
        let a = rand_mat(2, 3);
        let b = rand_mat(2, 4);
        let ab = kron(&a, &b);
        let dims = [2, 2];
        let swapped = embed(&ab, &[1, 0], &dims);
        assert!(max_abs(&(swapped - &p * &ab * &p)) < 1e-14);
    }

    #[test]
    fn apply_left_agrees_with_embed() {
        let op = rand_mat(6, 5);
        let dims = [2, 2, 3];
        let m = rand_mat(12, 6);
        let lhs = apply_left(&op, &[2, 0], &dims, &m);
        let rhs = embed(&op, &[2, 0], &dims) * &m;
        assert!(max_abs(&(lhs - rhs)) < 1e-14);
    }

    #[test]
    fn schur_eigenvalues_of_triangular() {
        let mut m = CMat::zeros(3, 3);
        m[(0, 0)] = c(1.0, 1.0);
        m[(1, 1)] = c(-2.0, 0.5);
        m[(2, 2)] = c(0.0, 3.0);
        m[(0, 2)] = c(4.0, 0.0);
        let ev = eigenvalues(&m);
        let expect = [c(1.0, 1.0), c(-2.0, 0.5), c(0.0, 3.0)];
        assert!(multiset_distance(&ev, &expect) < 1e-12);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let m = rand_mat(6, 9);
        assert!(max_abs(&(transpose_aux(&transpose_aux(&m)) - &m)) < 1e-15);
        assert_eq!(transpose_aux(&m)[(0, 3)], m[(3, 0)]);
    }
}
