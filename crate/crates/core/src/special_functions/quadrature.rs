//! Adaptive Gauss–Kronrod (7/15) quadrature and half-line cutoffs for
//! exponentially decaying integrands.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 20_000;
const MAX_CUTOFF: f64 = 4096.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub err: f64,
    pub nodes: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kron * half;
    let err = ((kron - gauss) * half).abs();
    Piece { a, b, value, err: err.max(50.0 * f64::EPSILON * value.abs()) }
}

/// ∫_a^b f, starting from `pieces` equal subintervals and bisecting the worst
/// one until the summed error estimate drops below `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize, tol: f64) -> Result<Quadrature> {
    let pieces = pieces.max(1);
    let h = (b - a) / pieces as f64;
    let mut heap: BinaryHeap<Piece> = (0..pieces)
        .map(|j| kronrod(&f, a + j as f64 * h, if j + 1 == pieces { b } else { a + (j + 1) as f64 * h }))
        .collect();
    loop {
        let err: f64 = heap.iter().map(|p| p.err).sum();
        if !err.is_finite() {
            return Err(Error::NonConvergence { what: "quadrature", estimate: err });
        }
        if err <= tol {
            let value = heap.iter().map(|p| p.value).sum();
            return Ok(Quadrature { value, err, nodes: 15 * heap.len() });
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence { what: "quadrature", estimate: err });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(kronrod(&f, worst.a, mid));
        heap.push(kronrod(&f, mid, worst.b));
    }
}

/// Smallest Ω (doubling from 1) with the estimated tail ∫_Ω^∞ |g| ≤ tol, where
/// `g` decays exponentially. The decay rate is read off g(Ω/2)/g(Ω).
pub fn half_line_cutoff<G: Fn(f64) -> f64>(g: G, tol: f64) -> Result<f64> {
    let mut omega: f64 = 1.0;
    let mut prev = g(0.5).abs();
    loop {
        let cur = g(omega).abs();
        if cur == 0.0 && prev == 0.0 {
            return Ok(omega);
        }
        if cur < prev && cur > 0.0 {
            let rate = (prev / cur).ln() / (0.5 * omega);
            if cur / rate <= tol {
                return Ok(omega);
            }
        } else if cur == 0.0 {
            return Ok(omega);
        }
        if omega >= MAX_CUTOFF {
            return Err(Error::NonConvergence { what: "half-line cutoff", estimate: cur });
        }
        prev = cur;
        omega *= 2.0;
    }
}

/// ∫_0^∞ f for an exponentially decaying integrand oscillating with angular
/// frequency up to `freq`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, freq: f64, tol: f64) -> Result<Quadrature> {
    let cutoff = half_line_cutoff(&f, tol / 10.0)?;
    let pieces = ((cutoff * (1.0 + freq.abs())) / 2.0).ceil().max(4.0) as usize;
    let mut q = integrate(&f, 0.0, cutoff, pieces, 0.9 * tol)?;
    q.err += tol / 10.0;
    Ok(q)
}
