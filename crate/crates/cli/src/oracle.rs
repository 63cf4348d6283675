//! Direct complex-scalar formulas for every evaluator, used to cross-check
//! the matrix code on 1×1 inputs. Nothing here touches the matrix kernels.

use num_complex::Complex64 as C;

fn modulus(z: C) -> f64 {
    z.norm()
}

/// Unitary part of a scalar (0 at 0).
fn phase(z: C) -> C {
    let m = z.norm();
    if m == 0.0 {
        C::new(0.0, 0.0)
    } else {
        z / m
    }
}

/// `x^α` with `0^0 = 1` and `0^α = 0` for α > 0.
fn pow(x: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else if x == 0.0 {
        0.0
    } else {
        x.powf(alpha)
    }
}

fn sq(z: C) -> f64 {
    z.norm_sqr()
}

/// Left side, right side and equality residual of one inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

pub fn gpl_residual(a: C, b: C, t: f64) -> f64 {
    let lhs = sq(a - b) + sq(a * t + b) / t;
    let rhs = (1.0 + t) * sq(a) + (1.0 + 1.0 / t) * sq(b);
    (lhs - rhs).abs()
}

pub fn lemma21(a: C, b: C, t: f64) -> Sides {
    Sides {
        lhs: sq(a - b),
        rhs: (1.0 + t) * sq(a) + (1.0 + 1.0 / t) * sq(b),
        residual: modulus(a * t + b),
    }
}

pub fn thm22(a: C, b: C, p: f64, t: f64) -> Sides {
    let (ma, mb) = (modulus(a), modulus(b));
    let (u, v) = (phase(a), phase(b));
    let q = pow(ma, 1.0 - p);
    let middle = pow(mb, p) * q - mb;
    Sides {
        lhs: sq((u * pow(ma, p) - v * pow(mb, p)) * q),
        rhs: (1.0 + t) * sq(a - b) + (1.0 + 1.0 / t) * middle * middle,
        residual: modulus((a - b) * t + v * middle),
    }
}

pub fn thm23(a: C, b: C, p: f64, r: f64) -> Sides {
    let s = r / (r - 1.0);
    let (ma, mb) = (modulus(a), modulus(b));
    let x = ma.powf(p - 1.0);
    let y = mb.powf(p - 1.0);
    let middle = mb.powf(p) * ma.powf(1.0 - p) - mb;
    Sides {
        lhs: sq(a * x - b * y),
        rhs: x * (r * sq(a - b) + s * middle * middle) * x,
        residual: modulus((a - b) * x * (r - 1.0) - b * (x - y)),
    }
}

pub fn cor24(a: C, b: C, r: f64) -> Sides {
    let s = r / (r - 1.0);
    let (ma, mb) = (modulus(a), modulus(b));
    Sides {
        lhs: sq(a / ma - b / mb),
        rhs: (r * sq(a - b) + s * (ma - mb) * (ma - mb)) / (ma * ma),
        residual: modulus((a - b) * (r - 1.0) / ma - b * (1.0 / ma - 1.0 / mb)),
    }
}

pub fn prop25(a: C, b: C, p: f64, r: f64) -> [f64; 4] {
    let s = r / (r - 1.0);
    let x = modulus(a).powf(p - 1.0);
    let y = modulus(b).powf(p - 1.0);
    let d = (a - b) * x;
    let bxy = b * (x - y);
    [
        modulus(d * (r - 1.0) - bxy),
        modulus(bxy * (s - 1.0) - d),
        modulus(d * r - bxy * s),
        modulus(a * x - b * y - bxy * s),
    ]
}

/// `(identity residual, |B| ≤ bound gap, operator residual, p = 0 residual)`.
pub fn prop26(a: C, b: C, p: f64, r: f64) -> (f64, f64, f64, f64) {
    let s = r / (r - 1.0);
    let (ma, mb) = (modulus(a), modulus(b));
    let k = ma.powf(1.0 - p) * mb.powf(2.0 * p) * ma.powf(1.0 - p);
    let bound_sq = k / r + ma * ma / s;
    let identity = ((r - 1.0) * sq(a - b) - (bound_sq - mb * mb)).abs();
    let gap = bound_sq.sqrt() - mb;
    let middle = mb.powf(p) * ma.powf(1.0 - p) - mb;
    let operator = (r * modulus(a - b) - s * middle.abs()).abs();
    let zero_p = (ma - mb - r / s * modulus(a - b)).abs();
    (identity, gap, operator, zero_p)
}

pub fn thm32(a: C, b: C, t: f64) -> Sides {
    let (ma, mb) = (modulus(a), modulus(b));
    let (u, v) = (phase(a), phase(b));
    let angular = modulus((a - b) * t - v * (mb - ma));
    let support = (sq(v) - sq(u)).abs();
    Sides {
        lhs: sq((u - v) * ma),
        rhs: (t + 1.0) * sq(a - b) + (1.0 + 1.0 / t) * (ma - mb) * (ma - mb),
        residual: angular.max(support),
    }
}

pub fn p_angular_distance(a: C, b: C, p: f64) -> f64 {
    modulus(a * pow(modulus(a), p - 1.0) - b * pow(modulus(b), p - 1.0))
}

/// `(|A|, U)` of the scalar polar form.
pub fn polar(a: C) -> (f64, C) {
    (modulus(a), phase(a))
}

/// Chain identities on a scalar pair:
/// `(t|C|² − (|A|² − |B|²), |B||C| + |C||B| − (1−t)|C|²)` with `C = A − B`.
pub fn chain_identities(a: C, b: C, t: f64) -> (f64, f64) {
    let c = modulus(a - b);
    let (ma, mb) = (modulus(a), modulus(b));
    (
        t * c * c - (ma * ma - mb * mb),
        2.0 * mb * c - (1.0 - t) * c * c,
    )
}

/// Structural residuals of `A = B(1 − 2/(1−t)·w)` and `|A| = |B|(1 + 2t/(1−t)·w)`
/// with `w = |phase(A − B)|²`.
pub fn structured(a: C, b: C, t: f64) -> (f64, f64) {
    let w = sq(phase(a - b));
    let r1 = modulus(a - b * (1.0 - 2.0 / (1.0 - t) * w));
    let r2 = (modulus(a) - modulus(b) * (1.0 + 2.0 * t / (1.0 - t) * w)).abs();
    (r1, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn reference_values() {
        assert_eq!(gpl_residual(re(2.0), re(1.0), 1.0), 0.0);
        let s = lemma21(re(1.0), re(-2.0), 2.0);
        assert_eq!((s.lhs, s.rhs, s.residual), (9.0, 9.0, 0.0));
        let s = thm22(re(2.0), re(1.0), 0.5, 1.0);
        assert!((s.lhs - 0.343_145_750_507_619_8).abs() < 1e-15);
        assert!((s.rhs - 2.343_145_750_507_62).abs() < 1e-14);
        let s = thm23(re(0.5), re(1.0), 2.0, 3.0);
        assert!((s.lhs - 0.5625).abs() < 1e-15 && (s.rhs - 0.5625).abs() < 1e-15);
        let s = cor24(re(2.0), re(1.0), 2.0);
        assert_eq!((s.lhs, s.rhs), (0.0, 1.0));
        let s = thm32(re(-3.0), re(1.0), 0.5);
        assert_eq!((s.lhs, s.rhs, s.residual), (36.0, 36.0, 0.0));
        assert_eq!(p_angular_distance(re(2.0), re(1.0), 0.0), 0.0);
        assert_eq!(structured(re(-3.0), re(1.0), 0.5), (0.0, 0.0));
        assert_eq!(chain_identities(re(-3.0), re(1.0), 0.5), (0.0, 0.0));
    }

    #[test]
    fn prop25_on_the_scalar_witness() {
        assert!(prop25(re(0.5), re(1.0), 2.0, 3.0)
            .iter()
            .all(|&x| x < 1e-15));
        assert!(prop25(re(2.0), re(1.0), 0.0, 2.0).iter().all(|&x| x > 0.1));
        let (i, g, o, _) = prop26(re(0.5), re(1.0), 2.0, 3.0);
        assert!(i < 1e-15 && g >= 0.0 && o < 1e-15);
    }
}
