//! Airy function `Ai` and its derivative.
//!
//! Four regimes: Maclaurin series on `[−7, 3)`, the oscillatory asymptotic
//! expansion below `−7`, the exponential one from `9` up, and Taylor steps of
//! the ODE `y″ = x·y` started from `x = 9` in between. Stepping downward from
//! 9 follows the growing direction of `Ai`, so it is stable.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Range on which [`airy`] and [`airy_prime`] are validated.
pub const AIRY_RANGE: (f64, f64) = (-1.0e4, 100.0);

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;

const SERIES_LO: f64 = -7.0;
const SERIES_HI: f64 = 3.0;
const ASYMPTOTIC_HI: f64 = 9.0;
const TAYLOR_STEP: f64 = 0.25;

pub fn airy(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).0)
}

pub fn airy_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).1)
}

fn check(x: f64) -> Result<()> {
    if !(AIRY_RANGE.0..=AIRY_RANGE.1).contains(&x) {
        return Err(Error::OutOfRange {
            value: x,
            lo: AIRY_RANGE.0,
            hi: AIRY_RANGE.1,
        });
    }
    Ok(())
}

/// `(Ai(x), Ai′(x))` without range checking. Accuracy degrades slowly below
/// `−10⁴` (phase rounding) and values underflow to 0 above about 104.
pub fn airy_pair(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x < SERIES_LO {
        oscillatory(-x)
    } else if x < SERIES_HI {
        maclaurin(x)
    } else if x < ASYMPTOTIC_HI {
        let start = exponential(ASYMPTOTIC_HI);
        taylor_walk(ASYMPTOTIC_HI, start, x)
    } else {
        exponential(x)
    }
}

/// `Ai = Ai(0)·f − |Ai′(0)|·g` with `f = Σ 3^k (1/3)_k x^{3k}/(3k)!`,
/// `g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!`.
fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut fp) = (1.0, 0.0);
    let (mut g, mut gp) = (x, 1.0);
    // term_f = x^{3k}·Π_{j<k} 1/((3j+2)(3j+3)), term_g = x^{3k+1}·Π 1/((3j+3)(3j+4))
    let (mut tf, mut tg) = (1.0, x);
    for k in 0..200 {
        let kf = 3.0 * k as f64;
        tf *= x3 / ((kf + 2.0) * (kf + 3.0));
        tg *= x3 / ((kf + 3.0) * (kf + 4.0));
        f += tf;
        g += tg;
        // d/dx x^{m} = m x^{m−1}
        fp += tf * (kf + 3.0) / x_or_one(x);
        gp += tg * (kf + 4.0) / x_or_one(x);
        if tf.abs() < 1e-18 * f.abs().max(1e-300) && tg.abs() < 1e-18 * g.abs().max(1e-300) && k > 2 {
            break;
        }
    }
    if x == 0.0 {
        return (AI0, AIP0);
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

fn x_or_one(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x
    }
}

/// Coefficients `u_k` of the asymptotic expansions, with `v_k = −(6k+1)/(6k−1)·u_k`.
fn u_coeffs(n: usize) -> Vec<f64> {
    let mut u = vec![1.0];
    for k in 1..n {
        let kf = k as f64;
        // u_k = u_{k−1}·(6k−5)(6k−3)(6k−1)/((2k−1)·216·k)
        let r = (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(u[k - 1] * r);
    }
    u
}

fn v_of(u: &[f64], k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        let kf = k as f64;
        -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k]
    }
}

/// Sums `Σ_k sign(k)·c_k·t^k` until the terms stop decreasing or fall below
/// machine precision.
fn asymptotic_sum(c: impl Fn(usize) -> f64, t: f64, sign: impl Fn(usize) -> f64, n: usize) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut pow = 1.0;
    for k in 0..n {
        let term = sign(k) * c(k) * pow;
        if term.abs() > prev {
            break;
        }
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        prev = term.abs();
        pow *= t;
    }
    sum
}

const N_COEFFS: usize = 40;

fn exponential(x: f64) -> (f64, f64) {
    let u = u_coeffs(N_COEFFS);
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let alt = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let su = asymptotic_sum(|k| u[k], 1.0 / zeta, alt, N_COEFFS);
    let sv = asymptotic_sum(|k| v_of(&u, k), 1.0 / zeta, alt, N_COEFFS);
    let q = x.sqrt().sqrt();
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    (e / q * su, -e * q * sv)
}

fn oscillatory(z: f64) -> (f64, f64) {
    let u = u_coeffs(N_COEFFS);
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let t = 1.0 / (zeta * zeta);
    let alt = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let pu = asymptotic_sum(|k| u[2 * k], t, alt, N_COEFFS / 2);
    let qu = asymptotic_sum(|k| u[2 * k + 1], t, alt, N_COEFFS / 2 - 1) / zeta;
    let pv = asymptotic_sum(|k| v_of(&u, 2 * k), t, alt, N_COEFFS / 2);
    let qv = asymptotic_sum(|k| v_of(&u, 2 * k + 1), t, alt, N_COEFFS / 2 - 1) / zeta;
    let phase = zeta - FRAC_PI_4;
    let (s, c) = phase.sin_cos();
    let q = z.sqrt().sqrt();
    let a = (c * pu + s * qu) / (PI.sqrt() * q);
    let ap = q * (s * pv - c * qv) / PI.sqrt();
    (a, ap)
}

/// Integrates `y″ = x·y` from `x0` to `x1` by Taylor steps of length ≤ 0.25.
fn taylor_walk(x0: f64, (mut y, mut yp): (f64, f64), x1: f64) -> (f64, f64) {
    let mut x = x0;
    while (x1 - x).abs() > 0.0 {
        let h = (x1 - x).clamp(-TAYLOR_STEP, TAYLOR_STEP);
        // a_{m+2} = (x·a_m + a_{m−1}) / ((m+2)(m+1))
        let mut a = [0.0f64; 40];
        a[0] = y;
        a[1] = yp;
        a[2] = x * y / 2.0;
        for m in 1..38 {
            a[m + 2] = (x * a[m] + a[m - 1]) / ((m + 2) as f64 * (m + 1) as f64);
        }
        let (mut ny, mut nyp) = (0.0, 0.0);
        let mut p = 1.0;
        for m in 0..40 {
            ny += a[m] * p;
            if m + 1 < 40 {
                nyp += (m + 1) as f64 * a[m + 1] * p;
            }
            p *= h;
        }
        y = ny;
        yp = nyp;
        x = if (x1 - x).abs() <= TAYLOR_STEP { x1 } else { x + h };
    }
    (y, yp)
}
