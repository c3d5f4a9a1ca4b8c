//! Numerical checks of closed-form integrals used in the edge analysis.

use std::f64::consts::PI;

use serde::Serialize;

use super::quad::{integrate, integrate_to_infinity, QuadratureSpec};
use crate::error::Result;

/// Relative tolerance every identity must meet.
pub const IDENTITY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub params: Vec<f64>,
    pub computed: f64,
    pub expected: f64,
    pub rel_error: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &str, params: Vec<f64>, computed: Result<f64>, expected: f64) -> Self {
        let computed = computed.unwrap_or(f64::NAN);
        let rel_error = (computed - expected).abs() / expected.abs();
        IdentityCheck {
            name: name.into(),
            params,
            computed,
            expected,
            rel_error,
            pass: rel_error <= IDENTITY_TOL,
        }
    }
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::with_tol(1e-12, 1e-15)
}

/// `(1/√π)∬_{x,y>0} e^{−ax−by}(x+y)^{−3/2}` via `x = uw`, `y = u(1−w)`,
/// `u = v²`, which turns it into `(2/√π)∫_0^1∫_0^∞ e^{−(aw+b(1−w))v²} dv dw`.
pub fn laplace_ab(a: f64, b: f64) -> Result<f64> {
    let s = spec();
    let inner = |w: f64| {
        let c = a * w + b * (1.0 - w);
        integrate_to_infinity(|v| 2.0 * (-c * v * v).exp(), 0.0, &s)
            .map(|q| q.value)
            .unwrap_or(f64::NAN)
    };
    Ok(integrate(inner, 0.0, 1.0, &s)?.value / PI.sqrt())
}

/// `∫_{−1}^{1} arccos(x)/(1−x) dx` via `x = 1 − s²`, with
/// `arccos(1 − s²) = 2 arcsin(s/√2)` to keep digits near the endpoint.
pub fn arccos_integral() -> Result<f64> {
    let f = |s: f64| {
        if s == 0.0 {
            2.0 * 2f64.sqrt()
        } else {
            4.0 * (s / 2f64.sqrt()).asin() / s
        }
    };
    Ok(integrate(f, 0.0, 2f64.sqrt(), &spec())?.value)
}

/// `∫_0^∞ e^{−zp}·r(2πp³)^{−1/2}·e^{−r²/(2p)} dp`, the Laplace transform of
/// the first-passage density of Brownian motion to level `r`.
pub fn first_passage_laplace(z: f64, r: f64) -> Result<f64> {
    let f = |p: f64| {
        if p <= 0.0 {
            0.0
        } else {
            (-z * p - r * r / (2.0 * p)).exp() * r / (2.0 * PI * p * p * p).sqrt()
        }
    };
    Ok(integrate_to_infinity(f, 0.0, &spec())?.value)
}

pub fn quadrature_identities() -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for (a, b) in [(1.0, 1.0), (1.0, 4.0), (2.0, 3.0)] {
        let expected = 2.0 / (f64::sqrt(a) + f64::sqrt(b));
        out.push(IdentityCheck::new("ab", vec![a, b], laplace_ab(a, b), expected));
    }
    out.push(IdentityCheck::new(
        "int1",
        vec![],
        arccos_integral(),
        2.0 * PI * 2f64.ln(),
    ));
    for (z, r) in [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)] {
        let expected = (-r * f64::sqrt(2.0 * z)).exp();
        out.push(IdentityCheck::new(
            "laplt",
            vec![z, r],
            first_passage_laplace(z, r),
            expected,
        ));
    }
    out
}
