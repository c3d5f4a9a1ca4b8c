//! Airy kernel, the 1- and 2-point edge densities and their Laplace transforms.

use std::f64::consts::PI;

use serde::Serialize;

use super::airy::{airy_pair, AIRY_RANGE};
use super::quad::{integrate, Quadrature, QuadratureSpec};
use crate::error::{Error, Result};

/// `ρ(y)` is evaluated through `Ai(2y)`.
pub const DENSITY_RANGE: (f64, f64) = (AIRY_RANGE.0 / 2.0, AIRY_RANGE.1 / 2.0);

/// `ξ` range accepted by [`rho_laplace`].
pub const LAPLACE_XI_RANGE: (f64, f64) = (0.005, 8.0);

/// Lower truncation `−L` with `ξ·L = TAIL_EXPONENT`: the neglected part of
/// `∫ e^{ξy} ρ(y)`, bounded through `ρ(y) ≤ (2^{3/2}/π)√(−y) + O(1/|y|)`, is
/// below `e^{−50}·√L/ξ`.
const TAIL_EXPONENT: f64 = 50.0;

fn check_y(y: f64) -> Result<()> {
    if !(DENSITY_RANGE.0..=DENSITY_RANGE.1).contains(&y) {
        return Err(Error::OutOfRange {
            value: y,
            lo: DENSITY_RANGE.0,
            hi: DENSITY_RANGE.1,
        });
    }
    Ok(())
}

fn diag(y: f64) -> f64 {
    let (a, ap) = airy_pair(2.0 * y);
    2.0 * ap * ap - 4.0 * y * a * a
}

fn kernel_unchecked(x: f64, y: f64) -> f64 {
    if (x - y).abs() < 1e-6 {
        return diag(0.5 * (x + y));
    }
    let (ax, apx) = airy_pair(2.0 * x);
    let (ay, apy) = airy_pair(2.0 * y);
    (ax * apy - apx * ay) / (x - y)
}

/// `K(x,y) = (Ai(2x)Ai′(2y) − Ai′(2x)Ai(2y))/(x − y)`, with the diagonal limit.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    check_y(x)?;
    check_y(y)?;
    Ok(kernel_unchecked(x, y))
}

/// `ρ(y) = K(y,y) = 2Ai′(2y)² − 4y·Ai(2y)²`.
pub fn edge_density(y: f64) -> Result<f64> {
    check_y(y)?;
    Ok(diag(y))
}

/// `ρ(y₁,y₂) = K(y₁,y₁)K(y₂,y₂) − K(y₁,y₂)²`.
pub fn two_point_density(y1: f64, y2: f64) -> Result<f64> {
    check_y(y1)?;
    check_y(y2)?;
    let k = kernel_unchecked(y1, y2);
    Ok(diag(y1) * diag(y2) - k * k)
}

/// `√(2/π)·e^{ξ³/96}/ξ^{3/2}`: half the sum of the genus expansion of the
/// one-polygon map densities.
pub fn r_closed_form(xi: f64) -> f64 {
    (2.0 / PI).sqrt() * (xi.powi(3) / 96.0).exp() / xi.powf(1.5)
}

/// `e^{ξ³/12}/(2√π·ξ^{3/2})`, the other closed form in circulation; it
/// equals [`r_closed_form`] at `ξ/2` divided by 4.
pub fn r_printed_form(xi: f64) -> f64 {
    (xi.powi(3) / 12.0).exp() / (2.0 * PI.sqrt() * xi.powf(1.5))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RhoLaplace {
    pub xi: f64,
    pub value: f64,
    pub error: f64,
    pub lower: f64,
    pub upper: f64,
    pub closed_form: f64,
    pub printed_form: f64,
}

impl RhoLaplace {
    pub fn closed_form_deviation(&self) -> f64 {
        (self.value - self.closed_form).abs() / self.value
    }

    pub fn printed_form_deviation(&self) -> f64 {
        (self.value - self.printed_form).abs() / self.value
    }
}

fn check_xi(xi: f64) -> Result<()> {
    let (lo, hi) = LAPLACE_XI_RANGE;
    if !(lo..=hi).contains(&xi) {
        return Err(Error::OutOfRange { value: xi, lo, hi });
    }
    Ok(())
}

/// Integration window for `e^{ξy}·(density)`: `[−50/ξ, 10 + ξ²/4]`, unless
/// the spec carries finite bounds.
fn window(xi: f64, spec: &QuadratureSpec) -> (f64, f64) {
    let lo = if spec.lower.is_finite() {
        spec.lower
    } else {
        -TAIL_EXPONENT / xi
    };
    let hi = if spec.upper.is_finite() {
        spec.upper
    } else {
        10.0 + xi * xi / 4.0
    };
    (lo.max(DENSITY_RANGE.0), hi.min(DENSITY_RANGE.1))
}

/// Unit-width panels, refined where the integrand oscillates.
fn panels(lo: f64, hi: f64) -> Vec<f64> {
    let n = ((hi - lo).ceil() as usize).max(1);
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

fn integrate_panels<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    let bp = panels(lo, hi);
    let per_panel = QuadratureSpec {
        abs_tol: spec.abs_tol / bp.len() as f64,
        ..*spec
    };
    let mut total = Quadrature {
        value: 0.0,
        error: 0.0,
        subdivisions: 0,
    };
    for w in bp.windows(2) {
        let q = integrate(&f, w[0], w[1], &per_panel);
        let q = match q {
            Ok(q) => q,
            // a panel may fail its own relative test when its share is tiny;
            // the global test below decides
            Err(Error::NoConvergence {
                estimate,
                error,
                subdivisions,
            }) => Quadrature {
                value: estimate,
                error,
                subdivisions,
            },
            Err(e) => return Err(e),
        };
        total.value += q.value;
        total.error += q.error;
        total.subdivisions += q.subdivisions;
    }
    if total.error > spec.abs_tol.max(spec.rel_tol * total.value.abs()) || !total.value.is_finite() {
        return Err(Error::NoConvergence {
            estimate: total.value,
            error: total.error,
            subdivisions: total.subdivisions,
        });
    }
    Ok(total)
}

/// `R(ξ) = ∫ e^{ξy} ρ(y) dy`, together with both closed forms.
pub fn rho_laplace(xi: f64, spec: &QuadratureSpec) -> Result<RhoLaplace> {
    spec.validate()?;
    check_xi(xi)?;
    let (lo, hi) = window(xi, spec);
    let q = integrate_panels(|y| (xi * y).exp() * diag(y), lo, hi, spec)?;
    Ok(RhoLaplace {
        xi,
        value: q.value,
        error: q.error,
        lower: lo,
        upper: hi,
        closed_form: r_closed_form(xi),
        printed_form: r_printed_form(xi),
    })
}

/// `R(ξ₁,ξ₂) = ∬ e^{ξ₁y₁+ξ₂y₂} ρ(y₁,y₂)`, computed as
/// `R(ξ₁)R(ξ₂) − ∬ e^{ξ₁y₁+ξ₂y₂} K(y₁,y₂)²`.
pub fn rho_laplace2(xi1: f64, xi2: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    spec.validate()?;
    check_xi(xi1)?;
    check_xi(xi2)?;
    let r1 = rho_laplace(xi1, spec)?;
    let r2 = rho_laplace(xi2, spec)?;
    let (lo1, hi1) = window(xi1, spec);
    let (lo2, hi2) = window(xi2, spec);
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol.max(1e-10),
        ..*spec
    };
    let inner = |y1: f64| -> f64 {
        let q = integrate_panels(
            |y2| {
                let k = kernel_unchecked(y1, y2);
                (xi2 * y2).exp() * k * k
            },
            lo2,
            hi2,
            &inner_spec,
        );
        let v = match q {
            Ok(q) => q.value,
            Err(Error::NoConvergence { estimate, .. }) => estimate,
            Err(_) => f64::NAN,
        };
        (xi1 * y1).exp() * v
    };
    let c = integrate_panels(
        inner,
        lo1,
        hi1,
        &QuadratureSpec {
            rel_tol: spec.rel_tol.max(1e-9),
            ..*spec
        },
    )?;
    Ok(Quadrature {
        value: r1.value * r2.value - c.value,
        error: r1.error * r2.value + r2.error * r1.value + c.error,
        subdivisions: c.subdivisions,
    })
}
