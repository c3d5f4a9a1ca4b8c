use std::f64::consts::PI;

use super::Partition;

/// Limit shape `Ω(x)` of Plancherel diagrams in rotated coordinates.
pub fn limit_shape(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        x.abs()
    } else {
        2.0 / PI * (x * (x / 2.0).asin() + (4.0 - x * x).sqrt())
    }
}

/// Piecewise-linear boundary of a diagram rotated by 135° and scaled by `n^{-1/2}`.
///
/// Coordinates are `u = (col − row)/√n` and `v = (col + row)/√n`; the profile
/// equals `|u|` outside the listed breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    points: Vec<(f64, f64)>,
}

pub fn rotated_profile(lambda: &Partition) -> Profile {
    let scale = 1.0 / (lambda.size().max(1) as f64).sqrt();
    let l = lambda.len() as i64;
    let (mut u, mut v) = (-l, l);
    let mut points = vec![(u, v)];
    for i in (1..=lambda.len()).rev() {
        let run = lambda.part(i) as i64 - lambda.part(i + 1) as i64;
        if run > 0 {
            u += run;
            v += run;
            points.push((u, v));
        }
        u += 1;
        v -= 1;
        points.push((u, v));
    }
    Profile {
        points: points
            .into_iter()
            .map(|(u, v)| (u as f64 * scale, v as f64 * scale))
            .collect(),
    }
}

impl Profile {
    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn eval(&self, x: f64) -> f64 {
        let first = self.points[0];
        let last = self.points[self.points.len() - 1];
        if x <= first.0 || x >= last.0 {
            return x.abs();
        }
        let k = self.points.partition_point(|p| p.0 <= x);
        let (x0, y0) = self.points[k - 1];
        let (x1, y1) = self.points[k];
        if x1 == x0 {
            return y0;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// `∫ (profile(u) − |u|) du`, exact for the piecewise-linear shape.
    pub fn area_above_abs(&self) -> f64 {
        let mut xs: Vec<f64> = self.points.iter().map(|p| p.0).collect();
        xs.push(0.0);
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        xs.windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let fa = self.eval(a) - a.abs();
                let fb = self.eval(b) - b.abs();
                0.5 * (fa + fb) * (b - a)
            })
            .sum()
    }

    /// `max |profile − Ω|` over an even grid on `[-lim, lim]`.
    pub fn sup_distance_to_limit(&self, lim: f64, steps: usize) -> f64 {
        (0..=steps)
            .map(|k| {
                let x = -lim + 2.0 * lim * k as f64 / steps as f64;
                (self.eval(x) - limit_shape(x)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `x_i = n^{1/3}(λ_i/(2√n) − 1)` for each row.
pub fn scaled_rows(lambda: &Partition) -> Vec<f64> {
    let n = lambda.size() as f64;
    let c = n.cbrt();
    let r = 2.0 * n.sqrt();
    lambda.parts().iter().map(|&p| c * (p as f64 / r - 1.0)).collect()
}

/// `x̂(ξ) = Σ_i exp(ξ x_i)`.
pub fn laplace_statistic(lambda: &Partition, xi: f64) -> f64 {
    scaled_rows(lambda).iter().map(|x| (xi * x).exp()).sum()
}
