//! GUE draws and scaled edge samples.
//!
//! `H` is Hermitian with `h_ij = u_ij + i·v_ij` above the diagonal, `u, v`
//! independent with variance 1/2, and a real diagonal with variance 1, so that
//! `E tr H² = n²`.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{sample_rsk_with, scaled_rows};
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeSource {
    Plancherel,
    Gue,
}

/// Which eigenvalue model to draw GUE spectra from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GueModel {
    /// The full Hermitian matrix.
    Dense,
    /// The β = 2 tridiagonal model: same eigenvalue law, `O(n²)` per draw.
    Tridiagonal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeSample {
    pub source: EdgeSource,
    pub n: usize,
    /// Scaled points, decreasing.
    pub points: Vec<f64>,
    pub seed: u64,
}

impl EdgeSample {
    fn new(source: EdgeSource, n: usize, mut points: Vec<f64>, seed: u64) -> Self {
        points.sort_by(|a, b| b.total_cmp(a));
        EdgeSample {
            source,
            n,
            points,
            seed,
        }
    }

    /// `Σ_i exp(ξ·p_i)`.
    pub fn laplace(&self, xi: f64) -> f64 {
        self.points.iter().map(|p| (xi * p).exp()).sum()
    }
}

pub fn gue_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex<f64>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = DMatrix::from_element(n, n, Complex::new(0.0, 0.0));
    for i in 0..n {
        let d: f64 = StandardNormal.sample(rng);
        m[(i, i)] = Complex::new(d, 0.0);
        for j in i + 1..n {
            let u: f64 = StandardNormal.sample(rng);
            let v: f64 = StandardNormal.sample(rng);
            let z = Complex::new(h * u, h * v);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// `|Σλ − tr H|` and `|Σλ² − Σ|h_ij|²|` relative to `Σ|h_ij|²`.
fn check_trace(eigs: &[f64], trace: f64, frob2: f64) -> Result<()> {
    let s1: f64 = eigs.iter().sum();
    let s2: f64 = eigs.iter().map(|x| x * x).sum();
    let scale = frob2.max(f64::MIN_POSITIVE);
    let n = eigs.len() as f64;
    if (s1 - trace).abs() > 1e-8 * (scale * n).sqrt() || (s2 - frob2).abs() > 1e-8 * scale {
        return Err(Error::EigenNoConvergence);
    }
    Ok(())
}

/// Eigenvalues of a dense draw, unscaled and unordered.
pub fn gue_eigenvalues_dense<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    let m = gue_matrix(n, rng);
    let trace: f64 = (0..n).map(|i| m[(i, i)].re).sum();
    let frob2: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let eigs = m
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or(Error::EigenNoConvergence)?
        .eigenvalues;
    let eigs: Vec<f64> = eigs.iter().copied().collect();
    check_trace(&eigs, trace, frob2)?;
    Ok(eigs)
}

/// Diagonal `N(0,1)`, off-diagonal `χ_{2k}/√2` for `k = n−1, …, 1`: the
/// Householder reduction of the dense model.
pub fn gue_eigenvalues_tridiagonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    let mut d: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let mut e = vec![0.0; n];
    for (i, slot) in e.iter_mut().enumerate().take(n.saturating_sub(1)) {
        let k = (n - 1 - i) as f64;
        let c: f64 = ChiSquared::new(2.0 * k).expect("positive dof").sample(rng);
        *slot = (c / 2.0).sqrt();
    }
    let trace: f64 = d.iter().sum();
    let frob2: f64 = d.iter().map(|x| x * x).sum::<f64>() + 2.0 * e.iter().map(|x| x * x).sum::<f64>();
    tridiagonal_eigenvalues(&mut d, &mut e)?;
    check_trace(&d, trace, frob2)?;
    Ok(d)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix; `e[i]` couples `i` and
/// `i+1`. Eigenvalues overwrite `d`.
pub fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if e.len() != n {
        return Err(Error::InvalidArgument(
            "off-diagonal must have the diagonal's length".into(),
        ));
    }
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenNoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

pub fn gue_eigenvalues<R: Rng + ?Sized>(n: usize, model: GueModel, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    match model {
        GueModel::Dense => gue_eigenvalues_dense(n, rng),
        GueModel::Tridiagonal => gue_eigenvalues_tridiagonal(n, rng),
    }
}

/// `y_i = n^{2/3}(E_i/(2√n) − 1)`.
pub fn scale_gue(eigs: &[f64], n: usize) -> Vec<f64> {
    let nf = n as f64;
    let c = nf.powf(2.0 / 3.0);
    let r = 2.0 * nf.sqrt();
    eigs.iter().map(|e| c * (e / r - 1.0)).collect()
}

/// One dense GUE draw, scaled at the upper edge.
pub fn sample_gue(n: usize, seed: u64) -> Result<EdgeSample> {
    sample_gue_with(n, GueModel::Dense, seed, &mut rng::stream(seed, 0))
}

pub fn sample_gue_with<R: Rng + ?Sized>(n: usize, model: GueModel, seed: u64, rng: &mut R) -> Result<EdgeSample> {
    let eigs = gue_eigenvalues(n, model, rng)?;
    Ok(EdgeSample::new(EdgeSource::Gue, n, scale_gue(&eigs, n), seed))
}

/// One Plancherel draw, rows scaled as `x_i = n^{1/3}(λ_i/(2√n) − 1)`.
pub fn sample_plancherel_edge(n: usize, seed: u64) -> EdgeSample {
    sample_plancherel_edge_with(n, seed, &mut rng::stream(seed, 0))
}

pub fn sample_plancherel_edge_with<R: Rng + ?Sized>(n: usize, seed: u64, rng: &mut R) -> EdgeSample {
    let lambda = sample_rsk_with(n, rng);
    EdgeSample::new(EdgeSource::Plancherel, n, scaled_rows(&lambda), seed)
}
