//! Plancherel-vs-GUE comparison of mixed moments of `x̂(ξ)` and `ŷ(ξ)`.

use serde::Serialize;

use super::density::{rho_laplace, rho_laplace2};
use super::gue::{sample_gue_with, sample_plancherel_edge_with, GueModel};
use super::quad::QuadratureSpec;
use crate::error::{Error, Result};
use crate::rng::{mean_and_stderr, replicate};

/// All set partitions of `0..s`, blocks in order of their least element.
pub fn set_partitions(s: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, s: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == s {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, s, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, s, blocks, out);
        blocks.pop();
    }
    rec(0, s, &mut blocks, &mut out);
    out
}

/// `H(ξ) = Σ_{α ∈ Π_s} R(ξ_α)`.
pub fn h_assembly<F>(xi: &[f64], r: &F) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut total = 0.0;
    for alpha in set_partitions(xi.len()) {
        let sums: Vec<f64> = alpha.iter().map(|b| b.iter().map(|&i| xi[i]).sum()).collect();
        total += r(&sums)?;
    }
    Ok(total)
}

/// `G(ξ) = Σ_{S ⊆ {1..s}} H(ξ_S)·H(ξ_{S^c})` with `H() = 1`.
pub fn g_assembly<F>(xi: &[f64], h: &F) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let s = xi.len();
    let eval = |v: &[f64]| if v.is_empty() { Ok(1.0) } else { h(v) };
    let mut total = 0.0;
    for mask in 0u32..(1 << s) {
        let (inside, outside): (Vec<f64>, Vec<f64>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &x) in xi.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(x);
                } else {
                    b.push(x);
                }
            }
            (a, b)
        };
        total += eval(&inside)? * eval(&outside)?;
    }
    Ok(total)
}

/// The Airy-process transform `R` for one or two arguments.
pub fn r_quadrature(xi: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    match xi {
        [a] => Ok(rho_laplace(*a, spec)?.value),
        [a, b] => Ok(rho_laplace2(*a, *b, spec)?.value),
        _ => Err(Error::InvalidArgument(format!(
            "R is implemented for 1 or 2 arguments, got {}",
            xi.len()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeMomentConfig {
    pub n_plancherel: usize,
    pub n_gue: usize,
    pub reps: usize,
    pub xi: Vec<f64>,
    /// Number of factors in each moment, 1 or 2.
    pub s: usize,
    pub seed: u64,
    pub gue_model: GueModel,
    /// Skip the quadrature references.
    pub skip_reference: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeMomentRow {
    pub xi: Vec<f64>,
    pub plancherel_mean: f64,
    pub plancherel_stderr: f64,
    pub gue_mean: f64,
    pub gue_stderr: f64,
    /// `H(ξ)`: the limit of both expectations.
    pub reference: Option<f64>,
    /// `G(ξ)`, which also counts the lower spectral edge.
    pub g_assembly: Option<f64>,
}

impl EdgeMomentRow {
    /// `|plancherel − gue| / √(se₁² + se₂²)`.
    pub fn z_score(&self) -> f64 {
        (self.plancherel_mean - self.gue_mean).abs() / self.plancherel_stderr.hypot(self.gue_stderr)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeMomentReport {
    pub config: EdgeMomentConfig,
    pub rows: Vec<EdgeMomentRow>,
}

/// ξ-vectors: each `ξ` for `s = 1`, each pair `ξ_i ≤ ξ_j` of the list for `s = 2`.
fn xi_vectors(xi: &[f64], s: usize) -> Vec<Vec<f64>> {
    match s {
        1 => xi.iter().map(|&x| vec![x]).collect(),
        _ => {
            let mut out = Vec::new();
            for i in 0..xi.len() {
                for j in i..xi.len() {
                    out.push(vec![xi[i], xi[j]]);
                }
            }
            out
        }
    }
}

fn moments(points: &[f64], vectors: &[Vec<f64>]) -> Vec<f64> {
    vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|&xi| points.iter().map(|p| (xi * p).exp()).sum::<f64>())
                .product()
        })
        .collect()
}

pub fn edge_moment_experiment(config: &EdgeMomentConfig) -> Result<EdgeMomentReport> {
    if !(1..=2).contains(&config.s) {
        return Err(Error::InvalidArgument(format!("s must be 1 or 2, got {}", config.s)));
    }
    if config.xi.is_empty() || config.xi.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::InvalidArgument("ξ values must be positive".into()));
    }
    if config.reps < 2 || config.n_plancherel == 0 || config.n_gue == 0 {
        return Err(Error::InvalidArgument("need n ≥ 1 and at least 2 replicates".into()));
    }
    let vectors = xi_vectors(&config.xi, config.s);
    let pl = replicate(config.seed, config.reps, |rng, _| {
        let e = sample_plancherel_edge_with(config.n_plancherel, config.seed, rng);
        moments(&e.points, &vectors)
    });
    // GUE replicates use streams disjoint from the Plancherel ones
    let gue_seed = config.seed ^ 0x9e37_79b9_7f4a_7c15;
    let gu: Vec<Vec<f64>> = replicate(gue_seed, config.reps, |rng, _| {
        sample_gue_with(config.n_gue, config.gue_model, config.seed, rng).map(|e| moments(&e.points, &vectors))
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let spec = QuadratureSpec::with_tol(1e-8, 1e-12);
    let r = |v: &[f64]| r_quadrature(v, &spec);
    let h = |v: &[f64]| h_assembly(v, &r);
    let mut rows = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        let (pm, ps) = mean_and_stderr(&pl.iter().map(|m| m[k]).collect::<Vec<_>>());
        let (gm, gs) = mean_and_stderr(&gu.iter().map(|m| m[k]).collect::<Vec<_>>());
        let (reference, g) = if config.skip_reference {
            (None, None)
        } else {
            (h(v).ok(), g_assembly(v, &h).ok())
        };
        rows.push(EdgeMomentRow {
            xi: v.clone(),
            plancherel_mean: pm,
            plancherel_stderr: ps,
            gue_mean: gm,
            gue_stderr: gs,
            reference,
            g_assembly: g,
        });
    }
    Ok(EdgeMomentReport {
        config: config.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::gue_trace_moment_exact;
    use crate::partitions::to_f64;
    use crate::spectral::gue::gue_eigenvalues;
    use crate::symgroup::ExponentVector;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|s| set_partitions(s).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn h_of_one_argument_is_r() {
        let r = |v: &[f64]| Ok(v.iter().map(|x| x * x).sum::<f64>() + 1.0);
        assert_eq!(h_assembly(&[3.0], &r).unwrap(), 10.0);
    }

    #[test]
    fn g_two_argument_example() {
        // arbitrary R; check G(a,b) = 2H(a,b) + 2H(a)H(b)
        let r = |v: &[f64]| {
            Ok(v.iter()
                .enumerate()
                .map(|(i, x)| (i as f64 + 1.0) * x.sqrt())
                .product::<f64>()
                + 0.3)
        };
        let h = |v: &[f64]| h_assembly(v, &r);
        let (a, b) = (0.7, 1.9);
        let g = g_assembly(&[a, b], &h).unwrap();
        let want = 2.0 * h(&[a, b]).unwrap() + 2.0 * h(&[a]).unwrap() * h(&[b]).unwrap();
        assert!((g - want).abs() < 1e-12);
        // and the explicit three-argument H
        let hh = h(&[a, b, 1.1]).unwrap();
        let explicit = r(&[a, b, 1.1]).unwrap()
            + r(&[a + b, 1.1]).unwrap()
            + r(&[a, b + 1.1]).unwrap()
            + r(&[a + 1.1, b]).unwrap()
            + r(&[a + b + 1.1]).unwrap();
        assert!((hh - explicit).abs() < 1e-12);
    }

    #[test]
    fn moment_decomposition_at_n50() {
        // E[(Σu²)²] = E[Σ_{i≠j} u_i²u_j²] + E[Σ u_i⁴], u = E/(2√n)
        let n = 50;
        let reps = 4000;
        let rows = replicate(17, reps, |rng, _| {
            let e = gue_eigenvalues(n, GueModel::Tridiagonal, rng).unwrap();
            let u2: Vec<f64> = e.iter().map(|x| (x / (2.0 * (n as f64).sqrt())).powi(2)).collect();
            let s2: f64 = u2.iter().sum();
            let s4: f64 = u2.iter().map(|x| x * x).sum();
            (s2 * s2 - s4, s4)
        });
        let two: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let one: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let (m2, se2) = mean_and_stderr(&two);
        let (m1, se1) = mean_and_stderr(&one);
        let exact22 = to_f64(&gue_trace_moment_exact(n as u64, &ExponentVector::new(vec![2, 2]).unwrap()).unwrap());
        let exact4 = to_f64(&gue_trace_moment_exact(n as u64, &ExponentVector::single(4).unwrap()).unwrap());
        assert!((m1 - exact4).abs() < 3.0 * se1, "{m1} ± {se1} vs {exact4}");
        assert!(
            (m2 + m1 - exact22).abs() < 3.0 * se1.hypot(se2),
            "{} vs {exact22}",
            m2 + m1
        );
    }

    #[test]
    fn small_experiment_runs() {
        let cfg = EdgeMomentConfig {
            n_plancherel: 400,
            n_gue: 40,
            reps: 20,
            xi: vec![1.0, 2.0],
            s: 2,
            seed: 3,
            gue_model: GueModel::Tridiagonal,
            skip_reference: true,
        };
        let rep = edge_moment_experiment(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 3);
        assert!(rep.rows.iter().all(|r| r.plancherel_mean > 0.0 && r.gue_mean > 0.0));
        assert_eq!(edge_moment_experiment(&cfg).unwrap(), rep);
        assert!(edge_moment_experiment(&EdgeMomentConfig { s: 3, ..cfg.clone() }).is_err());
        assert!(edge_moment_experiment(&EdgeMomentConfig { xi: vec![-1.0], ..cfg }).is_err());
    }
}
