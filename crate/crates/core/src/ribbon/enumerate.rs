use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::RibbonGraph;
use crate::error::{Error, Result};
use crate::partitions::factorial;

/// Largest dart count for which the trivalent Laplace-domain sum is computed
/// by orbit counting over matchings ((D−1)!! of them).
pub const MAX_TRIVALENT_DARTS: usize = 18;

/// Largest dart count for which isomorphism classes are listed explicitly.
pub const MAX_GRAPH_DARTS: usize = 12;

/// Parallel fold over all fixed-point-free involutions of `0..d`.
fn fold_matchings<T, I, F, M>(d: usize, init: I, f: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[u32]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    fn rec<T>(alpha: &mut [u32], acc: &mut T, f: &(impl Fn(&mut T, &[u32]) + ?Sized)) {
        let Some(a) = alpha.iter().position(|&x| x == u32::MAX) else {
            f(acc, alpha);
            return;
        };
        for b in a + 1..alpha.len() {
            if alpha[b] == u32::MAX {
                alpha[a] = b as u32;
                alpha[b] = a as u32;
                rec(alpha, acc, f);
                alpha[a] = u32::MAX;
                alpha[b] = u32::MAX;
            }
        }
    }
    if d == 0 {
        let mut acc = init();
        f(&mut acc, &[]);
        return acc;
    }
    if d % 2 == 1 {
        return init();
    }
    (1..d)
        .into_par_iter()
        .map(|b| {
            let mut alpha = vec![u32::MAX; d];
            alpha[0] = b as u32;
            alpha[b] = 0;
            let mut acc = init();
            rec(&mut alpha, &mut acc, &f);
            acc
        })
        .reduce(&init, &merge)
}

/// Rotation with consecutive cycles of the given lengths.
fn standard_sigma(valences: &[usize]) -> Vec<u32> {
    let mut sigma = Vec::new();
    let mut base = 0u32;
    for &v in valences {
        for j in 0..v as u32 {
            sigma.push(base + (j + 1) % v as u32);
        }
        base += v as u32;
    }
    sigma
}

/// Cell index of each dart, or `None` unless the graph is connected with
/// exactly `s` cells.
fn cell_index(sigma: &[u32], alpha: &[u32], s: usize) -> Option<Vec<u8>> {
    let d = sigma.len();
    let mut cell = vec![u8::MAX; d];
    let mut count = 0usize;
    for start in 0..d {
        if cell[start] != u8::MAX {
            continue;
        }
        if count == s {
            return None;
        }
        let mut x = start;
        while cell[x] == u8::MAX {
            cell[x] = count as u8;
            x = sigma[alpha[x] as usize] as usize;
        }
        count += 1;
    }
    if count != s {
        return None;
    }
    // connectivity
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for y in [sigma[x] as usize, alpha[x] as usize] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    (reached == d).then_some(cell)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Non-increasing partitions of `total` into `parts` parts, each at least `min`.
fn valence_partitions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (min..=max.min(total)).rev() {
            if total - v < min * (parts - 1) {
                continue;
            }
            cur.push(v);
            rec(total - v, parts - 1, min, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, min, total, &mut Vec::new(), &mut out);
    out
}

/// `2g − 2 + s`, or `None` when negative.
fn excess(g: usize, s: usize) -> Option<usize> {
    (2 * g + s).checked_sub(2)
}

fn classes_for_sigma(sigma: &[u32], s: usize) -> HashMap<Vec<u64>, (RibbonGraph, usize)> {
    let labelings = permutations(s);
    fold_matchings(
        sigma.len(),
        HashMap::new,
        |acc: &mut HashMap<Vec<u64>, (RibbonGraph, usize)>, alpha| {
            let Some(cell) = cell_index(sigma, alpha, s) else {
                return;
            };
            for lab in &labelings {
                let marks = cell.iter().map(|&c| lab[c as usize] as u32).collect();
                let g = RibbonGraph::from_parts_unchecked(sigma.to_vec(), alpha.to_vec(), marks);
                let (code, aut) = g.canonical_form(None);
                acc.entry(code).or_insert_with(|| (g.canonical(), aut));
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

/// Isomorphism classes of connected ribbon graphs of genus `g` with `s`
/// marked cells and all valences at least 3, with `|Aut|`.
pub fn enumerate_graphs(g: usize, s: usize) -> Result<Vec<(RibbonGraph, usize)>> {
    let Some(x) = excess(g, s) else {
        return Ok(Vec::new());
    };
    if s == 0 {
        return Err(Error::InvalidArgument("at least one cell is required".into()));
    }
    let max_darts = 6 * x;
    if max_darts > MAX_GRAPH_DARTS {
        return Err(Error::SizeCap(format!(
            "(g,s)=({g},{s}) needs up to {max_darts} darts, cap is {MAX_GRAPH_DARTS}"
        )));
    }
    let mut all: BTreeMap<Vec<u64>, (RibbonGraph, usize)> = BTreeMap::new();
    // V − E = −x and Σ val = 2E ≥ 3V
    for v in 1..=2 * x {
        let e = v + x;
        for vals in valence_partitions(2 * e, v, 3) {
            all.extend(classes_for_sigma(&standard_sigma(&vals), s));
        }
    }
    Ok(all.into_values().collect())
}

/// The trivalent classes only.
pub fn enumerate_trivalent(g: usize, s: usize) -> Result<Vec<(RibbonGraph, usize)>> {
    Ok(enumerate_graphs(g, s)?
        .into_iter()
        .filter(|(gr, _)| gr.valences().iter().all(|&v| v == 3))
        .collect())
}

/// `Σ_{Γ ∈ Γ³_{g,s}} (1/|Aut Γ|) Π_e x_{c1(e)} x_{c2(e)}`-style bookkeeping:
/// each term maps the sorted list of cell pairs on the edges to its total
/// weight `Σ 1/|Aut|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KontsevichPolynomial {
    pub g: usize,
    pub s: usize,
    pub terms: BTreeMap<Vec<(u32, u32)>, BigRational>,
}

impl KontsevichPolynomial {
    /// `Σ_Γ 1/|Aut Γ|`.
    pub fn total_weight(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, b| a + b)
    }

    /// `2·Σ_Γ (1/|Aut Γ|) Π_e 2^{−1/2}/(√z_{c1(e)} + √z_{c2(e)})`.
    pub fn evaluate(&self, z: &[f64]) -> Result<f64> {
        if z.len() != self.s {
            return Err(Error::InvalidArgument(format!(
                "expected {} Laplace variables, got {}",
                self.s,
                z.len()
            )));
        }
        if let Some(&bad) = z.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "Laplace variable {bad} must be positive"
            )));
        }
        let r: Vec<f64> = z.iter().map(|x| x.sqrt()).collect();
        let mut total = 0.0;
        for (edges, w) in &self.terms {
            let mono: f64 = edges
                .iter()
                .map(|&(a, b)| std::f64::consts::FRAC_1_SQRT_2 / (r[a as usize] + r[b as usize]))
                .product();
            total += w.to_f64().unwrap_or(f64::NAN) * mono;
        }
        Ok(2.0 * total)
    }
}

fn edge_key(alpha: &[u32], marks: &[u32]) -> Vec<(u32, u32)> {
    let mut key: Vec<(u32, u32)> = alpha
        .iter()
        .enumerate()
        .filter(|&(d, &e)| d < e as usize)
        .map(|(d, &e)| {
            let (a, b) = (marks[d], marks[e as usize]);
            (a.min(b), a.max(b))
        })
        .collect();
    key.sort_unstable();
    key
}

/// Builds the polynomial by orbit counting: with the rotation fixed to a
/// standard product of 3-cycles, every marked class Γ arises from exactly
/// `3^V V!/|Aut Γ|` pairs (matching, cell labeling).
pub fn kontsevich_polynomial(g: usize, s: usize) -> Result<KontsevichPolynomial> {
    let mut poly = KontsevichPolynomial {
        g,
        s,
        terms: BTreeMap::new(),
    };
    let Some(x) = excess(g, s) else {
        return Ok(poly);
    };
    if s == 0 {
        return Err(Error::InvalidArgument("at least one cell is required".into()));
    }
    let v = 2 * x;
    let d = 3 * v;
    if d > MAX_TRIVALENT_DARTS {
        return Err(Error::SizeCap(format!(
            "trivalent (g,s)=({g},{s}) has {d} darts, cap is {MAX_TRIVALENT_DARTS}"
        )));
    }
    if v == 0 {
        return Ok(poly);
    }
    let sigma = standard_sigma(&vec![3; v]);
    let labelings = permutations(s);
    let counts = fold_matchings(
        d,
        HashMap::new,
        |acc: &mut HashMap<Vec<(u32, u32)>, u64>, alpha| {
            let Some(cell) = cell_index(&sigma, alpha, s) else {
                return;
            };
            for lab in &labelings {
                let marks: Vec<u32> = cell.iter().map(|&c| lab[c as usize] as u32).collect();
                *acc.entry(edge_key(alpha, &marks)).or_insert(0) += 1;
            }
        },
        |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        },
    );
    let centralizer = BigInt::from(BigUint::from(3u32).pow(v as u32) * factorial(v));
    for (key, c) in counts {
        poly.terms
            .insert(key, BigRational::new(BigInt::from(c), centralizer.clone()));
    }
    Ok(poly)
}

/// The trivalent Laplace-domain sum at `z`.
pub fn kontsevich_sum(g: usize, s: usize, z: &[f64]) -> Result<f64> {
    kontsevich_polynomial(g, s)?.evaluate(z)
}

/// The same polynomial assembled from an explicit class list.
pub fn kontsevich_polynomial_from_classes(
    g: usize,
    s: usize,
    classes: &[(RibbonGraph, usize)],
) -> KontsevichPolynomial {
    let mut terms: BTreeMap<Vec<(u32, u32)>, BigRational> = BTreeMap::new();
    for (gr, aut) in classes {
        let w = BigRational::new(1.into(), BigInt::from(*aut));
        *terms
            .entry(edge_key(gr.alpha(), gr.cell_marks()))
            .or_insert_with(BigRational::zero) += w;
    }
    KontsevichPolynomial { g, s, terms }
}
