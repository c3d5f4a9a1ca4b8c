use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::walks::edge_collapse_count;
use super::{BoundaryMetric, RibbonGraph};
use crate::error::{Error, Result};
use crate::maps::PolygonGluing;

/// Outcome of contracting a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contraction {
    Graph(RibbonGraph, BoundaryMetric),
    /// Everything collapses (planar, one cell).
    Point,
    /// A single closed edge remains (planar, two cells).
    Circle,
}

/// Contracts all vertices of valence at most 2 of the map's ribbon graph.
///
/// Every side starts with boundary length 1. A univalent vertex with dart `d`
/// on the edge `{d, d'}` is removed and `ℓ(d) + ℓ(d')` is added to the
/// segment that follows the edge along the cell boundary, namely `σ(d')`.
/// A 2-valent vertex with darts `a, b` is dissolved by joining the far ends
/// `α(a)`, `α(b)` into one edge whose sides absorb `ℓ(b)` and `ℓ(a)`.
pub fn contract_phi(m: &PolygonGluing) -> Result<Contraction> {
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    let g = RibbonGraph::from_map(m);
    let n = g.num_darts();
    let mut sigma: Vec<usize> = g.sigma().iter().map(|&x| x as usize).collect();
    let mut sigma_inv = vec![0usize; n];
    for (i, &x) in sigma.iter().enumerate() {
        sigma_inv[x] = i;
    }
    let mut alpha: Vec<usize> = g.alpha().iter().map(|&x| x as usize).collect();
    let mut len = vec![1u64; n];
    let mut alive = vec![true; n];

    let mut stack: Vec<usize> = (0..n).filter(|&d| sigma[d] == d).collect();
    while let Some(d) = stack.pop() {
        if !alive[d] || sigma[d] != d {
            continue;
        }
        let d2 = alpha[d];
        if sigma[d2] == d2 {
            // a lone edge: the whole (connected) map was a tree
            return Ok(Contraction::Point);
        }
        let next = sigma[d2];
        len[next] += len[d] + len[d2];
        let prev = sigma_inv[d2];
        sigma[prev] = next;
        sigma_inv[next] = prev;
        alive[d] = false;
        alive[d2] = false;
        if sigma[next] == next {
            stack.push(next);
        }
    }

    for a in 0..n {
        if !alive[a] {
            continue;
        }
        let b = sigma[a];
        if b == a || sigma[b] != a {
            continue;
        }
        let (a2, b2) = (alpha[a], alpha[b]);
        if a2 == b {
            return Ok(Contraction::Circle);
        }
        len[a2] += len[b];
        len[b2] += len[a];
        alpha[a2] = b2;
        alpha[b2] = a2;
        alive[a] = false;
        alive[b] = false;
    }

    let keep: Vec<usize> = (0..n).filter(|&d| alive[d]).collect();
    let mut index = vec![u32::MAX; n];
    for (i, &d) in keep.iter().enumerate() {
        index[d] = i as u32;
    }
    let graph = RibbonGraph::new(
        keep.iter().map(|&d| index[sigma[d]]).collect(),
        keep.iter().map(|&d| index[alpha[d]]).collect(),
        keep.iter().map(|&d| g.cell_marks()[d]).collect(),
    )?;
    let metric = BoundaryMetric {
        lengths: keep.iter().map(|&d| len[d]).collect(),
    };
    Ok(Contraction::Graph(graph, metric))
}

/// Number of maps contracting onto `(Γ, ℓ)`:
/// `Π k_i · Π_e c(ℓ_{1,e}, ℓ_{2,e}) / |Aut(Γ, ℓ)|`.
pub fn exact_fiber_count(g: &RibbonGraph, metric: &BoundaryMetric) -> BigUint {
    let (_, aut) = g.canonical_form(Some(&metric.lengths));
    let marks: BigUint = g.perimeters(metric).iter().fold(BigUint::one(), |acc, &p| acc * p);
    let trees = labeled_tree_count(g, &metric.lengths);
    let total = marks * trees;
    assert!((&total % aut).is_zero(), "fiber count not divisible by |Aut|");
    total / aut
}

/// `Π_e c(ℓ_{1,e}, ℓ_{2,e})`.
pub(crate) fn labeled_tree_count(g: &RibbonGraph, lengths: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    for (d, &e) in g.alpha().iter().enumerate() {
        if d < e as usize {
            acc *= edge_collapse_count(lengths[d], lengths[e as usize]);
        }
    }
    acc
}

/// `Σ_ℓ Π_e c(ℓ_{1,e}, ℓ_{2,e})` over dart-labeled metrics with the given
/// cell perimeters.
pub fn labeled_metric_sum(g: &RibbonGraph, perimeters: &[u64]) -> BigUint {
    let cells = g.cells();
    let mut order_cells: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for c in cells {
        let mark = g.cell_marks()[c[0]] as usize;
        order_cells[mark] = c;
    }
    let mut lengths = vec![0u64; g.num_darts()];
    let mut total = BigUint::zero();
    fn rec(
        g: &RibbonGraph,
        cells: &[Vec<usize>],
        perimeters: &[u64],
        ci: usize,
        pos: usize,
        remaining: u64,
        lengths: &mut [u64],
        total: &mut BigUint,
    ) {
        if ci == cells.len() {
            *total += labeled_tree_count(g, lengths);
            return;
        }
        let cell = &cells[ci];
        let last = pos + 1 == cell.len();
        let left_after = (cell.len() - pos - 1) as u64;
        if last {
            lengths[cell[pos]] = remaining;
            let next_rem = perimeters.get(ci + 1).copied().unwrap_or(0);
            rec(g, cells, perimeters, ci + 1, 0, next_rem, lengths, total);
            return;
        }
        for l in 1..=remaining.saturating_sub(left_after) {
            lengths[cell[pos]] = l;
            rec(g, cells, perimeters, ci, pos + 1, remaining - l, lengths, total);
        }
    }
    if order_cells.iter().zip(perimeters).any(|(c, &p)| (c.len() as u64) > p) {
        return total;
    }
    rec(
        g,
        &order_cells,
        perimeters,
        0,
        0,
        perimeters[0],
        &mut lengths,
        &mut total,
    );
    total
}
