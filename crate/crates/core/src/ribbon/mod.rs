//! Ribbon graphs with marked cells, the contraction of maps onto graphs with
//! vertices of valence at least 3, and the trivalent Laplace-domain sums.
//!
//! A ribbon graph is a pair of permutations on darts: `sigma` rotates darts
//! counterclockwise around their vertex and `alpha` swaps the two ends of an
//! edge. Cells are the orbits of `sigma∘alpha` (apply `alpha`, then `sigma`).

mod contract;
mod enumerate;
mod walks;

pub use contract::{contract_phi, exact_fiber_count, labeled_metric_sum, Contraction};
pub use enumerate::{
    enumerate_graphs, enumerate_trivalent, kontsevich_polynomial, kontsevich_polynomial_from_classes, kontsevich_sum,
    KontsevichPolynomial, MAX_GRAPH_DARTS, MAX_TRIVALENT_DARTS,
};
pub use walks::{edge_collapse_count, first_passage_ballot, first_passage_count};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::PolygonGluing;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RibbonGraph {
    sigma: Vec<u32>,
    alpha: Vec<u32>,
    /// 0-based cell mark of the cell each dart bounds.
    cell_marks: Vec<u32>,
}

/// Lengths of the boundary segment running along each dart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryMetric {
    pub lengths: Vec<u64>,
}

impl RibbonGraph {
    pub fn new(sigma: Vec<u32>, alpha: Vec<u32>, cell_marks: Vec<u32>) -> Result<Self> {
        let d = sigma.len();
        if alpha.len() != d || cell_marks.len() != d {
            return Err(Error::InvalidRibbonGraph("dart tables differ in length".into()));
        }
        let mut seen = vec![false; d];
        for &x in &sigma {
            if x as usize >= d || seen[x as usize] {
                return Err(Error::InvalidRibbonGraph("sigma is not a permutation".into()));
            }
            seen[x as usize] = true;
        }
        for (a, &b) in alpha.iter().enumerate() {
            if b as usize >= d || b as usize == a || alpha[b as usize] as usize != a {
                return Err(Error::InvalidRibbonGraph(
                    "alpha is not a fixed-point-free involution".into(),
                ));
            }
        }
        let g = RibbonGraph {
            sigma,
            alpha,
            cell_marks,
        };
        let faces = g.cells();
        let mut marks: Vec<u32> = Vec::new();
        for f in &faces {
            let m = g.cell_marks[f[0]];
            if f.iter().any(|&x| g.cell_marks[x] != m) {
                return Err(Error::InvalidRibbonGraph("cell marks not constant on a cell".into()));
            }
            marks.push(m);
        }
        marks.sort_unstable();
        if marks != (0..faces.len() as u32).collect::<Vec<_>>() {
            return Err(Error::InvalidRibbonGraph(
                "cell marks are not a bijection onto 1..=s".into(),
            ));
        }
        Ok(g)
    }

    /// The ribbon graph formed by the vertices and edges of a map: darts are
    /// the map's sides, `sigma = φ∘α`, and cells are the polygons.
    pub fn from_map(m: &PolygonGluing) -> RibbonGraph {
        let n = m.num_slots();
        RibbonGraph {
            sigma: (0..n).map(|a| m.rho(a) as u32).collect(),
            alpha: m.pairing().to_vec(),
            cell_marks: (0..n).map(|a| m.locate(a).0 as u32).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(sigma: Vec<u32>, alpha: Vec<u32>, cell_marks: Vec<u32>) -> Self {
        RibbonGraph {
            sigma,
            alpha,
            cell_marks,
        }
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn cell_marks(&self) -> &[u32] {
        &self.cell_marks
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    fn orbits(&self, next: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let d = self.num_darts();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = next(x);
            }
            out.push(orbit);
        }
        out
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.orbits(|x| self.sigma[x] as usize)
    }

    /// Cells as `sigma∘alpha` orbits.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        self.orbits(|x| self.sigma[self.alpha[x] as usize] as usize)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells().len()
    }

    pub fn valences(&self) -> Vec<usize> {
        self.vertices().iter().map(|v| v.len()).collect()
    }

    pub fn is_connected(&self) -> bool {
        let d = self.num_darts();
        if d == 0 {
            return true;
        }
        let mut seen = vec![false; d];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [self.sigma[x] as usize, self.alpha[x] as usize] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == d
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_cells() as i64
    }

    /// Genus of a connected graph.
    pub fn genus(&self) -> Option<usize> {
        let chi = self.euler_characteristic();
        (self.is_connected() && chi <= 2 && chi % 2 == 0).then(|| ((2 - chi) / 2) as usize)
    }

    /// Perimeter of each cell (indexed by mark) under a metric.
    pub fn perimeters(&self, metric: &BoundaryMetric) -> Vec<u64> {
        let mut p = vec![0; self.num_cells()];
        for (d, &l) in metric.lengths.iter().enumerate() {
            p[self.cell_marks[d] as usize] += l;
        }
        p
    }

    /// Canonical code under relabelings preserving cell marks, optionally
    /// decorated by per-dart weights, together with the automorphism count.
    pub fn canonical_form(&self, weights: Option<&[u64]>) -> (Vec<u64>, usize) {
        let d = self.num_darts();
        let mut best: Option<Vec<u64>> = None;
        let mut aut = 0;
        let mut label = vec![u32::MAX; d];
        let mut order: Vec<usize> = Vec::with_capacity(d);
        for start in 0..d {
            label.iter_mut().for_each(|x| *x = u32::MAX);
            order.clear();
            label[start] = 0;
            order.push(start);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in [self.sigma[x] as usize, self.alpha[x] as usize] {
                    if label[y] == u32::MAX {
                        label[y] = order.len() as u32;
                        order.push(y);
                        queue.push_back(y);
                    }
                }
            }
            if order.len() != d {
                // disconnected graphs get a code from their first component only
                continue;
            }
            let mut code = Vec::with_capacity(d * 4);
            for &x in &order {
                code.push(label[self.sigma[x] as usize] as u64);
                code.push(label[self.alpha[x] as usize] as u64);
                code.push(self.cell_marks[x] as u64);
                if let Some(w) = weights {
                    code.push(w[x]);
                }
            }
            match &best {
                None => {
                    best = Some(code);
                    aut = 1;
                }
                Some(b) => match code.cmp(b) {
                    std::cmp::Ordering::Less => {
                        best = Some(code);
                        aut = 1;
                    }
                    std::cmp::Ordering::Equal => aut += 1,
                    std::cmp::Ordering::Greater => {}
                },
            }
        }
        (best.unwrap_or_default(), aut)
    }

    /// Order of the automorphism group (cell marks fixed).
    pub fn automorphisms(&self) -> usize {
        self.canonical_form(None).1
    }

    /// Relabeled copy with darts in canonical order.
    pub fn canonical(&self) -> RibbonGraph {
        let (code, _) = self.canonical_form(None);
        let d = self.num_darts();
        RibbonGraph {
            sigma: (0..d).map(|i| code[3 * i] as u32).collect(),
            alpha: (0..d).map(|i| code[3 * i + 1] as u32).collect(),
            cell_marks: (0..d).map(|i| code[3 * i + 2] as u32).collect(),
        }
    }
}

/// `Σ_v (val(v) − 2) = 4g − 4 + 2s`, with every vertex at least trivalent.
pub fn valence_sum_check(g: &RibbonGraph) -> bool {
    let vals = g.valences();
    let Some(genus) = g.genus() else {
        return false;
    };
    if vals.iter().any(|&v| v < 3) {
        return false;
    }
    let lhs: i64 = vals.iter().map(|&v| v as i64 - 2).sum();
    lhs == 4 * genus as i64 - 4 + 2 * g.num_cells() as i64
}

/// Dimension `2|e| − s` of the metric polytope.
pub fn met_dimension(g: &RibbonGraph) -> Result<usize> {
    let e2 = 2 * g.num_edges();
    let s = g.num_cells();
    if s > e2 {
        return Err(Error::InvalidRibbonGraph(format!(
            "{s} cells exceed twice the {} edges",
            g.num_edges()
        )));
    }
    Ok(e2 - s)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two trivalent vertices joined by three edges, one cell.
    pub(crate) fn torus_theta() -> RibbonGraph {
        // vertex A = (0 1 2), vertex B = (3 4 5); edges 0-3, 1-4, 2-5
        RibbonGraph::new(vec![1, 2, 0, 4, 5, 3], vec![3, 4, 5, 0, 1, 2], vec![0; 6]).unwrap()
    }

    #[test]
    fn torus_theta_invariants() {
        let g = torus_theta();
        assert_eq!(g.num_cells(), 1);
        assert_eq!(g.genus(), Some(1));
        assert_eq!(g.automorphisms(), 6);
        assert!(valence_sum_check(&g));
        assert_eq!(met_dimension(&g).unwrap(), 5);
    }

    #[test]
    fn planar_theta_has_three_cells() {
        // same vertices, edges 0-3, 1-5, 2-4 reverse the cyclic order at B
        let sigma = vec![1, 2, 0, 4, 5, 3];
        let alpha = vec![3, 5, 4, 0, 2, 1];
        let probe = RibbonGraph::from_parts_unchecked(sigma.clone(), alpha.clone(), vec![0; 6]);
        let mut marks = vec![0u32; 6];
        for (i, c) in probe.cells().iter().enumerate() {
            for &x in c {
                marks[x] = i as u32;
            }
        }
        let g = RibbonGraph::new(sigma, alpha, marks).unwrap();
        assert_eq!(g.num_cells(), 3);
        assert_eq!(g.genus(), Some(0));
        assert!(valence_sum_check(&g));
        // every symmetry of the planar theta moves some cell
        assert_eq!(g.automorphisms(), 1);
    }

    #[test]
    fn valence_check_rejects_bivalent() {
        // a single loop at a 2-valent vertex: circle-like
        let g = RibbonGraph::new(vec![1, 0], vec![1, 0], vec![0, 1]).unwrap();
        assert!(!valence_sum_check(&g));
    }

    #[test]
    fn invalid_marks_rejected() {
        assert!(RibbonGraph::new(vec![1, 2, 0, 4, 5, 3], vec![3, 4, 5, 0, 1, 2], vec![0, 0, 1, 0, 0, 0]).is_err());
        assert!(RibbonGraph::new(vec![0, 1], vec![0, 1], vec![0, 0]).is_err());
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let g = torus_theta();
        // conjugate by a dart permutation
        let p = [4usize, 0, 5, 2, 1, 3];
        let mut inv = [0usize; 6];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        let sigma = (0..6).map(|i| p[g.sigma()[inv[i]] as usize] as u32).collect();
        let alpha = (0..6).map(|i| p[g.alpha()[inv[i]] as usize] as u32).collect();
        let h = RibbonGraph::new(sigma, alpha, vec![0; 6]).unwrap();
        assert_eq!(h.canonical_form(None), g.canonical_form(None));
        assert_eq!(h.canonical(), g.canonical());
    }

    #[test]
    fn map_ribbon_graph_cells_are_polygons() {
        use crate::maps::PolygonGluing;
        use crate::symgroup::ExponentVector;
        let m = PolygonGluing::new(ExponentVector::new(vec![6]).unwrap(), vec![3, 4, 5, 0, 1, 2]).unwrap();
        let g = RibbonGraph::from_map(&m);
        assert_eq!(g.num_cells(), 1);
        assert_eq!(g.genus(), Some(1));
        assert_eq!(g.valences(), vec![3, 3]);
        assert_eq!(g.canonical(), torus_theta().canonical());
    }
}
