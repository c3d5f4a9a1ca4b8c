use serde::Serialize;

use super::CoveringSolution;
use crate::error::{Error, ImageViolation, Result};
use crate::maps::PolygonGluing;
use crate::symgroup::ExponentVector;

/// Collapses every nonspecial sheet onto a map.
///
/// Each letter of block `r` becomes boundary of polygon `r`, in word order.
/// A letter on a 2-valent sheet is one side, glued to the sheet's other
/// letter. A letter on a sheet of valence `m ≥ 3` becomes two sides `F, S'`
/// meeting at the collapsed sheet; with the sheet's letters `p_1 < … < p_m`,
/// side `F(p_j)` is glued to `S'(p_{j+1})` cyclically.
pub fn collapse_psi(c: &CoveringSolution) -> Result<PolygonGluing> {
    if !c.is_connected() {
        return Err(Error::Disconnected);
    }
    let s = c.s();
    let val = c.valences();
    let tau = c.tau();
    let blocks = c.k().blocks();
    let mut first_side = Vec::with_capacity(tau.len());
    let mut perims = vec![0u32; s];
    let mut next = 0usize;
    for (p, &t) in tau.iter().enumerate() {
        first_side.push(next);
        let w = if val[t - s - 1] == 2 { 1 } else { 2 };
        next += w;
        perims[blocks[p]] += w as u32;
    }
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); val.len()];
    for (p, &t) in tau.iter().enumerate() {
        occurrences[t - s - 1].push(p);
    }
    let mut pairing = vec![0u32; next];
    for occ in &occurrences {
        if occ.len() == 2 {
            let (a, b) = (first_side[occ[0]], first_side[occ[1]]);
            pairing[a] = b as u32;
            pairing[b] = a as u32;
        } else {
            let m = occ.len();
            for j in 0..m {
                let f = first_side[occ[j]];
                let sc = first_side[occ[(j + 1) % m]] + 1;
                pairing[f] = sc as u32;
                pairing[sc] = f as u32;
            }
        }
    }
    PolygonGluing::new(ExponentVector::new(perims)?, pairing)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexTag {
    Left,
    Right,
    Neither,
}

/// Per-vertex tags, indexed like [`PolygonGluing::vertices`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub tags: Vec<VertexTag>,
    /// All corners at the vertex belong to one polygon.
    pub interior: Vec<bool>,
    pub mouth: Vec<bool>,
    pub vertex_of_slot: Vec<usize>,
    pub valence: Vec<usize>,
}

impl VertexClassification {
    /// Vertex at the marked corner of polygon `r`.
    pub fn marked_vertex(&self, m: &PolygonGluing, r: usize) -> usize {
        self.vertex_of_slot[m.slot(r, 0)]
    }
}

/// Tags each vertex by the order in which its corners are visited.
///
/// Corners are ordered by slot index (polygon by polygon, counterclockwise
/// inside each polygon). A vertex is right if going once around it
/// counterclockwise visits its corners in that cyclic order, left if it
/// visits them in the reverse cyclic order; vertices of valence at most 2
/// are right.
pub fn classify_vertices(m: &PolygonGluing) -> VertexClassification {
    let verts = m.vertices();
    let vertex_of_slot = m.vertex_of_slot();
    let mut tags = Vec::with_capacity(verts.len());
    let mut interior = Vec::with_capacity(verts.len());
    for orbit in &verts {
        let mut sorted = orbit.clone();
        sorted.sort_unstable();
        let v = sorted.len();
        let tag = if v <= 2 || (0..v).all(|i| m.rho(sorted[i]) == sorted[(i + 1) % v]) {
            VertexTag::Right
        } else if (0..v).all(|i| m.rho_inv(sorted[i]) == sorted[(i + 1) % v]) {
            VertexTag::Left
        } else {
            VertexTag::Neither
        };
        tags.push(tag);
        let r0 = m.locate(orbit[0]).0;
        interior.push(orbit.iter().all(|&x| m.locate(x).0 == r0));
    }
    let mut mouth = vec![false; verts.len()];
    if m.num_polygons() > 1 {
        for (r, &kr) in m.k().as_slice().iter().enumerate() {
            if !interior[vertex_of_slot[m.slot(r, 0)]] {
                continue;
            }
            if let Some(j) = (1..kr as usize).find(|&j| !interior[vertex_of_slot[m.slot(r, j)]]) {
                mouth[vertex_of_slot[m.slot(r, j)]] = true;
            }
        }
    }
    VertexClassification {
        tags,
        interior,
        mouth,
        vertex_of_slot,
        valence: verts.iter().map(|o| o.len()).collect(),
    }
}

fn first_violation(m: &PolygonGluing, cls: &VertexClassification) -> Option<ImageViolation> {
    if let Some(v) = cls.tags.iter().position(|&t| t == VertexTag::Neither) {
        return Some(ImageViolation::VertexNeitherLeftNorRight { vertex: v });
    }
    for r in 0..m.num_polygons() {
        let v = cls.marked_vertex(m, r);
        if !(cls.interior[v] && cls.tags[v] == VertexTag::Right) {
            return Some(ImageViolation::MarkedVertexNotInteriorRight { polygon: r });
        }
    }
    // left vertices at distance ≥ 2: no edge (loops included) joins two of them
    for a in 0..m.num_slots() {
        let u = cls.vertex_of_slot[a];
        let w = cls.vertex_of_slot[m.phi(a)];
        if cls.tags[u] == VertexTag::Left && cls.tags[w] == VertexTag::Left {
            return Some(ImageViolation::AdjacentLeftVertices {
                a: u.min(w),
                b: u.max(w),
            });
        }
    }
    None
}

/// The image conditions: every vertex is left or right, every marked vertex
/// is an interior right vertex, and left vertices are pairwise at distance
/// at least 2.
pub fn check_image(m: &PolygonGluing) -> Result<()> {
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    match first_violation(m, &classify_vertices(m)) {
        None => Ok(()),
        Some(v) => Err(Error::NotInImage(v)),
    }
}

pub fn in_image(m: &PolygonGluing) -> bool {
    check_image(m).is_ok()
}

/// Inverse of [`collapse_psi`] on its image.
///
/// Sides ending at a left vertex pair up with the following side into one
/// letter on the sheet of that vertex; every other side is a letter on a
/// 2-valent sheet shared with the side it is glued to.
pub fn reconstruct_covering(m: &PolygonGluing) -> Result<CoveringSolution> {
    check_image(m)?;
    let cls = classify_vertices(m);
    let is_left = |slot: usize| cls.tags[cls.vertex_of_slot[slot]] == VertexTag::Left;
    // letter of each slot, and the sheet key: Ok(left vertex) or Err(lower slot of an S–S edge)
    let mut letter_of_slot = vec![usize::MAX; m.num_slots()];
    let mut sheet_key: Vec<std::result::Result<usize, usize>> = Vec::new();
    let mut block_sizes = Vec::with_capacity(m.num_polygons());
    let bad = |msg: String| Error::InvalidGluing(format!("reconstruction failed: {msg}"));
    for (r, &kr) in m.k().as_slice().iter().enumerate() {
        let kr = kr as usize;
        let mut j = 0;
        let mut letters = 0;
        while j < kr {
            let a = m.slot(r, j);
            let end = m.phi(a);
            let letter = sheet_key.len();
            if j + 1 < kr && is_left(end) {
                letter_of_slot[a] = letter;
                letter_of_slot[end] = letter;
                sheet_key.push(Ok(cls.vertex_of_slot[end]));
                j += 2;
            } else if is_left(end) {
                return Err(bad(format!("side {a} ends at a left vertex at the end of its polygon")));
            } else {
                letter_of_slot[a] = letter;
                sheet_key.push(Err(a.min(m.alpha(a))));
                j += 1;
            }
            letters += 1;
        }
        block_sizes.push(letters as u32);
    }
    // both sides of an S–S edge must be single letters
    for (a, &l) in letter_of_slot.iter().enumerate() {
        if let Err(key) = sheet_key[l] {
            let b = m.alpha(a);
            if !matches!(sheet_key[letter_of_slot[b]], Err(k2) if k2 == key) {
                return Err(bad(format!("side {a} is glued to a side of a collapsed sheet")));
            }
        }
    }
    let s = m.num_polygons();
    let mut symbol: std::collections::HashMap<std::result::Result<usize, usize>, usize> =
        std::collections::HashMap::new();
    let tau: Vec<usize> = sheet_key
        .iter()
        .map(|key| {
            let next = s + 1 + symbol.len();
            *symbol.entry(*key).or_insert(next)
        })
        .collect();
    let k = ExponentVector::new(block_sizes)?;
    let c = CoveringSolution::new(k, tau).map_err(|e| bad(e.to_string()))?;
    if collapse_psi(&c)? != *m {
        return Err(bad(format!("{c} does not collapse back onto {m}")));
    }
    Ok(c)
}
