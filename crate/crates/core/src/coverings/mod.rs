//! Jucys–Murphy coverings: canonical transposition words
//! `(1 τ_1)⋯(1 τ_{k_1})(2 τ_{k_1+1})⋯(s τ_{|k|}) = 1` with letters drawn from
//! the nonspecial sheets `{s+1, s+2, …}`, the collapse Ψ onto maps, and its
//! inverse on the image.

mod psi;
mod stats;

pub use psi::{
    check_image, classify_vertices, collapse_psi, in_image, reconstruct_covering, VertexClassification, VertexTag,
};
pub use stats::{
    cov31_coefficient, covering_map_ratio, image_fraction, image_fraction_genus1_exact, image_fraction_trend,
    ImageFraction,
};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symgroup::{verify_solution, ExponentVector, SmallPerm, MAX_WORD_POINTS};

/// Default cap on `|k|` for exhaustive covering enumeration.
pub const MAX_COVERING_LETTERS: usize = 16;

/// A canonical solution: symbols appear in increasing order of first use.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoveringSolution {
    k: ExponentVector,
    tau: Vec<usize>,
}

impl CoveringSolution {
    /// Validates that `tau` is canonical and solves the equation.
    pub fn new(k: ExponentVector, tau: Vec<usize>) -> Result<Self> {
        let s = k.len();
        let mut next = s + 1;
        for &t in &tau {
            if t > next || t <= s {
                return Err(Error::MalformedWord(format!(
                    "{tau:?} is not canonical: symbol {t} where at most {next} may appear"
                )));
            }
            if t == next {
                next += 1;
            }
        }
        if !verify_solution(s, &k, &tau)? {
            return Err(Error::MalformedWord(format!(
                "{tau:?} does not multiply to the identity"
            )));
        }
        Ok(CoveringSolution { k, tau })
    }

    pub(crate) fn new_unchecked(k: ExponentVector, tau: Vec<usize>) -> Self {
        CoveringSolution { k, tau }
    }

    pub fn k(&self) -> &ExponentVector {
        &self.k
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Number of special sheets.
    pub fn s(&self) -> usize {
        self.k.len()
    }

    /// Number of distinct nonspecial sheets used.
    pub fn d(&self) -> usize {
        self.tau.iter().max().map_or(0, |&m| m - self.s())
    }

    /// `χ = 2d + 2s − |k|`.
    pub fn euler_characteristic(&self) -> i64 {
        2 * self.d() as i64 + 2 * self.s() as i64 - self.k.total() as i64
    }

    /// Occurrences of each nonspecial sheet `s+1, …, s+d`.
    pub fn valences(&self) -> Vec<usize> {
        let s = self.s();
        let mut v = vec![0; self.d()];
        for &t in &self.tau {
            v[t - s - 1] += 1;
        }
        v
    }

    /// Components of the bipartite incidence graph between special sheets
    /// and the symbols used with them.
    pub fn num_components(&self) -> usize {
        let s = self.s();
        let d = self.d();
        let mut parent: Vec<usize> = (0..s + d).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = s + d;
        for (pos, &r) in self.k.blocks().iter().enumerate() {
            let a = find(&mut parent, r);
            let b = find(&mut parent, self.tau[pos] - 1);
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// Sum of genera over components.
    pub fn total_genus(&self) -> usize {
        ((2 * self.num_components() as i64 - self.euler_characteristic()) / 2) as usize
    }

    pub fn genus(&self) -> Option<usize> {
        self.is_connected().then(|| self.total_genus())
    }
}

impl fmt::Display for CoveringSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.tau.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", t.join(","))
    }
}

impl fmt::Debug for CoveringSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.k, self)
    }
}

struct CoveringSearch {
    specials: Vec<usize>,
    s: usize,
    n: usize,
}

impl CoveringSearch {
    fn run(&self, p: SmallPerm, word: &mut Vec<u8>, d: usize, out: &mut Vec<Vec<u8>>) {
        let depth = word.len();
        let remaining = self.specials.len() - depth;
        let dist = p.cayley_distance();
        if dist > remaining || (remaining - dist) % 2 == 1 {
            return;
        }
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        let sp = self.specials[depth];
        let top = (self.s + d + 1).min(self.n);
        for a in self.s..top {
            let mut q = p;
            q.mul_transposition(sp, a);
            word.push(a as u8);
            self.run(q, word, d.max(a + 1 - self.s), out);
            word.pop();
        }
    }
}

/// All canonical solutions for `k`, i.e. representatives of the orbits of
/// relabeling the nonspecial sheets.
pub fn enumerate_coverings(k: &ExponentVector) -> Result<Vec<CoveringSolution>> {
    enumerate_coverings_capped(k, MAX_COVERING_LETTERS)
}

pub fn enumerate_coverings_capped(k: &ExponentVector, max_letters: usize) -> Result<Vec<CoveringSolution>> {
    let total = k.total();
    if total > max_letters {
        return Err(Error::SizeCap(format!(
            "|k| = {total} exceeds the cap of {max_letters}"
        )));
    }
    if total % 2 == 1 {
        return Ok(Vec::new());
    }
    let s = k.len();
    // each sheet is used at least twice
    let n = s + total / 2;
    if n > MAX_WORD_POINTS {
        return Err(Error::SizeCap(format!("{n} sheets exceed {MAX_WORD_POINTS}")));
    }
    let search = CoveringSearch {
        specials: k.blocks(),
        s,
        n,
    };
    // split on canonical prefixes of length up to 3
    let mut prefixes: Vec<(SmallPerm, Vec<u8>, usize)> = vec![(SmallPerm::identity(n), Vec::new(), 0)];
    for depth in 0..3.min(total) {
        let sp = search.specials[depth];
        prefixes = prefixes
            .into_iter()
            .flat_map(|(p, w, d)| {
                (s..(s + d + 1).min(n)).map(move |a| {
                    let mut q = p;
                    q.mul_transposition(sp, a);
                    let mut w2 = w.clone();
                    w2.push(a as u8);
                    (q, w2, d.max(a + 1 - s))
                })
            })
            .collect();
    }
    let mut words: Vec<Vec<u8>> = prefixes
        .into_par_iter()
        .flat_map_iter(|(p, mut w, d)| {
            let mut out = Vec::new();
            search.run(p, &mut w, d, &mut out);
            out
        })
        .collect();
    words.sort_unstable();
    Ok(words
        .into_iter()
        .map(|w| CoveringSolution::new_unchecked(k.clone(), w.iter().map(|&a| a as usize + 1).collect()))
        .collect())
}

/// Solution counts keyed by `(components, χ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoveringCensus {
    pub counts: BTreeMap<(usize, i64), u64>,
}

impl CoveringCensus {
    pub fn from_solutions(sols: &[CoveringSolution]) -> Self {
        let mut counts = BTreeMap::new();
        for c in sols {
            *counts
                .entry((c.num_components(), c.euler_characteristic()))
                .or_insert(0) += 1;
        }
        CoveringCensus { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Connected solutions of genus `g`.
    pub fn connected(&self, g: usize) -> u64 {
        self.counts.get(&(1, 2 - 2 * g as i64)).copied().unwrap_or(0)
    }

    /// All solutions whose components' genera sum to `g`.
    pub fn total_genus(&self, g: usize) -> u64 {
        self.counts
            .iter()
            .filter(|((c, chi), _)| 2 * *c as i64 - chi == 2 * g as i64)
            .map(|(_, v)| v)
            .sum()
    }
}

pub fn covering_census(k: &ExponentVector) -> Result<CoveringCensus> {
    Ok(CoveringCensus::from_solutions(&enumerate_coverings(k)?))
}

/// `Σ_τ (n−s)(n−s−1)⋯(n−s−d(τ)+1)` over canonical solutions: the number of
/// all (not necessarily canonical) words on `{s+1, …, n}`.
pub fn orbit_sum(sols: &[CoveringSolution], n: usize) -> u64 {
    sols.iter()
        .map(|c| {
            let free = n.saturating_sub(c.s());
            (0..c.d()).map(|i| free.saturating_sub(i) as u64).product::<u64>()
        })
        .sum()
}
