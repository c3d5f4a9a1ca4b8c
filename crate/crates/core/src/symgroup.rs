//! Symmetric-group arithmetic and brute-force Jucys–Murphy traces.
//!
//! Permutations act on `{1, …, n}` and are stored as image tables.
//! Composition is right-to-left: `compose(p, q)` applies `q` first, then `p`,
//! so `compose(p, q)(i) = p(q(i))`. Every word evaluation in this crate uses
//! that order.
//!
//! The regular-representation trace `(1/n!) tr X_1^{k_1} ⋯ X_s^{k_s}` equals the
//! number of transposition words whose product is the identity, which is what
//! [`jm_trace_direct`] counts. Whether a word multiplies to the identity does not
//! depend on the composition order (reversing a product of transpositions inverts
//! it), so counts agree under either convention.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree handled by the fixed-size word evaluators.
pub const MAX_WORD_POINTS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    // 0-based images
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("image {im} out of range"),
                });
            }
            if seen[im - 1] {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("image {im} repeated"),
                });
            }
            seen[im - 1] = true;
            out.push((im - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// The transposition `(a b)` in `S(n)`, 1-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::InvalidPermutation {
                n,
                detail: format!("bad transposition ({a} {b})"),
            });
        }
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// Builds a permutation of degree `n` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || touched[a] {
                    return Err(Error::InvalidPermutation {
                        n,
                        detail: format!("bad cycle entry {a}"),
                    });
                }
                touched[a] = true;
                images[a - 1] = cyc[(i + 1) % cyc.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 != x).count()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id[{}]", self.degree());
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// `p ∘ q`: apply `q`, then `p`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(Permutation {
        images: q.images.iter().map(|&i| p.images[i as usize]).collect(),
    })
}

/// Exponents `(k_1, …, k_s)`, all positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(k: Vec<u32>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidExponents("empty".into()));
        }
        if k.contains(&0) {
            return Err(Error::InvalidExponents(format!("zero entry in {k:?}")));
        }
        Ok(ExponentVector(k))
    }

    pub fn single(k: u32) -> Result<Self> {
        Self::new(vec![k])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Number of blocks `s`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|k|`.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    /// Block index of each of the `|k|` positions.
    pub fn blocks(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &kr)| std::iter::repeat(r).take(kr as usize))
            .collect()
    }

    /// Start offset of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&x| {
                let o = acc;
                acc += x as usize;
                o
            })
            .collect()
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k({self})")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ExponentVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match parts {
            Ok(v) => ExponentVector::new(v),
            Err(e) => Err(Error::InvalidExponents(format!("{s:?}: {e}"))),
        }
    }
}

/// Fixed-capacity permutation used inside the word searches.
#[derive(Clone, Copy)]
pub(crate) struct SmallPerm {
    pub(crate) img: [u8; MAX_WORD_POINTS],
    pub(crate) n: usize,
}

impl SmallPerm {
    pub(crate) fn identity(n: usize) -> Self {
        assert!(n <= MAX_WORD_POINTS, "degree {n} exceeds {MAX_WORD_POINTS}");
        let mut img = [0u8; MAX_WORD_POINTS];
        for (i, x) in img.iter_mut().enumerate().take(n) {
            *x = i as u8;
        }
        SmallPerm { img, n }
    }

    /// Right-multiplies by the transposition `(a b)` (0-based).
    #[inline]
    pub(crate) fn mul_transposition(&mut self, a: usize, b: usize) {
        self.img.swap(a, b);
    }

    /// Minimal number of transpositions whose product is this permutation.
    #[inline]
    pub(crate) fn cayley_distance(&self) -> usize {
        let mut seen = 0u64;
        let mut cycles = 0;
        for start in 0..self.n {
            if seen & (1 << start) != 0 {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while seen & (1 << x) == 0 {
                seen |= 1 << x;
                x = self.img[x] as usize;
            }
        }
        self.n - cycles
    }
}

/// `(1/n!)·tr(X_1^{k_1} ⋯ X_s^{k_s})` in the regular representation of `S(n)`,
/// computed by counting transposition words with identity product.
///
/// Unmodified: the letters of block `r` (1-based) run over `{r+1, …, n}`,
/// i.e. `X_r = Σ_{j>r} (r j)`. Modified: every letter runs over `{s+1, …, n}`.
pub fn jm_trace_direct(n: usize, k: &ExponentVector, modified: bool) -> Result<u64> {
    let s = k.len();
    if n <= s {
        return Err(Error::InvalidArgument(format!("need n > s, got n={n}, s={s}")));
    }
    if n > MAX_WORD_POINTS {
        return Err(Error::SizeCap(format!("n = {n} exceeds {MAX_WORD_POINTS}")));
    }
    let total = k.total();
    if total % 2 == 1 {
        return Ok(0);
    }
    let blocks = k.blocks();
    // 0-based special point and smallest admissible 0-based letter per position
    let specials: Vec<usize> = blocks.clone();
    let lows: Vec<usize> = blocks.iter().map(|&r| if modified { s } else { r + 1 }).collect();
    let search = WordSearch {
        n,
        specials: &specials,
        lows: &lows,
    };
    let start = SmallPerm::identity(n);
    let first: Vec<usize> = (lows[0]..n).collect();
    let count = first
        .par_iter()
        .map(|&a| {
            let mut p = start;
            p.mul_transposition(specials[0], a);
            search.count(p, 1)
        })
        .reduce(|| 0u64, |a, b| a.checked_add(b).expect("trace count overflowed u64"));
    Ok(count)
}

struct WordSearch<'a> {
    n: usize,
    specials: &'a [usize],
    lows: &'a [usize],
}

impl WordSearch<'_> {
    fn count(&self, p: SmallPerm, depth: usize) -> u64 {
        let remaining = self.specials.len() - depth;
        let dist = p.cayley_distance();
        if dist > remaining || (remaining - dist) % 2 == 1 {
            return 0;
        }
        if remaining == 0 {
            return 1;
        }
        let sp = self.specials[depth];
        let mut acc = 0u64;
        for a in self.lows[depth]..self.n {
            let mut q = p;
            q.mul_transposition(sp, a);
            acc = acc
                .checked_add(self.count(q, depth + 1))
                .expect("trace count overflowed u64");
        }
        acc
    }
}

/// Product `(1 τ_1)⋯(1 τ_{k_1})(2 τ_{k_1+1})⋯(s τ_{|k|})` on the points
/// `{1, …, max(s, max τ)}`.
pub fn word_product(s: usize, k: &ExponentVector, tau: &[usize]) -> Result<Permutation> {
    check_word(s, k, tau)?;
    let n = tau.iter().copied().max().unwrap_or(s).max(s);
    let blocks = k.blocks();
    let mut images: Vec<usize> = (0..n).collect();
    // right multiplication by (a b) swaps the images of a and b
    for (p, &t) in tau.iter().enumerate() {
        images.swap(blocks[p], t - 1);
    }
    Permutation::from_images(&images.iter().map(|x| x + 1).collect::<Vec<_>>())
}

fn check_word(s: usize, k: &ExponentVector, tau: &[usize]) -> Result<()> {
    if k.len() != s {
        return Err(Error::MalformedWord(format!(
            "exponent vector has {} blocks but s = {s}",
            k.len()
        )));
    }
    if tau.len() != k.total() {
        return Err(Error::MalformedWord(format!(
            "word length {} differs from |k| = {}",
            tau.len(),
            k.total()
        )));
    }
    if let Some(&bad) = tau.iter().find(|&&t| t <= s) {
        return Err(Error::MalformedWord(format!(
            "symbol {bad} is not a nonspecial sheet (must exceed s = {s})"
        )));
    }
    Ok(())
}

/// Whether `tau` solves the transposition equation.
pub fn verify_solution(s: usize, k: &ExponentVector, tau: &[usize]) -> Result<bool> {
    Ok(word_product(s, k, tau)?.is_identity())
}
