//! Maps on surfaces as gluings of marked polygons.
//!
//! Sides ("slots") are numbered polygon by polygon; inside polygon `r` side
//! `j` runs counterclockwise from corner `j` to corner `j+1`, corner `0` being
//! the marked vertex. Gluing side `a` to side `b` reverses orientation, so the
//! start of `a` is identified with the end of `b`, which is the start of
//! `φ(b)` where `φ` is "next side in the same polygon". Vertices are therefore
//! the orbits of `ρ = φ∘α` on slots.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::factorial;
use crate::series::Series;
use crate::symgroup::ExponentVector;

/// Default cap on the number of sides for exhaustive enumeration.
pub const MAX_GLUING_SLOTS: usize = 18;

/// Upper bound for π used in exact comparisons.
pub const PI_UPPER: (&str, &str) = (
    "31415926535897932384626433832795028841972",
    "10000000000000000000000000000000000000000",
);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolygonGluing {
    k: ExponentVector,
    pairing: Vec<u32>,
}

impl PolygonGluing {
    pub fn new(k: ExponentVector, pairing: Vec<u32>) -> Result<Self> {
        if pairing.len() != k.total() {
            return Err(Error::InvalidGluing(format!(
                "pairing has {} slots, perimeters sum to {}",
                pairing.len(),
                k.total()
            )));
        }
        for (a, &b) in pairing.iter().enumerate() {
            let b = b as usize;
            if b >= pairing.len() || b == a || pairing[b] as usize != a {
                return Err(Error::InvalidGluing(format!(
                    "slot {a} is not matched by a fixed-point-free involution"
                )));
            }
        }
        Ok(PolygonGluing { k, pairing })
    }

    pub fn k(&self) -> &ExponentVector {
        &self.k
    }

    pub fn pairing(&self) -> &[u32] {
        &self.pairing
    }

    pub fn num_slots(&self) -> usize {
        self.pairing.len()
    }

    pub fn num_polygons(&self) -> usize {
        self.k.len()
    }

    /// Global index of side `j` of polygon `r` (both 0-based).
    pub fn slot(&self, r: usize, j: usize) -> usize {
        self.k.offsets()[r] + j
    }

    /// `(polygon, side)` of a slot.
    pub fn locate(&self, slot: usize) -> (usize, usize) {
        let mut off = 0;
        for (r, &kr) in self.k.as_slice().iter().enumerate() {
            if slot < off + kr as usize {
                return (r, slot - off);
            }
            off += kr as usize;
        }
        panic!("slot {slot} out of range")
    }

    pub fn alpha(&self, slot: usize) -> usize {
        self.pairing[slot] as usize
    }

    /// Next side counterclockwise in the same polygon.
    pub fn phi(&self, slot: usize) -> usize {
        let (r, j) = self.locate(slot);
        self.slot(r, (j + 1) % self.k.as_slice()[r] as usize)
    }

    pub fn phi_inv(&self, slot: usize) -> usize {
        let (r, j) = self.locate(slot);
        let kr = self.k.as_slice()[r] as usize;
        self.slot(r, (j + kr - 1) % kr)
    }

    /// `ρ = φ∘α`: the next corner around the vertex at the start of `slot`.
    pub fn rho(&self, slot: usize) -> usize {
        self.phi(self.alpha(slot))
    }

    pub fn rho_inv(&self, slot: usize) -> usize {
        self.alpha(self.phi_inv(slot))
    }

    /// Vertex orbits, each listed in `ρ` order from its smallest slot.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let m = self.num_slots();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.rho(x);
            }
            out.push(orbit);
        }
        out
    }

    /// Index into [`vertices`](Self::vertices) for each slot's starting corner.
    pub fn vertex_of_slot(&self) -> Vec<usize> {
        let mut v = vec![0; self.num_slots()];
        for (i, orbit) in self.vertices().iter().enumerate() {
            for &x in orbit {
                v[x] = i;
            }
        }
        v
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    /// Polygon-level connected components, as a component id per polygon.
    pub fn component_of_polygon(&self) -> Vec<usize> {
        let s = self.num_polygons();
        let mut parent: Vec<usize> = (0..s).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for a in 0..self.num_slots() {
            let ra = find(&mut parent, self.locate(a).0);
            let rb = find(&mut parent, self.locate(self.alpha(a)).0);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let roots: Vec<usize> = (0..s).map(|r| find(&mut parent, r)).collect();
        let mut ids = BTreeMap::new();
        roots
            .iter()
            .map(|&r| {
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.component_of_polygon().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// `V − E + F` of the whole (possibly disconnected) surface.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - (self.num_slots() / 2) as i64 + self.num_polygons() as i64
    }

    /// Sum of the genera of the components.
    pub fn total_genus(&self) -> usize {
        let twice = 2 * self.num_components() as i64 - self.euler_characteristic();
        debug_assert!(twice >= 0 && twice % 2 == 0);
        (twice / 2) as usize
    }

    /// Genus of a connected gluing.
    pub fn genus(&self) -> Option<usize> {
        self.is_connected().then(|| self.total_genus())
    }

    /// Every polygon traversed clockwise instead, marked corners kept.
    pub fn reflect(&self) -> PolygonGluing {
        let ks = self.k.as_slice();
        let mirror = |slot: usize| {
            let (r, j) = self.locate(slot);
            self.slot(r, ks[r] as usize - 1 - j)
        };
        let mut pairing = vec![0u32; self.num_slots()];
        for a in 0..self.num_slots() {
            pairing[mirror(a)] = mirror(self.alpha(a)) as u32;
        }
        PolygonGluing {
            k: self.k.clone(),
            pairing,
        }
    }
}

impl fmt::Debug for PolygonGluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolygonGluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pairs = Vec::new();
        for (a, &b) in self.pairing.iter().enumerate() {
            if a < b as usize {
                pairs.push(format!("{a}-{b}"));
            }
        }
        write!(f, "[{}] {}", self.k, pairs.join(" "))
    }
}

/// Calls `f` on every perfect matching of `0..m`, as an involution table.
pub fn for_each_pairing(m: usize, mut f: impl FnMut(&[u32])) {
    if m % 2 == 1 {
        return;
    }
    let mut pairing = vec![u32::MAX; m];
    pairing_rec(&mut pairing, &mut f);
}

pub(crate) fn pairing_rec(pairing: &mut [u32], f: &mut impl FnMut(&[u32])) {
    let Some(a) = pairing.iter().position(|&x| x == u32::MAX) else {
        f(pairing);
        return;
    };
    for b in a + 1..pairing.len() {
        if pairing[b] == u32::MAX {
            pairing[a] = b as u32;
            pairing[b] = a as u32;
            pairing_rec(pairing, f);
            pairing[a] = u32::MAX;
            pairing[b] = u32::MAX;
        }
    }
}

/// Lazy stream of all gluings of the given polygons, `(|k|−1)!!` of them.
pub fn enumerate_gluings(k: &ExponentVector) -> GluingIter {
    let m = k.total();
    GluingIter {
        k: k.clone(),
        choice: if m % 2 == 0 { Some(vec![0; m / 2]) } else { None },
    }
}

pub struct GluingIter {
    k: ExponentVector,
    // mixed-radix counter: step i pairs the lowest free slot with the choice[i]-th
    // remaining free slot
    choice: Option<Vec<usize>>,
}

impl Iterator for GluingIter {
    type Item = PolygonGluing;

    fn next(&mut self) -> Option<PolygonGluing> {
        let choice = self.choice.as_mut()?;
        let m = 2 * choice.len();
        let mut free: Vec<usize> = (0..m).collect();
        let mut pairing = vec![0u32; m];
        for &c in choice.iter() {
            let a = free.remove(0);
            let b = free.remove(c);
            pairing[a] = b as u32;
            pairing[b] = a as u32;
        }
        let mut done = true;
        for i in (0..choice.len()).rev() {
            let radix = m - 2 * i - 1;
            choice[i] += 1;
            if choice[i] < radix {
                done = false;
                break;
            }
            choice[i] = 0;
        }
        if done {
            self.choice = None;
        }
        Some(PolygonGluing {
            k: self.k.clone(),
            pairing,
        })
    }
}

/// Counts of gluings keyed by `(components, χ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GluingCensus {
    pub counts: BTreeMap<(usize, i64), u64>,
}

impl GluingCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Connected gluings of genus `g`.
    pub fn connected(&self, g: usize) -> u64 {
        self.counts.get(&(1, 2 - 2 * g as i64)).copied().unwrap_or(0)
    }

    pub fn disconnected(&self) -> u64 {
        self.counts.iter().filter(|((c, _), _)| *c > 1).map(|(_, v)| v).sum()
    }

    /// Connected counts indexed by genus.
    pub fn by_genus(&self) -> BTreeMap<usize, u64> {
        self.counts
            .iter()
            .filter(|((c, _), _)| *c == 1)
            .map(|((_, chi), v)| (((2 - chi) / 2) as usize, *v))
            .collect()
    }

    fn merge(mut self, other: GluingCensus) -> GluingCensus {
        for (key, v) in other.counts {
            *self.counts.entry(key).or_insert(0) += v;
        }
        self
    }
}

struct CensusCtx {
    m: usize,
    s: usize,
    phi: Vec<u32>,
    polygon: Vec<u32>,
}

impl CensusCtx {
    fn new(k: &ExponentVector) -> Self {
        let mut phi = Vec::new();
        let mut polygon = Vec::new();
        let mut off = 0u32;
        for (r, &kr) in k.as_slice().iter().enumerate() {
            for j in 0..kr {
                phi.push(off + (j + 1) % kr);
                polygon.push(r as u32);
            }
            off += kr;
        }
        CensusCtx {
            m: k.total(),
            s: k.len(),
            phi,
            polygon,
        }
    }

    fn classify(&self, pairing: &[u32]) -> (usize, i64) {
        let mut seen = [false; 64];
        let mut v = 0i64;
        for start in 0..self.m {
            if seen[start] {
                continue;
            }
            v += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.phi[pairing[x] as usize] as usize;
            }
        }
        let comps = if self.s == 1 {
            1
        } else {
            let mut parent: Vec<usize> = (0..self.s).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            let mut comps = self.s;
            for a in 0..self.m {
                let ra = find(&mut parent, self.polygon[a] as usize);
                let rb = find(&mut parent, self.polygon[pairing[a] as usize] as usize);
                if ra != rb {
                    parent[ra] = rb;
                    comps -= 1;
                }
            }
            comps
        };
        (comps, v - (self.m / 2) as i64 + self.s as i64)
    }
}

/// Exhaustive census of all gluings, split across workers by the partner of slot 0.
pub fn gluing_census(k: &ExponentVector, max_slots: usize) -> Result<GluingCensus> {
    let m = k.total();
    if m > max_slots || m > 64 {
        return Err(Error::SizeCap(format!(
            "{m} sides exceeds the enumeration cap of {}",
            max_slots.min(64)
        )));
    }
    if m % 2 == 1 {
        return Ok(GluingCensus::default());
    }
    let ctx = CensusCtx::new(k);
    Ok((1..m)
        .into_par_iter()
        .map(|b| {
            let mut census = GluingCensus::default();
            let mut pairing = vec![u32::MAX; m];
            pairing[0] = b as u32;
            pairing[b] = 0;
            pairing_rec(&mut pairing, &mut |p: &[u32]| {
                *census.counts.entry(ctx.classify(p)).or_insert(0) += 1;
            });
            census
        })
        .reduce(GluingCensus::default, GluingCensus::merge))
}

/// Number of connected gluings of genus `g`, by exhaustive enumeration.
pub fn count_maps(g: usize, k: &ExponentVector) -> Result<u64> {
    Ok(gluing_census(k, MAX_GLUING_SLOTS)?.connected(g))
}

/// `(2j−1)!!`.
pub fn double_factorial_odd(m: usize) -> BigUint {
    // (m-1)!! for even m
    (1..m as u64).step_by(2).fold(BigUint::one(), |a, x| a * x)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn catalan(k: u64) -> BigUint {
    binomial(2 * k, k) / (k + 1)
}

fn pi_upper() -> BigRational {
    BigRational::new(
        PI_UPPER.0.parse::<BigInt>().unwrap(),
        PI_UPPER.1.parse::<BigInt>().unwrap(),
    )
}

/// Whether `C_k < 2^{2k} / (√π k^{3/2})`, decided exactly: squaring gives
/// `C_k² k³ π < 2^{4k}`, and an upper bound for π makes the test sufficient.
pub fn catalan_bound_holds(k: u64) -> bool {
    assert!(k >= 1);
    let c = BigInt::from(catalan(k));
    let lhs = BigRational::from_integer(&c * &c * BigInt::from(k).pow(3)) * pi_upper();
    lhs < BigRational::from_integer(BigInt::one() << (4 * k) as usize)
}

/// `|Map_g(2k)|` from the closed coefficient-extraction formula.
pub fn harer_zagier(g: usize, k: usize) -> BigUint {
    if k < 2 * g {
        return BigUint::zero();
    }
    // even series in y = x²: cosh(x/2) / (sinh(x/2)/(x/2))
    let len = g + 1;
    let cosh = Series::from_fn(len, |j| {
        BigRational::new(BigInt::one(), BigInt::from(factorial(2 * j)) << (2 * j))
    });
    let sinhc = Series::from_fn(len, |j| {
        BigRational::new(BigInt::one(), BigInt::from(factorial(2 * j + 1)) << (2 * j))
    });
    let coef = cosh.div(&sinhc).pow(k as u64 + 1).coeff(g);
    let pre = BigRational::new(
        BigInt::from(factorial(2 * k)),
        BigInt::from(factorial(k + 1) * factorial(k - 2 * g)),
    );
    let v = pre * coef;
    assert!(v.is_integer(), "non-integral count at g={g}, 2k={}", 2 * k);
    v.to_integer().to_biguint().expect("nonnegative count")
}

/// `|Map_g(2k)| ≤ (1/√π)·2^{2k}·k^{3g−3/2}/g!`, checked exactly via squares.
pub fn hdz_bound_holds(g: usize, k: usize) -> bool {
    let m = BigInt::from(harer_zagier(g, k));
    let gf = BigInt::from(factorial(g));
    let kk = BigInt::from(k as u64);
    // M² g!² π k³ ≤ 2^{4k} k^{6g}
    let lhs = BigRational::from_integer(&m * &m * &gf * &gf * kk.pow(3)) * pi_upper();
    let rhs = BigRational::from_integer((BigInt::one() << (4 * k)) * kk.pow(6 * g as u32));
    lhs <= rhs
}

/// Middle term of the same chain: `(2k)!/((k+1)!(k−2g)!)·binom(k+g, g)·12^{−g}`.
pub fn hdz_dominating_term(g: usize, k: usize) -> BigRational {
    if k < 2 * g {
        return BigRational::zero();
    }
    BigRational::new(
        BigInt::from(factorial(2 * k) * binomial((k + g) as u64, g as u64)),
        BigInt::from(factorial(k + 1) * factorial(k - 2 * g)) * BigInt::from(12u32).pow(g as u32),
    )
}

/// Asymptotic density `map_g(ξ) = (1/√π)·(ξ/2)^{3g−3/2}/(12^g g!)`.
pub fn map_asym_s1(g: usize, xi: f64) -> f64 {
    let gf: f64 = (1..=g).map(|i| i as f64).product();
    (xi / 2.0).powf(3.0 * g as f64 - 1.5) / (std::f64::consts::PI.sqrt() * 12f64.powi(g as i32) * gf)
}

/// `ln` of a big unsigned integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits() as i64;
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = (bits - 60) as usize;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `|Map_g(2k)|·√π·g!·k^{3/2−3g}·12^g / 2^{2k}`, which tends to 1.
pub fn hz_asymptotic_ratio(g: usize, k: usize) -> f64 {
    let ln = ln_big(&harer_zagier(g, k))
        + 0.5 * std::f64::consts::PI.ln()
        + ln_big(&factorial(g))
        + (1.5 - 3.0 * g as f64) * (k as f64).ln()
        + g as f64 * 12f64.ln()
        - 2.0 * k as f64 * std::f64::consts::LN_2;
    ln.exp()
}

/// `E[Π tr H^{k_i}] / (2^{|k|} n^{|k|/2}) = 2^{−|k|} Σ_gluings n^{χ−s}`.
pub fn gue_trace_moment_exact(n: u64, k: &ExponentVector) -> Result<BigRational> {
    gue_moment_from_census(n, k, &gluing_census(k, MAX_GLUING_SLOTS)?)
}

pub fn gue_moment_from_census(n: u64, k: &ExponentVector, census: &GluingCensus) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    let s = k.len() as i64;
    let nn = BigRational::from_integer(BigInt::from(n));
    let mut acc = BigRational::zero();
    for ((_, chi), count) in &census.counts {
        let e = chi - s;
        let p = if e >= 0 {
            num_traits::pow(nn.clone(), e as usize)
        } else {
            num_traits::pow(nn.clone(), (-e) as usize).recip()
        };
        acc += p * BigRational::from_integer(BigInt::from(*count));
    }
    Ok(acc / BigRational::from_integer(BigInt::one() << k.total()))
}

/// The single-trace moment via closed-form genus counts.
pub fn gue_single_trace_moment_hz(n: u64, two_k: usize) -> BigRational {
    if two_k % 2 == 1 {
        return BigRational::zero();
    }
    let k = two_k / 2;
    let nn = BigRational::from_integer(BigInt::from(n));
    let mut acc = BigRational::zero();
    for g in 0..=k / 2 {
        let e = 1 - 2 * g as i64;
        let p = if e >= 0 {
            nn.clone()
        } else {
            num_traits::pow(nn.clone(), (-e) as usize).recip()
        };
        acc += p * BigRational::from_integer(BigInt::from(harer_zagier(g, k)));
    }
    acc / BigRational::from_integer(BigInt::one() << two_k)
}
