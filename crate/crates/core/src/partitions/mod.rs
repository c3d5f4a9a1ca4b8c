//! Young diagrams, dimensions, Plancherel measure and the corner-rate chains.

mod profile;
mod sampling;

pub use profile::{laplace_statistic, limit_shape, rotated_profile, scaled_rows, Profile};
pub use sampling::{decay_rate_first_f64, sample_growth, sample_growth_with, sample_rsk, sample_rsk_with};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symgroup::ExponentVector;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Drops trailing zeros and checks monotonicity.
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero past the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// 1-based rows whose last box can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.part(i) > self.part(i + 1)).collect()
    }

    /// 1-based rows where a box can be added (row `ℓ+1` included).
    pub fn addable_rows(&self) -> Vec<usize> {
        (1..=self.len() + 1)
            .filter(|&i| i == 1 || self.part(i - 1) > self.part(i))
            .collect()
    }

    /// `λ − □_i`.
    pub fn remove_box(&self, i: usize) -> Result<Partition> {
        if !(1..=self.len()).contains(&i) || self.part(i) <= self.part(i + 1) {
            return Err(Error::InvalidPartition(format!("row {i} of {self} is not a corner")));
        }
        let mut parts = self.parts.clone();
        parts[i - 1] -= 1;
        Self::from_padded(parts)
    }

    /// `λ + □_i`.
    pub fn add_box(&self, i: usize) -> Result<Partition> {
        if i == 0 || i > self.len() + 1 || (i > 1 && self.part(i - 1) <= self.part(i)) {
            return Err(Error::InvalidPartition(format!(
                "cannot add a box to row {i} of {self}"
            )));
        }
        let mut parts = self.parts.clone();
        if i == self.len() + 1 {
            parts.push(1);
        } else {
            parts[i - 1] += 1;
        }
        Ok(Partition { parts })
    }

    /// Content `λ_i − i` of the last box in row `i`.
    pub fn corner_content(&self, i: usize) -> i64 {
        self.part(i) as i64 - i as i64
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (conj.parts[j as usize] - i as u32 - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// Dimension by the hook formula.
    pub fn dim_hook(&self) -> BigUint {
        let hooks: BigUint = self
            .hook_lengths()
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * h);
        let f = factorial(self.size());
        debug_assert!((&f % &hooks).is_zero());
        f / hooks
    }

    /// Dimension by `|λ|! Π_{i<j}(λ_i − λ_j + j − i) / Π_i (λ_i + ℓ − i)!`.
    pub fn dim_product(&self) -> BigUint {
        let l = self.len();
        let mut num = factorial(self.size());
        for i in 1..=l {
            for j in i + 1..=l {
                let d = self.part(i) as i64 - self.part(j) as i64 + (j - i) as i64;
                num *= d as u64;
            }
        }
        let den = (1..=l).fold(BigUint::one(), |acc, i| acc * factorial(self.part(i) as usize + l - i));
        debug_assert!((&num % &den).is_zero());
        num / den
    }

    /// Dimension of the irreducible representation of `S(|λ|)`.
    pub fn dim(&self) -> BigUint {
        self.dim_hook()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match parts {
            Ok(v) => Partition::new(v),
            Err(e) => Err(Error::InvalidPartition(format!("{s:?}: {e}"))),
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(dim λ)² / n!`.
pub fn plancherel_mass(lambda: &Partition) -> BigRational {
    let d = BigInt::from(lambda.dim());
    BigRational::new(&d * &d, BigInt::from(factorial(lambda.size())))
}

/// Transition probabilities on corners, keyed by 1-based row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerRates(pub Vec<(usize, BigRational)>);

impl CornerRates {
    pub fn total(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, (_, r)| acc + r)
    }

    pub fn get(&self, row: usize) -> BigRational {
        self.0
            .iter()
            .find(|(i, _)| *i == row)
            .map(|(_, r)| r.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `δ_i(λ)` from the product form, for any 1-based row `i ≤ ℓ(λ)`.
pub fn decay_rate(lambda: &Partition, i: usize) -> BigRational {
    let l = lambda.len();
    let n = lambda.size() as i64;
    let li = lambda.part(i) as i64;
    let mut r = ratio(li + l as i64 - i as i64, n);
    for j in 1..=l {
        if j == i {
            continue;
        }
        let d = li - lambda.part(j) as i64 + j as i64 - i as i64;
        r *= ratio(d - 1, d);
    }
    r
}

/// `δ_i(λ) = dim(λ−□_i)/dim λ` for every corner row.
pub fn decay_rates(lambda: &Partition) -> Result<CornerRates> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition("decay rates need a nonempty diagram".into()));
    }
    Ok(CornerRates(
        lambda
            .removable_rows()
            .into_iter()
            .map(|i| (i, decay_rate(lambda, i)))
            .collect(),
    ))
}

/// The same rates computed directly as dimension ratios.
pub fn decay_rates_by_dimension(lambda: &Partition) -> Result<CornerRates> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition("decay rates need a nonempty diagram".into()));
    }
    let d = BigInt::from(lambda.dim());
    Ok(CornerRates(
        lambda
            .removable_rows()
            .into_iter()
            .map(|i| {
                let mu = lambda.remove_box(i).expect("corner row");
                (i, BigRational::new(BigInt::from(mu.dim()), d.clone()))
            })
            .collect(),
    ))
}

/// `δ*_i(λ) = dim(λ+□_i) / ((|λ|+1)·dim λ)`, via the decay rate of `λ+□_i`.
pub fn growth_rates(lambda: &Partition) -> CornerRates {
    let n1 = BigInt::from(lambda.size() as u64 + 1);
    CornerRates(
        lambda
            .addable_rows()
            .into_iter()
            .map(|i| {
                let mu = lambda.add_box(i).expect("addable row");
                let d = decay_rate(&mu, i);
                (i, (d * BigRational::from_integer(n1.clone())).recip())
            })
            .collect(),
    )
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// `(1/n!)·tr X_1^{k_1}⋯X_s^{k_s}` in the regular representation, by summing
/// `dim λ · dim μ^s · Π c_r^{k_r}` over corner-removal chains `λ ⊃ μ^1 ⊃ ⋯ ⊃ μ^s`.
pub fn jm_trace_via_partitions(n: usize, k: &ExponentVector) -> Result<BigInt> {
    let s = k.len();
    if n <= s {
        return Err(Error::InvalidArgument(format!("need n > s, got n={n}, s={s}")));
    }
    let mut dims: HashMap<Partition, BigInt> = HashMap::new();
    let mut dim_of =
        |p: &Partition| -> BigInt { dims.entry(p.clone()).or_insert_with(|| BigInt::from(p.dim())).clone() };
    let mut total = BigInt::zero();
    for lambda in partitions_of(n) {
        let dl = dim_of(&lambda);
        let mut chain_sum = BigInt::zero();
        let mut stack: Vec<(Partition, usize, BigInt)> = vec![(lambda, 0, BigInt::one())];
        while let Some((mu, depth, weight)) = stack.pop() {
            if depth == s {
                chain_sum += weight * dim_of(&mu);
                continue;
            }
            for i in mu.removable_rows() {
                let c = BigInt::from(mu.corner_content(i));
                let w = &weight * num_traits::pow(c, k.as_slice()[depth] as usize);
                if w.is_zero() {
                    continue;
                }
                stack.push((mu.remove_box(i)?, depth + 1, w));
            }
        }
        total += dl * chain_sum;
    }
    let f = BigInt::from(factorial(n));
    let (q, r) = total.div_rem(&f);
    assert!(r.is_zero(), "trace sum {total} not divisible by {n}!");
    Ok(q)
}

/// Exact rational as f64.
pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    // scale to keep both parts representable
    let n = r.numer();
    let d = r.denom();
    let shift = (n.bits() as i64).max(d.bits() as i64) - 900;
    if shift > 0 {
        let s = shift as usize;
        let nf = (n.abs() >> s).to_f64().unwrap_or(f64::INFINITY);
        let df = (d >> s).to_f64().unwrap_or(f64::INFINITY);
        let v = nf / df;
        if n.is_negative() {
            -v
        } else {
            v
        }
    } else {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        ratio(a, b)
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("3, 1".parse::<Partition>().unwrap(), p(&[3, 1]));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(p(&[5]).dim(), BigUint::one());
        assert_eq!(p(&[2, 1]).dim(), BigUint::from(2u32));
        assert_eq!(p(&[3, 2]).dim(), BigUint::from(5u32));
        assert_eq!(p(&[3, 2]).hook_lengths(), vec![vec![4, 3, 1], vec![2, 1]]);
    }

    #[test]
    fn hook_and_product_formulas_agree() {
        for n in 1..=14 {
            for lambda in partitions_of(n) {
                assert_eq!(lambda.dim_hook(), lambda.dim_product(), "{lambda}");
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn plancherel_examples() {
        assert_eq!(plancherel_mass(&p(&[1])), q(1, 1));
        assert_eq!(plancherel_mass(&p(&[2, 1])), q(2, 3));
        for n in 0..=10 {
            let total = partitions_of(n)
                .iter()
                .fold(BigRational::zero(), |a, l| a + plancherel_mass(l));
            assert_eq!(total, q(1, 1), "n = {n}");
        }
    }

    #[test]
    fn plancherel_conjugation_symmetry() {
        for lambda in partitions_of(9) {
            assert_eq!(plancherel_mass(&lambda), plancherel_mass(&lambda.conjugate()));
            assert_eq!(lambda.conjugate().conjugate(), lambda);
        }
    }

    #[test]
    fn decay_rate_examples() {
        assert_eq!(decay_rates(&p(&[4])).unwrap().0, vec![(1, q(1, 1))]);
        assert_eq!(decay_rates(&p(&[2, 1])).unwrap().0, vec![(1, q(1, 2)), (2, q(1, 2))]);
        // non-corner rows vanish under the product form
        assert!(decay_rate(&p(&[2, 2]), 1).is_zero());
    }

    #[test]
    fn decay_product_form_matches_dimension_ratio() {
        for n in 1..=12 {
            for lambda in partitions_of(n) {
                let a = decay_rates(&lambda).unwrap();
                assert_eq!(a, decay_rates_by_dimension(&lambda).unwrap(), "{lambda}");
                assert_eq!(a.total(), q(1, 1));
            }
        }
    }

    #[test]
    fn growth_rate_examples() {
        assert_eq!(growth_rates(&Partition::empty()).0, vec![(1, q(1, 1))]);
        assert_eq!(growth_rates(&p(&[1])).0, vec![(1, q(1, 2)), (2, q(1, 2))]);
    }

    #[test]
    fn growth_rates_are_probabilities() {
        for n in 0..=12 {
            for lambda in partitions_of(n) {
                let g = growth_rates(&lambda);
                assert_eq!(g.total(), q(1, 1), "{lambda}");
                let d = BigInt::from(lambda.dim()) * BigInt::from(n as u64 + 1);
                for (i, r) in &g.0 {
                    let up = BigInt::from(lambda.add_box(*i).unwrap().dim());
                    assert_eq!(*r, BigRational::new(up, d.clone()));
                }
            }
        }
    }

    #[test]
    fn pushforward_identity() {
        for n in 0..=9 {
            let lhs = partitions_of(n).iter().fold(BigRational::zero(), |a, l| {
                a + growth_rates(l).get(1) * plancherel_mass(l)
            });
            let rhs = partitions_of(n + 1).iter().fold(BigRational::zero(), |a, l| {
                a + decay_rates(l).unwrap().get(1) * plancherel_mass(l)
            });
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn growth_chain_pushes_plancherel_forward() {
        for n in 0..=8 {
            let mut next: HashMap<Partition, BigRational> = HashMap::new();
            for l in partitions_of(n) {
                let m = plancherel_mass(&l);
                for (i, r) in growth_rates(&l).0 {
                    *next.entry(l.add_box(i).unwrap()).or_insert_with(BigRational::zero) += &m * r;
                }
            }
            for l in partitions_of(n + 1) {
                assert_eq!(next[&l], plancherel_mass(&l));
            }
        }
    }

    #[test]
    fn partition_trace_examples() {
        let k = |v: &[u32]| ExponentVector::new(v.to_vec()).unwrap();
        assert_eq!(jm_trace_via_partitions(2, &k(&[2])).unwrap(), BigInt::from(1));
        assert_eq!(jm_trace_via_partitions(3, &k(&[4])).unwrap(), BigInt::from(6));
        assert_eq!(jm_trace_via_partitions(3, &k(&[1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn traces_agree_small() {
        use crate::symgroup::jm_trace_direct;
        for n in 2..=5 {
            for kv in [vec![2], vec![4], vec![1, 1], vec![2, 2], vec![3, 1], vec![1, 3]] {
                if kv.len() >= n {
                    continue;
                }
                let k = ExponentVector::new(kv).unwrap();
                let direct = jm_trace_direct(n, &k, false).unwrap();
                assert_eq!(
                    jm_trace_via_partitions(n, &k).unwrap(),
                    BigInt::from(direct),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn f64_conversion_of_huge_rationals() {
        let big = BigRational::new(
            BigInt::from(3) * num_traits::pow(BigInt::from(10), 400),
            num_traits::pow(BigInt::from(10), 400),
        );
        assert!((to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
