use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{covering_census, psi::in_image};
use crate::error::{Error, Result};
use crate::maps::{count_maps, pairing_rec, PolygonGluing, MAX_GLUING_SLOTS};
use crate::ribbon::{contract_phi, enumerate_trivalent, labeled_metric_sum, Contraction};
use crate::series::Series;
use crate::symgroup::ExponentVector;

#[cfg(test)]
/// Compositions of `total` into `s` positive parts.
pub(crate) fn compositions(total: u32, s: usize) -> Vec<Vec<u32>> {
    if s == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if s == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, s - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Coefficient of `z^k` in `¼·z²(1 − √(1−4z²))² / (1−4z²)^{5/2}`: the number
/// of genus-1 coverings with one special sheet and exactly two 3-valent
/// nonspecial sheets.
pub fn cov31_coefficient(k: usize) -> BigUint {
    let len = k + 1;
    let half = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let four = half(-4, 1);
    // series in w = z², stretched back to z
    let root = Series::binomial(&half(1, 2), &four, len).stretch(2);
    let denom = Series::binomial(&half(-5, 2), &four, len).stretch(2);
    let one_minus_root = &Series::one(len) - &root;
    let f = (&(&one_minus_root * &one_minus_root) * &denom)
        .shift(2)
        .scale(&half(1, 4));
    let c = f.coeff(k);
    assert!(c.is_integer(), "non-integral coefficient {c}");
    c.to_integer().to_biguint().expect("negative coefficient")
}

/// `|Cov_g(k)| / |Map_g(k)|` over connected objects.
pub fn covering_map_ratio(g: usize, k: &ExponentVector) -> Result<BigRational> {
    let cov = covering_census(k)?.connected(g);
    let map = count_maps(g, k)?;
    if map == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(BigInt::from(cov), BigInt::from(map)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageFraction {
    pub k: ExponentVector,
    /// Connected maps of genus `g` whose contraction is trivalent.
    pub map3: u64,
    /// Those that also satisfy the image conditions.
    pub map_star: u64,
    pub ratio: f64,
    /// `2^{−6g+6−6s}`.
    pub target: f64,
}

/// Exhaustive `|Map*_g(k)| / |Map³_g(k)|` at one perimeter vector.
pub fn image_fraction(g: usize, k: &ExponentVector) -> Result<ImageFraction> {
    let m = k.total();
    if m > MAX_GLUING_SLOTS {
        return Err(Error::SizeCap(format!(
            "{m} sides exceeds the enumeration cap of {MAX_GLUING_SLOTS}"
        )));
    }
    let s = k.len();
    let (map3, map_star) = if m % 2 == 1 {
        (0, 0)
    } else {
        (1..m)
            .into_par_iter()
            .map(|b| {
                let mut acc = (0u64, 0u64);
                let mut pairing = vec![u32::MAX; m];
                pairing[0] = b as u32;
                pairing[b] = 0;
                pairing_rec(&mut pairing, &mut |p: &[u32]| {
                    let map = PolygonGluing::new(k.clone(), p.to_vec()).expect("valid pairing");
                    if map.genus() != Some(g) {
                        return;
                    }
                    if let Ok(Contraction::Graph(gr, _)) = contract_phi(&map) {
                        if gr.valences().iter().all(|&v| v == 3) {
                            acc.0 += 1;
                            if in_image(&map) {
                                acc.1 += 1;
                            }
                        }
                    }
                });
                acc
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    };
    let exp = -6 * g as i32 + 6 - 6 * s as i32;
    Ok(ImageFraction {
        k: k.clone(),
        map3,
        map_star,
        ratio: if map3 == 0 {
            f64::NAN
        } else {
            map_star as f64 / map3 as f64
        },
        target: 2f64.powi(exp),
    })
}

/// `|Map³_1(k)|` and `|Map*_1(k)|` for one polygon without enumerating maps:
/// the first from the level-set sum over the trivalent genus-1 classes, the
/// second as `cov31(k − 6)` since Ψ maps coverings with two 3-valent sheets
/// bijectively onto `Map*_1` and adds 6 to the perimeter.
pub fn image_fraction_genus1_exact(k: u32) -> Result<ImageFraction> {
    let mut map3 = BigRational::zero();
    for (gr, aut) in enumerate_trivalent(1, 1)? {
        let sum = BigInt::from(labeled_metric_sum(&gr, &[k as u64]));
        map3 += BigRational::new(sum * BigInt::from(k), BigInt::from(aut));
    }
    assert!(map3.is_integer());
    let map3 = map3
        .to_integer()
        .to_u128()
        .ok_or_else(|| Error::SizeCap(format!("count at k={k} overflows")))?;
    let star = if k >= 6 {
        cov31_coefficient(k as usize - 6)
    } else {
        BigUint::zero()
    };
    let map_star = star
        .to_u128()
        .ok_or_else(|| Error::SizeCap(format!("count at k={k} overflows")))?;
    Ok(ImageFraction {
        k: ExponentVector::single(k)?,
        map3: map3 as u64,
        map_star: map_star as u64,
        ratio: if map3 == 0 {
            f64::NAN
        } else {
            map_star as f64 / map3 as f64
        },
        target: 2f64.powi(-6),
    })
}

/// The ratio for `(g, s) = (g, 1)` at each listed perimeter.
pub fn image_fraction_trend(g: usize, perimeters: &[u32]) -> Result<Vec<ImageFraction>> {
    perimeters
        .iter()
        .map(|&p| image_fraction(g, &ExponentVector::single(p)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::enumerate_coverings;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cov31_values() {
        assert_eq!(cov31_coefficient(6), 1u32.into());
        assert_eq!(cov31_coefficient(8), 12u32.into());
        assert_eq!(cov31_coefficient(10), 95u32.into());
        for k in (1..15).step_by(2) {
            assert!(cov31_coefficient(k).is_zero());
        }
        for k in [0, 2, 4] {
            assert!(cov31_coefficient(k).is_zero());
        }
    }

    #[test]
    fn cov31_matches_enumeration() {
        for k in [6u32, 8, 10, 12] {
            let count = enumerate_coverings(&ev(&[k]))
                .unwrap()
                .iter()
                .filter(|c| {
                    let mut v = c.valences();
                    v.retain(|&x| x != 2);
                    c.genus() == Some(1) && v == vec![3, 3]
                })
                .count();
            assert_eq!(BigUint::from(count), cov31_coefficient(k as usize), "k={k}");
        }
    }

    #[test]
    fn covering_map_ratio_small_cases() {
        let one = BigRational::from_integer(1.into());
        assert_eq!(covering_map_ratio(1, &ev(&[4])).unwrap(), one);
        assert_eq!(covering_map_ratio(1, &ev(&[6])).unwrap(), one);
        for k in [2u32, 4, 6, 8, 10, 12] {
            assert_eq!(covering_map_ratio(0, &ev(&[k])).unwrap(), one);
        }
        assert_eq!(covering_map_ratio(1, &ev(&[2])), Err(Error::ZeroDenominator));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(5, 3).len(), 6);
        assert_eq!(compositions(2, 3).len(), 0);
    }

    #[test]
    fn image_fraction_exact_route_matches_enumeration() {
        for k in [6u32, 8, 10, 12, 14] {
            let a = image_fraction(1, &ev(&[k])).unwrap();
            let b = image_fraction_genus1_exact(k).unwrap();
            assert_eq!((a.map3, a.map_star), (b.map3, b.map_star), "k={k}");
        }
    }

    #[test]
    fn image_fraction_trend_reaches_factor_two() {
        let pts: Vec<f64> = (12..=40)
            .step_by(2)
            .map(|k| {
                let p = image_fraction_genus1_exact(k).unwrap();
                p.ratio / p.target
            })
            .collect();
        assert!(pts.windows(2).all(|w| w[0] < w[1] && w[1] < 1.0));
        // 2^{-6}/2 is first reached at k = 24
        let first = (12..=40).step_by(2).zip(&pts).find(|(_, &r)| r >= 0.5).map(|(k, _)| k);
        assert_eq!(first, Some(24));
    }

    #[test]
    fn image_fraction_small() {
        let p = image_fraction(1, &ev(&[6])).unwrap();
        // only the hexagon torus contracts to the theta at perimeter 6
        assert_eq!(p.map3, 1);
        assert!(p.map_star <= p.map3);
    }
}
