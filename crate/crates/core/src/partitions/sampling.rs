use rand::seq::SliceRandom;
use rand::Rng;

use super::Partition;
use crate::rng;

/// `δ_i(λ)` in floating point, `i` 1-based.
fn decay_rate_f64(parts: &[u32], n: usize, i: usize) -> f64 {
    let l = parts.len();
    let li = parts[i - 1] as i64;
    let mut r = (li + l as i64 - i as i64) as f64 / n as f64;
    for (j0, &pj) in parts.iter().enumerate() {
        let j = j0 + 1;
        if j == i {
            continue;
        }
        let d = (li - pj as i64 + j as i64 - i as i64) as f64;
        r *= 1.0 - 1.0 / d;
    }
    r
}

/// `δ_1(λ)` in floating point.
pub fn decay_rate_first_f64(lambda: &Partition) -> f64 {
    if lambda.is_empty() {
        return 0.0;
    }
    decay_rate_f64(lambda.parts(), lambda.size(), 1)
}

/// Plancherel sample of size `n` built by `n` steps of the growth chain.
///
/// Each step costs O(corners · ℓ(λ)); intended for n up to a few thousand.
pub fn sample_growth(n: usize, seed: u64) -> Partition {
    sample_growth_with(n, &mut rng::stream(seed, 0))
}

pub fn sample_growth_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    let mut parts: Vec<u32> = Vec::new();
    let mut rates: Vec<(usize, f64)> = Vec::new();
    for m in 0..n {
        rates.clear();
        let l = parts.len();
        for i in 1..=l + 1 {
            let prev = if i == 1 { u32::MAX } else { parts[i - 2] };
            let cur = if i <= l { parts[i - 1] } else { 0 };
            if prev <= cur {
                continue;
            }
            if i <= l {
                parts[i - 1] += 1;
            } else {
                parts.push(1);
            }
            let d = decay_rate_f64(&parts, m + 1, i);
            if i <= l {
                parts[i - 1] -= 1;
            } else {
                parts.pop();
            }
            rates.push((i, 1.0 / ((m + 1) as f64 * d)));
        }
        let total: f64 = rates.iter().map(|r| r.1).sum();
        let mut u = rng.gen::<f64>() * total;
        let mut pick = rates.last().expect("at least one addable corner").0;
        for &(i, r) in &rates {
            if u < r {
                pick = i;
                break;
            }
            u -= r;
        }
        if pick <= parts.len() {
            parts[pick - 1] += 1;
        } else {
            parts.push(1);
        }
    }
    Partition::new(parts).expect("growth keeps parts decreasing")
}

/// Plancherel sample of size `n`: the RSK shape of a uniform permutation.
pub fn sample_rsk(n: usize, seed: u64) -> Partition {
    sample_rsk_with(n, &mut rng::stream(seed, 0))
}

pub fn sample_rsk_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    let mut word: Vec<u32> = (0..n as u32).collect();
    word.shuffle(rng);
    rsk_shape(&word)
}

/// Shape of the row-insertion tableau of a word with distinct letters.
pub(crate) fn rsk_shape(word: &[u32]) -> Partition {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &x in word {
        let mut bump = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![bump]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&y| y < bump);
            if pos == row.len() {
                row.push(bump);
                break;
            }
            std::mem::swap(&mut row[pos], &mut bump);
            r += 1;
        }
    }
    Partition::new(rows.iter().map(|r| r.len() as u32).collect()).expect("RSK shape")
}

#[cfg(test)]
mod tests {
    use super::super::{decay_rate, partitions_of, to_f64};
    use super::*;
    use crate::rng::{mean_and_stderr, replicate};

    #[test]
    fn float_rate_matches_exact() {
        for lambda in partitions_of(10) {
            for i in lambda.removable_rows() {
                let exact = to_f64(&decay_rate(&lambda, i));
                let approx = decay_rate_f64(lambda.parts(), lambda.size(), i);
                assert!((exact - approx).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn rsk_shape_of_known_words() {
        assert_eq!(rsk_shape(&[0, 1, 2]).parts(), &[3]);
        assert_eq!(rsk_shape(&[2, 1, 0]).parts(), &[1, 1, 1]);
        assert_eq!(rsk_shape(&[1, 0, 2]).parts(), &[2, 1]);
        // longest increasing subsequence 1,3,4 / 0,3,4 etc.
        assert_eq!(rsk_shape(&[1, 0, 3, 2, 4]).part(1), 3);
    }

    #[test]
    fn tiny_sizes() {
        assert_eq!(sample_growth(1, 1).parts(), &[1]);
        assert_eq!(sample_rsk(1, 1).parts(), &[1]);
        assert!(sample_rsk(0, 1).is_empty());
        assert_eq!(sample_growth(50, 9).size(), 50);
        assert_eq!(sample_rsk(50, 9).size(), 50);
    }

    fn within_three_sigma(hits: usize, trials: usize, p: f64) -> bool {
        let mean = trials as f64 * p;
        let sd = (trials as f64 * p * (1.0 - p)).sqrt();
        (hits as f64 - mean).abs() <= 3.0 * sd
    }

    #[test]
    fn growth_n2_is_fair() {
        let draws = replicate(11, 10_000, |r, _| sample_growth_with(2, r));
        let rows = draws.iter().filter(|l| l.parts() == [2]).count();
        assert!(within_three_sigma(rows, 10_000, 0.5), "{rows}");
    }

    #[test]
    fn rsk_n3_hook_frequency() {
        let draws = replicate(12, 10_000, |r, _| sample_rsk_with(3, r));
        let hooks = draws.iter().filter(|l| l.parts() == [2, 1]).count();
        assert!(within_three_sigma(hooks, 10_000, 2.0 / 3.0), "{hooks}");
    }

    #[test]
    fn samplers_agree_on_first_row_at_100() {
        // Welch two-sample z test on λ₁, 1% two-sided level
        let reps = 2000;
        let a: Vec<f64> = replicate(21, reps, |r, _| sample_growth_with(100, r).part(1) as f64);
        let b: Vec<f64> = replicate(22, reps, |r, _| sample_rsk_with(100, r).part(1) as f64);
        let (ma, sa) = mean_and_stderr(&a);
        let (mb, sb) = mean_and_stderr(&b);
        let z = (ma - mb) / (sa * sa + sb * sb).sqrt();
        assert!(z.abs() < 2.576, "z = {z}");
    }

    #[test]
    fn growth_first_row_concentrates() {
        let n = 10_000;
        let xs: Vec<f64> = replicate(5, 16, |r, _| {
            sample_growth_with(n, r).part(1) as f64 / (n as f64).sqrt()
        });
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((1.9..=2.1).contains(&mean), "{mean}");
    }
}
