//! Truncated power series with exact rational coefficients.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partitions::factorial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Keeps the first `len` coefficients, padding with zeros.
    pub fn new(mut coeffs: Vec<BigRational>, len: usize) -> Self {
        coeffs.resize(len, BigRational::zero());
        Series { coeffs }
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> BigRational) -> Self {
        Series {
            coeffs: (0..len).map(f).collect(),
        }
    }

    pub fn one(len: usize) -> Self {
        Self::from_fn(len, |i| {
            if i == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitutes `x → x^m`, keeping the length.
    pub fn stretch(&self, m: usize) -> Series {
        Series::from_fn(self.len(), |i| {
            if i % m == 0 {
                self.coeff(i / m)
            } else {
                BigRational::zero()
            }
        })
    }

    /// Multiplies by `x^m`, keeping the length.
    pub fn shift(&self, m: usize) -> Series {
        Series::from_fn(
            self.len(),
            |i| {
                if i >= m {
                    self.coeff(i - m)
                } else {
                    BigRational::zero()
                }
            },
        )
    }

    /// `self / other`; panics if `other` has zero constant term.
    pub fn div(&self, other: &Series) -> Series {
        let len = self.len().min(other.len());
        let b0 = other.coeff(0);
        assert!(!b0.is_zero(), "series division by a non-unit");
        let mut q: Vec<BigRational> = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = self.coeff(i);
            for j in 1..=i {
                let bj = &other.coeffs[j];
                if !bj.is_zero() {
                    acc -= bj * &q[i - j];
                }
            }
            q.push(acc / &b0);
        }
        Series { coeffs: q }
    }

    pub fn pow(&self, mut e: u64) -> Series {
        let mut base = self.clone();
        let mut acc = Series::one(self.len());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(1 + c·x)^α` for rational `α`.
    pub fn binomial(alpha: &BigRational, c: &BigRational, len: usize) -> Series {
        let mut coeffs = Vec::with_capacity(len);
        let mut term = BigRational::one();
        for j in 0..len {
            coeffs.push(term.clone());
            let jj = BigRational::from_integer(BigInt::from(j as u64));
            term = term * (alpha - &jj) * c / (jj + BigRational::one());
        }
        Series { coeffs }
    }

    /// `Σ x^j / j!` restricted to the given parity, i.e. cosh or sinh-like sums
    /// of `a·x`.
    pub fn exp_parity(a: &BigRational, odd: bool, len: usize) -> Series {
        Series::from_fn(len, |j| {
            if (j % 2 == 1) == odd {
                num_traits::pow(a.clone(), j) / BigRational::from_integer(factorial(j).into())
            } else {
                BigRational::zero()
            }
        })
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let len = self.len().min(rhs.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let len = self.len().max(rhs.len());
        Series::from_fn(len, |i| self.coeff(i) + rhs.coeff(i))
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let len = self.len().max(rhs.len());
        Series::from_fn(len, |i| self.coeff(i) - rhs.coeff(i))
    }
}
