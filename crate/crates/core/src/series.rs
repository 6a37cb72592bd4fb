//! Truncated integer power series in `t`, used for Poincaré series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Coefficients of `t^0 … t^D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Series {
    coeffs: Vec<i64>,
}

impl Series {
    pub fn zero(max_deg: usize) -> Self {
        Self {
            coeffs: vec![0; max_deg + 1],
        }
    }

    pub fn one(max_deg: usize) -> Self {
        Self::monomial(max_deg, 0, 1)
    }

    /// `c · t^d`, dropped if `d` exceeds the truncation.
    pub fn monomial(max_deg: usize, d: usize, c: i64) -> Self {
        let mut s = Self::zero(max_deg);
        if d <= max_deg {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn from_coeffs(max_deg: usize, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(max_deg);
        for (d, &c) in coeffs.iter().enumerate().take(max_deg + 1) {
            s.coeffs[d] = c;
        }
        s
    }

    /// `Σ_g t^g`.
    pub fn sum_of_powers(max_deg: usize, degrees: &[usize]) -> Self {
        let mut s = Self::zero(max_deg);
        for &d in degrees {
            if d <= max_deg {
                s.coeffs[d] += 1;
            }
        }
        s
    }

    /// `1 / ∏ (1 − t^r)`: the series of a polynomial ring on generators of the given degrees.
    pub fn polynomial_ring(max_deg: usize, degrees: &[usize]) -> Self {
        let mut s = Self::one(max_deg);
        for &r in degrees {
            assert!(r > 0, "polynomial generator of degree 0");
            for d in r..=max_deg {
                s.coeffs[d] += s.coeffs[d - r];
            }
        }
        s
    }

    /// Series of the free module over `ring_degrees` on generators of `gen_degrees`.
    pub fn free_module(max_deg: usize, ring_degrees: &[usize], gen_degrees: &[usize]) -> Self {
        &Self::polynomial_ring(max_deg, ring_degrees) * &Self::sum_of_powers(max_deg, gen_degrees)
    }

    #[inline]
    pub fn max_deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.max_deg());
        for d in k..=self.max_deg() {
            s.coeffs[d] = self.coeffs[d - k];
        }
        s
    }

    /// Keep only even (or only odd) degrees.
    pub fn parity(&self, even: bool) -> Self {
        let mut s = self.clone();
        for (d, c) in s.coeffs.iter_mut().enumerate() {
            if (d % 2 == 0) != even {
                *c = 0;
            }
        }
        s
    }

    pub fn even(&self) -> Self {
        self.parity(true)
    }

    pub fn odd(&self) -> Self {
        self.parity(false)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// First degree with a negative coefficient.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c < 0)
    }

    pub fn truncate(&self, max_deg: usize) -> Self {
        Self::from_coeffs(max_deg, &self.coeffs)
    }

    /// Nonzero terms as `(degree, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|e| *e.1 != 0)
            .map(|(d, &c)| (d, c))
            .collect()
    }

    fn zip(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(
            self.max_deg(),
            other.max_deg(),
            "series truncated at different degrees"
        );
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let max = self.max_deg();
        assert_eq!(max, rhs.max_deg(), "series truncated at different degrees");
        let mut s = Series::zero(max);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs[..=max - i].iter().enumerate() {
                s.coeffs[i + j] += a * b;
            }
        }
        s
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|&(d, c)| match (d, c) {
                (0, c) => c.to_string(),
                (d, 1) => format!("t^{d}"),
                (d, c) => format!("{c}t^{d}"),
            })
            .collect();
        write!(f, "{} + O(t^{})", parts.join(" + "), self.max_deg() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric() {
        let s = Series::polynomial_ring(10, &[2]);
        assert_eq!(s.coeffs(), &[1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let one_minus = &Series::one(10) - &Series::monomial(10, 2, 1);
        assert_eq!(&s * &one_minus, Series::one(10));
    }

    #[test]
    fn sl2_invariant_series_at_three() {
        let s = Series::free_module(20, &[8, 12], &[0, 2, 3, 7]);
        let expect = [
            1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0, 1, 2, 1, 0, 1, 2, 1,
        ];
        assert_eq!(s.coeffs(), &expect);
    }

    #[test]
    fn shift_and_parity() {
        let s = Series::sum_of_powers(6, &[0, 1, 5]);
        assert_eq!(s.shift(2).terms(), vec![(2, 1), (3, 1)]);
        assert_eq!(s.even().terms(), vec![(0, 1)]);
        assert_eq!(s.odd().terms(), vec![(1, 1), (5, 1)]);
        assert_eq!((&s - &s.shift(1)).first_negative(), Some(2));
    }
}
