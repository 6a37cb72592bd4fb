//! Arithmetic in the prime field F_p for small odd primes.

use crate::error::{Error, Result};

/// The prime field F_p. Scalars are `u32` values reduced to `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u32,
}

impl FieldCtx {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// Signed unit `(-1)^e` as a field element.
    #[inline]
    pub fn sign(&self, odd: bool) -> u32 {
        if odd {
            self.p - 1
        } else {
            1
        }
    }

    /// Binomial coefficient `C(n, k)` reduced mod p, via Lucas' theorem.
    pub fn binom(&self, mut n: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u32;
        while k > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, small_binom(nd, kd, self));
            n /= p;
            k /= p;
        }
        acc
    }

    /// A fixed generator of the multiplicative group: the smallest primitive root.
    pub fn primitive_root(&self) -> u32 {
        let order = self.p - 1;
        let factors: Vec<u32> = (2..=order)
            .filter(|q| order.is_multiple_of(*q) && is_prime(*q))
            .collect();
        (2..self.p)
            .find(|&g| factors.iter().all(|q| self.pow(g, (order / q) as u64) != 1))
            .expect("prime fields have primitive roots")
    }
}

fn small_binom(n: u64, k: u64, f: &FieldCtx) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = f.mul(num, f.reduce((n - i) as i64));
        den = f.mul(den, f.reduce((i + 1) as i64));
    }
    f.mul(num, f.inv(den))
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite() {
        assert!(FieldCtx::new(2).is_err());
        assert!(FieldCtx::new(9).is_err());
        assert!(FieldCtx::new(1).is_err());
        assert!(FieldCtx::new(7).is_ok());
    }

    #[test]
    fn lucas_matches_pascal() {
        let f = FieldCtx::new(5).unwrap();
        let mut row = vec![1i64];
        for n in 0..40u64 {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(f.binom(n, k as u64), f.reduce(c), "C({n},{k})");
            }
            let mut next = vec![1i64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % 5;
            }
            row = next;
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(FieldCtx::new(3).unwrap().primitive_root(), 2);
        assert_eq!(FieldCtx::new(5).unwrap().primitive_root(), 2);
        assert_eq!(FieldCtx::new(7).unwrap().primitive_root(), 3);
    }

    #[test]
    fn inverses() {
        let f = FieldCtx::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
