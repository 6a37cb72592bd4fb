//! The graded-commutative algebra `F_p[t_1..t_n] ⊗ Λ(dt_1..dt_n)`.
//!
//! `t_i` sits in degree 2 and `dt_i` in degree 1. Indices are 0-based in the
//! API (`t(0)` is the first polynomial generator); `Display` prints them
//! 1-based. Elements are kept as sorted term lists so equality, hashing of
//! reports and serialization are canonical.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;

pub const MAX_RANK: usize = 8;

/// Rank and prime of the ambient algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KoszulCtx {
    field: FieldCtx,
    n: usize,
}

impl KoszulCtx {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        let field = FieldCtx::new(p)?;
        if n == 0 || n > MAX_RANK {
            return Err(Error::RankOutOfRange(n));
        }
        Ok(Self { field, n })
    }

    #[inline]
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
}

/// `t^a · dt_I`. Ordered lexicographically on (exterior bitset, exponents).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    ext: u8,
    exps: [u16; MAX_RANK],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        ext: 0,
        exps: [0; MAX_RANK],
    };

    /// `exps` lists polynomial exponents, `ext` the (distinct) exterior indices.
    pub fn new(exps: &[u16], ext: &[usize]) -> Self {
        assert!(exps.len() <= MAX_RANK);
        let mut e = [0u16; MAX_RANK];
        e[..exps.len()].copy_from_slice(exps);
        let mut bits = 0u8;
        for &i in ext {
            assert!(
                i < MAX_RANK && bits & (1 << i) == 0,
                "repeated exterior index {i}"
            );
            bits |= 1 << i;
        }
        Self { ext: bits, exps: e }
    }

    #[inline]
    pub fn from_parts(exps: [u16; MAX_RANK], ext: u8) -> Self {
        Self { ext, exps }
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_RANK] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn ext_bits(&self) -> u8 {
        self.ext
    }

    #[inline]
    pub fn ext_len(&self) -> usize {
        self.ext.count_ones() as usize
    }

    pub fn ext_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_RANK).filter(move |i| self.ext & (1 << i) != 0)
    }

    #[inline]
    pub fn poly_degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        2 * self.poly_degree() + self.ext_len()
    }

    #[inline]
    pub fn is_polynomial(&self) -> bool {
        self.ext == 0
    }

    /// Product of two monomials: `None` if the exterior parts overlap,
    /// otherwise the product and whether the Koszul sign is negative.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.ext & other.ext != 0 {
            return None;
        }
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Some((
            Monomial {
                ext: self.ext | other.ext,
                exps,
            },
            ext_merge_odd(self.ext, other.ext),
        ))
    }

    /// Polynomial divisibility `self | other` on exponents, ignoring exterior parts.
    pub fn poly_divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("t{}", i + 1)),
                _ => parts.push(format!("t{}^{}", i + 1, e)),
            }
        }
        for i in self.ext_indices() {
            parts.push(format!("dt{}", i + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Parity of the number of inversions when `dt_a · dt_b` (both increasing)
/// is sorted into increasing order.
#[inline]
pub(crate) fn ext_merge_odd(a: u8, b: u8) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += ((a as u32) >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// Sign of the permutation sorting the concatenation `(I, J)` into increasing
/// order; `+1` when either side is empty.
pub fn sign_interleave(i: &[usize], j: &[usize]) -> Result<i32> {
    if i.iter().any(|x| j.contains(x)) {
        return Err(Error::OverlappingSubsets);
    }
    let seq: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
    Ok(permutation_sign(&seq))
}

/// Sign of the permutation that sorts `seq` (entries distinct), by inversion count.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inv = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Term accumulator that sorts and merges lazily.
pub(crate) struct Accumulator {
    field: FieldCtx,
    terms: Vec<(Monomial, u32)>,
    limit: usize,
}

impl Accumulator {
    pub(crate) fn new(field: FieldCtx) -> Self {
        Self {
            field,
            terms: Vec::new(),
            limit: 1 << 20,
        }
    }

    #[inline]
    pub(crate) fn push(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        self.terms.push((m, c));
        if self.terms.len() >= self.limit {
            self.compact();
            if self.terms.len() * 2 > self.limit {
                self.limit *= 2;
            }
        }
    }

    fn compact(&mut self) {
        let f = self.field;
        self.terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        self.terms = out;
    }

    pub(crate) fn finish(mut self, ctx: KoszulCtx) -> KoszulElement {
        self.compact();
        KoszulElement {
            ctx,
            terms: self.terms,
        }
    }
}

/// An element of `H*(BA_n)`: sorted list of (monomial, nonzero coefficient).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoszulElement {
    ctx: KoszulCtx,
    terms: Vec<(Monomial, u32)>,
}

/// Canonical wire form of an element: `(exponents, exterior bitset, coefficient)`
/// triples in the fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedElement {
    pub p: u32,
    pub n: usize,
    pub terms: Vec<(Vec<u16>, u8, u32)>,
}

impl KoszulElement {
    pub fn zero(ctx: KoszulCtx) -> Self {
        Self {
            ctx,
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: KoszulCtx) -> Self {
        Self::monomial(ctx, Monomial::ONE, 1)
    }

    pub fn monomial(ctx: KoszulCtx, m: Monomial, c: u32) -> Self {
        let c = c % ctx.p();
        if c == 0 {
            Self::zero(ctx)
        } else {
            Self {
                ctx,
                terms: vec![(m, c)],
            }
        }
    }

    pub fn scalar(ctx: KoszulCtx, c: i64) -> Self {
        Self::monomial(ctx, Monomial::ONE, ctx.field().reduce(c))
    }

    /// The polynomial generator `t_i` (0-based).
    pub fn t(ctx: KoszulCtx, i: usize) -> Self {
        assert!(i < ctx.n());
        let mut e = [0u16; MAX_RANK];
        e[i] = 1;
        Self::monomial(ctx, Monomial::from_parts(e, 0), 1)
    }

    /// The exterior generator `dt_i` (0-based).
    pub fn dt(ctx: KoszulCtx, i: usize) -> Self {
        assert!(i < ctx.n());
        Self::monomial(ctx, Monomial::from_parts([0; MAX_RANK], 1 << i), 1)
    }

    pub fn from_terms(ctx: KoszulCtx, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut acc = Accumulator::new(*ctx.field());
        for (m, c) in terms {
            acc.push(m, ctx.field().reduce(c));
        }
        acc.finish(ctx)
    }

    #[inline]
    pub fn ctx(&self) -> KoszulCtx {
        self.ctx
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| t.0.cmp(m))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Leading (largest) monomial in the fixed order.
    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.last()
    }

    /// Common degree of all terms; `Ok(None)` for zero.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut it = self.terms.iter().map(|t| t.0.degree());
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::MixedDegree)
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_polynomial())
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.combine(other, self.ctx.p() - 1))
    }

    /// `self + c · other` by a sorted merge.
    fn combine(&self, other: &Self, c: u32) -> Self {
        let f = *self.ctx.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let v = f.mul(b[j].1, c);
                if v != 0 {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = f.add(a[i].1, f.mul(b[j].1, c));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        Self {
            ctx: self.ctx,
            terms: out,
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.ctx.field();
        let c = c % f.p();
        if c == 0 {
            return Self::zero(self.ctx);
        }
        Self {
            ctx: self.ctx,
            terms: self.terms.iter().map(|&(m, v)| (m, f.mul(v, c))).collect(),
        }
    }

    /// Graded-commutative product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let f = *self.ctx.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ctx));
        }
        if self.len() == 1 && self.terms[0].0 == Monomial::ONE {
            return Ok(other.scale(self.terms[0].1));
        }
        let mut acc = Accumulator::new(f);
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                if let Some((m, odd)) = ma.mul(&mb) {
                    let c = f.mul(ca, cb);
                    acc.push(m, if odd { f.neg(c) } else { c });
                }
            }
        }
        Ok(acc.finish(self.ctx))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx);
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

    /// Linear extension of a map defined on monomials. `image` pushes the
    /// image terms of a single monomial into the output buffer.
    pub fn map_linear(&self, mut image: impl FnMut(&Monomial, &mut Vec<(Monomial, u32)>)) -> Self {
        let f = *self.ctx.field();
        let mut acc = Accumulator::new(f);
        let mut buf = Vec::new();
        for &(m, c) in &self.terms {
            buf.clear();
            image(&m, &mut buf);
            for &(mm, cc) in &buf {
                acc.push(mm, f.mul(c, cc));
            }
        }
        acc.finish(self.ctx)
    }

    /// Keep only terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            ctx: self.ctx,
            terms: self.terms.iter().copied().filter(|t| keep(&t.0)).collect(),
        }
    }

    pub fn to_serialized(&self) -> SerializedElement {
        let n = self.ctx.n();
        SerializedElement {
            p: self.ctx.p(),
            n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.exps()[..n].to_vec(), m.ext_bits(), *c))
                .collect(),
        }
    }

    pub fn from_serialized(s: &SerializedElement) -> Result<Self> {
        let ctx = KoszulCtx::new(s.p, s.n)?;
        let mut terms = Vec::with_capacity(s.terms.len());
        for (exps, ext, c) in &s.terms {
            if exps.len() != s.n || (*ext as u32) >> s.n != 0 {
                return Err(Error::DimensionMismatch {
                    expected: s.n,
                    got: exps.len(),
                });
            }
            let mut e = [0u16; MAX_RANK];
            e[..s.n].copy_from_slice(exps);
            terms.push((Monomial::from_parts(e, *ext), *c as i64));
        }
        Ok(Self::from_terms(ctx, terms))
    }
}

impl fmt::Display for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ctx.p();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            // print coefficients in the symmetric range so -1 shows as a sign
            let (neg, mag) = if *c > p / 2 {
                (true, p - c)
            } else {
                (false, *c)
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 || *m == Monomial::ONE {
                if *m == Monomial::ONE {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "{mag} {m}")?;
                }
            } else {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &KoszulElement {
    type Output = KoszulElement;
    fn add(self, rhs: Self) -> KoszulElement {
        self.try_add(rhs).expect("context mismatch in addition")
    }
}

impl Sub for &KoszulElement {
    type Output = KoszulElement;
    fn sub(self, rhs: Self) -> KoszulElement {
        self.try_sub(rhs).expect("context mismatch in subtraction")
    }
}

impl Mul for &KoszulElement {
    type Output = KoszulElement;
    fn mul(self, rhs: Self) -> KoszulElement {
        self.multiply(rhs).expect("context mismatch in product")
    }
}

impl Neg for &KoszulElement {
    type Output = KoszulElement;
    fn neg(self) -> KoszulElement {
        self.scale(self.ctx.p() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, n: usize) -> KoszulCtx {
        KoszulCtx::new(p, n).unwrap()
    }

    #[test]
    fn exterior_square_vanishes() {
        let c = ctx(3, 2);
        let d1 = KoszulElement::dt(c, 0);
        assert!((&d1 * &d1).is_zero());
    }

    #[test]
    fn transposition_sign() {
        let c = ctx(3, 2);
        let lhs = &KoszulElement::dt(c, 1) * &KoszulElement::dt(c, 0);
        let u2 = &KoszulElement::dt(c, 0) * &KoszulElement::dt(c, 1);
        assert_eq!(lhs, -&u2);
    }

    #[test]
    fn mixed_product_sign() {
        // (t1 dt2)(t2 dt1) = t1 t2 dt2 dt1 = -t1 t2 dt1 dt2
        let c = ctx(5, 2);
        let a = KoszulElement::monomial(c, Monomial::new(&[1, 0], &[1]), 1);
        let b = KoszulElement::monomial(c, Monomial::new(&[0, 1], &[0]), 1);
        let expected = KoszulElement::monomial(c, Monomial::new(&[1, 1], &[0, 1]), 4);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn interleave_signs() {
        assert_eq!(sign_interleave(&[], &[0]).unwrap(), 1);
        assert_eq!(sign_interleave(&[0], &[1]).unwrap(), 1);
        assert_eq!(sign_interleave(&[1], &[0]).unwrap(), -1);
        assert_eq!(sign_interleave(&[2], &[0, 1]).unwrap(), 1);
        assert_eq!(sign_interleave(&[0], &[0]), Err(Error::OverlappingSubsets));
    }

    #[test]
    fn ext_merge_matches_permutation_sign() {
        for a in 0u8..16 {
            for b in 0u8..16 {
                if a & b != 0 {
                    continue;
                }
                let ia: Vec<usize> = (0..4).filter(|i| a & (1 << i) != 0).collect();
                let ib: Vec<usize> = (0..4).filter(|i| b & (1 << i) != 0).collect();
                let s = sign_interleave(&ia, &ib).unwrap();
                assert_eq!(ext_merge_odd(a, b), s == -1);
            }
        }
    }

    #[test]
    fn degree_queries() {
        let c = ctx(3, 2);
        let x = &KoszulElement::t(c, 0) + &KoszulElement::dt(c, 1);
        assert_eq!(x.degree(), Err(Error::MixedDegree));
        assert_eq!(KoszulElement::zero(c).degree(), Ok(None));
        assert_eq!(KoszulElement::t(c, 1).degree(), Ok(Some(2)));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = KoszulElement::t(ctx(3, 2), 0);
        let b = KoszulElement::t(ctx(3, 3), 0);
        assert_eq!(a.multiply(&b), Err(Error::ContextMismatch));
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn serialization_roundtrip() {
        let c = ctx(5, 3);
        let x =
            &(&KoszulElement::t(c, 0) * &KoszulElement::dt(c, 2)) - &KoszulElement::dt(c, 1).pow(1);
        let s = x.to_serialized();
        assert_eq!(KoszulElement::from_serialized(&s).unwrap(), x);
    }

    #[test]
    fn display_is_readable() {
        let c = ctx(3, 2);
        let x = &KoszulElement::t(c, 0) - &KoszulElement::dt(c, 1);
        assert_eq!(x.to_string(), "t1 - dt2");
    }
}
