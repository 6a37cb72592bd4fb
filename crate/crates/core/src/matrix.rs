//! Invertible matrices over F_p and their action on `H*(BA_n)`.
//!
//! Row convention: `g` sends `t_i ↦ Σ_j g[i][j] t_j` and `dt_i ↦ Σ_j g[i][j] dt_j`.
//! Under this convention substitution composes contravariantly:
//! `apply(g·h, x) = apply(h, apply(g, x))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::koszul::{KoszulCtx, KoszulElement, Monomial, MAX_RANK};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixGL {
    field: FieldCtx,
    n: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for MatrixGL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = self.entries.chunks(self.n).collect();
        write!(f, "MatrixGL(p={}, {:?})", self.field.p(), rows)
    }
}

impl MatrixGL {
    /// Build from integer rows (reduced mod p); fails if singular.
    pub fn new(field: FieldCtx, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::RankOutOfRange(n));
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().map(|&v| field.reduce(v)));
        }
        let m = Self { field, n, entries };
        if m.det() == 0 {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity(field: FieldCtx, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self { field, n, entries }
    }

    /// Elementary transvection `1 + c·E_{ij}` (i ≠ j), i.e. `t_i ↦ t_i + c t_j`.
    pub fn transvection(field: FieldCtx, n: usize, i: usize, j: usize, c: i64) -> Self {
        assert!(i != j && i < n && j < n);
        let mut m = Self::identity(field, n);
        m.entries[i * n + j] = field.reduce(c);
        m
    }

    pub fn diagonal(field: FieldCtx, diag: &[i64]) -> Result<Self> {
        let n = diag.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect())
            .collect();
        Self::new(field, &rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> FieldCtx {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let f = self.field;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] = f.add(entries[i * n + j], f.mul(a, other.get(k, j)));
                }
            }
        }
        Self {
            field: f,
            n,
            entries,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self) -> u32 {
        let f = self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Self {
        let f = self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(f, n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0).expect("invertible");
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let s = f.inv(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], s);
                inv[col * n + j] = f.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Self {
            field: f,
            n,
            entries: inv,
        }
    }
}

/// Memoized substitution action of one matrix.
pub struct MatrixAction {
    ctx: KoszulCtx,
    t_powers: Vec<Vec<KoszulElement>>,
    dt_images: Vec<KoszulElement>,
}

impl MatrixAction {
    pub fn new(g: &MatrixGL, ctx: KoszulCtx) -> Result<Self> {
        if g.n() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                got: g.n(),
            });
        }
        if g.field().p() != ctx.p() {
            return Err(Error::ContextMismatch);
        }
        let n = ctx.n();
        let mut t_powers = Vec::with_capacity(n);
        let mut dt_images = Vec::with_capacity(n);
        for i in 0..n {
            let mut t_terms = Vec::new();
            let mut dt_terms = Vec::new();
            for j in 0..n {
                let c = g.get(i, j) as i64;
                if c != 0 {
                    let mut e = [0u16; MAX_RANK];
                    e[j] = 1;
                    t_terms.push((Monomial::from_parts(e, 0), c));
                    dt_terms.push((Monomial::from_parts([0; MAX_RANK], 1 << j), c));
                }
            }
            t_powers.push(vec![
                KoszulElement::one(ctx),
                KoszulElement::from_terms(ctx, t_terms),
            ]);
            dt_images.push(KoszulElement::from_terms(ctx, dt_terms));
        }
        Ok(Self {
            ctx,
            t_powers,
            dt_images,
        })
    }

    fn t_power(&mut self, i: usize, a: usize) -> &KoszulElement {
        while self.t_powers[i].len() <= a {
            let next = {
                let v = &self.t_powers[i];
                v.last().unwrap() * &v[1]
            };
            self.t_powers[i].push(next);
        }
        &self.t_powers[i][a]
    }

    pub fn apply_monomial(&mut self, m: &Monomial) -> KoszulElement {
        let mut acc = KoszulElement::one(self.ctx);
        for i in 0..self.ctx.n() {
            let a = m.exp(i) as usize;
            if a > 0 {
                let pw = self.t_power(i, a).clone();
                acc = &acc * &pw;
            }
        }
        for i in m.ext_indices() {
            acc = &acc * &self.dt_images[i];
        }
        acc
    }

    pub fn apply(&mut self, x: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero(self.ctx);
        for &(m, c) in x.terms() {
            let img = self.apply_monomial(&m).scale(c);
            out = &out + &img;
        }
        out
    }
}

/// Algebra automorphism of `H*(BA_n)` induced by `g`.
pub fn apply_matrix(g: &MatrixGL, x: &KoszulElement) -> Result<KoszulElement> {
    if g.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    Ok(MatrixAction::new(g, x.ctx())?.apply(x))
}

/// Breadth-first closure of the group generated by `gens`; `None` if the
/// order exceeds `limit`.
pub fn enumerate_group(gens: &[MatrixGL], limit: usize) -> Option<Vec<MatrixGL>> {
    let first = gens.first()?;
    let id = MatrixGL::identity(first.field(), first.n());
    let mut seen: HashSet<MatrixGL> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return None;
                }
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Some(order)
}

pub fn group_order(gens: &[MatrixGL], limit: usize) -> Option<usize> {
    enumerate_group(gens, limit).map(|g| g.len())
}

/// `|GL_n(F_p)|` and `|SL_n(F_p)|` by the order formula.
pub fn gl_order(p: u64, n: u32) -> u64 {
    (0..n).map(|i| p.pow(n) - p.pow(i)).product()
}

pub fn sl_order(p: u64, n: u32) -> u64 {
    gl_order(p, n) / (p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            MatrixGL::new(f(3), &[vec![1, 2], vec![2, 4]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn identity_acts_trivially() {
        let ctx = KoszulCtx::new(3, 2).unwrap();
        let x =
            &(&KoszulElement::t(ctx, 0) * &KoszulElement::dt(ctx, 1)) + &KoszulElement::t(ctx, 1);
        assert_eq!(apply_matrix(&MatrixGL::identity(f(3), 2), &x).unwrap(), x);
    }

    #[test]
    fn swap_negates_top_class() {
        let ctx = KoszulCtx::new(3, 2).unwrap();
        let u2 = &KoszulElement::dt(ctx, 0) * &KoszulElement::dt(ctx, 1);
        let swap = MatrixGL::new(f(3), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(apply_matrix(&swap, &u2).unwrap(), -&u2);
    }

    #[test]
    fn transvection_fixes_top_class() {
        let ctx = KoszulCtx::new(5, 2).unwrap();
        let u2 = &KoszulElement::dt(ctx, 0) * &KoszulElement::dt(ctx, 1);
        let g = MatrixGL::transvection(f(5), 2, 0, 1, 1);
        assert_eq!(apply_matrix(&g, &u2).unwrap(), u2);
    }

    #[test]
    fn determinant_and_inverse() {
        let g = MatrixGL::new(f(5), &[vec![1, 2, 0], vec![0, 3, 1], vec![4, 0, 2]]).unwrap();
        assert!(g.mul(&g.inverse()).is_identity());
        assert_eq!(g.mul(&g.inverse()).det(), 1);
    }

    #[test]
    fn orders() {
        assert_eq!(sl_order(3, 2), 24);
        assert_eq!(sl_order(3, 3), 5616);
        assert_eq!(gl_order(3, 2), 48);
    }
}
