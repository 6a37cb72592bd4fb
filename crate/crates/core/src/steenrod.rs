//! Milnor primitives `Q_i` and reduced powers `℘^k` on `H*(BA_n)`.
//!
//! `Q_i` is computed in closed form as the odd derivation `dt_j ↦ t_j^{p^i}`.
//! The commutator recursion `Q_{i+1} = ℘^{p^i} Q_i − Q_i ℘^{p^i}` is exposed
//! separately so the two can be compared.

use crate::error::{Error, Result};
use crate::koszul::{KoszulElement, Monomial, MAX_RANK};

/// The Bockstein, i.e. `Q_0`.
pub fn bockstein(x: &KoszulElement) -> KoszulElement {
    milnor_q(0, x)
}

/// Degree of `Q_i`: `2p^i − 1`.
pub fn milnor_degree(p: u32, i: usize) -> usize {
    2 * (p as usize).pow(i as u32) - 1
}

pub fn milnor_q(i: usize, x: &KoszulElement) -> KoszulElement {
    let ctx = x.ctx();
    let f = *ctx.field();
    let power = (ctx.p() as u16).pow(i as u32);
    let minus_one = f.neg(1);
    x.map_linear(|m, out| {
        let bits = m.ext_bits();
        for (pos, j) in m.ext_indices().enumerate() {
            let mut exps = *m.exps();
            exps[j] += power;
            let img = Monomial::from_parts(exps, bits & !(1u8 << j));
            out.push((img, if pos % 2 == 0 { 1 } else { minus_one }));
        }
    })
}

/// `℘^k` via the total power `t_j ↦ t_j + t_j^p`, `dt_j ↦ dt_j`.
pub fn reduced_power(k: usize, x: &KoszulElement) -> KoszulElement {
    if k == 0 {
        return x.clone();
    }
    let ctx = x.ctx();
    let f = *ctx.field();
    let n = ctx.n();
    let step = (ctx.p() - 1) as u16;
    x.map_linear(|m, out| {
        let mut r = [0u16; MAX_RANK];
        power_terms(f, m, n, 0, k, step, 1, &mut r, out);
    })
}

#[allow(clippy::too_many_arguments)]
fn power_terms(
    f: crate::field::FieldCtx,
    m: &Monomial,
    n: usize,
    pos: usize,
    left: usize,
    step: u16,
    coeff: u32,
    r: &mut [u16; MAX_RANK],
    out: &mut Vec<(Monomial, u32)>,
) {
    if pos == n {
        if left == 0 {
            let mut exps = *m.exps();
            for j in 0..n {
                exps[j] += r[j] * step;
            }
            out.push((Monomial::from_parts(exps, m.ext_bits()), coeff));
        }
        return;
    }
    let a = m.exp(pos) as usize;
    for rj in 0..=a.min(left) {
        let c = f.mul(coeff, f.binom(a as u64, rj as u64));
        if c == 0 {
            continue;
        }
        r[pos] = rj as u16;
        power_terms(f, m, n, pos + 1, left - rj, step, c, r, out);
    }
    r[pos] = 0;
}

/// `Q_i` evaluated through the commutator recursion starting from `β`.
pub fn milnor_q_recursive(i: usize, x: &KoszulElement) -> KoszulElement {
    if i == 0 {
        return bockstein(x);
    }
    let k = (x.ctx().p() as usize).pow(i as u32 - 1);
    let a = reduced_power(k, &milnor_q_recursive(i - 1, x));
    let b = milnor_q_recursive(i - 1, &reduced_power(k, x));
    &a - &b
}

/// An index set `I = {i_1 < … < i_r}` naming `Q_I = Q_{i_1} ⋯ Q_{i_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QComposite {
    indices: Vec<usize>,
}

impl QComposite {
    /// Accepts the indices in any order; repeats are rejected since `Q_i² = 0`.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut v = indices.to_vec();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedIndex(w[0]));
        }
        Ok(Self { indices: v })
    }

    pub fn empty() -> Self {
        Self {
            indices: Vec::new(),
        }
    }

    /// Subset of `{0..n-1}` given as a bitmask.
    pub fn from_mask(mask: u32) -> Self {
        Self {
            indices: (0..32).filter(|b| mask >> b & 1 == 1).collect(),
        }
    }

    pub fn mask(&self) -> u32 {
        self.indices.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    /// Total degree raised by the composite.
    pub fn degree(&self, p: u32) -> usize {
        self.indices.iter().map(|&i| milnor_degree(p, i)).sum()
    }

    pub fn label(&self) -> String {
        if self.indices.is_empty() {
            return String::new();
        }
        self.indices
            .iter()
            .map(|i| format!("Q{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `Q_{i_1}(Q_{i_2}(⋯ Q_{i_r}(x)))`.
pub fn q_composite(q: &QComposite, x: &KoszulElement) -> KoszulElement {
    q.indices
        .iter()
        .rev()
        .fold(x.clone(), |acc, &i| milnor_q(i, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::KoszulCtx;

    fn ctx(p: u32, n: usize) -> KoszulCtx {
        KoszulCtx::new(p, n).unwrap()
    }

    fn dt(c: KoszulCtx, i: usize) -> KoszulElement {
        KoszulElement::dt(c, i)
    }

    fn t(c: KoszulCtx, i: usize) -> KoszulElement {
        KoszulElement::t(c, i)
    }

    #[test]
    fn bockstein_examples() {
        let c = ctx(3, 2);
        assert_eq!(bockstein(&dt(c, 0)), t(c, 0));
        assert!(bockstein(&t(c, 0).pow(5)).is_zero());
        let u2 = &dt(c, 0) * &dt(c, 1);
        let expect = &(&t(c, 0) * &dt(c, 1)) - &(&t(c, 1) * &dt(c, 0));
        assert_eq!(bockstein(&u2), expect);
    }

    #[test]
    fn milnor_examples() {
        for p in [3, 5] {
            let c = ctx(p, 2);
            assert_eq!(milnor_q(1, &dt(c, 0)), t(c, 0).pow(p));
            assert!(milnor_q(1, &t(c, 1).pow(3)).is_zero());
            assert_eq!(milnor_q_recursive(1, &dt(c, 0)), t(c, 0).pow(p));
            assert!(milnor_q_recursive(1, &t(c, 0)).is_zero());
            assert_eq!(milnor_q_recursive(2, &dt(c, 0)), t(c, 0).pow(p * p));
        }
    }

    #[test]
    fn power_examples() {
        let c = ctx(3, 2);
        assert_eq!(reduced_power(1, &t(c, 0)), t(c, 0).pow(3));
        let x = &t(c, 0) * &dt(c, 1);
        assert_eq!(reduced_power(0, &x), x);
        let t1t2 = &t(c, 0) * &t(c, 1);
        let expect = &(&t(c, 0).pow(3) * &t(c, 1)) + &(&t(c, 0) * &t(c, 1).pow(3));
        assert_eq!(reduced_power(1, &t1t2), expect);
        // instability: ℘^k vanishes on classes of degree < 2k
        assert!(reduced_power(2, &t(c, 0)).is_zero());
    }

    #[test]
    fn composite_examples() {
        let c = ctx(3, 2);
        let u2 = &dt(c, 0) * &dt(c, 1);
        assert_eq!(q_composite(&QComposite::empty(), &u2), u2);
        let e2 = &(&t(c, 0).pow(3) * &t(c, 1)) - &(&t(c, 0) * &t(c, 1).pow(3));
        assert_eq!(q_composite(&QComposite::new(&[0, 1]).unwrap(), &u2), e2);
        let c3 = ctx(3, 3);
        let u3 = &(&dt(c3, 0) * &dt(c3, 1)) * &dt(c3, 2);
        let e3 = q_composite(&QComposite::new(&[0, 1, 2]).unwrap(), &u3);
        assert_eq!(e3.degree().unwrap(), Some(26));
        assert!(matches!(
            QComposite::new(&[1, 1]),
            Err(Error::RepeatedIndex(1))
        ));
    }
}
