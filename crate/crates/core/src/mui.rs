//! Dickson and Mui invariants and the invariant rings of `SL_n`, `G_n`, `G_n′`.
//!
//! `G_n` is the group of matrices whose first column is `(1, 0, …, 0)ᵀ` and
//! whose lower-right block lies in `SL_{n−1}`; `G_n′` additionally allows an
//! arbitrary unit in the corner. With the row convention these groups
//! stabilize `V_{n−1} = span(t_2, …, t_n)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::{KoszulCtx, KoszulElement, Monomial};
use crate::linalg::{kernel_chain, DegreeSlice, SliceMap, SparseVec};
use crate::matrix::{MatrixAction, MatrixGL};
use crate::series::Series;
use crate::steenrod::{milnor_q, q_composite, QComposite};

/// Which span of variables a Dickson or top class is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubspaceSpec {
    /// `V_n = span(t_1, …, t_n)`.
    Full,
    /// `V_{n−1} = span(t_2, …, t_n)`.
    Tail,
}

impl SubspaceSpec {
    pub fn vars(self, n: usize) -> std::ops::Range<usize> {
        match self {
            SubspaceSpec::Full => 0..n,
            SubspaceSpec::Tail => 1..n,
        }
    }

    pub fn dim(self, n: usize) -> usize {
        self.vars(n).len()
    }
}

/// Raise a polynomial element to the `p`-th power (Frobenius, exponents times `p`).
pub fn frobenius(x: &KoszulElement) -> KoszulElement {
    assert!(
        x.is_polynomial(),
        "Frobenius is only taken on polynomial elements"
    );
    let p = x.ctx().p() as u16;
    x.map_linear(|m, out| {
        let mut exps = *m.exps();
        exps.iter_mut().for_each(|e| *e *= p);
        out.push((Monomial::from_parts(exps, 0), 1));
    })
}

/// All Dickson invariants `c_{r,0}, …, c_{r,r}` of the span of `vars` (`r = |vars|`).
///
/// The additive polynomial `P_W(X) = ∏_{x∈W}(X − x) = Σ a_j X^{p^j}` satisfies
/// `P_{W+⟨v⟩}(X) = P_W(X)^p − P_W(v)^{p−1} P_W(X)`, which is iterated one
/// variable at a time; then `c_{r,i} = (−1)^{r−i} a_i`.
pub fn dickson_all(ctx: KoszulCtx, vars: &[usize]) -> Vec<KoszulElement> {
    let p = ctx.p();
    let mut a = vec![KoszulElement::one(ctx)];
    for &v in vars {
        let mut w = KoszulElement::zero(ctx);
        let mut tv = KoszulElement::t(ctx, v);
        for aj in &a {
            w = &w + &(aj * &tv);
            tv = frobenius(&tv);
        }
        let wp = w.pow(p - 1);
        let len = a.len();
        let mut next = Vec::with_capacity(len + 1);
        for j in 0..=len {
            let mut term = KoszulElement::zero(ctx);
            if j >= 1 {
                term = frobenius(&a[j - 1]);
            }
            if j < len {
                term = &term - &(&wp * &a[j]);
            }
            next.push(term);
        }
        a = next;
    }
    let r = vars.len();
    a.into_iter()
        .enumerate()
        .map(|(i, ai)| if (r - i) % 2 == 1 { -&ai } else { ai })
        .collect()
}

/// The Dickson invariant `c_{dim V, i}` of `V`.
pub fn dickson(ctx: KoszulCtx, v: SubspaceSpec, i: usize) -> Result<KoszulElement> {
    let vars: Vec<usize> = v.vars(ctx.n()).collect();
    if i > vars.len() {
        return Err(Error::RankOutOfRange(i));
    }
    Ok(dickson_all(ctx, &vars).swap_remove(i))
}

/// Degree of `c_{r,i}`: `2(p^r − p^i)`.
pub fn dickson_degree(p: u32, r: usize, i: usize) -> usize {
    let p = p as usize;
    2 * (p.pow(r as u32) - p.pow(i as u32))
}

/// Degree of `Q_0 ⋯ Q_{r−1} u_r`: `r + Σ_{i<r} (2p^i − 1)`.
pub fn euler_degree(p: u32, r: usize) -> usize {
    r + (0..r)
        .map(|i| 2 * (p as usize).pow(i as u32) - 1)
        .sum::<usize>()
}

/// `u_n` (Full) or `u_{n−1} = dt_2 ⋯ dt_n` (Tail).
pub fn top_form(ctx: KoszulCtx, v: SubspaceSpec) -> KoszulElement {
    let vars: Vec<usize> = v.vars(ctx.n()).collect();
    KoszulElement::monomial(ctx, Monomial::new(&[], &vars), 1)
}

/// `e_n = Q_0 ⋯ Q_{n−1} u_n` (Full) or `e_{n−1} = Q_0 ⋯ Q_{n−2} u_{n−1}` (Tail).
pub fn euler_class(ctx: KoszulCtx, v: SubspaceSpec) -> KoszulElement {
    let r = v.dim(ctx.n());
    let all: Vec<usize> = (0..r).collect();
    q_composite(&QComposite::new(&all).expect("distinct"), &top_form(ctx, v))
}

/// `𝒪_{n−1}(x) = Σ_{j<n} (−1)^{n−1−j} c_{n−1,j} Q_j(x)`, Dickson classes over `V_{n−1}`.
pub fn omega_apply(x: &KoszulElement) -> Result<KoszulElement> {
    let ctx = x.ctx();
    if ctx.n() < 2 {
        return Err(Error::RankOutOfRange(ctx.n()));
    }
    let tail = dickson_all(ctx, &(1..ctx.n()).collect::<Vec<_>>());
    Ok(omega_with(&tail, x))
}

fn omega_with(tail: &[KoszulElement], x: &KoszulElement) -> KoszulElement {
    let top = tail.len() - 1;
    let mut acc = KoszulElement::zero(x.ctx());
    for (j, c) in tail.iter().enumerate() {
        let term = c * &milnor_q(j, x);
        acc = if (top - j) % 2 == 1 {
            &acc - &term
        } else {
            &acc + &term
        };
    }
    acc
}

/// `f_n = 𝒪_{n−1}(dt_1)`.
pub fn f_class(ctx: KoszulCtx) -> Result<KoszulElement> {
    omega_apply(&KoszulElement::dt(ctx, 0))
}

/// `q` with `q · d = x`, for `d` a nonzero polynomial element.
///
/// Each exterior component of `x` is divided by leading-term elimination in the
/// monomial order; the first remainder term not divisible by the leading term
/// of `d` is reported.
pub fn exact_divide(x: &KoszulElement, d: &KoszulElement) -> Result<KoszulElement> {
    if x.ctx() != d.ctx() {
        return Err(Error::ContextMismatch);
    }
    if d.is_zero() || !d.is_polynomial() {
        return Err(Error::BadDivisor);
    }
    let ctx = x.ctx();
    let f = *ctx.field();
    let &(lead, lead_c) = d.leading().expect("nonzero");
    let lead_inv = f.inv(lead_c);
    let rest: Vec<(Monomial, u32)> = d.terms().iter().copied().filter(|t| t.0 != lead).collect();
    let mut quotient: Vec<(Monomial, i64)> = Vec::new();
    let mut rem: BTreeMap<Monomial, u32> = x.terms().iter().copied().collect();
    while let Some((m, c)) = rem.pop_last() {
        if !lead.poly_divides(&m) {
            return Err(Error::NotDivisible {
                witness: format!("{} {}", c, m),
            });
        }
        let mut exps = *m.exps();
        for (e, l) in exps.iter_mut().zip(lead.exps()) {
            *e -= l;
        }
        let qm = Monomial::from_parts(exps, m.ext_bits());
        let qc = f.mul(c, lead_inv);
        quotient.push((qm, qc as i64));
        for &(dm, dc) in &rest {
            let (pm, _) = qm.mul(&dm).expect("polynomial factor");
            let sub = f.mul(qc, dc);
            let e = rem.entry(pm).or_insert(0);
            *e = f.sub(*e, sub);
            if *e == 0 {
                rem.remove(&pm);
            }
        }
    }
    Ok(KoszulElement::from_terms(ctx, quotient))
}

/// The three families of subgroups of `GL_n(F_p)` plus arbitrary generator sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupFamily {
    #[serde(rename = "sl")]
    SL,
    #[serde(rename = "gn")]
    G,
    #[serde(rename = "gnp")]
    GPrime,
    #[serde(rename = "explicit")]
    Explicit,
}

impl GroupFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Some(Self::SL),
            "gn" | "g" => Some(Self::G),
            "gnp" | "gn'" | "gprime" => Some(Self::GPrime),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::SL => "sl",
            Self::G => "gn",
            Self::GPrime => "gnp",
            Self::Explicit => "explicit",
        }
    }

    /// Index `k` of the Euler class `e_k` in the ring `R`.
    pub fn euler_index(self, n: usize) -> usize {
        match self {
            Self::SL | Self::Explicit => n,
            Self::G | Self::GPrime => n - 1,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::SL => "SL",
            Self::G => "G",
            Self::GPrime => "G'",
            Self::Explicit => "explicit",
        };
        write!(f, "{s}")
    }
}

/// A matrix group given by generators, with an optional diagonal subgroup used
/// to discard monomials that cannot occur in an invariant.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub n: usize,
    pub p: u32,
    pub label: String,
    pub generators: Vec<MatrixGL>,
    pub torus: Vec<MatrixGL>,
}

pub fn group_generators(family: GroupFamily, n: usize, p: u32) -> Result<GroupSpec> {
    let ctx = KoszulCtx::new(p, n)?;
    let f = *ctx.field();
    let alpha = f.primitive_root() as i64;
    let alpha_inv = f.inv(alpha as u32) as i64;
    let torus_pair = |i: usize| {
        let mut d = vec![1i64; n];
        d[i] = alpha;
        d[i + 1] = alpha_inv;
        MatrixGL::diagonal(f, &d).expect("unit entries")
    };
    let mut generators = Vec::new();
    let mut torus = Vec::new();
    match family {
        GroupFamily::SL => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        generators.push(MatrixGL::transvection(f, n, i, j, 1));
                    }
                }
            }
            torus.extend((0..n.saturating_sub(1)).map(torus_pair));
        }
        GroupFamily::G | GroupFamily::GPrime => {
            if n < 2 {
                return Err(Error::RankOutOfRange(n));
            }
            for i in 1..n {
                for j in 1..n {
                    if i != j {
                        generators.push(MatrixGL::transvection(f, n, i, j, 1));
                    }
                }
            }
            for j in 1..n {
                generators.push(MatrixGL::transvection(f, n, 0, j, 1));
            }
            torus.extend((1..n - 1).map(torus_pair));
            if family == GroupFamily::GPrime {
                let mut d = vec![1i64; n];
                d[0] = alpha;
                let corner = MatrixGL::diagonal(f, &d)?;
                generators.push(corner.clone());
                torus.push(corner);
            }
        }
        GroupFamily::Explicit => {
            return Err(Error::Config("explicit groups need generators".into()))
        }
    }
    Ok(GroupSpec {
        family,
        n,
        p,
        label: format!("{family}_{n}(F_{p})"),
        generators,
        torus,
    })
}

impl GroupSpec {
    pub fn explicit(label: &str, p: u32, generators: Vec<MatrixGL>) -> Result<Self> {
        let n = generators
            .first()
            .map(|g| g.n())
            .ok_or_else(|| Error::Config("no generators".into()))?;
        if generators.iter().any(|g| g.n() != n || g.field().p() != p) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: 0,
            });
        }
        Ok(Self {
            family: GroupFamily::Explicit,
            n,
            p,
            label: label.to_string(),
            generators,
            torus: Vec::new(),
        })
    }

    pub fn ctx(&self) -> KoszulCtx {
        KoszulCtx::new(self.p, self.n).expect("validated at construction")
    }

    /// Checks each generator against the block shape of its family.
    pub fn validate(&self) -> bool {
        let n = self.n;
        let first_col_ok = |g: &MatrixGL| (1..n).all(|i| g.get(i, 0) == 0);
        self.generators
            .iter()
            .chain(&self.torus)
            .all(|g| match self.family {
                GroupFamily::SL => g.det() == 1,
                GroupFamily::G => first_col_ok(g) && g.get(0, 0) == 1 && g.det() == 1,
                GroupFamily::GPrime => {
                    let corner = g.get(0, 0);
                    first_col_ok(g) && g.det() == corner
                }
                GroupFamily::Explicit => true,
            })
    }

    /// Whether `m` is fixed by the diagonal subgroup (each monomial spans a character).
    pub fn torus_fixed(&self, m: &Monomial) -> bool {
        self.torus.iter().all(|d| {
            let f = d.field();
            let mut acc = 1u32;
            for i in 0..self.n {
                let e = m.exp(i) as u64 + ((m.ext_bits() >> i) & 1) as u64;
                acc = f.mul(acc, f.pow(d.get(i, i), e));
            }
            acc == 1
        })
    }
}

/// Limits on slice sizes for brute-force invariant computations.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub warn: usize,
    pub limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            warn: 20_000,
            limit: 400_000,
        }
    }
}

/// Basis of the `H`-invariants in degree `d`, as the common kernel of `g − 1`
/// over the generators. The result is in reduced echelon form per exterior
/// length, so it does not depend on generator order.
pub fn invariant_basis(h: &GroupSpec, d: usize) -> Result<Vec<KoszulElement>> {
    invariant_basis_with(h, d, Budget::default())
}

pub fn invariant_basis_with(h: &GroupSpec, d: usize, budget: Budget) -> Result<Vec<KoszulElement>> {
    let ctx = h.ctx();
    let full = crate::linalg::slice_dimension(h.n, d);
    if full > budget.limit {
        return Err(Error::BudgetExceeded {
            dim: full,
            budget: budget.limit,
        });
    }
    if full > budget.warn {
        warn!("degree {d} slice of rank {} has {full} monomials", h.n);
    }
    let mut out = Vec::new();
    for s in 0..=h.n.min(d) {
        if (d - s).is_multiple_of(2) {
            out.extend(block_invariants(h, ctx, d, s)?);
        }
    }
    Ok(out)
}

/// Invariants in the polynomial part `F_p[t_1, …, t_n]` of degree `d` only.
pub fn polynomial_invariant_basis(
    h: &GroupSpec,
    d: usize,
    budget: Budget,
) -> Result<Vec<KoszulElement>> {
    if d % 2 == 1 {
        return Ok(Vec::new());
    }
    let size = crate::linalg::binomial(d / 2 + h.n - 1, h.n - 1);
    if size > budget.limit {
        return Err(Error::BudgetExceeded {
            dim: size,
            budget: budget.limit,
        });
    }
    if size > budget.warn {
        warn!(
            "degree {d} polynomial slice of rank {} has {size} monomials",
            h.n
        );
    }
    block_invariants(h, h.ctx(), d, 0)
}

fn block_invariants(
    h: &GroupSpec,
    ctx: KoszulCtx,
    d: usize,
    ext_len: usize,
) -> Result<Vec<KoszulElement>> {
    let slice = DegreeSlice::filtered(ctx, d, |m| m.ext_len() == ext_len && h.torus_fixed(m));
    if slice.dim() == 0 {
        return Ok(Vec::new());
    }
    // Diagonal generators already acted through the torus prefilter.
    let maps = h
        .generators
        .iter()
        .filter(|g| !(g.is_diagonal() && h.torus.contains(g)))
        .map(|g| difference_map(g, &slice))
        .collect::<Result<Vec<_>>>()?;
    let unit: Vec<SparseVec> = (0..slice.dim()).map(|i| vec![(i, 1)]).collect();
    let kernel = kernel_chain(*ctx.field(), &unit, &maps);
    Ok(kernel.iter().map(|v| slice.to_element(v)).collect())
}

/// Matrix of `g − 1` on a slice, with target coordinates assigned on the fly.
fn difference_map(g: &MatrixGL, slice: &DegreeSlice) -> Result<SliceMap> {
    let ctx = slice.ctx();
    let f = *ctx.field();
    let mut act = MatrixAction::new(g, ctx)?;
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut columns = Vec::with_capacity(slice.dim());
    for m in slice.basis() {
        let img = act.apply_monomial(m);
        let mut col: SparseVec = Vec::with_capacity(img.len() + 1);
        let mut self_seen = false;
        for &(im, c) in img.terms() {
            let c = if im == *m {
                self_seen = true;
                f.sub(c, 1)
            } else {
                c
            };
            if c != 0 {
                let next = index.len();
                col.push((*index.entry(im).or_insert(next), c));
            }
        }
        if !self_seen {
            let next = index.len();
            col.push((*index.entry(*m).or_insert(next), f.neg(1)));
        }
        col.sort_unstable_by_key(|e| e.0);
        columns.push(col);
    }
    Ok(SliceMap { columns })
}

/// Whether `x` is fixed by every generator.
pub fn is_invariant(h: &GroupSpec, x: &KoszulElement) -> Result<bool> {
    for g in &h.generators {
        let mut act = MatrixAction::new(g, x.ctx())?;
        if act.apply(x) != *x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One labelled generator of the polynomial ring `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingGenerator {
    pub label: String,
    pub degree: usize,
    pub weight: usize,
}

/// A module generator `Q̄_I ū_n`, or the unit when `subset` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleGenerator {
    pub label: String,
    pub subset: Option<u32>,
    pub degree: usize,
    pub weight: usize,
}

/// The predicted structure `H*(BA_n)^H = R{1, Q̄_I ū_n : I ⊊ Δ_n}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuiBasisDescription {
    pub family: GroupFamily,
    pub n: usize,
    pub p: u32,
    pub ring: Vec<RingGenerator>,
    pub generators: Vec<ModuleGenerator>,
}

/// Degree of `Q̄_I ū_n` for a subset given as a bitmask of `Δ_n = {0, …, n−1}`.
pub fn module_generator_degree(family: GroupFamily, n: usize, p: u32, mask: u32) -> usize {
    let pu = p as usize;
    let top = n - 1;
    let q_part: usize = (0..top)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| 2 * pu.pow(i as u32) - 1)
        .sum();
    let has_top = mask >> top & 1 == 1;
    match family {
        GroupFamily::SL | GroupFamily::Explicit => {
            n + q_part
                + if has_top {
                    2 * pu.pow(top as u32) - 1
                } else {
                    0
                }
        }
        GroupFamily::G => q_part + if has_top { n - 1 } else { n },
        GroupFamily::GPrime => {
            q_part
                + if has_top {
                    n - 1
                } else {
                    n + 2 * (pu - 2) * pu.pow(top as u32)
                }
        }
    }
}

pub fn subset_label(mask: u32, n: usize) -> String {
    let idx: Vec<String> = (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", idx.join(","))
}

impl MuiBasisDescription {
    pub fn new(family: GroupFamily, n: usize, p: u32) -> Result<Self> {
        KoszulCtx::new(p, n)?;
        let mut ring = Vec::new();
        match family {
            GroupFamily::SL | GroupFamily::Explicit => {
                for i in 1..n {
                    ring.push(RingGenerator {
                        label: format!("c_{{{n},{i}}}"),
                        degree: dickson_degree(p, n, i),
                        weight: 0,
                    });
                }
                ring.push(RingGenerator {
                    label: format!("e_{n}"),
                    degree: euler_degree(p, n),
                    weight: n,
                });
            }
            GroupFamily::G | GroupFamily::GPrime => {
                if n < 2 {
                    return Err(Error::RankOutOfRange(n));
                }
                for i in 1..n - 1 {
                    ring.push(RingGenerator {
                        label: format!("c_{{{},{i}}}", n - 1),
                        degree: dickson_degree(p, n - 1, i),
                        weight: 0,
                    });
                }
                ring.push(RingGenerator {
                    label: format!("e_{}", n - 1),
                    degree: euler_degree(p, n - 1),
                    weight: n,
                });
                let fdeg = 2 * (p as usize).pow(n as u32 - 1);
                if family == GroupFamily::G {
                    ring.push(RingGenerator {
                        label: format!("f_{n}"),
                        degree: fdeg,
                        weight: 0,
                    });
                } else {
                    ring.push(RingGenerator {
                        label: format!("f_{n}^{}", p - 1),
                        degree: fdeg * (p as usize - 1),
                        weight: 0,
                    });
                }
            }
        }
        let mut generators = vec![ModuleGenerator {
            label: "1".into(),
            subset: None,
            degree: 0,
            weight: 0,
        }];
        for mask in 0..(1u32 << n) - 1 {
            generators.push(ModuleGenerator {
                label: format!("Qbar_{} ubar", subset_label(mask, n)),
                subset: Some(mask),
                degree: module_generator_degree(family, n, p, mask),
                weight: mask.count_ones() as usize,
            });
        }
        Ok(Self {
            family,
            n,
            p,
            ring,
            generators,
        })
    }

    pub fn ring_degrees(&self) -> Vec<usize> {
        self.ring.iter().map(|r| r.degree).collect()
    }

    pub fn series(&self, max_deg: usize) -> Series {
        let gens: Vec<usize> = self.generators.iter().map(|g| g.degree).collect();
        Series::free_module(max_deg, &self.ring_degrees(), &gens)
    }
}

/// Predicted dimension of the degree-`d` invariants.
pub fn predicted_dimension(h: &GroupSpec, d: usize) -> Result<usize> {
    let desc = MuiBasisDescription::new(h.family, h.n, h.p)?;
    Ok(desc.series(d).coeff(d) as usize)
}

/// Cached Mui-theoretic classes for one `(p, n)` and family.
#[derive(Clone, Debug)]
pub struct MuiClasses {
    pub ctx: KoszulCtx,
    pub family: GroupFamily,
    tail: Vec<KoszulElement>,
    f: KoszulElement,
}

impl MuiClasses {
    pub fn new(ctx: KoszulCtx, family: GroupFamily) -> Result<Self> {
        if ctx.n() < 2 {
            return Err(Error::RankOutOfRange(ctx.n()));
        }
        let tail = dickson_all(ctx, &(1..ctx.n()).collect::<Vec<_>>());
        let f = omega_with(&tail, &KoszulElement::dt(ctx, 0));
        Ok(Self {
            ctx,
            family,
            tail,
            f,
        })
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    /// `c_{n−1,i}` over `V_{n−1}`.
    pub fn tail_dickson(&self, i: usize) -> &KoszulElement {
        &self.tail[i]
    }

    pub fn f(&self) -> &KoszulElement {
        &self.f
    }

    pub fn omega(&self, x: &KoszulElement) -> KoszulElement {
        omega_with(&self.tail, x)
    }

    /// `ū_n`.
    pub fn ubar(&self) -> KoszulElement {
        let u = top_form(self.ctx, SubspaceSpec::Full);
        match self.family {
            GroupFamily::GPrime => &self.f.pow(self.ctx.p() - 2) * &u,
            _ => u,
        }
    }

    /// `Q̄_i(x)`: `Q_i` below the top index, the family's modified operation at `n−1`.
    pub fn qbar_apply(&self, i: usize, x: &KoszulElement) -> Result<KoszulElement> {
        let top = self.n() - 1;
        if i < top || matches!(self.family, GroupFamily::SL | GroupFamily::Explicit) {
            return Ok(milnor_q(i, x));
        }
        if i > top {
            return Err(Error::RankOutOfRange(i));
        }
        let o = self.omega(x);
        match self.family {
            GroupFamily::G => exact_divide(&o, &self.f),
            _ => exact_divide(&o, &self.f.pow(self.ctx.p() - 1)),
        }
    }

    /// `Q̄_I ū_n`, applying the operations right to left.
    pub fn module_generator(&self, mask: u32) -> Result<KoszulElement> {
        let q = QComposite::from_mask(mask);
        let mut x = self.ubar();
        for &i in q.indices().iter().rev() {
            x = self.qbar_apply(i, &x)?;
        }
        Ok(x)
    }

    /// Elements of the ring generators, in the order of [`MuiBasisDescription::ring`].
    pub fn ring_generators(&self) -> Vec<KoszulElement> {
        let n = self.n();
        let ctx = self.ctx;
        match self.family {
            GroupFamily::SL | GroupFamily::Explicit => {
                let full = dickson_all(ctx, &(0..n).collect::<Vec<_>>());
                let mut v: Vec<KoszulElement> = full[1..n].to_vec();
                v.push(euler_class(ctx, SubspaceSpec::Full));
                v
            }
            GroupFamily::G | GroupFamily::GPrime => {
                let mut v: Vec<KoszulElement> = self.tail[1..n - 1].to_vec();
                v.push(euler_class(ctx, SubspaceSpec::Tail));
                v.push(if self.family == GroupFamily::G {
                    self.f.clone()
                } else {
                    self.f.pow(ctx.p() - 1)
                });
                v
            }
        }
    }

    /// `e_k`: `e_n` for `SL_n`, `e_{n−1}` otherwise.
    pub fn euler(&self) -> KoszulElement {
        match self.family {
            GroupFamily::SL | GroupFamily::Explicit => euler_class(self.ctx, SubspaceSpec::Full),
            _ => euler_class(self.ctx, SubspaceSpec::Tail),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::group_order;

    fn ctx(p: u32, n: usize) -> KoszulCtx {
        KoszulCtx::new(p, n).unwrap()
    }

    #[test]
    fn rank_one_dickson() {
        for p in [3, 5] {
            let c = ctx(p, 1);
            let d = dickson_all(c, &[0]);
            assert_eq!(d[0], KoszulElement::t(c, 0).pow(p - 1));
            assert_eq!(d[1], KoszulElement::one(c));
        }
        let c = ctx(3, 2);
        let c21 = dickson(c, SubspaceSpec::Full, 1).unwrap();
        assert_eq!(c21.degree().unwrap(), Some(12));
        assert_eq!(
            dickson(c, SubspaceSpec::Full, 2).unwrap(),
            KoszulElement::one(c)
        );
    }

    #[test]
    fn top_forms_and_euler() {
        let c = ctx(3, 3);
        assert_eq!(top_form(c, SubspaceSpec::Tail).to_string(), "dt2 dt3");
        assert_eq!(
            euler_class(c, SubspaceSpec::Full).degree().unwrap(),
            Some(26)
        );
        let c1 = ctx(3, 1);
        assert_eq!(euler_class(c1, SubspaceSpec::Full), KoszulElement::t(c1, 0));
        let c2 = ctx(3, 2);
        let e2 = euler_class(c2, SubspaceSpec::Full);
        assert_eq!(e2.to_string(), "-t1 t2^3 + t1^3 t2");
    }

    #[test]
    fn f2_and_division() {
        let c = ctx(3, 2);
        let f2 = f_class(c).unwrap();
        let t1 = KoszulElement::t(c, 0);
        let t2 = KoszulElement::t(c, 1);
        assert_eq!(f2, &t1.pow(3) - &(&t1 * &t2.pow(2)));
        let u2 = top_form(c, SubspaceSpec::Full);
        let o = omega_apply(&u2).unwrap();
        assert_eq!(o, &f2 * &KoszulElement::dt(c, 1));
        assert_eq!(exact_divide(&o, &f2).unwrap(), KoszulElement::dt(c, 1));
        assert_eq!(exact_divide(&o, &KoszulElement::one(c)).unwrap(), o);
        assert!(matches!(
            exact_divide(&t1, &t2),
            Err(Error::NotDivisible { .. })
        ));
        assert!(omega_apply(&t1.pow(4)).unwrap().is_zero());
    }

    #[test]
    fn f_degrees() {
        assert_eq!(f_class(ctx(3, 3)).unwrap().degree().unwrap(), Some(18));
    }

    #[test]
    fn group_orders() {
        let sl2 = group_generators(GroupFamily::SL, 2, 3).unwrap();
        assert_eq!(group_order(&sl2.generators, 100), Some(24));
        let g3 = group_generators(GroupFamily::G, 3, 3).unwrap();
        assert_eq!(group_order(&g3.generators, 1000), Some(216));
        let g3p = group_generators(GroupFamily::GPrime, 3, 3).unwrap();
        assert_eq!(group_order(&g3p.generators, 1000), Some(432));
        for h in [&sl2, &g3, &g3p] {
            assert!(h.validate());
        }
    }

    #[test]
    fn sl2_small_degrees() {
        let h = group_generators(GroupFamily::SL, 2, 3).unwrap();
        assert_eq!(invariant_basis(&h, 0).unwrap().len(), 1);
        let d2 = invariant_basis(&h, 2).unwrap();
        assert_eq!(d2, vec![top_form(h.ctx(), SubspaceSpec::Full)]);
        assert!(invariant_basis(&h, 4).unwrap().is_empty());
        assert_eq!(predicted_dimension(&h, 1).unwrap(), 0);
        assert_eq!(predicted_dimension(&h, 0).unwrap(), 1);
    }

    #[test]
    fn gn_qbar_top() {
        let c = ctx(3, 2);
        let m = MuiClasses::new(c, GroupFamily::G).unwrap();
        assert_eq!(m.module_generator(0b10).unwrap(), KoszulElement::dt(c, 1));
        let mp = MuiClasses::new(c, GroupFamily::GPrime).unwrap();
        assert_eq!(mp.module_generator(0b10).unwrap(), KoszulElement::dt(c, 1));
    }

    #[test]
    fn description_degrees() {
        let d = MuiBasisDescription::new(GroupFamily::SL, 2, 3).unwrap();
        let mut g: Vec<usize> = d.generators.iter().map(|g| g.degree).collect();
        g.sort();
        assert_eq!(g, vec![0, 2, 3, 7]);
        assert_eq!(d.ring_degrees(), vec![12, 8]);
        let d4 = MuiBasisDescription::new(GroupFamily::G, 4, 3).unwrap();
        assert_eq!(d4.ring_degrees(), vec![48, 36, 26, 54]);
    }
}
