//! Weight filtration on the invariant rings, the product law for Mui classes,
//! and the splitting `R ⊕ F_{∞,i} = N_0 ⊕ N_1`.
//!
//! A basis of `H*(BA_n)^H` over F_p consists of the products `x · b` where `x`
//! runs over monomials in the generators of `R` and `b` over `1` and the
//! classes `Q̄_I ū_n`. The weight of `e^a x' Q̄_I ū_n` (with `x'` free of `e`)
//! is `n·a + |I|`; the unit and `R` itself are outside every `F_w`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::{sign_interleave, KoszulElement};
use crate::linalg::ElementSpan;
use crate::mui::{
    group_generators, invariant_basis, subset_label, GroupFamily, GroupSpec, MuiBasisDescription,
    MuiClasses,
};
use crate::report::Row;
use crate::series::Series;
use crate::steenrod::milnor_degree;

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).collect()
}

/// Closed form of `Q̄_I ū_n · Q̄_J ū_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductLaw {
    Zero,
    /// `sign · e_k · Q̄_K ū_n` with `K` as a bitmask.
    Term {
        sign: i32,
        k: u32,
    },
}

pub fn product_law(i: u32, j: u32, n: usize) -> ProductLaw {
    let full = (1u32 << n) - 1;
    if (i | j) & full != full {
        return ProductLaw::Zero;
    }
    let k = i & j;
    let rest = i & !k;
    let r = rest.count_ones() as usize;
    let exponent = n * r + r * r;
    let s1 = sign_interleave(&mask_indices(k), &mask_indices(rest)).expect("disjoint");
    let s2 = sign_interleave(&mask_indices(rest), &mask_indices(j)).expect("disjoint");
    let sign = if exponent.is_multiple_of(2) { 1 } else { -1 } * s1 * s2;
    ProductLaw::Term { sign, k }
}

/// Compares the product law with honest multiplication for all `4^n` pairs.
pub fn verify_product_law(h: &GroupSpec) -> Result<Vec<Row>> {
    let classes = MuiClasses::new(h.ctx(), h.family)?;
    let n = h.n;
    let count = 1u32 << n;
    let gens: Vec<KoszulElement> = (0..count)
        .map(|m| classes.module_generator(m))
        .collect::<Result<_>>()?;
    let e = classes.euler();
    let tag = if h.family == GroupFamily::SL {
        "product law for Mui classes"
    } else {
        "product law for modified Mui classes"
    };
    let pairs: Vec<(u32, u32)> = (0..count)
        .flat_map(|a| (0..count).map(move |b| (a, b)))
        .collect();
    let rows = pairs
        .par_iter()
        .map(|&(a, b)| {
            let actual = &gens[a as usize] * &gens[b as usize];
            let law = product_law(a, b, n);
            let predicted = match law {
                ProductLaw::Zero => KoszulElement::zero(h.ctx()),
                ProductLaw::Term { sign, k } => {
                    let t = &e * &gens[k as usize];
                    if sign < 0 {
                        -&t
                    } else {
                        t
                    }
                }
            };
            let expected = match law {
                ProductLaw::Zero => "0".to_string(),
                ProductLaw::Term { sign, k } => format!(
                    "{}e Q_{} u",
                    if sign < 0 { "-" } else { "+" },
                    subset_label(k, n)
                ),
            };
            let pass = actual == predicted;
            let computed = if pass {
                expected.clone()
            } else {
                format!("{} terms differ", (&actual - &predicted).len())
            };
            Row::new(
                None,
                format!(
                    "{} {}: Q_{} u * Q_{} u",
                    h.label,
                    n,
                    subset_label(a, n),
                    subset_label(b, n)
                ),
                expected,
                computed,
                pass,
                tag,
            )
        })
        .collect();
    Ok(rows)
}

/// Weights multiply additively: whenever the law gives a nonzero product, `|I| + |J| = n + |K|`.
pub fn weight_additivity_holds(n: usize) -> bool {
    let count = 1u32 << n;
    (0..count).all(|a| {
        (0..count).all(|b| match product_law(a, b, n) {
            ProductLaw::Zero => true,
            ProductLaw::Term { k, .. } => {
                (a.count_ones() + b.count_ones()) as usize == n + k.count_ones() as usize
            }
        })
    })
}

/// A basis element `x · b` of the invariant ring: ring exponents `exps`
/// (in the order of the description's ring generators) times generator `gen`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTerm {
    pub gen: usize,
    pub subset: Option<u32>,
    pub exps: Vec<u32>,
    pub euler_power: u32,
    pub weight: usize,
}

/// The predicted free `R`-module, with its generators evaluated as elements.
pub struct ModuleModel {
    pub h: GroupSpec,
    pub classes: MuiClasses,
    pub desc: MuiBasisDescription,
    ring: Vec<KoszulElement>,
    euler_slot: usize,
    gens: Vec<KoszulElement>,
}

impl ModuleModel {
    pub fn new(h: GroupSpec) -> Result<Self> {
        let classes = MuiClasses::new(h.ctx(), h.family)?;
        let desc = MuiBasisDescription::new(h.family, h.n, h.p)?;
        let ring = classes.ring_generators();
        let euler_slot = desc
            .ring
            .iter()
            .position(|r| r.label.starts_with("e_"))
            .expect("Euler class in R");
        let gens = desc
            .generators
            .iter()
            .map(|g| match g.subset {
                None => Ok(KoszulElement::one(h.ctx())),
                Some(m) => classes.module_generator(m),
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            h,
            classes,
            desc,
            ring,
            euler_slot,
            gens,
        })
    }

    pub fn for_family(family: GroupFamily, n: usize, p: u32) -> Result<Self> {
        Self::new(group_generators(family, n, p)?)
    }

    /// Keep only the unit and the generators whose subset contains `n − 1`.
    pub fn restrict_to_top(mut self) -> Self {
        let top = self.h.n - 1;
        let keep: Vec<bool> = self
            .desc
            .generators
            .iter()
            .map(|g| g.subset.is_none_or(|m| m >> top & 1 == 1))
            .collect();
        let mut it = keep.iter();
        self.desc.generators.retain(|_| *it.next().unwrap());
        let mut it = keep.iter();
        self.gens.retain(|_| *it.next().unwrap());
        self
    }

    pub fn n(&self) -> usize {
        self.h.n
    }

    pub fn euler(&self) -> &KoszulElement {
        &self.ring[self.euler_slot]
    }

    pub fn euler_degree(&self) -> usize {
        self.desc.ring[self.euler_slot].degree
    }

    /// Ring degrees with `e_k` removed.
    pub fn reduced_ring_degrees(&self) -> Vec<usize> {
        self.desc
            .ring
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.euler_slot)
            .map(|(_, r)| r.degree)
            .collect()
    }

    pub fn generator_element(&self, subset: Option<u32>) -> Option<&KoszulElement> {
        self.desc
            .generators
            .iter()
            .position(|g| g.subset == subset)
            .map(|i| &self.gens[i])
    }

    pub fn generator_degree(&self, subset: Option<u32>) -> Option<usize> {
        self.desc
            .generators
            .iter()
            .find(|g| g.subset == subset)
            .map(|g| g.degree)
    }

    pub fn ring_monomials(&self, d: usize) -> Vec<Vec<u32>> {
        fn rec(
            degs: &[usize],
            pos: usize,
            left: usize,
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if pos == degs.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut a = 0;
            while a * degs[pos] <= left {
                cur.push(a as u32);
                rec(degs, pos + 1, left - a * degs[pos], cur, out);
                cur.pop();
                a += 1;
            }
        }
        let degs = self.desc.ring_degrees();
        let mut out = Vec::new();
        rec(&degs, 0, d, &mut Vec::new(), &mut out);
        out
    }

    pub fn ring_element(&self, exps: &[u32]) -> KoszulElement {
        exps.iter()
            .zip(&self.ring)
            .filter(|(a, _)| **a > 0)
            .fold(KoszulElement::one(self.h.ctx()), |acc, (a, r)| {
                &acc * &r.pow(*a)
            })
    }

    /// All basis terms of degree `d` satisfying `keep`, with their elements.
    pub fn terms(
        &self,
        d: usize,
        keep: impl Fn(&BasisTerm) -> bool,
    ) -> Vec<(BasisTerm, KoszulElement)> {
        let n = self.n();
        let mut out = Vec::new();
        for (gi, g) in self.desc.generators.iter().enumerate() {
            if g.degree > d {
                continue;
            }
            for exps in self.ring_monomials(d - g.degree) {
                let euler_power = exps[self.euler_slot];
                let weight =
                    n * euler_power as usize + g.subset.map_or(0, |m| m.count_ones() as usize);
                let t = BasisTerm {
                    gen: gi,
                    subset: g.subset,
                    exps,
                    euler_power,
                    weight,
                };
                if keep(&t) {
                    let el = &self.ring_element(&t.exps) * &self.gens[gi];
                    out.push((t, el));
                }
            }
        }
        out
    }

    pub fn elements(&self, d: usize, keep: impl Fn(&BasisTerm) -> bool) -> Vec<KoszulElement> {
        self.terms(d, keep).into_iter().map(|t| t.1).collect()
    }
}

/// One generator of `N_0` or `N_1`: `e^{euler_power} Q̄_I ū_n`, or a power of `e` times the unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitGenerator {
    pub label: String,
    pub subset: Option<u32>,
    pub euler_power: u32,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub n: usize,
    pub i: usize,
    pub ell: usize,
    /// Index `k` of `e_k`.
    pub k: usize,
    /// `z_ℓ = Q̄_{Δ_n ∖ {ℓ}} ū_n`.
    pub z_subset: u32,
    pub z_degree: usize,
    pub n0: Vec<SplitGenerator>,
    pub n1: Vec<SplitGenerator>,
}

/// Which piece of the splitting a basis term belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    N0,
    N1,
    Outside,
}

pub fn split(model: &ModuleModel, ell: usize, i: usize) -> Result<SplitSpec> {
    let n = model.n();
    if ell >= n || i >= n {
        return Err(Error::SplitIndexOutOfRange { ell, n });
    }
    let full = (1u32 << n) - 1;
    let z_subset = full & !(1 << ell);
    let e_deg = model.euler_degree();
    let mut n0 = vec![SplitGenerator {
        label: "1".into(),
        subset: None,
        euler_power: 0,
        degree: 0,
    }];
    let mut n1 = Vec::new();
    for g in &model.desc.generators {
        let Some(mask) = g.subset else { continue };
        let a = u32::from((mask.count_ones() as usize) < i);
        let label = if a == 1 {
            format!("e {}", g.label)
        } else {
            g.label.clone()
        };
        let sg = SplitGenerator {
            label,
            subset: Some(mask),
            euler_power: a,
            degree: g.degree + a as usize * e_deg,
        };
        if mask >> ell & 1 == 1 {
            n0.push(sg);
        } else {
            n1.push(sg);
        }
    }
    let z_degree = model
        .generator_degree(Some(z_subset))
        .ok_or_else(|| Error::Config(format!("z_{ell} is not a generator of this module")))?;
    Ok(SplitSpec {
        n,
        i,
        ell,
        k: model.h.family.euler_index(n),
        z_subset,
        z_degree,
        n0,
        n1,
    })
}

impl SplitSpec {
    pub fn piece(&self, t: &BasisTerm) -> Piece {
        match t.subset {
            None => Piece::N0,
            Some(_) if t.weight < self.i => Piece::Outside,
            Some(m) if m >> self.ell & 1 == 1 => Piece::N0,
            Some(_) => Piece::N1,
        }
    }

    fn gens(&self, piece: Piece) -> &[SplitGenerator] {
        match piece {
            Piece::N0 => &self.n0,
            Piece::N1 => &self.n1,
            Piece::Outside => &[],
        }
    }

    /// Poincaré series of `N_0` or `N_1` as a free `R`-module.
    pub fn series(&self, piece: Piece, model: &ModuleModel, max_deg: usize) -> Series {
        let degs: Vec<usize> = self.gens(piece).iter().map(|g| g.degree).collect();
        Series::free_module(max_deg, &model.desc.ring_degrees(), &degs)
    }

    /// Series of `N^even / (e_k)`: the even generators over `R / (e_k)`.
    pub fn even_mod_euler(&self, piece: Piece, model: &ModuleModel, max_deg: usize) -> Series {
        let degs: Vec<usize> = self
            .gens(piece)
            .iter()
            .map(|g| g.degree)
            .filter(|d| d % 2 == 0)
            .collect();
        Series::free_module(max_deg, &model.reduced_ring_degrees(), &degs)
    }
}

fn span_of(field: crate::field::FieldCtx, xs: &[KoszulElement]) -> ElementSpan {
    let mut s = ElementSpan::new(field);
    s.extend(xs);
    s
}

fn dim_of(field: crate::field::FieldCtx, xs: &[KoszulElement]) -> usize {
    span_of(field, xs).dim()
}

/// `dim(A ∩ B) = dim A + dim B − dim(A + B)`.
fn intersection_dim(
    field: crate::field::FieldCtx,
    a: &[KoszulElement],
    b: &[KoszulElement],
) -> usize {
    let sum: Vec<KoszulElement> = a.iter().chain(b).cloned().collect();
    dim_of(field, a) + dim_of(field, b) - dim_of(field, &sum)
}

fn contained(field: crate::field::FieldCtx, sub: &[KoszulElement], sup: &[KoszulElement]) -> bool {
    let mut s = span_of(field, sup);
    sub.iter().all(|x| s.contains(x))
}

fn parity_name(even: bool) -> &'static str {
    if even {
        "even"
    } else {
        "odd"
    }
}

/// Degreewise check of the four parity and splitting statements for `F_w`.
pub fn check_weight_filtration(
    model: &ModuleModel,
    i: usize,
    ell: usize,
    max_deg: usize,
) -> Result<Vec<Row>> {
    let spec = split(model, ell, i)?;
    let n = model.n();
    let field = *model.h.ctx().field();
    let z_subset = spec.z_subset;
    let tag = "parity and splitting of the weight filtration";
    let per_degree: Vec<Vec<Row>> = (0..=max_deg)
        .into_par_iter()
        .map(|d| {
            let mut rows = Vec::new();
            let weight_dims: Vec<usize> = (0..=2 * n)
                .map(|w| {
                    dim_of(
                        field,
                        &model.elements(d, |t| t.subset.is_some() && t.weight == w),
                    )
                })
                .collect();
            {
                let mut parity_row = |w: usize, statement: String| {
                    let dim = weight_dims[w];
                    if dim > 0 {
                        let expect_even = (n + w % n).is_multiple_of(2);
                        rows.push(Row::new(
                            Some(d),
                            statement,
                            format!("F_{w} {}", parity_name(expect_even)),
                            format!("dim {dim} in {} degree", parity_name(d % 2 == 0)),
                            (d % 2 == 0) == expect_even,
                            tag,
                        ));
                    }
                };
                if i < n {
                    parity_row(i, format!("F_{i}^even is F_{i} or zero by parity of n-i"));
                }
                parity_row(n, format!("F_{n}^even is F_{n} or zero by parity of n"));
                for w in (i + 1)..=(n - 1 + i) {
                    if w != n {
                        parity_row(w, format!("parity table entry F_{w}"));
                    }
                }
            }

            let f_top = model.elements(d, |t| t.subset.is_some() && t.weight == n - 1);
            let e_hat = model.elements(d, |t| t.subset.is_some_and(|m| m >> ell & 1 == 0));
            let z = model.elements(d, |t| t.subset == Some(z_subset) && t.euler_power == 0);
            let f_n = model.elements(d, |t| t.subset.is_some() && t.weight == n);
            if !f_top.is_empty() || !z.is_empty() {
                let inter = intersection_dim(field, &f_top, &e_hat);
                let zdim = dim_of(field, &z);
                let ok =
                    inter == zdim && contained(field, &z, &f_top) && contained(field, &z, &e_hat);
                rows.push(Row::new(
                    Some(d),
                    format!("F_{} meets Ehat({ell}) only in (z_{ell})", n - 1),
                    format!("dim {zdim}"),
                    format!("dim {inter}"),
                    ok,
                    tag,
                ));
            }
            if !f_n.is_empty() {
                let inside = contained(field, &f_n, &e_hat);
                let meet = intersection_dim(field, &f_n, &z);
                rows.push(Row::new(
                    Some(d),
                    format!("F_{n} lies in Ehat({ell}) and survives modulo (z_{ell})"),
                    "contained, meet 0",
                    format!(
                        "{}, meet {meet}",
                        if inside { "contained" } else { "not contained" }
                    ),
                    inside && meet == 0,
                    tag,
                ));
            }
            rows
        })
        .collect();
    Ok(per_degree.into_iter().flatten().collect())
}

/// Linear-map checks of the two short exact sequences
/// `0 → N_0 →(z_ℓ) N_1 → N_1^even/(e_k) → 0` and `0 → N_1 →(Q̄_ℓ) N_0 → N_0^even/(e_k) → 0`
/// inside brute-force invariant slices.
pub fn check_exact_sequences(
    model: &ModuleModel,
    i: usize,
    ell: usize,
    max_deg: usize,
) -> Result<Vec<Row>> {
    let spec = split(model, ell, i)?;
    let field = *model.h.ctx().field();
    let n1_quot = spec.even_mod_euler(Piece::N1, model, max_deg);
    let n0_quot = spec.even_mod_euler(Piece::N0, model, max_deg);
    let z = model
        .generator_element(Some(spec.z_subset))
        .expect("z is a generator")
        .clone();
    let q_deg = if ell + 1 == model.n() && model.h.family != GroupFamily::SL {
        model.generator_degree(Some(1 << ell)).unwrap() as isize
            - model.generator_degree(Some(0)).unwrap() as isize
    } else {
        milnor_degree(model.h.p, ell) as isize
    };
    let tag = "short exact sequences for the splitting";
    let per_degree: Vec<Result<Vec<Row>>> = (0..=max_deg)
        .into_par_iter()
        .map(|d| {
            let mut rows = Vec::new();
            let inv = invariant_basis(&model.h, d)?;
            let n0 = model.elements(d, |t| spec.piece(t) == Piece::N0);
            let n1 = model.elements(d, |t| spec.piece(t) == Piece::N1);
            let all: Vec<KoszulElement> = n0.iter().chain(&n1).cloned().collect();
            let direct = dim_of(field, &all) == n0.len() + n1.len();
            let inside = contained(field, &all, &inv);
            rows.push(Row::new(
                Some(d),
                "N_0 + N_1 is direct and invariant",
                format!("dim {}", n0.len() + n1.len()),
                format!(
                    "dim {}{}",
                    dim_of(field, &all),
                    if inside { "" } else { ", not invariant" }
                ),
                direct && inside,
                tag,
            ));
            if i == 0 {
                rows.push(Row::eq(
                    Some(d),
                    "N_0 + N_1 is the whole invariant slice",
                    inv.len(),
                    all.len(),
                    tag,
                ));
            }

            let map_row = |name: String,
                           src: Vec<KoszulElement>,
                           tgt: &[KoszulElement],
                           quot: i64,
                           images: Vec<KoszulElement>| {
                let rank = dim_of(field, &images);
                let ok_in = contained(field, &images, tgt);
                let coker = tgt.len() as i64 - rank as i64;
                Row::new(
                    Some(d),
                    name,
                    format!("injective, into target, cokernel {quot}"),
                    format!(
                        "{}, {}, cokernel {coker}",
                        if rank == src.len() {
                            "injective"
                        } else {
                            "not injective"
                        },
                        if ok_in {
                            "into target"
                        } else {
                            "escapes target"
                        }
                    ),
                    rank == src.len() && ok_in && coker == quot,
                    tag,
                )
            };

            if d >= spec.z_degree {
                let src = model.elements(d - spec.z_degree, |t| spec.piece(t) == Piece::N0);
                let images: Vec<KoszulElement> = src.iter().map(|x| &z * x).collect();
                rows.push(map_row(
                    format!("multiplication by z_{ell}: N_0 -> N_1"),
                    src,
                    &n1,
                    n1_quot.coeff(d),
                    images,
                ));
            } else {
                rows.push(Row::eq(
                    Some(d),
                    format!("N_1 below deg z_{ell} equals N_1^even/(e)"),
                    n1_quot.coeff(d),
                    n1.len() as i64,
                    tag,
                ));
            }
            if d as isize >= q_deg {
                let src = model.elements((d as isize - q_deg) as usize, |t| {
                    spec.piece(t) == Piece::N1
                });
                let images = src
                    .iter()
                    .map(|x| model.classes.qbar_apply(ell, x))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(map_row(
                    format!("Q_{ell}: N_1 -> N_0"),
                    src,
                    &n0,
                    n0_quot.coeff(d),
                    images,
                ));
            } else {
                rows.push(Row::eq(
                    Some(d),
                    format!("N_0 below deg Q_{ell} equals N_0^even/(e)"),
                    n0_quot.coeff(d),
                    n0.len() as i64,
                    tag,
                ));
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_degree {
        rows.extend(r?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_examples() {
        assert_eq!(product_law(0b001, 0b001, 3), ProductLaw::Zero);
        assert_eq!(
            product_law(0b01, 0b10, 2),
            ProductLaw::Term { sign: -1, k: 0 }
        );
        assert_eq!(
            product_law(0b100, 0b011, 3),
            ProductLaw::Term { sign: 1, k: 0 }
        );
        assert!(weight_additivity_holds(4));
    }

    #[test]
    fn sl2_product_law() {
        let h = group_generators(GroupFamily::SL, 2, 3).unwrap();
        let rows = verify_product_law(&h).unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|r| r.pass), "{rows:#?}");
    }

    #[test]
    fn split_examples() {
        let m = ModuleModel::for_family(GroupFamily::SL, 2, 3).unwrap();
        let s = split(&m, 1, 0).unwrap();
        let labels = |g: &[SplitGenerator]| g.iter().map(|x| x.subset).collect::<Vec<_>>();
        assert_eq!(labels(&s.n0), vec![None, Some(0b10)]);
        assert_eq!(labels(&s.n1), vec![Some(0b00), Some(0b01)]);
        assert_eq!(s.z_subset, 0b01);
        let m3 = ModuleModel::for_family(GroupFamily::SL, 3, 3).unwrap();
        let s3 = split(&m3, 2, 1).unwrap();
        assert_eq!(
            labels(&s3.n0),
            vec![None, Some(0b100), Some(0b101), Some(0b110)]
        );
        assert_eq!(s3.z_subset, 0b011);
        assert!(matches!(
            split(&m3, 3, 1),
            Err(Error::SplitIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn pu3_sequences_small() {
        let m = ModuleModel::for_family(GroupFamily::SL, 2, 3).unwrap();
        let rows = check_exact_sequences(&m, 0, 1, 24).unwrap();
        assert!(
            rows.iter().all(|r| r.pass),
            "{:#?}",
            rows.iter().filter(|r| !r.pass).collect::<Vec<_>>()
        );
        let rows = check_weight_filtration(&m, 0, 1, 24).unwrap();
        assert!(
            rows.iter().all(|r| r.pass),
            "{:#?}",
            rows.iter().filter(|r| !r.pass).collect::<Vec<_>>()
        );
    }
}
