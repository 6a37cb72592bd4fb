//! Independent oracles checked against the production code, and frozen values
//! obtained from them.

use weylinv::koszul::{permutation_sign, sign_interleave, KoszulCtx, KoszulElement, Monomial};
use weylinv::linalg::DegreeSlice;
use weylinv::matrix::group_order;
use weylinv::mui::{
    dickson, dickson_degree, euler_class, f_class, group_generators, invariant_basis,
    predicted_dimension, GroupFamily, MuiBasisDescription, SubspaceSpec,
};
use weylinv::series::Series;
use weylinv::steenrod::{milnor_q, milnor_q_recursive, reduced_power};

fn ctx(p: u32, n: usize) -> KoszulCtx {
    KoszulCtx::new(p, n).unwrap()
}

/// `∏_{v ∈ V}(X − v)` expanded factor by factor, as coefficients of `X^0, X^1, …`.
fn literal_dickson_product(c: KoszulCtx) -> Vec<KoszulElement> {
    let (p, n) = (c.p(), c.n());
    let mut poly = vec![KoszulElement::one(c)];
    for code in 0..p.pow(n as u32) {
        let mut v = KoszulElement::zero(c);
        let mut rest = code;
        for i in 0..n {
            v = &v + &KoszulElement::t(c, i).scale(rest % p);
            rest /= p;
        }
        // multiply by (X − v)
        let mut next = vec![KoszulElement::zero(c); poly.len() + 1];
        for (k, a) in poly.iter().enumerate() {
            next[k + 1] = &next[k + 1] + a;
            next[k] = &next[k] - &(a * &v);
        }
        poly = next;
    }
    poly
}

#[test]
fn dickson_matches_literal_product() {
    for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
        let c = ctx(p, n);
        let poly = literal_dickson_product(c);
        let pu = p as usize;
        for (k, coeff) in poly.iter().enumerate() {
            let is_power = (0..=n).any(|i| pu.pow(i as u32) == k);
            if !is_power {
                assert!(coeff.is_zero(), "X^{k} coefficient for p={p} n={n}");
            }
        }
        for i in 0..=n {
            let mut expect = poly[pu.pow(i as u32)].clone();
            if (n - i) % 2 == 1 {
                expect = -&expect;
            }
            assert_eq!(
                dickson(c, SubspaceSpec::Full, i).unwrap(),
                expect,
                "c_{{{n},{i}}} at p={p}"
            );
        }
    }
}

/// `℘^k` read off the total power, with `t_j ↦ t_j + t_j^p` substituted by plain multiplication.
fn total_power_component(x: &KoszulElement, k: usize) -> KoszulElement {
    let c = x.ctx();
    let p = c.p();
    let mut out = KoszulElement::zero(c);
    for &(m, coeff) in x.terms() {
        let mut img = KoszulElement::monomial(
            c,
            Monomial::new(&[], &m.ext_indices().collect::<Vec<_>>()),
            coeff,
        );
        for j in 0..c.n() {
            let tj = KoszulElement::t(c, j);
            let sub = &tj + &tj.pow(p);
            img = &sub.pow(m.exp(j) as u32) * &img;
        }
        let target = m.degree() + 2 * k * (p as usize - 1);
        out = &out + &img.filter(|mm| mm.degree() == target);
    }
    out
}

#[test]
fn reduced_power_matches_total_power_oracle() {
    for (p, n) in [(3, 2), (3, 3), (5, 2)] {
        let c = ctx(p, n);
        for d in 0..=10 {
            for m in DegreeSlice::new(c, d).basis() {
                let x = KoszulElement::monomial(c, *m, 1);
                for k in 0..=3 {
                    assert_eq!(
                        reduced_power(k, &x),
                        total_power_component(&x, k),
                        "P^{k} of {m}"
                    );
                }
            }
        }
    }
}

#[test]
fn closed_milnor_matches_recursion() {
    for (p, n) in [(3, 3), (5, 2)] {
        let c = ctx(p, n);
        for d in 0..=12 {
            for m in DegreeSlice::new(c, d).basis() {
                let x = KoszulElement::monomial(c, *m, 1);
                for i in 0..=2 {
                    assert_eq!(milnor_q(i, &x), milnor_q_recursive(i, &x));
                }
            }
        }
    }
}

fn inversions(seq: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            count += usize::from(seq[a] > seq[b]);
        }
    }
    count
}

#[test]
fn exterior_signs_match_inversion_count() {
    let n = 4;
    let c = ctx(3, n);
    let dts = |set: &[usize]| {
        set.iter().fold(KoszulElement::one(c), |acc, &i| {
            &acc * &KoszulElement::dt(c, i)
        })
    };
    for a in 0u32..16 {
        for b in 0u32..16 {
            if a & b != 0 {
                continue;
            }
            let i: Vec<usize> = (0..n).filter(|k| a >> k & 1 == 1).collect();
            let j: Vec<usize> = (0..n).filter(|k| b >> k & 1 == 1).collect();
            let seq: Vec<usize> = i.iter().chain(&j).copied().collect();
            let expect = if inversions(&seq).is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(sign_interleave(&i, &j).unwrap(), expect);
            assert_eq!(permutation_sign(&seq), expect);
            let mut union = seq.clone();
            union.sort_unstable();
            let top = dts(&union);
            let prod = &dts(&i) * &dts(&j);
            assert_eq!(prod, if expect == 1 { top } else { -&top });
        }
    }
}

#[test]
fn frozen_invariant_dimensions() {
    let h = group_generators(GroupFamily::SL, 2, 3).unwrap();
    assert_eq!(invariant_basis(&h, 0).unwrap().len(), 1);
    assert_eq!(invariant_basis(&h, 2).unwrap().len(), 1);
    assert_eq!(invariant_basis(&h, 4).unwrap().len(), 0);
    assert_eq!(predicted_dimension(&h, 1).unwrap(), 0);
    assert_eq!(group_order(&h.generators, 1000), Some(24));

    let desc = MuiBasisDescription::new(GroupFamily::SL, 2, 3).unwrap();
    let expect =
        &(&Series::sum_of_powers(30, &[0, 2, 3, 7]) * &Series::polynomial_ring(30, &[8, 12]));
    assert_eq!(desc.series(30), *expect);
}

#[test]
fn frozen_degrees() {
    let c3 = ctx(3, 3);
    assert_eq!(dickson_degree(3, 2, 1), 12);
    assert_eq!(
        euler_class(c3, SubspaceSpec::Full).degree().unwrap(),
        Some(26)
    );
    assert_eq!(f_class(c3).unwrap().degree().unwrap(), Some(18));
    assert_eq!(f_class(ctx(3, 4)).unwrap().degree().unwrap(), Some(54));
    let c2 = ctx(3, 2);
    let t = |i| KoszulElement::t(c2, i);
    assert_eq!(f_class(c2).unwrap(), &t(0).pow(3) - &(&t(0) * &t(1).pow(2)));
}
