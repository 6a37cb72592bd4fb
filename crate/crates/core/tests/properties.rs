use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;

use weylinv::cache::{Cache, CacheKey};
use weylinv::config::RunConfig;
use weylinv::koszul::{KoszulCtx, KoszulElement, Monomial};
use weylinv::matrix::{apply_matrix, MatrixGL};
use weylinv::mui::{euler_class, group_generators, is_invariant, GroupFamily, SubspaceSpec};
use weylinv::series::Series;
use weylinv::steenrod::{milnor_q, q_composite, reduced_power, QComposite};

const N: usize = 3;

fn ctx(p: u32) -> KoszulCtx {
    KoszulCtx::new(p, N).unwrap()
}

/// A homogeneous element of total degree `2a + s` built from up to four monomials.
fn element(p: u32) -> impl Strategy<Value = KoszulElement> {
    (0usize..6, 0usize..=N).prop_flat_map(move |(a, s)| {
        let exps = proptest::collection::vec(0u16..=a as u16, N);
        let term = (
            exps,
            proptest::sample::subsequence((0..N).collect::<Vec<_>>(), s),
            1..p,
        );
        proptest::collection::vec(term, 1..4).prop_map(move |terms| {
            let c = ctx(p);
            let mut x = KoszulElement::zero(c);
            for (mut e, ext, coeff) in terms {
                // force polynomial degree a by topping up the first exponent
                let sum: u16 = e.iter().sum();
                if sum > a as u16 {
                    e = vec![0; N];
                }
                e[0] += a as u16 - e.iter().sum::<u16>();
                x = &x + &KoszulElement::monomial(c, Monomial::new(&e, &ext), coeff);
            }
            x
        })
    })
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5u32)]
}

fn matrix(p: u32) -> impl Strategy<Value = Option<MatrixGL>> {
    proptest::collection::vec(proptest::collection::vec(0i64..p as i64, N), N)
        .prop_map(move |rows| MatrixGL::new(*ctx(p).field(), &rows).ok())
}

fn parity(x: &KoszulElement) -> usize {
    x.degree().unwrap().unwrap_or(0) % 2
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..ProptestConfig::default()
    })]

    #[test]
    fn multiplication_is_associative((x, y, z) in prime().prop_flat_map(|p| (element(p), element(p), element(p)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn graded_commutativity((x, y) in prime().prop_flat_map(|p| (element(p), element(p)))) {
        let yx = &y * &x;
        let expect = if parity(&x) * parity(&y) == 1 { -&yx } else { yx };
        prop_assert_eq!(&x * &y, expect);
    }

    #[test]
    fn milnor_square_and_anticommute((x, i, j) in prime().prop_flat_map(|p| (element(p), 0usize..3, 0usize..3))) {
        prop_assert!(milnor_q(i, &milnor_q(i, &x)).is_zero());
        let sum = &milnor_q(i, &milnor_q(j, &x)) + &milnor_q(j, &milnor_q(i, &x));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn milnor_signed_leibniz((x, y, i) in prime().prop_flat_map(|p| (element(p), element(p), 0usize..3))) {
        let left = milnor_q(i, &(&x * &y));
        let tail = &x * &milnor_q(i, &y);
        let head = &milnor_q(i, &x) * &y;
        let right = if parity(&x) == 1 { &head - &tail } else { &head + &tail };
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cartan_formula((x, y, k) in prime().prop_flat_map(|p| (element(p), element(p), 0usize..4))) {
        let mut sum = KoszulElement::zero(x.ctx());
        for a in 0..=k {
            sum = &sum + &(&reduced_power(a, &x) * &reduced_power(k - a, &y));
        }
        prop_assert_eq!(reduced_power(k, &(&x * &y)), sum);
    }

    #[test]
    fn substitution_is_a_ring_map((x, y, g) in prime().prop_flat_map(|p| (element(p), element(p), matrix(p)))) {
        prop_assume!(g.is_some());
        let g = g.unwrap();
        let gxy = apply_matrix(&g, &(&x * &y)).unwrap();
        prop_assert_eq!(gxy, &apply_matrix(&g, &x).unwrap() * &apply_matrix(&g, &y).unwrap());
    }

    #[test]
    fn substitution_commutes_with_milnor((x, g, i) in prime().prop_flat_map(|p| (element(p), matrix(p), 0usize..3))) {
        prop_assume!(g.is_some());
        let g = g.unwrap();
        prop_assert_eq!(
            apply_matrix(&g, &milnor_q(i, &x)).unwrap(),
            milnor_q(i, &apply_matrix(&g, &x).unwrap())
        );
    }

    #[test]
    fn substitutions_compose((x, g, h) in prime().prop_flat_map(|p| (element(p), matrix(p), matrix(p)))) {
        prop_assume!(g.is_some() && h.is_some());
        let (g, h) = (g.unwrap(), h.unwrap());
        // Rows give images of the t_i, so substituting h and then g is the action of h·g.
        let twice = apply_matrix(&g, &apply_matrix(&h, &x).unwrap()).unwrap();
        prop_assert_eq!(twice, apply_matrix(&h.mul(&g), &x).unwrap());
    }

    #[test]
    fn composite_is_order_independent_up_to_sign(x in prime().prop_flat_map(element)) {
        let a = q_composite(&QComposite::new(&[0, 2]).unwrap(), &x);
        let b = milnor_q(2, &milnor_q(0, &x));
        prop_assert_eq!(a, -&b);
    }

    #[test]
    fn series_ring_factor_inverts(degrees in proptest::collection::vec(1usize..9, 1..4), d in 10usize..40) {
        let ring = Series::polynomial_ring(d, &degrees);
        let mut prod = ring;
        for &k in &degrees {
            prod = &prod * &(&Series::one(d) - &Series::monomial(d, k, 1));
        }
        prop_assert_eq!(prod, Series::one(d));
    }

    #[test]
    fn cache_roundtrip(payload in proptest::collection::vec(any::<u8>(), 0..512), degree in 0usize..100) {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("prop", "sl", 3, 3, degree);
        cache.put(&key, &payload).unwrap();
        prop_assert_eq!(cache.get(&key), Some(payload));
    }

    #[test]
    fn config_keys_roundtrip(p in prime(), n in 1usize..5, d in 0usize..200, jobs in 1usize..9) {
        let text = format!("p = {p}\nn = {n}\nmax-deg = {d}\njobs = {jobs}\n");
        let cfg = RunConfig::from_kv(&text).unwrap();
        prop_assert_eq!((cfg.p, cfg.n, cfg.max_deg, cfg.jobs), (Some(p), Some(n), Some(d), Some(jobs)));
        prop_assert!(cfg.validate().is_ok());
    }
}

#[test]
fn euler_class_is_sl_invariant() {
    for p in [3, 5] {
        let h = group_generators(GroupFamily::SL, N, p).unwrap();
        assert!(is_invariant(&h, &euler_class(h.ctx(), SubspaceSpec::Full)).unwrap());
    }
}
