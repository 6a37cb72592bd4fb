//! Verification suites: each runs one family of checks over a default parameter
//! grid, narrowed by whatever the [`RunConfig`] pins down.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::bgmodel::{
    case, case_table, check_prop_image, series_identity_rows, steenrod_closure_check, CaseModel,
    CaseSpec,
};
use crate::cache::{cached_invariant_basis, Cache};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::filtration::{
    check_exact_sequences, check_weight_filtration, verify_product_law, ModuleModel,
};
use crate::koszul::{KoszulCtx, KoszulElement};
use crate::linalg::{slice_dimension, span_dim, DegreeSlice};
use crate::matrix::{apply_matrix, MatrixGL};
use crate::mui::{
    dickson, euler_class, exact_divide, group_generators, is_invariant, predicted_dimension,
    top_form, Budget, GroupFamily, MuiClasses, SubspaceSpec,
};
use crate::report::{Report, Row};
use crate::serre::replay;
use crate::steenrod::{milnor_q, milnor_q_recursive, q_composite, reduced_power, QComposite};
use crate::weyl::{
    case_datum, compare_with_known_part, control_su3, product_spot_check, reflection_group_order,
    reflection_matrices, WeylInvariantReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Steenrod,
    Division,
    ProductLaw,
    WeightFiltration,
    ExactSequences,
    InvariantRings,
    RestrictionImage,
    GeneratorClosure,
    Serre,
    Weyl,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Steenrod,
        Suite::Division,
        Suite::ProductLaw,
        Suite::WeightFiltration,
        Suite::ExactSequences,
        Suite::InvariantRings,
        Suite::RestrictionImage,
        Suite::GeneratorClosure,
        Suite::Serre,
        Suite::Weyl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Steenrod => "steenrod",
            Suite::Division => "division",
            Suite::ProductLaw => "lemma31",
            Suite::WeightFiltration => "prop33",
            Suite::ExactSequences => "prop34",
            Suite::InvariantRings => "thm41",
            Suite::RestrictionImage => "prop43",
            Suite::GeneratorClosure => "thm42-closure",
            Suite::Serre => "serre",
            Suite::Weyl => "weyl",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Process exit code for a suite outcome: 0 all pass, 1 a check failed,
/// 2 bad configuration, 3 budget exceeded.
pub fn exit_code(outcome: &Result<Report>) -> i32 {
    match outcome {
        Ok(r) if r.all_pass() => 0,
        Ok(_) => 1,
        Err(e) => error_exit_code(e),
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Config(_)
        | Error::UnknownCase(_)
        | Error::NotOddPrime(_)
        | Error::RankOutOfRange(_)
        | Error::SplitIndexOutOfRange { .. }
        | Error::Cache(_) => 2,
        _ => 1,
    }
}

/// Runs a suite on a thread pool of the configured width, with the configured cache.
pub fn execute(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let cache = cfg.cache_dir.as_ref().map(Cache::open).transpose()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_suite(suite, cfg, cache.as_ref()))
}

pub fn run_suite(suite: Suite, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut report = Report::new(suite.name(), cfg.to_json());
    let rows = match suite {
        Suite::Steenrod => steenrod_suite(cfg)?,
        Suite::Division => division_suite(cfg)?,
        Suite::ProductLaw => product_law_suite(cfg)?,
        Suite::WeightFiltration => filtration_suite(cfg, true)?,
        Suite::ExactSequences => filtration_suite(cfg, false)?,
        Suite::InvariantRings => invariant_ring_suite(cfg, cache)?,
        Suite::RestrictionImage => image_suite(cfg, false)?,
        Suite::GeneratorClosure => image_suite(cfg, true)?,
        Suite::Serre => serre_suite(cfg)?,
        Suite::Weyl => weyl_suite(cfg)?,
    };
    report.extend(rows);
    Ok(report)
}

fn keep<T: PartialEq>(pin: Option<T>, value: T) -> bool {
    pin.is_none_or(|x| x == value)
}

// ---------------------------------------------------------------- steenrod

const STEENROD_MAX_I: usize = 2;
const STEENROD_SEED: u64 = 0x5eed_0001;

fn monomials_to(ctx: KoszulCtx, max_deg: usize) -> Vec<Vec<KoszulElement>> {
    (0..=max_deg)
        .map(|d| {
            DegreeSlice::new(ctx, d)
                .basis()
                .iter()
                .map(|m| KoszulElement::monomial(ctx, *m, 1))
                .collect()
        })
        .collect()
}

fn random_element(
    rng: &mut StdRng,
    ctx: KoszulCtx,
    slices: &[Vec<KoszulElement>],
    d: usize,
) -> KoszulElement {
    let slice = &slices[d];
    let mut x = KoszulElement::zero(ctx);
    if slice.is_empty() {
        return x;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let c = rng.gen_range(1..ctx.p());
        x = &x + &slice[rng.gen_range(0..slice.len())].scale(c);
    }
    x
}

fn random_matrix(rng: &mut StdRng, ctx: KoszulCtx) -> MatrixGL {
    let n = ctx.n();
    let p = ctx.p() as i64;
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if let Ok(g) = MatrixGL::new(*ctx.field(), &rows) {
            return g;
        }
    }
}

fn count_row(statement: String, total: usize, ok: usize, tag: &str) -> Row {
    Row::new(
        None,
        statement,
        format!("{total} of {total}"),
        format!("{ok} of {total}"),
        ok == total,
        tag,
    )
}

fn steenrod_rows(n: usize, p: u32, max_deg: usize, pairs: usize) -> Result<Vec<Row>> {
    let ctx = KoszulCtx::new(p, n)?;
    let slices = monomials_to(ctx, max_deg);
    let basis: Vec<&KoszulElement> = slices.iter().flatten().collect();
    let total = basis.len();
    let head = format!("n={n} p={p}");
    let mut rows = Vec::new();
    let tag = "Milnor operations on the cohomology of an elementary abelian group";

    for i in 0..=STEENROD_MAX_I {
        let ok = basis
            .par_iter()
            .filter(|x| milnor_q(i, &milnor_q(i, x)).is_zero())
            .count();
        rows.push(count_row(
            format!("{head}: Q_{i} Q_{i} = 0 on monomials to degree {max_deg}"),
            total,
            ok,
            tag,
        ));
    }
    for i in 0..=STEENROD_MAX_I {
        for j in i + 1..=STEENROD_MAX_I {
            let ok = basis
                .par_iter()
                .filter(|x| {
                    (&milnor_q(i, &milnor_q(j, x)) + &milnor_q(j, &milnor_q(i, x))).is_zero()
                })
                .count();
            rows.push(count_row(
                format!("{head}: Q_{i} Q_{j} + Q_{j} Q_{i} = 0 on monomials to degree {max_deg}"),
                total,
                ok,
                tag,
            ));
        }
    }
    for i in 0..=STEENROD_MAX_I {
        let ok = basis
            .par_iter()
            .filter(|x| milnor_q(i, x) == milnor_q_recursive(i, x))
            .count();
        rows.push(count_row(
            format!("{head}: closed Q_{i} equals the commutator recursion on monomials to degree {max_deg}"),
            total,
            ok,
            "recursive definition of the Milnor operations",
        ));
    }

    let mut rng = StdRng::seed_from_u64(STEENROD_SEED ^ ((n as u64) << 8) ^ p as u64);
    let half = max_deg / 2;
    let (mut leibniz, mut cartan, mut natural) = (0, 0, 0);
    for _ in 0..pairs {
        let (da, db) = (rng.gen_range(0..=half), rng.gen_range(0..=half));
        let x = random_element(&mut rng, ctx, &slices, da);
        let y = random_element(&mut rng, ctx, &slices, db);
        let i = rng.gen_range(0..=STEENROD_MAX_I);
        let xy = &x * &y;
        let sign_term = &x * &milnor_q(i, &y);
        let rhs = if da % 2 == 0 {
            &(&milnor_q(i, &x) * &y) + &sign_term
        } else {
            &(&milnor_q(i, &x) * &y) - &sign_term
        };
        leibniz += usize::from(milnor_q(i, &xy) == rhs);

        let k = rng.gen_range(0..=3);
        let mut sum = KoszulElement::zero(ctx);
        for a in 0..=k {
            sum = &sum + &(&reduced_power(a, &x) * &reduced_power(k - a, &y));
        }
        cartan += usize::from(reduced_power(k, &xy) == sum);

        let g = random_matrix(&mut rng, ctx);
        natural +=
            usize::from(apply_matrix(&g, &milnor_q(i, &x))? == milnor_q(i, &apply_matrix(&g, &x)?));
    }
    rows.push(count_row(
        format!("{head}: signed Leibniz rule on {pairs} random pairs"),
        pairs,
        leibniz,
        tag,
    ));
    rows.push(count_row(
        format!("{head}: Cartan formula on {pairs} random pairs"),
        pairs,
        cartan,
        "reduced powers through the total power",
    ));
    rows.push(count_row(
        format!("{head}: Q_i commutes with random linear substitutions ({pairs} trials)"),
        pairs,
        natural,
        "naturality of Steenrod operations",
    ));
    Ok(rows)
}

fn steenrod_suite(cfg: &RunConfig) -> Result<Vec<Row>> {
    let max_deg = cfg.max_deg.unwrap_or(30);
    let mut rows = Vec::new();
    for p in [3, 5] {
        for n in 1..=4 {
            if keep(cfg.p, p) && keep(cfg.n, n) {
                rows.extend(steenrod_rows(n, p, max_deg, 300)?);
            }
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------- division

const DIVISION_GRID: [(usize, u32); 5] = [(2, 3), (3, 3), (4, 3), (2, 5), (3, 5)];

fn division_rows(n: usize, p: u32) -> Result<Vec<Row>> {
    let ctx = KoszulCtx::new(p, n)?;
    let classes = MuiClasses::new(ctx, GroupFamily::G)?;
    let f = classes.f();
    let u_n = top_form(ctx, SubspaceSpec::Full);
    let omega_u = classes.omega(&u_n);
    let tag = "exact division by f_n";
    let head = format!("n={n} p={p}");
    let mut rows = Vec::new();

    let describe = |r: &Result<KoszulElement>, target: &KoszulElement| match r {
        Ok(q) if q == target => "exact, quotient matches".to_string(),
        Ok(_) => "exact, quotient differs".to_string(),
        Err(e) => e.to_string(),
    };
    let q1 = exact_divide(&omega_u, f);
    let u_tail = top_form(ctx, SubspaceSpec::Tail);
    rows.push(Row::new(
        None,
        format!("{head}: O_{{n-1}} u_n / f_n = u_{{n-1}}"),
        "exact, quotient matches",
        describe(&q1, &u_tail),
        matches!(&q1, Ok(q) if *q == u_tail),
        tag,
    ));

    let lower = QComposite::new(&(0..n - 1).collect::<Vec<_>>())?;
    let numerator = q_composite(&lower, &omega_u);
    let q2 = exact_divide(&numerator, f);
    let e_tail = euler_class(ctx, SubspaceSpec::Tail);
    rows.push(Row::new(
        None,
        format!("{head}: Q_0..Q_{{n-2}} O_{{n-1}} u_n / f_n = e_{{n-1}}"),
        "exact, quotient matches",
        describe(&q2, &e_tail),
        matches!(&q2, Ok(q) if *q == e_tail),
        tag,
    ));

    // c_{n,0} against e_n^{p-1}: reported with the sign found, not assumed.
    let c0 = dickson(ctx, SubspaceSpec::Full, 0)?;
    let e_pow = euler_class(ctx, SubspaceSpec::Full).pow(p - 1);
    let sign = if c0 == e_pow {
        Some("+")
    } else if c0 == -&e_pow {
        Some("-")
    } else {
        None
    };
    rows.push(Row::new(
        None,
        format!("{head}: c_{{n,0}} = ±e_n^(p-1)"),
        "±",
        sign.unwrap_or("no relation"),
        sign.is_some(),
        "empirical relation outside the displayed presentation",
    ));
    Ok(rows)
}

fn division_suite(cfg: &RunConfig) -> Result<Vec<Row>> {
    let grid: Vec<_> = DIVISION_GRID
        .into_iter()
        .filter(|&(n, p)| keep(cfg.n, n) && keep(cfg.p, p))
        .collect();
    let nested = grid
        .par_iter()
        .map(|&(n, p)| division_rows(n, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(nested.into_iter().flatten().collect())
}

// ---------------------------------------------------------------- product law

const FAMILIES: [GroupFamily; 3] = [GroupFamily::SL, GroupFamily::G, GroupFamily::GPrime];

fn product_law_suite(cfg: &RunConfig) -> Result<Vec<Row>> {
    let grid = [(2, 3), (3, 3), (4, 3), (2, 5), (3, 5)];
    let mut rows = Vec::new();
    for (n, p) in grid {
        for family in FAMILIES {
            if keep(cfg.n, n) && keep(cfg.p, p) && keep(cfg.family, family) {
                rows.extend(verify_product_law(&group_generators(family, n, p)?)?);
            }
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------- filtration and exact sequences

/// `(family, n, p, i, ℓ)`.
const FILTRATION_GRID: [(GroupFamily, usize, u32, usize, usize); 6] = [
    (GroupFamily::SL, 2, 3, 0, 1),
    (GroupFamily::SL, 3, 3, 1, 2),
    (GroupFamily::G, 4, 3, 2, 2),
    (GroupFamily::GPrime, 4, 3, 2, 2),
    (GroupFamily::SL, 2, 5, 0, 1),
    (GroupFamily::SL, 3, 5, 1, 2),
];

fn filtration_suite(cfg: &RunConfig, weights: bool) -> Result<Vec<Row>> {
    let max_deg = cfg.max_deg.unwrap_or(40);
    let mut rows = Vec::new();
    for (family, n, p, i, ell) in FILTRATION_GRID {
        if !(keep(cfg.family, family) && keep(cfg.n, n) && keep(cfg.p, p)) {
            continue;
        }
        let model = ModuleModel::for_family(family, n, p)?;
        rows.extend(if weights {
            check_weight_filtration(&model, i, ell, max_deg)?
        } else {
            check_exact_sequences(&model, i, ell, max_deg)?
        });
    }
    Ok(rows)
}

// ---------------------------------------------------------------- invariant rings

/// `(family, n, p, max degree)`.
const INVARIANT_RING_GRID: [(GroupFamily, usize, u32, usize); 6] = [
    (GroupFamily::SL, 2, 3, 60),
    (GroupFamily::SL, 2, 5, 60),
    (GroupFamily::SL, 3, 3, 60),
    (GroupFamily::SL, 3, 5, 60),
    (GroupFamily::G, 4, 3, 40),
    (GroupFamily::GPrime, 4, 3, 40),
];

fn invariant_ring_rows(
    family: GroupFamily,
    n: usize,
    p: u32,
    max_deg: usize,
    cache: Option<&Cache>,
) -> Result<Vec<Row>> {
    let budget = Budget::default();
    let largest = slice_dimension(n, max_deg);
    if largest > budget.limit {
        return Err(Error::BudgetExceeded {
            dim: largest,
            budget: budget.limit,
        });
    }
    let model = ModuleModel::for_family(family, n, p)?;
    let h = &model.h;
    let field = *h.ctx().field();
    let tag = "free-module description of the invariant ring";
    let mut rows = Vec::new();

    for (g, el) in model.desc.ring.iter().zip(model.classes.ring_generators()) {
        rows.push(Row::eq(
            Some(g.degree),
            format!("{}: ring generator {} is invariant", h.label, g.label),
            true,
            is_invariant(h, &el)?,
            tag,
        ));
    }
    for g in &model.desc.generators {
        let el = match g.subset {
            None => KoszulElement::one(h.ctx()),
            Some(m) => model.classes.module_generator(m)?,
        };
        rows.push(Row::eq(
            Some(g.degree),
            format!("{}: module generator {} is invariant", h.label, g.label),
            true,
            is_invariant(h, &el)?,
            tag,
        ));
    }

    let wider = if family == GroupFamily::GPrime {
        Some(group_generators(GroupFamily::G, n, p)?)
    } else {
        None
    };
    let per_degree = (0..=max_deg)
        .into_par_iter()
        .map(|d| {
            let basis = cached_invariant_basis(cache, h, d)?;
            let predicted = predicted_dimension(h, d)?;
            let mut out = vec![Row::eq(
                Some(d),
                format!("{}: dimension of the invariants", h.label),
                predicted,
                basis.len(),
                tag,
            )];
            let listed = model.elements(d, |_| true);
            let rank = span_dim(field, &listed);
            out.push(Row::eq(
                Some(d),
                format!(
                    "{}: R-multiples of the listed generators are independent",
                    h.label
                ),
                listed.len(),
                rank,
                tag,
            ));
            if let Some(g) = &wider {
                let mut inside = true;
                for x in &basis {
                    inside &= is_invariant(g, x)?;
                }
                out.push(Row::eq(
                    Some(d),
                    format!("{}: invariants are also {}-invariant", h.label, g.label),
                    true,
                    inside,
                    "containment between the G_n and G_n' invariants",
                ));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    rows.extend(per_degree.into_iter().flatten());
    Ok(rows)
}

fn invariant_ring_suite(cfg: &RunConfig, cache: Option<&Cache>) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let mut matched = false;
    for (family, n, p, default_deg) in INVARIANT_RING_GRID {
        if keep(cfg.family, family) && keep(cfg.n, n) && keep(cfg.p, p) {
            matched = true;
            rows.extend(invariant_ring_rows(
                family,
                n,
                p,
                cfg.max_deg.unwrap_or(default_deg),
                cache,
            )?);
        }
    }
    // A fully pinned configuration off the default grid still runs.
    if !matched {
        if let (Some(family), Some(n), Some(p)) = (cfg.family, cfg.n, cfg.p) {
            rows.extend(invariant_ring_rows(
                family,
                n,
                p,
                cfg.max_deg.unwrap_or(40),
                cache,
            )?);
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------- cases

fn selected_cases(cfg: &RunConfig) -> Result<Vec<CaseSpec>> {
    match &cfg.case {
        Some(id) => Ok(vec![case(id)?]),
        None => Ok(case_table()
            .into_iter()
            .filter(|c| keep(cfg.p, c.p))
            .collect()),
    }
}

fn image_suite(cfg: &RunConfig, closure: bool) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for spec in selected_cases(cfg)? {
        let default_deg = if !closure && spec.id == "e8" { 60 } else { 40 };
        let max_deg = cfg.max_deg.unwrap_or(default_deg);
        let cm = CaseModel::new(spec)?;
        rows.extend(if closure {
            steenrod_closure_check(&cm, max_deg)?
        } else {
            check_prop_image(&cm, max_deg)?
        });
    }
    Ok(rows)
}

fn serre_suite(cfg: &RunConfig) -> Result<Vec<Row>> {
    let max_deg = cfg.max_deg.unwrap_or(200);
    let mut rows = Vec::new();
    for spec in selected_cases(cfg)? {
        rows.extend(series_identity_rows(&spec, max_deg));
        rows.extend(replay(&spec, max_deg)?.rows);
    }
    Ok(rows)
}

// ---------------------------------------------------------------- weyl

/// Golden tables from the first verified run, keyed by `(case, max degree)`.
pub const WEYL_GOLDEN: [(&str, usize, &str); 3] = [
    ("pu3", 40, include_str!("../tests/golden/weyl_pu3_40.csv")),
    ("pu5", 40, include_str!("../tests/golden/weyl_pu5_40.csv")),
    ("f4", 48, include_str!("../tests/golden/weyl_f4_48.csv")),
];

const WEYL_DIRECT: [(&str, usize); 3] = [("pu3", 40), ("pu5", 40), ("f4", 48)];
const WEYL_GATED: [(&str, usize); 2] = [("e6", 24), ("e7", 24)];
const WEYL_SEED: u64 = 0x5eed_0002;

fn weyl_case_rows(id: &str, max_deg: usize) -> Result<Vec<Row>> {
    let spec = case(id)?;
    let datum = case_datum(id)?;
    let report = compare_with_known_part(&spec, max_deg)?;
    let mut rows = report.rows();
    rows.push(Row::new(
        None,
        format!(
            "{}: candidate kernel coefficients (inferred, computed minus known)",
            spec.label
        ),
        "recorded",
        format!("{:?}", report.inferred_kernel()),
        true,
        "Weyl invariants against the even part of the image",
    ));
    if let Some(&(_, _, golden)) = WEYL_GOLDEN.iter().find(|g| g.0 == id && g.1 == max_deg) {
        let expected = WeylInvariantReport::from_csv(&report.label, report.p, golden)?;
        let differing = expected
            .rows
            .iter()
            .zip(&report.rows)
            .filter(|(a, b)| a != b)
            .count()
            + expected.rows.len().abs_diff(report.rows.len());
        rows.push(Row::eq(
            None,
            format!(
                "{}: table matches the golden file to degree {max_deg}",
                spec.label
            ),
            0,
            differing,
            "golden Weyl table",
        ));
    }
    let products = product_spot_check(&datum, spec.p, max_deg, 100, WEYL_SEED)?;
    let ok = products.iter().filter(|r| r.pass).count();
    rows.push(count_row(
        format!(
            "{}: products of random invariant pairs are invariant",
            spec.label
        ),
        products.len(),
        ok,
        "Weyl invariants form a ring",
    ));
    Ok(rows)
}

fn weyl_suite(cfg: &RunConfig) -> Result<Vec<Row>> {
    let tag = "shipped root data";
    let mut rows = Vec::new();
    // Relation validation runs for every shipped datum, including the gated ones.
    for id in ["pu3", "pu5", "f4", "e6", "e7", "e8", "su3"] {
        if !keep(cfg.case.as_deref(), id) {
            continue;
        }
        let datum = case_datum(id)?;
        for p in [3, 5] {
            let ok = reflection_matrices(&datum, p).is_ok();
            rows.push(Row::eq(
                None,
                format!(
                    "{} mod {p}: simple reflections satisfy the Coxeter relations",
                    datum.label
                ),
                true,
                ok,
                tag,
            ));
        }
        if datum.rank <= 4 {
            let p = if id == "su3" { 5 } else { case(id)?.p };
            let order = reflection_group_order(&datum, p, 10_000)?;
            rows.push(Row::new(
                None,
                format!(
                    "{} mod {p}: order of the generated matrix group",
                    datum.label
                ),
                "recorded",
                order.map_or("over 10000".to_string(), |o| o.to_string()),
                true,
                tag,
            ));
        }
    }

    let mut runs: Vec<(&str, usize)> = WEYL_DIRECT.to_vec();
    if cfg.heavy {
        runs.extend(WEYL_GATED);
    }
    for (id, default_deg) in runs {
        if keep(cfg.case.as_deref(), id) {
            rows.extend(weyl_case_rows(id, cfg.max_deg.unwrap_or(default_deg))?);
        }
    }
    if cfg.case.is_none() {
        rows.extend(control_su3(cfg.max_deg.unwrap_or(40))?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Err(Error::Config("x".into()))), 2);
        assert_eq!(
            exit_code(&Err(Error::BudgetExceeded { dim: 2, budget: 1 })),
            3
        );
        assert_eq!(
            exit_code(&Err(Error::NegativeDimension {
                what: "E_3".into(),
                degree: 4,
                value: -1
            })),
            1
        );
    }

    #[test]
    fn small_runs_pass() {
        let cfg = RunConfig {
            n: Some(2),
            p: Some(3),
            max_deg: Some(12),
            ..Default::default()
        };
        for s in [
            Suite::Steenrod,
            Suite::Division,
            Suite::ProductLaw,
            Suite::InvariantRings,
        ] {
            let r = run_suite(s, &cfg, None).unwrap();
            assert!(r.summary.total > 0 && r.all_pass(), "{s}");
        }
    }
}
