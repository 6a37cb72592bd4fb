//! Case table for `(G, p)` ∈ {PU(p), F_4, E_6, E_7, E_8} and the checks of the
//! image of `ξ*` inside the brute-forced invariant rings.
//!
//! `H*(BG)` is never built. Each case lists labelled classes `y_j` by how they
//! arise from a few base classes under `Q_i`, `℘^k` and products, and the
//! module generators of `M_0`, `M_1` are expressions in those labels. Their
//! images are evaluated in `H*(BA_n)` and compared with the splitting from
//! [`crate::filtration`].

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{split, ModuleModel, Piece, SplitSpec};
use crate::koszul::{KoszulCtx, KoszulElement};
use crate::linalg::ElementSpan;
use crate::mui::{
    dickson, euler_class, exact_divide, invariant_basis, is_invariant, top_form, GroupFamily,
    MuiBasisDescription, MuiClasses, SubspaceSpec,
};
use crate::report::Row;
use crate::series::Series;
use crate::steenrod::{milnor_degree, milnor_q, reduced_power};

/// A class of `H*(BA_n)` written in terms of base classes and operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassExpr {
    One,
    /// `u_n = dt_1 ⋯ dt_n`.
    Top,
    /// `u_{n−1} = dt_2 ⋯ dt_n`.
    TailTop,
    /// `dt_{j+1}`.
    Dt(usize),
    Dickson {
        tail: bool,
        i: usize,
    },
    Euler {
        tail: bool,
    },
    /// A previously defined class of the case.
    Y(String),
    Milnor(usize, Box<ClassExpr>),
    Power(usize, Box<ClassExpr>),
    /// `𝒪_{n−1}`.
    Omega(Box<ClassExpr>),
    /// `𝒪̄_{n−1} = f_n^{−1} 𝒪_{n−1}`.
    OmegaBar(Box<ClassExpr>),
    Neg(Box<ClassExpr>),
    Mul(Box<ClassExpr>, Box<ClassExpr>),
    Pow(Box<ClassExpr>, u32),
}

fn y(name: impl fmt::Display) -> ClassExpr {
    ClassExpr::Y(name.to_string())
}

fn q(i: usize, x: ClassExpr) -> ClassExpr {
    ClassExpr::Milnor(i, Box::new(x))
}

fn qs(indices: &[usize], x: ClassExpr) -> ClassExpr {
    indices.iter().rev().fold(x, |acc, &i| q(i, acc))
}

fn pw(k: usize, x: ClassExpr) -> ClassExpr {
    ClassExpr::Power(k, Box::new(x))
}

fn neg(x: ClassExpr) -> ClassExpr {
    ClassExpr::Neg(Box::new(x))
}

fn mul(a: ClassExpr, b: ClassExpr) -> ClassExpr {
    ClassExpr::Mul(Box::new(a), Box::new(b))
}

fn obar(x: ClassExpr) -> ClassExpr {
    ClassExpr::OmegaBar(Box::new(x))
}

fn e3() -> ClassExpr {
    ClassExpr::Euler { tail: false }
}

impl ClassExpr {
    /// Degree, given the degrees of the named classes.
    pub fn degree(&self, p: u32, n: usize, env: &BTreeMap<String, usize>) -> Option<isize> {
        let pu = p as isize;
        Some(match self {
            ClassExpr::One => 0,
            ClassExpr::Top => n as isize,
            ClassExpr::TailTop => n as isize - 1,
            ClassExpr::Dt(_) => 1,
            ClassExpr::Dickson { tail, i } => {
                let r = if *tail { n - 1 } else { n };
                2 * (pu.pow(r as u32) - pu.pow(*i as u32))
            }
            ClassExpr::Euler { tail } => {
                let r = if *tail { n - 1 } else { n };
                crate::mui::euler_degree(p, r) as isize
            }
            ClassExpr::Y(name) => *env.get(name)? as isize,
            ClassExpr::Milnor(i, x) => x.degree(p, n, env)? + milnor_degree(p, *i) as isize,
            ClassExpr::Power(k, x) => x.degree(p, n, env)? + 2 * *k as isize * (pu - 1),
            ClassExpr::Omega(x) => x.degree(p, n, env)? + 2 * pu.pow(n as u32 - 1) - 1,
            ClassExpr::OmegaBar(x) => x.degree(p, n, env)? - 1,
            ClassExpr::Neg(x) => x.degree(p, n, env)?,
            ClassExpr::Mul(a, b) => a.degree(p, n, env)? + b.degree(p, n, env)?,
            ClassExpr::Pow(x, k) => x.degree(p, n, env)? * *k as isize,
        })
    }

    fn atomic(&self) -> bool {
        !matches!(
            self,
            ClassExpr::Mul(..) | ClassExpr::Neg(_) | ClassExpr::Milnor(..) | ClassExpr::Power(..)
        )
    }

    /// Human-readable form; `n` fixes the subscripts of `u`, `c`, `e` and `𝒪`.
    pub fn render(&self, n: usize) -> String {
        let wrap = |x: &ClassExpr| {
            if x.atomic() || matches!(x, ClassExpr::Milnor(..) | ClassExpr::Power(..)) {
                x.render(n)
            } else {
                format!("({})", x.render(n))
            }
        };
        match self {
            ClassExpr::One => "1".into(),
            ClassExpr::Top => format!("u_{n}"),
            ClassExpr::TailTop => format!("u_{}", n - 1),
            ClassExpr::Dt(j) => format!("dt_{}", j + 1),
            ClassExpr::Dickson { tail, i } => {
                format!("c_{{{},{i}}}", if *tail { n - 1 } else { n })
            }
            ClassExpr::Euler { tail } => format!("e_{}", if *tail { n - 1 } else { n }),
            ClassExpr::Y(name) => name.clone(),
            ClassExpr::Milnor(i, x) => format!("Q_{i} {}", wrap(x)),
            ClassExpr::Power(k, x) => format!("P^{k} {}", wrap(x)),
            ClassExpr::Omega(x) => format!("O_{}({})", n - 1, x.render(n)),
            ClassExpr::OmegaBar(x) => format!("Obar_{} {}", n - 1, wrap(x)),
            ClassExpr::Neg(x) => format!("-{}", wrap(x)),
            ClassExpr::Mul(a, b) => format!("{} {}", wrap(a), wrap(b)),
            ClassExpr::Pow(x, k) => format!("{}^{k}", wrap(x)),
        }
    }

    pub fn eval(
        &self,
        classes: &MuiClasses,
        env: &BTreeMap<String, KoszulElement>,
    ) -> Result<KoszulElement> {
        let ctx = classes.ctx;
        Ok(match self {
            ClassExpr::One => KoszulElement::one(ctx),
            ClassExpr::Top => top_form(ctx, SubspaceSpec::Full),
            ClassExpr::TailTop => top_form(ctx, SubspaceSpec::Tail),
            ClassExpr::Dt(j) => KoszulElement::dt(ctx, *j),
            ClassExpr::Dickson { tail, i } => {
                let v = if *tail {
                    SubspaceSpec::Tail
                } else {
                    SubspaceSpec::Full
                };
                dickson(ctx, v, *i)?
            }
            ClassExpr::Euler { tail } => euler_class(
                ctx,
                if *tail {
                    SubspaceSpec::Tail
                } else {
                    SubspaceSpec::Full
                },
            ),
            ClassExpr::Y(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Config(format!("class {name} used before definition")))?,
            ClassExpr::Milnor(i, x) => milnor_q(*i, &x.eval(classes, env)?),
            ClassExpr::Power(k, x) => reduced_power(*k, &x.eval(classes, env)?),
            ClassExpr::Omega(x) => classes.omega(&x.eval(classes, env)?),
            ClassExpr::OmegaBar(x) => {
                exact_divide(&classes.omega(&x.eval(classes, env)?), classes.f())?
            }
            ClassExpr::Neg(x) => -&x.eval(classes, env)?,
            ClassExpr::Mul(a, b) => &a.eval(classes, env)? * &b.eval(classes, env)?,
            ClassExpr::Pow(x, k) => x.eval(classes, env)?.pow(*k),
        })
    }
}

/// A labelled class with its degree and defining expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedClass {
    pub label: String,
    pub degree: usize,
    pub expr: ClassExpr,
    /// The expression in readable form.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub id: String,
    pub label: String,
    pub p: u32,
    /// Degree of the fibre generator; `y_{m+1}` drives sequence (2).
    pub m: usize,
    /// Index of `e_k`.
    pub k: usize,
    pub rank: usize,
    /// Start of the filtration `F_{∞,i}` used for the splitting.
    pub i: usize,
    /// Split index `ℓ`.
    pub ell: usize,
    pub family: GroupFamily,
    /// Keep only the `𝒪̄_{n−1} ū_n` part of the invariant module (E_7).
    pub restrict_top: bool,
    pub ring: Vec<(String, usize)>,
    pub classes: Vec<NamedClass>,
    pub m0: Vec<NamedClass>,
    pub m1: Vec<NamedClass>,
    /// Image generators as displayed alongside the module definitions.
    pub m0_display: Vec<NamedClass>,
    pub m1_display: Vec<NamedClass>,
    /// Label of `y_{m+1}`.
    pub fiber_class: String,
    /// Generators of the image as an algebra over the Steenrod algebra.
    pub steenrod_generators: Vec<NamedClass>,
}

struct Builder {
    p: u32,
    n: usize,
    degrees: BTreeMap<String, usize>,
}

impl Builder {
    fn named(&self, label: impl Into<String>, expr: ClassExpr) -> NamedClass {
        let label = label.into();
        let degree = expr
            .degree(self.p, self.n, &self.degrees)
            .unwrap_or_else(|| panic!("undefined class in {label}"));
        NamedClass {
            label,
            degree: degree as usize,
            text: expr.render(self.n),
            expr,
        }
    }

    fn define(&mut self, out: &mut Vec<NamedClass>, label: impl Into<String>, expr: ClassExpr) {
        let c = self.named(label, expr);
        self.degrees.insert(c.label.clone(), c.degree);
        out.push(c);
    }

    /// Module generators, labelled by their rendered expression.
    fn list(&self, exprs: Vec<ClassExpr>) -> Vec<NamedClass> {
        exprs
            .into_iter()
            .map(|e| {
                let label = e.render(self.n);
                self.named(label, e)
            })
            .collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn base_spec(
    id: &str,
    label: &str,
    p: u32,
    rank: usize,
    family: GroupFamily,
    i: usize,
    ell: usize,
    restrict_top: bool,
) -> Result<(CaseSpec, Builder)> {
    let desc = MuiBasisDescription::new(family, rank, p)?;
    let ring: Vec<(String, usize)> = desc
        .ring
        .iter()
        .map(|r| (r.label.clone(), r.degree))
        .collect();
    let k = family.euler_index(rank);
    let m = if rank == 2 { 2 } else { 2 * p as usize + 2 };
    let spec = CaseSpec {
        id: id.into(),
        label: label.into(),
        p,
        m,
        k,
        rank,
        i,
        ell,
        family,
        restrict_top,
        ring,
        classes: Vec::new(),
        m0: Vec::new(),
        m1: Vec::new(),
        m0_display: Vec::new(),
        m1_display: Vec::new(),
        fiber_class: String::new(),
        steenrod_generators: Vec::new(),
    };
    let b = Builder {
        p,
        n: rank,
        degrees: BTreeMap::new(),
    };
    Ok((spec, b))
}

/// `PU(p)`: rank 2, `W(A) = SL_2(F_p)`.
pub fn case_pu(p: u32) -> Result<CaseSpec> {
    let (mut s, mut b) = base_spec(
        &format!("pu{p}"),
        &format!("PU({p})"),
        p,
        2,
        GroupFamily::SL,
        0,
        1,
        false,
    )?;
    let top = 2 * p as usize + 1;
    let mut cl = Vec::new();
    b.define(&mut cl, "y_2", ClassExpr::Top);
    b.define(&mut cl, "y_3", q(0, y("y_2")));
    b.define(&mut cl, format!("y_{top}"), q(1, y("y_2")));
    s.classes = cl;
    s.m0 = b.list(vec![ClassExpr::One, y(format!("y_{top}"))]);
    s.m1 = b.list(vec![y("y_3"), y("y_2")]);
    s.m0_display = b.list(vec![ClassExpr::One, q(1, ClassExpr::Top)]);
    s.m1_display = b.list(vec![q(0, ClassExpr::Top), ClassExpr::Top]);
    s.fiber_class = "y_3".into();
    s.steenrod_generators = b.list(vec![
        ClassExpr::Top,
        ClassExpr::Dickson { tail: false, i: 1 },
    ]);
    Ok(s)
}

/// `F_4` at 3 and `E_8` at 5: rank 3, `W(A) = SL_3(F_p)`.
fn case_rank3(id: &str, label: &str, p: u32) -> Result<CaseSpec> {
    let (mut s, mut b) = base_spec(id, label, p, 3, GroupFamily::SL, 1, 2, false)?;
    let pu = p as usize;
    let (a, bb, c, d, e) = (
        2 * pu + 2,
        2 * pu + 3,
        2 * pu * pu + 2,
        2 * pu * pu + 3,
        2 * pu * pu + 2 * pu + 1,
    );
    let yl = |j: usize| format!("y_{j}");
    let mut cl = Vec::new();
    b.define(&mut cl, "y_4", q(0, ClassExpr::Top));
    b.define(&mut cl, yl(a), pw(1, y("y_4")));
    b.define(&mut cl, yl(bb), neg(q(1, y("y_4"))));
    b.define(&mut cl, yl(c), pw(pu, pw(1, y("y_4"))));
    b.define(&mut cl, yl(d), neg(q(2, y("y_4"))));
    b.define(&mut cl, yl(e), neg(q(2, y(yl(a)))));
    s.classes = cl;
    s.m0 = b.list(vec![ClassExpr::One, y(yl(c)), y(yl(d)), y(yl(e))]);
    s.m1 = b.list(vec![
        y(yl(bb)),
        mul(y(yl(bb)), y(yl(c))),
        y("y_4"),
        y(yl(a)),
    ]);
    let u = ClassExpr::Top;
    s.m0_display = b.list(vec![
        ClassExpr::One,
        q(2, u.clone()),
        qs(&[0, 2], u.clone()),
        qs(&[1, 2], u.clone()),
    ]);
    s.m1_display = b.list(vec![
        qs(&[0, 1], u.clone()),
        mul(e3(), u.clone()),
        q(0, u.clone()),
        q(1, u),
    ]);
    s.fiber_class = yl(bb);
    s.steenrod_generators = b.list(vec![
        q(0, ClassExpr::Top),
        ClassExpr::Dickson { tail: false, i: 1 },
        ClassExpr::Dickson { tail: false, i: 2 },
    ]);
    Ok(s)
}

/// `E_6` (family `G_4`) and `E_7` (family `G_4′`) at 3: rank 4.
fn case_rank4(e7: bool) -> Result<CaseSpec> {
    let (id, label, family) = if e7 {
        ("e7", "E_7", GroupFamily::GPrime)
    } else {
        ("e6", "E_6", GroupFamily::G)
    };
    let (mut s, mut b) = base_spec(id, label, 3, 4, family, 2, 2, e7)?;
    let mut cl = Vec::new();
    b.define(&mut cl, "y_4", q(0, ClassExpr::TailTop));
    b.define(&mut cl, "y_9", neg(q(1, y("y_4"))));
    b.define(&mut cl, "y_8", pw(1, y("y_4")));
    b.define(&mut cl, "y_20", pw(3, pw(1, y("y_4"))));
    if !e7 {
        b.define(&mut cl, "y_10", qs(&[0, 1], ClassExpr::Top));
        b.define(&mut cl, "y_22", pw(3, y("y_10")));
        b.define(&mut cl, "y_26", pw(1, y("y_22")));
        b.define(&mut cl, "y_30", mul(y("y_10"), y("y_20")));
    }
    s.classes = cl;
    let e = ClassExpr::Euler { tail: true };
    let u = ClassExpr::Top;
    let ou = obar(ClassExpr::Top);
    if e7 {
        s.m0 = b.list(vec![
            ClassExpr::One,
            y("y_20"),
            q(2, y("y_4")),
            q(2, y("y_8")),
        ]);
        s.m1 = b.list(vec![y("y_9"), mul(y("y_9"), y("y_20")), y("y_4"), y("y_8")]);
        s.m0_display = b.list(vec![
            ClassExpr::One,
            q(2, ou.clone()),
            qs(&[0, 2], ou.clone()),
            qs(&[1, 2], ou.clone()),
        ]);
        s.m1_display = b.list(vec![
            qs(&[0, 1], ou.clone()),
            mul(e.clone(), ou.clone()),
            q(0, ou.clone()),
            q(1, ou),
        ]);
    } else {
        s.m0 = b.list(vec![
            ClassExpr::One,
            y("y_22"),
            y("y_26"),
            y("y_20"),
            q(2, y("y_10")),
            q(2, y("y_4")),
            q(2, y("y_8")),
            q(2, y("y_30")),
        ]);
        s.m1 = b.list(vec![
            y("y_9"),
            mul(y("y_9"), y("y_22")),
            mul(y("y_9"), y("y_26")),
            mul(y("y_9"), y("y_20")),
            y("y_10"),
            y("y_4"),
            y("y_8"),
            y("y_30"),
        ]);
        // The displayed list repeats `Q_2 𝒪̄_3 u_4`; the repeat is dropped here.
        s.m0_display = b.list(vec![
            ClassExpr::One,
            qs(&[0, 2], u.clone()),
            qs(&[1, 2], u.clone()),
            q(2, ou.clone()),
            qs(&[0, 1, 2], u.clone()),
            qs(&[0, 2], ou.clone()),
            qs(&[1, 2], ou.clone()),
            mul(e.clone(), q(2, u.clone())),
        ]);
        s.m1_display = b.list(vec![
            qs(&[0, 1], ou.clone()),
            mul(e.clone(), ou.clone()),
            q(0, ou.clone()),
            q(1, ou),
            qs(&[0, 1], u.clone()),
            mul(e.clone(), u.clone()),
            mul(e.clone(), q(0, u.clone())),
            mul(e, q(1, u)),
        ]);
    }
    s.fiber_class = "y_9".into();
    let mut gens = vec![
        q(0, ClassExpr::TailTop),
        ClassExpr::Dickson { tail: true, i: 1 },
        ClassExpr::Dickson { tail: true, i: 2 },
    ];
    let f = ClassExpr::Omega(Box::new(ClassExpr::Dt(0)));
    if e7 {
        gens.push(ClassExpr::Pow(Box::new(f), 2));
    } else {
        gens.push(qs(&[0, 1], ClassExpr::Top));
        gens.push(f);
    }
    s.steenrod_generators = b.list(gens);
    Ok(s)
}

/// The five cases: `PU(3)`, `F_4`, `E_6`, `E_7` at 3 and `E_8` at 5.
pub fn case_table() -> Vec<CaseSpec> {
    ["pu3", "f4", "e6", "e7", "e8"]
        .iter()
        .map(|id| case(id).expect("built-in case"))
        .collect()
}

/// Look up a case by id: `pu3`, `pu5`, `f4`, `e6`, `e7`, `e8`.
pub fn case(id: &str) -> Result<CaseSpec> {
    match id.to_ascii_lowercase().as_str() {
        "pu3" => case_pu(3),
        "pu5" => case_pu(5),
        "f4" => case_rank3("f4", "F_4", 3),
        "e8" => case_rank3("e8", "E_8", 5),
        "e6" => case_rank4(false),
        "e7" => case_rank4(true),
        other => Err(Error::UnknownCase(other.into())),
    }
}

pub fn case_ids() -> &'static [&'static str] {
    &["pu3", "pu5", "f4", "e6", "e7", "e8"]
}

/// The case table as pretty-printed JSON.
pub fn case_table_json() -> String {
    serde_json::to_string_pretty(&case_table()).expect("case table serializes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MPart {
    M0,
    M1,
    M0EvenModE,
    M1EvenModE,
}

impl MPart {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m0" => Some(Self::M0),
            "m1" => Some(Self::M1),
            "m0even" | "m0ev" => Some(Self::M0EvenModE),
            "m1even" | "m1ev" => Some(Self::M1EvenModE),
            _ => None,
        }
    }
}

/// Poincaré series of `M_0`, `M_1` or their even parts modulo `e_k`, as free modules.
pub fn series_m(case: &CaseSpec, part: MPart, max_deg: usize) -> Series {
    let gens = match part {
        MPart::M0 | MPart::M0EvenModE => &case.m0,
        MPart::M1 | MPart::M1EvenModE => &case.m1,
    };
    let e_label = format!("e_{}", case.k);
    match part {
        MPart::M0 | MPart::M1 => {
            let ring: Vec<usize> = case.ring.iter().map(|r| r.1).collect();
            let degs: Vec<usize> = gens.iter().map(|g| g.degree).collect();
            Series::free_module(max_deg, &ring, &degs)
        }
        MPart::M0EvenModE | MPart::M1EvenModE => {
            let ring: Vec<usize> = case
                .ring
                .iter()
                .filter(|r| r.0 != e_label)
                .map(|r| r.1)
                .collect();
            let degs: Vec<usize> = gens
                .iter()
                .map(|g| g.degree)
                .filter(|d| d % 2 == 0)
                .collect();
            Series::free_module(max_deg, &ring, &degs)
        }
    }
}

/// A case with its invariant module model and evaluated images.
pub struct CaseModel {
    pub spec: CaseSpec,
    pub model: ModuleModel,
    pub split: SplitSpec,
    pub images: BTreeMap<String, KoszulElement>,
    pub m0: Vec<KoszulElement>,
    pub m1: Vec<KoszulElement>,
    pub m0_display: Vec<KoszulElement>,
    pub m1_display: Vec<KoszulElement>,
    pub fiber: KoszulElement,
    pub steenrod_generators: Vec<KoszulElement>,
}

/// Degreewise spanning sets of `ξ*M_0` and `ξ*M_1`.
#[derive(Clone, Debug)]
pub struct ImageSlice {
    pub degree: usize,
    pub m0: Vec<KoszulElement>,
    pub m1: Vec<KoszulElement>,
}

impl CaseModel {
    pub fn new(spec: CaseSpec) -> Result<Self> {
        let mut model = ModuleModel::for_family(spec.family, spec.rank, spec.p)?;
        if spec.restrict_top {
            model = model.restrict_to_top();
        }
        let split = split(&model, spec.ell, spec.i)?;
        let classes = model.classes.clone();
        let mut images = BTreeMap::new();
        for c in &spec.classes {
            let x = evaluate(&model, &classes, &images, c)?;
            images.insert(c.label.clone(), x);
        }
        let eval_all = |list: &[NamedClass]| -> Result<Vec<KoszulElement>> {
            list.iter()
                .map(|c| evaluate(&model, &classes, &images, c))
                .collect()
        };
        let m0 = eval_all(&spec.m0)?;
        let m1 = eval_all(&spec.m1)?;
        let m0_display = eval_all(&spec.m0_display)?;
        let m1_display = eval_all(&spec.m1_display)?;
        let steenrod_generators = eval_all(&spec.steenrod_generators)?;
        let fiber = images
            .get(&spec.fiber_class)
            .cloned()
            .ok_or_else(|| Error::Config(format!("missing class {}", spec.fiber_class)))?;
        Ok(Self {
            spec,
            model,
            split,
            images,
            m0,
            m1,
            m0_display,
            m1_display,
            fiber,
            steenrod_generators,
        })
    }

    pub fn ctx(&self) -> KoszulCtx {
        self.model.h.ctx()
    }

    fn r_span(&self, gens: &[KoszulElement], named: &[NamedClass], d: usize) -> Vec<KoszulElement> {
        let mut out = Vec::new();
        for (x, c) in gens.iter().zip(named) {
            if c.degree > d {
                continue;
            }
            for exps in self.model.ring_monomials(d - c.degree) {
                out.push(&self.model.ring_element(&exps) * x);
            }
        }
        out
    }

    /// `R`-multiples of the images of the `M_0` and `M_1` generators in degree `d`.
    pub fn spanning(&self, d: usize) -> ImageSlice {
        ImageSlice {
            degree: d,
            m0: self.r_span(&self.m0, &self.spec.m0, d),
            m1: self.r_span(&self.m1, &self.spec.m1, d),
        }
    }
}

/// Evaluate one named class and check that it is invariant of the declared degree.
fn evaluate(
    model: &ModuleModel,
    classes: &MuiClasses,
    env: &BTreeMap<String, KoszulElement>,
    c: &NamedClass,
) -> Result<KoszulElement> {
    let x = c.expr.eval(classes, env)?;
    if let Some(got) = x.degree()? {
        if got != c.degree {
            return Err(Error::ImageDegree {
                label: c.label.clone(),
                expected: c.degree,
                got,
            });
        }
    }
    if !is_invariant(&model.h, &x)? {
        return Err(Error::NotInvariant {
            label: c.label.clone(),
            degree: c.degree,
        });
    }
    Ok(x)
}

fn span_of(cm: &CaseModel, xs: &[KoszulElement]) -> ElementSpan {
    let mut s = ElementSpan::new(*cm.ctx().field());
    s.extend(xs);
    s
}

fn same_span(cm: &CaseModel, a: &[KoszulElement], b: &[KoszulElement]) -> (usize, usize, bool) {
    let sa = span_of(cm, a);
    let mut sb = span_of(cm, b);
    let inside = sa.basis().iter().all(|x| sb.contains(x));
    (sa.dim(), sb.dim(), inside && sa.dim() == sb.dim())
}

/// Image slice in degree `d`, checked against the brute-force invariants.
pub fn xi_images(cm: &CaseModel, d: usize) -> Result<ImageSlice> {
    let slice = cm.spanning(d);
    let inv = invariant_basis(&cm.model.h, d)?;
    let mut s = span_of(cm, &inv);
    for (part, xs) in [("M_0", &slice.m0), ("M_1", &slice.m1)] {
        if let Some(x) = xs.iter().find(|x| !s.contains(x)) {
            return Err(Error::NotInvariant {
                label: format!("{part} element {x}"),
                degree: d,
            });
        }
    }
    Ok(slice)
}

/// The three statements about the image, degree by degree up to `max_deg`.
pub fn check_prop_image(cm: &CaseModel, max_deg: usize) -> Result<Vec<Row>> {
    let spec = &cm.spec;
    let label = &spec.label;
    let m1_quot = series_m(spec, MPart::M1EvenModE, max_deg);
    let m0_quot = series_m(spec, MPart::M0EvenModE, max_deg);
    let fiber_deg = spec.m + 1;
    let q_index = spec.k - 1;
    let q_deg = milnor_degree(spec.p, q_index);
    let tag = "image of the restriction map";
    let per_degree: Vec<Result<Vec<Row>>> = (0..=max_deg)
        .into_par_iter()
        .map(|d| {
            let mut rows = Vec::new();
            let slice = xi_images(cm, d)?;
            let (a0, a1) = (&slice.m0, &slice.m1);
            let all: Vec<KoszulElement> = a0.iter().chain(a1).cloned().collect();
            let dim_all = span_of(cm, &all).dim();
            rows.push(Row::new(
                Some(d),
                format!("{label}: xi*M_0 + xi*M_1 is free and direct"),
                format!("dim {}", all.len()),
                format!("dim {dim_all}"),
                dim_all == all.len(),
                tag,
            ));
            let n0 = cm.model.elements(d, |t| cm.split.piece(t) == Piece::N0);
            let n1 = cm.model.elements(d, |t| cm.split.piece(t) == Piece::N1);
            for (name, a, n) in [("M_0", a0, &n0), ("M_1", a1, &n1)] {
                let (da, dn, ok) = same_span(cm, a, n);
                rows.push(Row::new(
                    Some(d),
                    format!(
                        "{label}: xi*{name} equals N_{} of the splitting",
                        &name[2..]
                    ),
                    format!("dim {dn}, same subspace"),
                    format!(
                        "dim {da}{}",
                        if ok { ", same subspace" } else { ", differs" }
                    ),
                    ok,
                    tag,
                ));
            }
            if spec.i == 0 && !spec.restrict_top {
                let inv = invariant_basis(&cm.model.h, d)?.len();
                rows.push(Row::eq(
                    Some(d),
                    format!("{label}: image is the whole invariant slice"),
                    inv,
                    dim_all,
                    tag,
                ));
            }
            for (name, disp, dnamed, a) in [
                ("M_0", &cm.m0_display, &spec.m0_display, a0),
                ("M_1", &cm.m1_display, &spec.m1_display, a1),
            ] {
                let shown = cm.r_span(disp, dnamed, d);
                let (ds, da, ok) = same_span(cm, &shown, a);
                if da > 0 || ds > 0 {
                    rows.push(Row::new(
                        Some(d),
                        format!("{label}: listed image generators of {name} span xi*{name}"),
                        format!("dim {da}"),
                        format!("dim {ds}{}", if ok { "" } else { ", differs" }),
                        ok,
                        tag,
                    ));
                }
            }

            let map_row = |name: String,
                           src: &[KoszulElement],
                           images: Vec<KoszulElement>,
                           tgt: &[KoszulElement],
                           quot: i64| {
                let img = span_of(cm, &images);
                let rank = img.dim();
                let mut t = span_of(cm, tgt);
                let into = images.iter().all(|x| t.contains(x));
                let coker = t.dim() as i64 - rank as i64;
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
                        if into {
                            "into target"
                        } else {
                            "escapes target"
                        }
                    ),
                    rank == src.len() && into && coker == quot,
                    tag,
                )
            };
            let src0 = if d >= fiber_deg {
                cm.spanning(d - fiber_deg).m0
            } else {
                Vec::new()
            };
            let images: Vec<KoszulElement> = src0.iter().map(|x| &cm.fiber * x).collect();
            rows.push(map_row(
                format!(
                    "{label}: multiplication by {}: M_0 -> M_1",
                    spec.fiber_class
                ),
                &src0,
                images,
                a1,
                m1_quot.coeff(d),
            ));
            let src1 = if d >= q_deg {
                cm.spanning(d - q_deg).m1
            } else {
                Vec::new()
            };
            let images: Vec<KoszulElement> = src1.iter().map(|x| milnor_q(q_index, x)).collect();
            rows.push(map_row(
                format!("{label}: Q_{q_index}: M_1 -> M_0"),
                &src1,
                images,
                a0,
                m0_quot.coeff(d),
            ));
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_degree {
        rows.extend(r?);
    }
    rows.extend(series_identity_rows(spec, max_deg));
    Ok(rows)
}

/// `M_1 = t^{m+1} M_0 + M_1^even/(e_k)` and `M_0 = t^{2p^{k−1}−1} M_1 + M_0^even/(e_k)`.
pub fn series_identity_rows(spec: &CaseSpec, max_deg: usize) -> Vec<Row> {
    let m0 = series_m(spec, MPart::M0, max_deg);
    let m1 = series_m(spec, MPart::M1, max_deg);
    let q_deg = milnor_degree(spec.p, spec.k - 1);
    let lhs1 = &m0.shift(spec.m + 1) + &series_m(spec, MPart::M1EvenModE, max_deg);
    let lhs0 = &m1.shift(q_deg) + &series_m(spec, MPart::M0EvenModE, max_deg);
    let tag = "series of the free modules M_0 and M_1";
    vec![
        Row::new(
            None,
            format!("{}: M_1 = t^{} M_0 + M_1^even/(e)", spec.label, spec.m + 1),
            format!("agree to degree {max_deg}"),
            first_difference(&m1, &lhs1),
            m1 == lhs1,
            tag,
        ),
        Row::new(
            None,
            format!("{}: M_0 = t^{q_deg} M_1 + M_0^even/(e)", spec.label),
            format!("agree to degree {max_deg}"),
            first_difference(&m0, &lhs0),
            m0 == lhs0,
            tag,
        ),
    ]
}

fn first_difference(a: &Series, b: &Series) -> String {
    match (0..=a.max_deg()).find(|&d| a.coeff(d) != b.coeff(d)) {
        None => format!("agree to degree {}", a.max_deg()),
        Some(d) => format!("differ at degree {d}: {} vs {}", a.coeff(d), b.coeff(d)),
    }
}

/// Degreewise span of the closure of `gens` under products, `β` and `℘^k`, up to `max_deg`.
pub fn steenrod_closure(
    ctx: KoszulCtx,
    gens: &[KoszulElement],
    max_deg: usize,
) -> Vec<ElementSpan> {
    let field = *ctx.field();
    let p = ctx.p() as usize;
    let mut spans: Vec<ElementSpan> = (0..=max_deg).map(|_| ElementSpan::new(field)).collect();
    let mut queue = std::collections::VecDeque::new();
    let add = |spans: &mut Vec<ElementSpan>,
               queue: &mut std::collections::VecDeque<(usize, KoszulElement)>,
               x: KoszulElement| {
        if x.is_zero() {
            return;
        }
        let d = x.degree().ok().flatten().expect("homogeneous");
        if d <= max_deg && spans[d].insert(&x) {
            queue.push_back((d, x));
        }
    };
    add(&mut spans, &mut queue, KoszulElement::one(ctx));
    for g in gens {
        add(&mut spans, &mut queue, g.clone());
    }
    while let Some((d, x)) = queue.pop_front() {
        add(&mut spans, &mut queue, milnor_q(0, &x));
        let mut k = 1;
        while 2 * k <= d && d + 2 * k * (p - 1) <= max_deg {
            add(&mut spans, &mut queue, reduced_power(k, &x));
            k += 1;
        }
        for e in 0..=max_deg - d {
            let partners: Vec<KoszulElement> = spans[e].basis().to_vec();
            for y in partners {
                add(&mut spans, &mut queue, &x * &y);
            }
        }
    }
    spans
}

/// Compares the Steenrod closure of the listed generators with `ξ*M_0 ⊕ ξ*M_1`.
pub fn steenrod_closure_check(cm: &CaseModel, max_deg: usize) -> Result<Vec<Row>> {
    let spans = steenrod_closure(cm.ctx(), &cm.steenrod_generators, max_deg);
    let names: Vec<&str> = cm
        .spec
        .steenrod_generators
        .iter()
        .map(|g| g.label.as_str())
        .collect();
    let tag = "generators of the image over the Steenrod algebra";
    let rows = spans
        .par_iter()
        .enumerate()
        .map(|(d, closure)| {
            let slice = cm.spanning(d);
            let all: Vec<KoszulElement> = slice.m0.into_iter().chain(slice.m1).collect();
            let (dc, di, ok) = same_span(cm, closure.basis(), &all);
            Row::new(
                Some(d),
                format!(
                    "{}: closure of {{{}}} equals xi*M_0 + xi*M_1",
                    cm.spec.label,
                    names.join(", ")
                ),
                format!("dim {di}"),
                format!("dim {dc}{}", if ok { "" } else { ", differs" }),
                ok,
                tag,
            )
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(list: &[NamedClass]) -> Vec<usize> {
        list.iter().map(|c| c.degree).collect()
    }

    #[test]
    fn table_degrees() {
        let f4 = case("f4").unwrap();
        assert_eq!(degrees(&f4.m0), vec![0, 20, 21, 25]);
        assert_eq!(degrees(&f4.m1), vec![9, 29, 4, 8]);
        assert_eq!((f4.m, f4.k), (8, 3));
        let pu = case("pu3").unwrap();
        assert_eq!(degrees(&pu.m1), vec![3, 2]);
        assert_eq!(degrees(&pu.m0), vec![0, 7]);
        let e8 = case("e8").unwrap();
        assert!(e8
            .classes
            .iter()
            .any(|c| c.label == "y_52" && c.degree == 52));
        let e6 = case("e6").unwrap();
        assert_eq!((e6.m0.len(), e6.m1.len()), (8, 8));
        assert_eq!(degrees(&e6.m0), vec![0, 22, 26, 20, 27, 21, 25, 47]);
        assert_eq!(case_table().len(), 5);
        assert!(matches!(case("g2"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn series_examples() {
        let pu = case("pu3").unwrap();
        let m0 = series_m(&pu, MPart::M0, 30);
        assert_eq!(m0, Series::free_module(30, &[12, 8], &[0, 7]));
        let f4 = case("f4").unwrap();
        let q = series_m(&f4, MPart::M0EvenModE, 60);
        assert_eq!(q, Series::free_module(60, &[48, 36], &[0, 20]));
        assert!(q.odd().is_zero());
        for c in case_table() {
            assert!(series_identity_rows(&c, 120).iter().all(|r| r.pass));
        }
    }

    #[test]
    fn base_images() {
        let cm = CaseModel::new(case("pu3").unwrap()).unwrap();
        assert_eq!(cm.images["y_2"], top_form(cm.ctx(), SubspaceSpec::Full));
        let rows = check_prop_image(&cm, 30).unwrap();
        assert!(
            rows.iter().all(|r| r.pass),
            "{:#?}",
            rows.iter().filter(|r| !r.pass).collect::<Vec<_>>()
        );
        let rows = steenrod_closure_check(&cm, 24).unwrap();
        assert!(
            rows.iter().all(|r| r.pass),
            "{:#?}",
            rows.iter().filter(|r| !r.pass).collect::<Vec<_>>()
        );
    }
}
