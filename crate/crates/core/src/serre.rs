//! Poincaré-series replay of the Serre spectral sequence of `G/T → BT → BG`.
//!
//! A page is a list of pieces `module ⊗ fibre part`. Module series are graded
//! by base degree and may carry the opaque symbol `K` (the kernel of `ξ*`);
//! fibre parts are sums of `N_j = S · x_m^j`, where `S` is another opaque
//! series. The two differentials are replayed as pure bookkeeping, and every
//! subtraction is checked to stay nonnegative.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bgmodel::{series_m, CaseSpec, MPart};
use crate::error::{Error, Result};
use crate::report::Row;
use crate::series::Series;
use crate::steenrod::milnor_degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    #[serde(rename = "1")]
    One,
    S,
    K,
    #[serde(rename = "KS")]
    KS,
}

impl Symbol {
    fn times(self, other: Symbol) -> Symbol {
        use Symbol::*;
        match (self, other) {
            (One, x) | (x, One) => x,
            (K, S) | (S, K) => KS,
            _ => panic!("product {self} * {other} is not tracked"),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::One => "1",
            Symbol::S => "S",
            Symbol::K => "K",
            Symbol::KS => "KS",
        })
    }
}

/// `Σ_σ c_σ(t) · σ(t)` with known integer polynomials `c_σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicSeries {
    max_deg: usize,
    parts: BTreeMap<Symbol, Series>,
}

impl SymbolicSeries {
    pub fn zero(max_deg: usize) -> Self {
        Self {
            max_deg,
            parts: BTreeMap::new(),
        }
    }

    pub fn with(symbol: Symbol, s: Series) -> Self {
        let mut out = Self::zero(s.max_deg());
        out.parts.insert(symbol, s);
        out.normalize();
        out
    }

    pub fn known(s: Series) -> Self {
        Self::with(Symbol::One, s)
    }

    fn normalize(&mut self) {
        self.parts.retain(|_, s| !s.is_zero());
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    /// The factor multiplying `σ`.
    pub fn part(&self, symbol: Symbol) -> Series {
        self.parts
            .get(&symbol)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.max_deg))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.parts.keys().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (sym, s) in &other.parts {
            let cur = out.part(*sym);
            out.parts.insert(*sym, &cur + s);
        }
        out.normalize();
        out
    }

    /// `self − other`, failing if any coefficient would become negative.
    pub fn checked_sub(&self, other: &Self, what: &str) -> Result<Self> {
        let mut out = self.clone();
        for (sym, s) in &other.parts {
            let diff = &out.part(*sym) - s;
            if let Some(d) = diff.first_negative() {
                return Err(Error::NegativeDimension {
                    what: format!("{what} (symbol {sym})"),
                    degree: d,
                    value: diff.coeff(d),
                });
            }
            out.parts.insert(*sym, diff);
        }
        out.normalize();
        Ok(out)
    }

    /// Multiply every factor by a known series.
    pub fn scale(&self, s: &Series) -> Self {
        let mut out = self.clone();
        for v in out.parts.values_mut() {
            *v = &*v * s;
        }
        out.normalize();
        out
    }

    pub fn shift(&self, k: usize) -> Self {
        let mut out = self.clone();
        for v in out.parts.values_mut() {
            *v = v.shift(k);
        }
        out.normalize();
        out
    }

    /// Multiply by a symbol: `K · S = KS`.
    pub fn times_symbol(&self, symbol: Symbol) -> Self {
        let mut out = Self::zero(self.max_deg);
        for (sym, s) in &self.parts {
            let t = sym.times(symbol);
            let cur = out.part(t);
            out.parts.insert(t, &cur + s);
        }
        out.normalize();
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.parts.values().all(|s| s.first_negative().is_none())
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for SymbolicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(sym, s)| {
                let terms: Vec<String> = s
                    .terms()
                    .iter()
                    .map(|&(d, c)| match (d, c) {
                        (0, c) => c.to_string(),
                        (d, 1) => format!("t^{d}"),
                        (d, c) => format!("{c}t^{d}"),
                    })
                    .collect();
                match sym {
                    Symbol::One => format!("({})", terms.join(" + ")),
                    _ => format!("{sym}*({})", terms.join(" + ")),
                }
            })
            .collect();
        write!(f, "{} + O(t^{})", parts.join(" + "), self.max_deg + 1)
    }
}

/// Which part of `H*(G/T) = S{1, x_m, …, x_m^{p−1}}` a piece is tensored with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fiber {
    /// `N_j = S · x_m^j`.
    Single(usize),
    /// `N_{≤j}`.
    UpTo(usize),
    /// All of `H*(G/T)`.
    Full,
    /// `F_p` in fibre degree 0.
    Scalars,
}

impl Fiber {
    pub fn indices(self, p: usize) -> Vec<usize> {
        match self {
            Fiber::Single(j) => vec![j],
            Fiber::UpTo(j) => (0..=j).collect(),
            Fiber::Full => (0..p).collect(),
            Fiber::Scalars => Vec::new(),
        }
    }

    pub fn label(self, p: usize) -> String {
        match self {
            Fiber::Single(j) => format!("N_{j}"),
            Fiber::UpTo(j) => format!("N_<={j}"),
            Fiber::Full => format!("H*(G/T) = N_<={}", p - 1),
            Fiber::Scalars => "Z/p".into(),
        }
    }

    /// Total-degree factor: `S · Σ t^{jm}` over the indices, or `1` for scalars.
    pub fn factor(self, p: usize, m: usize, max_deg: usize) -> SymbolicSeries {
        match self {
            Fiber::Scalars => SymbolicSeries::known(Series::one(max_deg)),
            _ => {
                let degs: Vec<usize> = self.indices(p).iter().map(|j| j * m).collect();
                SymbolicSeries::with(Symbol::S, Series::sum_of_powers(max_deg, &degs))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PagePiece {
    pub label: String,
    pub module: SymbolicSeries,
    pub fiber: Fiber,
    pub fiber_label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Page {
    /// Page index `r` of `E_r`.
    pub index: usize,
    pub p: usize,
    pub m: usize,
    pub max_deg: usize,
    pub pieces: Vec<PagePiece>,
    /// Bookkeeping rows accumulated while producing this page.
    pub checks: Vec<Row>,
}

impl Page {
    fn piece(&self, label: &str, module: SymbolicSeries, fiber: Fiber) -> PagePiece {
        PagePiece {
            label: label.into(),
            module,
            fiber,
            fiber_label: fiber.label(self.p),
        }
    }

    /// Module series tensored with `x_m^j`, summed over pieces (base-degree grading).
    pub fn component(&self, j: usize) -> SymbolicSeries {
        self.pieces
            .iter()
            .filter(|pc| pc.fiber.indices(self.p).contains(&j))
            .fold(SymbolicSeries::zero(self.max_deg), |acc, pc| {
                acc.add(&pc.module)
            })
    }

    /// Total-degree series `Σ module · fibre factor`.
    pub fn total(&self) -> SymbolicSeries {
        self.pieces
            .iter()
            .fold(SymbolicSeries::zero(self.max_deg), |acc, pc| {
                let f = pc.fiber.factor(self.p, self.m, self.max_deg);
                acc.add(&product(&pc.module, &f))
            })
    }

    /// Fibre degree 0 with `S` replaced by its constant term.
    pub fn bottom_row(&self) -> SymbolicSeries {
        self.pieces
            .iter()
            .filter(|pc| pc.fiber == Fiber::Scalars || pc.fiber.indices(self.p).contains(&0))
            .fold(SymbolicSeries::zero(self.max_deg), |acc, pc| {
                acc.add(&pc.module)
            })
    }

    /// Odd total-degree coefficients of the known (`K`-free) module parts.
    pub fn odd_known(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for pc in &self.pieces {
            let s = pc.module.part(Symbol::One).odd();
            if let Some(&(d, _)) = s.terms().first() {
                out.push((pc.label.clone(), d));
            }
        }
        out
    }
}

fn product(a: &SymbolicSeries, b: &SymbolicSeries) -> SymbolicSeries {
    let mut out = SymbolicSeries::zero(a.max_deg());
    for sa in a.symbols() {
        for sb in b.symbols() {
            let term = SymbolicSeries::with(sa.times(sb), &a.part(sa) * &b.part(sb));
            out = out.add(&term);
        }
    }
    out
}

/// Facts taken as given by the replay, reported as assumptions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaContract {
    pub assumptions: Vec<String>,
}

impl Default for SigmaContract {
    fn default() -> Self {
        Self {
            assumptions: vec![
                "H*(G/T)^W = H^0(G/T) = Z/p".into(),
                "sigma_j(x_m^i) lies in N_<=(i-1) for every generator r_j of W".into(),
                "d_(m+1)(1 x x_m) = alpha y_(m+1) x 1 for a unit alpha that is never determined"
                    .into(),
                "multiplication by y_(m+1) and by e_k vanish on Ker xi*".into(),
                "no differentials d_r for m+2 <= r <= n".into(),
            ],
        }
    }
}

struct CaseSeries {
    p: usize,
    m: usize,
    /// `n = m(p − 1)`.
    n: usize,
    e_deg: usize,
    m0: Series,
    m1: Series,
    m0q: Series,
    m1q: Series,
    label: String,
    max_deg: usize,
}

impl CaseSeries {
    fn new(case: &CaseSpec, max_deg: usize) -> Self {
        let e_label = format!("e_{}", case.k);
        let e_deg = case
            .ring
            .iter()
            .find(|r| r.0 == e_label)
            .map(|r| r.1)
            .expect("e_k in R");
        let p = case.p as usize;
        Self {
            p,
            m: case.m,
            n: case.m * (p - 1),
            e_deg,
            m0: series_m(case, MPart::M0, max_deg),
            m1: series_m(case, MPart::M1, max_deg),
            m0q: series_m(case, MPart::M0EvenModE, max_deg),
            m1q: series_m(case, MPart::M1EvenModE, max_deg),
            label: case.label.clone(),
            max_deg,
        }
    }

    fn kernel(&self) -> SymbolicSeries {
        SymbolicSeries::with(Symbol::K, Series::one(self.max_deg))
    }
}

const TAG: &str = "Serre spectral sequence bookkeeping";

pub fn build_e2(case: &CaseSpec, max_deg: usize) -> Page {
    let cs = CaseSeries::new(case, max_deg);
    let mut page = Page {
        index: 2,
        p: cs.p,
        m: cs.m,
        max_deg,
        pieces: Vec::new(),
        checks: Vec::new(),
    };
    page.pieces = vec![
        page.piece("M_0", SymbolicSeries::known(cs.m0.clone()), Fiber::Full),
        page.piece("M_1", SymbolicSeries::known(cs.m1.clone()), Fiber::Full),
        page.piece("Ker xi*", cs.kernel(), Fiber::Full),
    ];
    page
}

/// Compares old and new pages component by component with the removed series,
/// then checks conservation in base degree (`1 + t^r`) and total degree (`1 + t`).
fn conservation(
    old: &Page,
    new: &Page,
    removed: &BTreeMap<usize, SymbolicSeries>,
    sources: &[(usize, SymbolicSeries)],
    r: usize,
    label: &str,
) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let d = old.max_deg;
    let mut base_diff = SymbolicSeries::zero(d);
    for j in 0..old.p {
        let diff = old.component(j).checked_sub(
            &new.component(j),
            &format!("{label}: E_{} minus E_{} on x_m^{j}", old.index, new.index),
        )?;
        let expect = removed
            .get(&j)
            .cloned()
            .unwrap_or_else(|| SymbolicSeries::zero(d));
        rows.push(Row::new(
            None,
            format!("{label}: classes removed from the x_m^{j} column"),
            expect.to_string(),
            diff.to_string(),
            diff == expect,
            TAG,
        ));
        base_diff = base_diff.add(&diff);
    }
    let rank = sources
        .iter()
        .fold(SymbolicSeries::zero(d), |acc, (_, s)| acc.add(s));
    let pair = &Series::one(d) + &Series::monomial(d, r, 1);
    let expect = rank.scale(&pair);
    rows.push(Row::new(
        None,
        format!("{label}: d_{r} kills (1 + t^{r}) times its rank in base degree"),
        expect.to_string(),
        base_diff.to_string(),
        base_diff == expect,
        TAG,
    ));
    let total_diff = old
        .total()
        .checked_sub(&new.total(), &format!("{label}: total series"))?;
    let ranked = sources.iter().fold(SymbolicSeries::zero(d), |acc, (j, s)| {
        acc.add(&s.shift(j * old.m).times_symbol(Symbol::S))
    });
    let pair_total = &Series::one(d) + &Series::monomial(d, 1, 1);
    let expect_total = ranked.scale(&pair_total);
    rows.push(Row::new(
        None,
        format!("{label}: d_{r} kills (1 + t) times its rank in total degree"),
        expect_total.to_string(),
        total_diff.to_string(),
        total_diff == expect_total,
        TAG,
    ));
    Ok(rows)
}

/// `d_{m+1}`: `M_0 ⊗ x_m^j ↪ M_1 ⊗ x_m^{j−1}` by multiplication with `y_{m+1}`.
pub fn apply_first_differential(page: &Page, case: &CaseSpec) -> Result<Page> {
    let cs = CaseSeries::new(case, page.max_deg);
    let d = page.max_deg;
    let r = cs.m + 1;
    let hit = cs.m0.shift(r);
    let cokernel = &cs.m1 - &hit;
    if let Some(deg) = cokernel.first_negative() {
        return Err(Error::NegativeDimension {
            what: format!("{}: M_1 - t^{r} M_0", cs.label),
            degree: deg,
            value: cokernel.coeff(deg),
        });
    }
    if cokernel != cs.m1q {
        let deg = (0..=d)
            .find(|&i| cokernel.coeff(i) != cs.m1q.coeff(i))
            .unwrap_or(0);
        return Err(Error::ShiftMismatch {
            what: format!("{}: M_1 = t^{r} M_0 + M_1^even/(e)", cs.label),
            degree: deg,
        });
    }
    let mut next = Page {
        index: cs.m + 2,
        p: cs.p,
        m: cs.m,
        max_deg: d,
        pieces: Vec::new(),
        checks: page.checks.clone(),
    };
    next.pieces = vec![
        next.piece(
            "M_1",
            SymbolicSeries::known(cs.m1.clone()),
            Fiber::Single(cs.p - 1),
        ),
        next.piece(
            "M_1^even/(e_k)",
            SymbolicSeries::known(cs.m1q.clone()),
            Fiber::UpTo(cs.p - 2),
        ),
        next.piece(
            "M_0",
            SymbolicSeries::known(cs.m0.clone()),
            Fiber::Single(0),
        ),
        next.piece("Ker xi*", cs.kernel(), Fiber::Full),
    ];
    let mut removed = BTreeMap::new();
    let mut sources = Vec::new();
    for j in 0..cs.p {
        let mut s = SymbolicSeries::zero(d);
        if j >= 1 {
            s = s.add(&SymbolicSeries::known(cs.m0.clone()));
            sources.push((j, SymbolicSeries::known(cs.m0.clone())));
        }
        if j + 1 < cs.p {
            s = s.add(&SymbolicSeries::known(hit.clone()));
        }
        removed.insert(j, s);
    }
    let label = format!("{} first differential", cs.label);
    let rows = conservation(page, &next, &removed, &sources, r, &label)?;
    next.checks.extend(rows);
    next.checks.push(Row::new(
        None,
        format!("{label}: the Ker xi* piece passes through unchanged"),
        "K x H*(G/T)",
        next.pieces[3].module.to_string(),
        next.pieces[3].module == cs.kernel() && next.pieces[3].fiber == Fiber::Full,
        TAG,
    ));
    Ok(next)
}

/// `d_{n+1}`: `M_1 ⊗ N_{p−1} ≅ (M_0^odd ⊕ e_k M_0^even) ⊗ N_0`, `n = m(p − 1)`.
pub fn apply_second_differential(page: &Page, case: &CaseSpec) -> Result<Page> {
    let cs = CaseSeries::new(case, page.max_deg);
    let d = page.max_deg;
    let r = cs.n + 1;
    let target = &cs.m0.odd() + &cs.m0.even().shift(cs.e_deg);
    let shifted = cs.m1.shift(r);
    if target != shifted {
        let deg = (0..=d)
            .find(|&i| target.coeff(i) != shifted.coeff(i))
            .unwrap_or(0);
        return Err(Error::ShiftMismatch {
            what: format!("{}: M_0^odd + e_k M_0^even = t^{r} M_1", cs.label),
            degree: deg,
        });
    }
    let mut next = Page {
        index: cs.n + 2,
        p: cs.p,
        m: cs.m,
        max_deg: d,
        pieces: Vec::new(),
        checks: page.checks.clone(),
    };
    next.pieces = vec![
        next.piece(
            "M_1^even/(e_k)",
            SymbolicSeries::known(cs.m1q.clone()),
            Fiber::UpTo(cs.p - 2),
        ),
        next.piece(
            "M_0^even/(e_k)",
            SymbolicSeries::known(cs.m0q.clone()),
            Fiber::Single(0),
        ),
        next.piece("Ker xi*", cs.kernel(), Fiber::Full),
    ];
    let mut removed = BTreeMap::new();
    removed.insert(cs.p - 1, SymbolicSeries::known(cs.m1.clone()));
    removed.insert(0, SymbolicSeries::known(shifted));
    let sources = vec![(cs.p - 1, SymbolicSeries::known(cs.m1.clone()))];
    let label = format!("{} second differential", cs.label);
    let rows = conservation(page, &next, &removed, &sources, r, &label)?;
    next.checks.extend(rows);
    let odd = next.odd_known();
    next.checks.push(Row::new(
        None,
        format!("{label}: no odd-degree known classes remain"),
        "none",
        if odd.is_empty() {
            "none".to_string()
        } else {
            format!("{odd:?}")
        },
        odd.is_empty(),
        TAG,
    ));
    Ok(next)
}

/// The full replay: `E_2`, `E_{m+2}`, `E_{n+2}` and the bottom-row identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Replay {
    pub case: String,
    pub max_deg: usize,
    pub contract: SigmaContract,
    pub pages: Vec<Page>,
    pub bottom_row: SymbolicSeries,
    pub rows: Vec<Row>,
}

pub fn replay(case: &CaseSpec, max_deg: usize) -> Result<Replay> {
    let e2 = build_e2(case, max_deg);
    let em = apply_first_differential(&e2, case)?;
    let en = apply_second_differential(&em, case)?;
    let mut rows = en.checks.clone();
    rows.extend(einfty_identity(case, &em, &en));
    Ok(Replay {
        case: case.id.clone(),
        max_deg,
        contract: SigmaContract::default(),
        bottom_row: en.bottom_row(),
        pages: vec![e2, em, en],
        rows,
    })
}

/// Rows comparing the `E_∞` bottom row with `H^even(BG)/(e_k)`.
pub fn einfty_identity(case: &CaseSpec, em: &Page, en: &Page) -> Vec<Row> {
    let d = en.max_deg;
    let cs = CaseSeries::new(case, d);
    let label = &cs.label;
    let mut rows = Vec::new();
    let bottom = en.bottom_row();
    let known = bottom.part(Symbol::One);
    let expect_known = &cs.m0q + &cs.m1q;
    rows.push(Row::new(
        None,
        format!("{label}: known part of the E_infinity bottom row is M_0^even/(e) + M_1^even/(e)"),
        expect_known.to_string(),
        known.to_string(),
        known == expect_known,
        TAG,
    ));
    let kfac = bottom.part(Symbol::K);
    rows.push(Row::new(
        None,
        format!("{label}: Ker xi* enters the bottom row with coefficient 1"),
        "1",
        kfac.to_string(),
        kfac == Series::one(d),
        TAG,
    ));
    let odd = known.odd();
    rows.push(Row::new(
        None,
        format!("{label}: bottom-row known part vanishes in odd degrees"),
        "0",
        odd.to_string(),
        odd.is_zero(),
        TAG,
    ));
    // H^even(BG) = M_0^even + M_1^even + K, with e_k acting freely on the M-part and trivially on K.
    let h_even = &cs.m0.even() + &cs.m1.even();
    let quotient = &h_even - &h_even.shift(cs.e_deg);
    let rhs = SymbolicSeries::known(quotient).add(&cs.kernel());
    rows.push(Row::new(
        None,
        format!("{label}: bottom row equals H^even(BG)/(e_k) with K kept symbolic"),
        rhs.to_string(),
        bottom.to_string(),
        rhs == bottom,
        TAG,
    ));
    // Invariants of E_{m+2}: (M_1^odd + e_k M_1^even) x_m^{p-1} on top of the bottom row.
    let top = &cs.m1.odd() + &cs.m1.even().shift(cs.e_deg);
    let extra = top.shift((cs.p - 1) * cs.m);
    let em_bottom = em.bottom_row();
    let invariant = em_bottom.add(&SymbolicSeries::known(extra.clone()));
    rows.push(Row::new(
        None,
        format!("{label}: invariants of E_(m+2) exceed its bottom row (given the sigma contract)"),
        "strictly larger",
        format!("extra {}", SymbolicSeries::known(extra.clone())),
        !extra.is_zero() && invariant != em_bottom,
        TAG,
    ));
    rows
}

/// The bottom-row coefficients of the known part, for golden files.
pub fn bottom_row_coefficients(case: &CaseSpec, max_deg: usize) -> Result<Vec<i64>> {
    Ok(replay(case, max_deg)?
        .bottom_row
        .part(Symbol::One)
        .coeffs()
        .to_vec())
}

/// Degree shift `n + 1 = m(p − 1) + 1` of the second differential.
pub fn second_shift(case: &CaseSpec) -> usize {
    case.m * (case.p as usize - 1) + 1
}

/// The second shift agrees with the degree of `Q_{k−1}`.
pub fn second_shift_matches_milnor(case: &CaseSpec) -> bool {
    second_shift(case) == milnor_degree(case.p, case.k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bgmodel::{case, case_table};

    #[test]
    fn e2_shape() {
        let pu = case("pu3").unwrap();
        let e2 = build_e2(&pu, 20);
        let f = Fiber::Full.factor(3, 2, 20);
        assert_eq!(f.part(Symbol::S).terms(), vec![(0, 1), (2, 1), (4, 1)]);
        let bottom = e2.bottom_row();
        let m = &series_m(&pu, MPart::M0, 20) + &series_m(&pu, MPart::M1, 20);
        assert_eq!(bottom.part(Symbol::One), m);
        assert_eq!(bottom.part(Symbol::K), Series::one(20));
    }

    #[test]
    fn all_cases_replay() {
        for c in case_table() {
            let r = replay(&c, 200).unwrap();
            let bad: Vec<_> = r.rows.iter().filter(|r| !r.pass).collect();
            assert!(bad.is_empty(), "{}: {bad:#?}", c.label);
            assert!(second_shift_matches_milnor(&c));
        }
    }

    #[test]
    fn negative_subtraction_is_an_error() {
        let a = SymbolicSeries::known(Series::one(5));
        let b = SymbolicSeries::known(Series::monomial(5, 2, 1));
        assert!(matches!(
            a.checked_sub(&b, "demo"),
            Err(Error::NegativeDimension { degree: 2, .. })
        ));
    }

    #[test]
    fn f4_second_differential_starts_at_21() {
        let f4 = case("f4").unwrap();
        let m0 = series_m(&f4, MPart::M0, 40);
        let lowest = (&m0.odd() + &m0.even().shift(26)).terms()[0].0;
        assert_eq!(lowest, 21);
        assert_eq!(second_shift(&f4), 17);
    }
}
