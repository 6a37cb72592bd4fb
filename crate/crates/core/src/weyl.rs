//! Weyl groups acting on `H^2(BT; F_p)`, and the brute-force invariants of
//! `F_p[t_1, …, t_r]` compared with the known part predicted by the case table.

use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bgmodel::{series_m, CaseSpec, MPart};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::koszul::KoszulElement;
use crate::linalg::ElementSpan;
use crate::matrix::{group_order, MatrixGL};
use crate::mui::{polynomial_invariant_basis, Budget, GroupSpec};
use crate::report::Row;
use crate::series::Series;

/// Which lattice the reflections act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// Basis of simple roots.
    Root,
    /// Basis of fundamental weights.
    Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    /// `a_ij = ⟨α_i^∨, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    pub lattice: Lattice,
}

impl RootDatum {
    /// Builds a Cartan matrix from diagram edges `(i, j, a_ij, a_ji)`, 0-based.
    fn from_edges(
        label: &str,
        rank: usize,
        edges: &[(usize, usize, i64, i64)],
        lattice: Lattice,
    ) -> Self {
        let mut cartan = vec![vec![0i64; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j, a, b) in edges {
            cartan[i][j] = a;
            cartan[j][i] = b;
        }
        Self {
            label: label.into(),
            rank,
            cartan,
            lattice,
        }
    }

    pub fn type_a(n: usize, lattice: Lattice) -> Self {
        let edges: Vec<_> = (0..n.saturating_sub(1))
            .map(|i| (i, i + 1, -1, -1))
            .collect();
        let tag = match lattice {
            Lattice::Root => "root",
            Lattice::Weight => "weight",
        };
        Self::from_edges(&format!("A_{n} ({tag} lattice)"), n, &edges, lattice)
    }

    pub fn f4() -> Self {
        Self::from_edges(
            "F_4",
            4,
            &[(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)],
            Lattice::Root,
        )
    }

    /// `E_6`, `E_7`, `E_8` in Bourbaki numbering: chain 1-3-4-5-…, node 2 on node 4.
    pub fn type_e(n: usize, lattice: Lattice) -> Self {
        let mut edges = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
        for i in 2..n - 1 {
            edges.push((i, i + 1, -1, -1));
        }
        Self::from_edges(&format!("E_{n}"), n, &edges, lattice)
    }

    /// Order of `s_i s_j` read off the diagram.
    pub fn coxeter_m(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            other => panic!("Cartan product {other} is not of finite type"),
        }
    }

    /// Integer matrices of the simple reflections, rows giving images of basis vectors.
    pub fn integer_reflections(&self) -> Vec<Vec<Vec<i64>>> {
        let r = self.rank;
        (0..r)
            .map(|i| {
                let mut m: Vec<Vec<i64>> = (0..r)
                    .map(|j| (0..r).map(|k| i64::from(j == k)).collect())
                    .collect();
                match self.lattice {
                    // s_i(α_j) = α_j − a_ij α_i
                    Lattice::Root => {
                        for (j, row) in m.iter_mut().enumerate() {
                            row[i] -= self.cartan[i][j];
                        }
                    }
                    // s_i(ω_i) = ω_i − α_i with α_i = Σ_k a_ki ω_k
                    Lattice::Weight => {
                        for (k, entry) in m[i].iter_mut().enumerate() {
                            *entry -= self.cartan[k][i];
                        }
                    }
                }
                m
            })
            .collect()
    }
}

/// The root datum used for a case: the character lattice of its maximal torus.
pub fn case_datum(id: &str) -> Result<RootDatum> {
    Ok(match id {
        "pu3" => RootDatum::type_a(2, Lattice::Root),
        "pu5" => RootDatum::type_a(4, Lattice::Root),
        "f4" => RootDatum::f4(),
        "e6" => RootDatum::type_e(6, Lattice::Weight),
        "e7" => RootDatum::type_e(7, Lattice::Weight),
        "e8" => RootDatum::type_e(8, Lattice::Root),
        "su3" => RootDatum::type_a(2, Lattice::Weight),
        other => return Err(Error::UnknownCase(other.into())),
    })
}

/// Simple reflections mod `p`, validated by `s_i² = 1` and `(s_i s_j)^{m_ij} = 1`.
pub fn reflection_matrices(datum: &RootDatum, p: u32) -> Result<Vec<MatrixGL>> {
    let f = FieldCtx::new(p)?;
    let mats = datum
        .integer_reflections()
        .iter()
        .map(|m| MatrixGL::new(f, m))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..mats.len() {
        for j in i..mats.len() {
            let prod = mats[i].mul(&mats[j]);
            if !prod.pow(datum.coxeter_m(i, j) as u64).is_identity() {
                return Err(Error::CoxeterRelation {
                    label: datum.label.clone(),
                    i,
                    j,
                });
            }
        }
    }
    Ok(mats)
}

/// Order of the matrix group generated by the reflections, for small ranks.
pub fn reflection_group_order(datum: &RootDatum, p: u32, limit: usize) -> Result<Option<usize>> {
    Ok(group_order(&reflection_matrices(datum, p)?, limit))
}

fn weyl_group(datum: &RootDatum, p: u32) -> Result<GroupSpec> {
    GroupSpec::explicit(
        &format!("W({}) mod {p}", datum.label),
        p,
        reflection_matrices(datum, p)?,
    )
}

/// `dim H^d(BT)^W` for even `d ≤ max_deg`, as `(d, dim)` pairs.
pub fn weyl_invariant_dims(
    datum: &RootDatum,
    p: u32,
    max_deg: usize,
) -> Result<Vec<(usize, usize)>> {
    let h = weyl_group(datum, p)?;
    let degrees: Vec<usize> = (0..=max_deg).step_by(2).collect();
    degrees
        .par_iter()
        .map(|&d| {
            Ok((
                d,
                polynomial_invariant_basis(&h, d, Budget::default())?.len(),
            ))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Equal,
    /// More invariants than the known part; the excess is a candidate for `Ker ξ*`.
    Exceeds,
    Violation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Equal => "equal",
            Status::Exceeds => "computed-exceeds-known",
            Status::Violation => "VIOLATION",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "equal" => Some(Status::Equal),
            "computed-exceeds-known" => Some(Status::Exceeds),
            "VIOLATION" => Some(Status::Violation),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylRow {
    pub degree: usize,
    pub computed: usize,
    pub known: i64,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylInvariantReport {
    pub label: String,
    pub p: u32,
    pub rows: Vec<WeylRow>,
}

impl WeylInvariantReport {
    pub fn violations(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status == Status::Violation)
            .count()
    }

    /// Excess `computed − known` per degree: the inferred even part of `Ker ξ*`.
    pub fn inferred_kernel(&self) -> Vec<(usize, i64)> {
        self.rows
            .iter()
            .map(|r| (r.degree, r.computed as i64 - r.known))
            .filter(|e| e.1 > 0)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,computed_dim,known_part,status\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                r.degree,
                r.computed,
                r.known,
                r.status.as_str()
            );
        }
        s
    }

    pub fn from_csv(label: &str, p: u32, text: &str) -> Result<Self> {
        let bad = |line: &str| Error::Config(format!("bad golden line {line:?}"));
        let mut rows = Vec::new();
        for line in text.lines().skip(1).filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(bad(line));
            }
            rows.push(WeylRow {
                degree: f[0].parse().map_err(|_| bad(line))?,
                computed: f[1].parse().map_err(|_| bad(line))?,
                known: f[2].parse().map_err(|_| bad(line))?,
                status: Status::parse(f[3]).ok_or_else(|| bad(line))?,
            });
        }
        Ok(Self {
            label: label.into(),
            p,
            rows,
        })
    }

    pub fn rows(&self) -> Vec<Row> {
        self.rows
            .iter()
            .map(|r| {
                Row::new(
                    Some(r.degree),
                    format!("{}: Weyl invariants cover the known part", self.label),
                    format!("at least {}", r.known),
                    format!("{} ({})", r.computed, r.status.as_str()),
                    r.status != Status::Violation,
                    "Weyl invariants against the even part of the image",
                )
            })
            .collect()
    }
}

/// Known part `M_0^even/(e_k) + M_1^even/(e_k)` of `H*(BT)^W` for a case.
pub fn known_part(case: &CaseSpec, max_deg: usize) -> Series {
    &series_m(case, MPart::M0EvenModE, max_deg) + &series_m(case, MPart::M1EvenModE, max_deg)
}

pub fn compare_dims(
    label: &str,
    p: u32,
    dims: &[(usize, usize)],
    known: &Series,
) -> WeylInvariantReport {
    let rows = dims
        .iter()
        .map(|&(d, computed)| {
            let k = known.coeff(d);
            let status = match (computed as i64).cmp(&k) {
                std::cmp::Ordering::Equal => Status::Equal,
                std::cmp::Ordering::Greater => Status::Exceeds,
                std::cmp::Ordering::Less => Status::Violation,
            };
            WeylRow {
                degree: d,
                computed,
                known: k,
                status,
            }
        })
        .collect();
    WeylInvariantReport {
        label: label.into(),
        p,
        rows,
    }
}

/// Brute-force Weyl invariants of a case against its known part, degree by degree.
pub fn compare_with_known_part(case: &CaseSpec, max_deg: usize) -> Result<WeylInvariantReport> {
    let datum = case_datum(&case.id)?;
    let dims = weyl_invariant_dims(&datum, case.p, max_deg)?;
    Ok(compare_dims(
        &case.label,
        case.p,
        &dims,
        &known_part(case, max_deg),
    ))
}

/// Multiplies random pairs of computed invariants and checks the product is invariant.
pub fn product_spot_check(
    datum: &RootDatum,
    p: u32,
    max_deg: usize,
    pairs: usize,
    seed: u64,
) -> Result<Vec<Row>> {
    let h = weyl_group(datum, p)?;
    let bases: Vec<(usize, Vec<KoszulElement>)> = (2..=max_deg / 2)
        .step_by(2)
        .map(|d| Ok((d, polynomial_invariant_basis(&h, d, Budget::default())?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, b)| !b.is_empty())
        .collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rows = Vec::new();
    if bases.is_empty() {
        return Ok(rows);
    }
    let mut cache: std::collections::HashMap<usize, ElementSpan> = Default::default();
    let field = *h.ctx().field();
    for _ in 0..pairs {
        let (da, ba) = &bases[rng.gen_range(0..bases.len())];
        let (db, bb) = &bases[rng.gen_range(0..bases.len())];
        let x = &ba[rng.gen_range(0..ba.len())];
        let y = &bb[rng.gen_range(0..bb.len())];
        let d = da + db;
        if d > max_deg {
            continue;
        }
        let span = match cache.entry(d) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => {
                let mut s = ElementSpan::new(field);
                s.extend(&polynomial_invariant_basis(&h, d, Budget::default())?);
                e.insert(s)
            }
        };
        let ok = span.contains(&(x * y));
        rows.push(Row::new(
            Some(d),
            format!(
                "{}: product of invariants of degrees {da} and {db}",
                datum.label
            ),
            "invariant",
            if ok { "invariant" } else { "not invariant" },
            ok,
            "Weyl invariants form a ring",
        ));
    }
    Ok(rows)
}

/// `SU(3)` at 5: no torsion, so the invariants are polynomial on degrees 4 and 6.
pub fn control_su3(max_deg: usize) -> Result<Vec<Row>> {
    let datum = case_datum("su3")?;
    let dims = weyl_invariant_dims(&datum, 5, max_deg)?;
    let expect = Series::polynomial_ring(max_deg, &[4, 6]);
    Ok(dims
        .iter()
        .map(|&(d, dim)| {
            Row::eq(
                Some(d),
                "SU(3) at 5: Weyl invariants match a polynomial ring on degrees 4, 6",
                expect.coeff(d),
                dim as i64,
                "torsion-free control case",
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bgmodel::case;

    #[test]
    fn reflections_are_involutions() {
        for id in ["pu3", "pu5", "f4", "e6", "e7", "e8", "su3"] {
            let d = case_datum(id).unwrap();
            for p in [3, 5] {
                let mats = reflection_matrices(&d, p).unwrap();
                assert!(mats.iter().all(|m| m.mul(m).is_identity()));
            }
        }
    }

    #[test]
    fn bad_datum_is_rejected() {
        let mut d = RootDatum::type_a(3, Lattice::Root);
        d.cartan[0][1] = 0;
        assert!(matches!(
            reflection_matrices(&d, 5),
            Err(Error::CoxeterRelation { .. })
        ));
    }

    #[test]
    fn small_orders() {
        let a2 = case_datum("pu3").unwrap();
        let order = reflection_group_order(&a2, 3, 10_000).unwrap().unwrap();
        assert_eq!(order, 6);
        let su3 = case_datum("su3").unwrap();
        assert_eq!(reflection_group_order(&su3, 5, 10_000).unwrap(), Some(6));
    }

    #[test]
    fn pu3_low_degrees() {
        let report = compare_with_known_part(&case("pu3").unwrap(), 12).unwrap();
        assert_eq!(report.rows[0].computed, 1);
        assert_eq!(report.rows[1].computed, 1);
        assert_eq!(report.violations(), 0);
    }

    #[test]
    fn su3_control() {
        assert!(control_su3(24).unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn csv_roundtrip() {
        let r = compare_dims(
            "demo",
            3,
            &[(0, 1), (2, 2), (4, 0)],
            &Series::from_coeffs(4, &[1, 0, 1, 0, 1]),
        );
        assert_eq!(r.rows[1].status, Status::Exceeds);
        assert_eq!(r.rows[2].status, Status::Violation);
        let back = WeylInvariantReport::from_csv("demo", 3, &r.to_csv()).unwrap();
        assert_eq!(back, r);
    }
}
