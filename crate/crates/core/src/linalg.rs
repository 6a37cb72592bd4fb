//! Degree slices of `H*(BA_n)` and exact linear algebra over F_p.
//!
//! Vectors are sparse (sorted `(index, coeff)` lists). Elimination keeps a
//! semi-echelon basis whose pivot is the largest nonzero coordinate of each
//! row, reducing incoming vectors in a dense scratch buffer. Kernels are
//! returned in reduced row echelon form so they do not depend on insertion
//! order.

use std::collections::HashMap;

use crate::field::FieldCtx;
use crate::koszul::{KoszulCtx, KoszulElement, Monomial, MAX_RANK};

pub type SparseVec = Vec<(usize, u32)>;

/// The monomial basis of one degree of `H*(BA_n)` (optionally restricted).
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    ctx: KoszulCtx,
    degree: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeSlice {
    pub fn new(ctx: KoszulCtx, degree: usize) -> Self {
        Self::filtered(ctx, degree, |_| true)
    }

    /// Monomials of the given degree with exactly `ext_len` exterior factors.
    pub fn block(ctx: KoszulCtx, degree: usize, ext_len: usize) -> Self {
        Self::filtered(ctx, degree, move |m| m.ext_len() == ext_len)
    }

    /// Purely polynomial part of the slice (the cohomology of a torus).
    pub fn polynomial(ctx: KoszulCtx, degree: usize) -> Self {
        Self::filtered(ctx, degree, |m| m.is_polynomial())
    }

    pub fn filtered(ctx: KoszulCtx, degree: usize, keep: impl Fn(&Monomial) -> bool) -> Self {
        let n = ctx.n();
        let mut basis = Vec::new();
        for ext in 0u16..(1 << n) {
            let s = ext.count_ones() as usize;
            if s > degree || !(degree - s).is_multiple_of(2) {
                continue;
            }
            let total = (degree - s) / 2;
            let mut exps = [0u16; MAX_RANK];
            compositions(n, total, 0, &mut exps, &mut |e| {
                let m = Monomial::from_parts(*e, ext as u8);
                if keep(&m) {
                    basis.push(m);
                }
            });
        }
        basis.sort_unstable();
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self {
            ctx,
            degree,
            basis,
            index,
        }
    }

    #[inline]
    pub fn ctx(&self) -> KoszulCtx {
        self.ctx
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    #[inline]
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `x`; `None` if some term lies outside the slice.
    pub fn to_vector(&self, x: &KoszulElement) -> Option<SparseVec> {
        let mut v: SparseVec = Vec::with_capacity(x.len());
        for (m, c) in x.terms() {
            v.push((self.index_of(m)?, *c));
        }
        v.sort_unstable_by_key(|e| e.0);
        Some(v)
    }

    pub fn to_element(&self, v: &SparseVec) -> KoszulElement {
        KoszulElement::from_terms(self.ctx, v.iter().map(|&(i, c)| (self.basis[i], c as i64)))
    }
}

/// Number of monomials in a slice, by the closed count over exterior subsets.
pub fn slice_dimension(n: usize, degree: usize) -> usize {
    (0..=n.min(degree))
        .filter(|s| (degree - s).is_multiple_of(2))
        .map(|s| binomial(n, s) * binomial((degree - s) / 2 + n - 1, n - 1))
        .sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerate exponent vectors of length `n` summing to `total`, in lex order.
fn compositions(
    n: usize,
    total: usize,
    pos: usize,
    exps: &mut [u16; MAX_RANK],
    emit: &mut impl FnMut(&[u16; MAX_RANK]),
) {
    if pos + 1 == n {
        exps[pos] = total as u16;
        emit(exps);
        exps[pos] = 0;
        return;
    }
    for a in 0..=total {
        exps[pos] = a as u16;
        compositions(n, total - a, pos + 1, exps, emit);
    }
    exps[pos] = 0;
}

/// Incremental semi-echelon basis with optional tracking of input combinations.
pub struct Echelon {
    field: FieldCtx,
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
    acc: Vec<u32>,
    touched: Vec<usize>,
    tag_acc: Vec<u32>,
    tag_touched: Vec<usize>,
}

pub enum Insert {
    /// The vector was independent; it now owns the given pivot coordinate.
    Pivot(usize),
    /// The vector reduced to zero; the tag combination (if tracked) spans a kernel vector.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(field: FieldCtx) -> Self {
        Self {
            field,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_row: HashMap::new(),
            acc: Vec::new(),
            touched: Vec::new(),
            tag_acc: Vec::new(),
            tag_touched: Vec::new(),
        }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    fn load(buf: &mut Vec<u32>, touched: &mut Vec<usize>, v: &SparseVec) {
        for &(i, c) in v {
            if i >= buf.len() {
                buf.resize(i + 1, 0);
            }
            buf[i] = c;
            touched.push(i);
        }
    }

    fn drain(buf: &mut [u32], touched: &mut Vec<usize>, upto: Option<usize>) -> SparseVec {
        touched.sort_unstable();
        touched.dedup();
        let mut out = Vec::new();
        for &i in touched.iter() {
            if upto.is_none_or(|u| i <= u) && buf[i] != 0 {
                out.push((i, buf[i]));
            }
            buf[i] = 0;
        }
        touched.clear();
        out
    }

    /// Reduce `v` against the basis. With `tag` given, the combination of
    /// inputs is tracked alongside.
    pub fn insert(&mut self, v: &SparseVec, tag: Option<&SparseVec>) -> Insert {
        let f = self.field;
        Self::load(&mut self.acc, &mut self.touched, v);
        if let Some(t) = tag {
            Self::load(&mut self.tag_acc, &mut self.tag_touched, t);
        }
        let mut top = v.last().map(|e| e.0 as isize).unwrap_or(-1);
        loop {
            while top >= 0 && self.acc[top as usize] == 0 {
                top -= 1;
            }
            if top < 0 {
                Self::drain(&mut self.acc, &mut self.touched, None);
                let t = Self::drain(&mut self.tag_acc, &mut self.tag_touched, None);
                return Insert::Dependent(t);
            }
            let lead = top as usize;
            match self.pivot_row.get(&lead) {
                Some(&r) => {
                    let factor = f.neg(self.acc[lead]);
                    for &(i, c) in &self.rows[r] {
                        self.acc[i] = f.add(self.acc[i], f.mul(factor, c));
                        self.touched.push(i);
                    }
                    if tag.is_some() {
                        for &(i, c) in &self.tags[r] {
                            if i >= self.tag_acc.len() {
                                self.tag_acc.resize(i + 1, 0);
                            }
                            self.tag_acc[i] = f.add(self.tag_acc[i], f.mul(factor, c));
                            self.tag_touched.push(i);
                        }
                    }
                }
                None => {
                    let inv = f.inv(self.acc[lead]);
                    let mut row = Self::drain(&mut self.acc, &mut self.touched, Some(lead));
                    for e in row.iter_mut() {
                        e.1 = f.mul(e.1, inv);
                    }
                    let mut t = Self::drain(&mut self.tag_acc, &mut self.tag_touched, None);
                    for e in t.iter_mut() {
                        e.1 = f.mul(e.1, inv);
                    }
                    self.pivot_row.insert(lead, self.rows.len());
                    self.rows.push(row);
                    self.tags.push(t);
                    return Insert::Pivot(lead);
                }
            }
        }
    }

    /// Membership test without modifying the basis.
    pub fn contains(&mut self, v: &SparseVec) -> bool {
        let f = self.field;
        Self::load(&mut self.acc, &mut self.touched, v);
        let mut top = v.last().map(|e| e.0 as isize).unwrap_or(-1);
        let result = loop {
            while top >= 0 && self.acc[top as usize] == 0 {
                top -= 1;
            }
            if top < 0 {
                break true;
            }
            let lead = top as usize;
            match self.pivot_row.get(&lead) {
                Some(&r) => {
                    let factor = f.neg(self.acc[lead]);
                    for &(i, c) in &self.rows[r] {
                        self.acc[i] = f.add(self.acc[i], f.mul(factor, c));
                        self.touched.push(i);
                    }
                }
                None => break false,
            }
        };
        Self::drain(&mut self.acc, &mut self.touched, None);
        result
    }
}

/// Reduced row echelon form of the span of `vectors`, rows sorted by pivot.
pub fn reduced_basis(field: FieldCtx, vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(field);
    for v in vectors {
        ech.insert(v, None);
    }
    let mut rows = ech.rows;
    rows.sort_by_key(|r| r.last().map(|e| e.0));
    let f = field;
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    let mut out: Vec<SparseVec> = Vec::with_capacity(rows.len());
    let mut acc: Vec<u32> = Vec::new();
    for row in rows {
        let lead = row.last().unwrap().0;
        if acc.len() <= lead {
            acc.resize(lead + 1, 0);
        }
        for &(i, c) in &row {
            acc[i] = c;
        }
        for col in (0..lead).rev() {
            if acc[col] == 0 {
                continue;
            }
            if let Some(&r) = pivots.get(&col) {
                let factor = f.neg(acc[col]);
                for &(i, c) in &out[r] {
                    acc[i] = f.add(acc[i], f.mul(factor, c));
                }
            }
        }
        let reduced: SparseVec = (0..=lead)
            .filter(|&i| acc[i] != 0)
            .map(|i| (i, acc[i]))
            .collect();
        for e in acc.iter_mut().take(lead + 1) {
            *e = 0;
        }
        pivots.insert(lead, out.len());
        out.push(reduced);
    }
    out
}

pub fn rank(field: FieldCtx, vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new(field);
    vectors
        .iter()
        .filter(|v| matches!(ech.insert(v, None), Insert::Pivot(_)))
        .count()
}

/// `Σ_k tag[k] · basis[k]`.
pub fn combine(field: FieldCtx, tag: &SparseVec, basis: &[SparseVec]) -> SparseVec {
    let mut acc: HashMap<usize, u32> = HashMap::new();
    for &(k, c) in tag {
        for &(i, v) in &basis[k] {
            let e = acc.entry(i).or_insert(0);
            *e = field.add(*e, field.mul(c, v));
        }
    }
    let mut out: SparseVec = acc.into_iter().filter(|e| e.1 != 0).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// A linear map given by the images of source basis vectors.
#[derive(Clone, Debug)]
pub struct SliceMap {
    pub columns: Vec<SparseVec>,
}

impl SliceMap {
    pub fn apply(&self, field: FieldCtx, v: &SparseVec) -> SparseVec {
        combine(field, v, &self.columns)
    }
}

/// Simultaneous kernel of several maps sharing a source of dimension `source_dim`.
pub fn kernel_stacked(field: FieldCtx, source_dim: usize, maps: &[SliceMap]) -> Vec<SparseVec> {
    let subspace: Vec<SparseVec> = (0..source_dim).map(|i| vec![(i, 1)]).collect();
    kernel_on_subspace(field, &subspace, maps)
}

/// Vectors of span(`subspace`) killed by every map, as an RREF basis in
/// source coordinates. The maps are stacked into one block-column target.
pub fn kernel_on_subspace(
    field: FieldCtx,
    subspace: &[SparseVec],
    maps: &[SliceMap],
) -> Vec<SparseVec> {
    if maps.is_empty() {
        return reduced_basis(field, subspace);
    }
    let offsets: Vec<usize> = maps
        .iter()
        .scan(0usize, |off, m| {
            let o = *off;
            *off += m
                .columns
                .iter()
                .flat_map(|c| c.iter().map(|e| e.0 + 1))
                .max()
                .unwrap_or(0);
            Some(o)
        })
        .collect();
    let mut ech = Echelon::new(field);
    let mut kernel_tags = Vec::new();
    for (k, v) in subspace.iter().enumerate() {
        let mut image: SparseVec = Vec::new();
        for (m, off) in maps.iter().zip(&offsets) {
            image.extend(m.apply(field, v).into_iter().map(|(i, c)| (i + off, c)));
        }
        image.sort_unstable_by_key(|e| e.0);
        if let Insert::Dependent(tag) = ech.insert(&image, Some(&vec![(k, 1)])) {
            kernel_tags.push(tag);
        }
    }
    let vectors: Vec<SparseVec> = kernel_tags
        .iter()
        .map(|t| combine(field, t, subspace))
        .collect();
    reduced_basis(field, &vectors)
}

/// Same kernel computed one map at a time, restricting the subspace after each.
pub fn kernel_chain(field: FieldCtx, subspace: &[SparseVec], maps: &[SliceMap]) -> Vec<SparseVec> {
    let mut current: Vec<SparseVec> = subspace.to_vec();
    for m in maps {
        if current.is_empty() {
            break;
        }
        let mut ech = Echelon::new(field);
        let mut next = Vec::new();
        for (k, v) in current.iter().enumerate() {
            let image = m.apply(field, v);
            if let Insert::Dependent(tag) = ech.insert(&image, Some(&vec![(k, 1)])) {
                next.push(combine(field, &tag, &current));
            }
        }
        current = next;
    }
    reduced_basis(field, &current)
}

/// Span of homogeneous elements, with coordinates assigned on first sight.
pub struct ElementSpan {
    index: HashMap<Monomial, usize>,
    ech: Echelon,
    basis: Vec<KoszulElement>,
}

impl ElementSpan {
    pub fn new(field: FieldCtx) -> Self {
        Self {
            index: HashMap::new(),
            ech: Echelon::new(field),
            basis: Vec::new(),
        }
    }

    fn coords(&mut self, x: &KoszulElement, assign: bool) -> Option<SparseVec> {
        let mut v = Vec::with_capacity(x.len());
        for (m, c) in x.terms() {
            let i = match self.index.get(m) {
                Some(&i) => i,
                None if assign => {
                    let i = self.index.len();
                    self.index.insert(*m, i);
                    i
                }
                None => return None,
            };
            v.push((i, *c));
        }
        v.sort_unstable_by_key(|e| e.0);
        Some(v)
    }

    /// Adds `x`; returns whether it enlarged the span.
    pub fn insert(&mut self, x: &KoszulElement) -> bool {
        let v = self.coords(x, true).unwrap();
        match self.ech.insert(&v, None) {
            Insert::Pivot(_) => {
                self.basis.push(x.clone());
                true
            }
            Insert::Dependent(_) => false,
        }
    }

    pub fn extend<'a>(&mut self, xs: impl IntoIterator<Item = &'a KoszulElement>) {
        for x in xs {
            self.insert(x);
        }
    }

    pub fn contains(&mut self, x: &KoszulElement) -> bool {
        match self.coords(x, false) {
            Some(v) => self.ech.contains(&v),
            None => false,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    /// The inserted elements that were independent when added.
    pub fn basis(&self) -> &[KoszulElement] {
        &self.basis
    }
}

/// Dimension of the span of `xs`.
pub fn span_dim<'a>(field: FieldCtx, xs: impl IntoIterator<Item = &'a KoszulElement>) -> usize {
    let mut s = ElementSpan::new(field);
    s.extend(xs);
    s.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{MatrixAction, MatrixGL};

    fn ctx(p: u32, n: usize) -> KoszulCtx {
        KoszulCtx::new(p, n).unwrap()
    }

    #[test]
    fn small_slices() {
        let s = DegreeSlice::new(ctx(3, 1), 0);
        assert_eq!(s.basis(), &[Monomial::ONE]);
        let s = DegreeSlice::new(ctx(3, 2), 2);
        let names: Vec<String> = s.basis().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["t2", "t1", "dt1 dt2"]);
        let s = DegreeSlice::new(ctx(3, 2), 3);
        assert_eq!(s.dim(), 4);
        let mut names: Vec<String> = s.basis().iter().map(|m| m.to_string()).collect();
        names.sort();
        assert_eq!(names, ["t1 dt1", "t1 dt2", "t2 dt1", "t2 dt2"]);
    }

    #[test]
    fn slice_counts_match_closed_form() {
        for n in 1..=4 {
            for d in 0..20 {
                assert_eq!(
                    DegreeSlice::new(ctx(3, n), d).dim(),
                    slice_dimension(n, d),
                    "n={n} d={d}"
                );
            }
        }
    }

    fn minus_identity(g: &MatrixGL, slice: &DegreeSlice) -> SliceMap {
        let mut act = MatrixAction::new(g, slice.ctx()).unwrap();
        let columns = slice
            .basis()
            .iter()
            .map(|m| {
                let img = &act.apply_monomial(m) - &KoszulElement::monomial(slice.ctx(), *m, 1);
                slice.to_vector(&img).unwrap()
            })
            .collect();
        SliceMap { columns }
    }

    #[test]
    fn trivial_kernels() {
        let f = FieldCtx::new(3).unwrap();
        let slice = DegreeSlice::new(ctx(3, 2), 2);
        assert_eq!(kernel_stacked(f, slice.dim(), &[]).len(), 3);
        let id = SliceMap {
            columns: (0..3).map(|i| vec![(i, 1)]).collect(),
        };
        assert!(kernel_stacked(f, 3, &[id]).is_empty());
    }

    #[test]
    fn swap_kernel_in_degree_two() {
        let f = FieldCtx::new(3).unwrap();
        let slice = DegreeSlice::new(ctx(3, 2), 2);
        let swap = MatrixGL::new(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let ker = kernel_stacked(f, slice.dim(), &[minus_identity(&swap, &slice)]);
        assert_eq!(ker.len(), 1);
        // t1 + t2 is fixed, and dt1dt2 ↦ -dt1dt2 so the top class is not
        let sum = &KoszulElement::t(slice.ctx(), 0) + &KoszulElement::t(slice.ctx(), 1);
        let mut span = ElementSpan::new(f);
        for v in &ker {
            span.insert(&slice.to_element(v));
        }
        assert!(span.contains(&sum));
    }

    #[test]
    fn chain_and_stack_agree() {
        let f = FieldCtx::new(3).unwrap();
        let c = ctx(3, 3);
        for d in 0..9 {
            let slice = DegreeSlice::new(c, d);
            let gens = [
                MatrixGL::transvection(f, 3, 0, 1, 1),
                MatrixGL::transvection(f, 3, 1, 2, 1),
                MatrixGL::transvection(f, 3, 2, 0, 1),
            ];
            let maps: Vec<SliceMap> = gens.iter().map(|g| minus_identity(g, &slice)).collect();
            let unit: Vec<SparseVec> = (0..slice.dim()).map(|i| vec![(i, 1)]).collect();
            assert_eq!(
                kernel_stacked(f, slice.dim(), &maps),
                kernel_chain(f, &unit, &maps)
            );
        }
    }

    #[test]
    fn reduced_basis_is_order_independent() {
        let f = FieldCtx::new(5).unwrap();
        let a = vec![
            vec![(0, 1), (2, 3)],
            vec![(1, 2), (2, 1)],
            vec![(0, 1), (1, 2), (2, 4)],
        ];
        let mut b = a.clone();
        b.reverse();
        assert_eq!(reduced_basis(f, &a), reduced_basis(f, &b));
        assert_eq!(rank(f, &a), 2);
    }
}
