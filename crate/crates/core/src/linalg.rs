//! Exact sparse linear algebra over Q.
//!
//! Vectors are sorted `(index, coefficient)` lists with no stored zeros.
//! [`Echelon`] maintains a row-echelon (optionally fully reduced) basis and is the
//! single elimination routine used by the engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Render a rational as `n` or `n/d`.
pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `n` or `n/d`.
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, c)| (i, q_to_string(c)))).finish()
    }
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Q::one())] }
    }

    /// Build from arbitrary entries; duplicates are summed and zeros dropped.
    pub fn from_entries<I: IntoIterator<Item = (usize, Q)>>(it: I) -> Self {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, c) in it {
            *acc.entry(i).or_insert_with(Q::zero) += c;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Build from entries already sorted by index, with no duplicates.
    pub fn from_sorted(entries: Vec<(usize, Q)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries: entries.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    pub fn scaled(&self, a: &Q) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, c)| (*i, c * a)).collect() }
    }

    /// `self + a·other`.
    pub fn add_scaled(&self, a: &Q, other: &SparseVec) -> SparseVec {
        if a.is_zero() {
            return self.clone();
        }
        let (x, y) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
                out.push(x[i].clone());
                i += 1;
            } else if i == x.len() || y[j].0 < x[i].0 {
                out.push((y[j].0, &y[j].1 * a));
                j += 1;
            } else {
                let c = &x[i].1 + &y[j].1 * a;
                if !c.is_zero() {
                    out.push((x[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// Shift every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (i + offset, c.clone())).collect() }
    }

    /// Keep entries with index in `lo..hi`, re-indexed from 0.
    pub fn window(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, c)| (i - lo, c.clone()))
                .collect(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }
}

/// A linear map stored by columns: `cols[j]` is the image of the j-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    target_dim: usize,
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn new(target_dim: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < target_dim)));
        LinMap { target_dim, cols }
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinMap { target_dim, cols: vec![SparseVec::new(); source_dim] }
    }

    pub fn identity(n: usize) -> Self {
        LinMap { target_dim: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.cols.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, c) in v.entries() {
            acc = acc.add_scaled(c, &self.cols[*j]);
        }
        acc
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LinMap) -> LinMap {
        assert_eq!(first.target_dim, self.source_dim(), "dimension mismatch in composition");
        LinMap { target_dim: self.target_dim, cols: first.cols.iter().map(|c| self.apply(c)).collect() }
    }
}

/// Incremental echelon basis of a subspace of Q^n.
///
/// In fully reduced mode every pivot column is zero in all other rows, which makes
/// the sorted rows the canonical RREF basis of the span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
    full: bool,
}

impl Echelon {
    /// Fully reduced echelon form.
    pub fn rref() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), full: true }
    }

    /// Plain echelon form, enough for ranks.
    pub fn partial() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), full: false }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduce `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w: BTreeMap<usize, Q> = v.entries().iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = w.range(cursor..).map(|(c, _)| *c).find(|c| self.pivots.contains_key(c));
            let Some(col) = next else { break };
            let coef = w.remove(&col).expect("present");
            let row = &self.rows[self.pivots[&col]];
            for (j, a) in row.entries().iter().skip(1) {
                let e = w.entry(*j).or_insert_with(Q::zero);
                *e -= &coef * a;
                if e.is_zero() {
                    w.remove(j);
                }
            }
            cursor = col + 1;
        }
        SparseVec { entries: w.into_iter().collect() }
    }

    /// Insert `v`; returns true if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some(lead) = r.leading() else { return false };
        let inv = r.entries()[0].1.recip();
        let r = r.scaled(&inv);
        if self.full {
            for row in self.rows.iter_mut() {
                let c = row.get(lead);
                if !c.is_zero() {
                    *row = row.add_scaled(&-c, &r);
                }
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Basis rows sorted by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.pivots.values().map(|&k| self.rows[k].clone()).collect()
    }

    pub fn into_basis(self) -> Vec<SparseVec> {
        let mut rows: Vec<Option<SparseVec>> = self.rows.into_iter().map(Some).collect();
        self.pivots.values().map(|&k| rows[k].take().expect("each row once")).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::partial();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Canonical (RREF) basis of the span of `vectors`.
pub fn canonical_basis<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I) -> Vec<SparseVec> {
    let mut e = Echelon::rref();
    for v in vectors {
        e.insert(v);
    }
    e.into_basis()
}

/// Solution space of the homogeneous system whose equations are `rows`, over `n` unknowns.
/// The returned basis is canonical (RREF).
pub fn kernel(rows: &[SparseVec], n: usize) -> Vec<SparseVec> {
    let mut e = Echelon::rref();
    for r in rows {
        e.insert(r);
    }
    let basis = e.basis();
    let pivot_cols: Vec<usize> = basis.iter().map(|r| r.leading().expect("nonzero")).collect();
    let mut is_pivot = vec![false; n];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let mut gens = Vec::new();
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        let mut entries = vec![(f, Q::one())];
        for (row, &p) in basis.iter().zip(&pivot_cols) {
            let c = row.get(f);
            if !c.is_zero() {
                entries.push((p, -c));
            }
        }
        gens.push(SparseVec::from_entries(entries));
    }
    canonical_basis(&gens)
}

/// A subspace given by its canonical basis, with coordinate extraction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Subspace {
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// `basis` must be in RREF (as produced by [`canonical_basis`] or [`kernel`]).
    pub fn from_rref(basis: Vec<SparseVec>) -> Self {
        let pivots = basis.iter().map(|b| b.leading().expect("nonzero basis vector")).collect();
        Subspace { basis, pivots }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I) -> Self {
        Self::from_rref(canonical_basis(vectors))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is not in the subspace.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords = SparseVec::from_sorted(
            self.pivots.iter().enumerate().map(|(k, &p)| (k, v.get(p))).collect(),
        );
        let mut residual = v.clone();
        for (k, c) in coords.entries() {
            residual = residual.add_scaled(&-c.clone(), &self.basis[*k]);
        }
        residual.is_zero().then_some(coords)
    }
}

/// True when every coefficient is an integer of absolute value at most `bound`.
pub fn small_integer_entries(v: &SparseVec, bound: i64) -> bool {
    v.entries().iter().all(|(_, c)| c.is_integer() && c.abs() <= q(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(i, c)| (i, q(c))))
    }

    #[test]
    fn rational_roundtrip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(q_to_string(&q_parse(s).unwrap()), s);
        }
        assert_eq!(q_parse("4/2").unwrap(), q(2));
        assert!(q_parse("1/0").is_none());
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[(0, 1), (2, 3)]);
        let b = sv(&[(2, 1), (5, 1)]);
        assert_eq!(a.add_scaled(&q(-3), &b), sv(&[(0, 1), (5, -3)]));
    }

    #[test]
    fn kernel_of_simple_system() {
        // x0 + x1 = 0, x2 = 0 over 3 unknowns.
        let k = kernel(&[sv(&[(0, 1), (1, 1)]), sv(&[(2, 1)])], 3);
        assert_eq!(k, vec![sv(&[(0, 1), (1, -1)])]);
    }

    #[test]
    fn subspace_coords() {
        let s = Subspace::span(&[sv(&[(0, 2), (1, 2)]), sv(&[(1, 1), (2, 1)])]);
        assert_eq!(s.dim(), 2);
        let v = sv(&[(0, 1), (1, 2), (2, 1)]);
        let c = s.coords(&v).unwrap();
        let mut back = SparseVec::new();
        for (k, x) in c.entries() {
            back = back.add_scaled(x, &s.basis()[*k]);
        }
        assert_eq!(back, v);
        assert!(s.coords(&sv(&[(2, 1)])).is_none());
    }

    #[test]
    fn composition() {
        let f = LinMap::new(2, vec![sv(&[(0, 1)]), sv(&[(0, 1), (1, 1)])]);
        let g = LinMap::new(1, vec![sv(&[(0, 2)]), sv(&[(0, -1)])]);
        let gf = g.after(&f);
        assert_eq!(gf.cols(), &[sv(&[(0, 2)]), sv(&[(0, 1)])]);
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = SparseVec> {
        proptest::collection::vec((0..n, -3i64..=3), 0..n)
            .prop_map(|es| SparseVec::from_entries(es.into_iter().map(|(i, c)| (i, q(c)))))
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in proptest::collection::vec(arb_vec(6), 0..6)) {
            let k = kernel(&rows, 6);
            prop_assert_eq!(k.len() + rank(&rows), 6);
            for v in &k {
                for r in &rows {
                    let dot: Q = r.entries().iter().map(|(i, c)| c * v.get(*i)).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }

        #[test]
        fn rref_is_canonical(vs in proptest::collection::vec(arb_vec(5), 0..5)) {
            let a = canonical_basis(&vs);
            let mut rev = vs.clone();
            rev.reverse();
            let b = canonical_basis(&rev);
            prop_assert_eq!(a, b);
        }
    }
}
