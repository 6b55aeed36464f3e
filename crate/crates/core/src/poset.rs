//! Finite T0 spaces given by their specialization order, sheaves of graded vector
//! spaces on them, global sections and Čech cohomology.
//!
//! Convention: `leq(i, j)` means i lies in the closure of {j}. The minimal open
//! containing i is `U_i = {j : leq(i, j)}`, so maximal points are open.

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{kernel, LinMap, SparseVec, Subspace, Echelon};
use fixedbitset::FixedBitSet;
use serde::Serialize;
use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type PointSet = FixedBitSet;

#[derive(Clone, Debug)]
pub struct FiniteSpace {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<PointSet>,
    covers: Vec<Vec<usize>>,
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.up == other.up
    }
}

impl FiniteSpace {
    /// Build from a full order predicate; checks reflexivity, transitivity and antisymmetry.
    pub fn from_order<F: Fn(usize, usize) -> bool>(ids: Vec<String>, leq: F) -> Result<Self> {
        let n = ids.len();
        let mut up = vec![PointSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        Self::from_up_sets(ids, up)
    }

    /// Build from generating pairs `(i, j)` meaning i ≤ j; takes the reflexive-transitive closure.
    pub fn from_pairs(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let mut up = vec![PointSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidSpace(format!("pair ({i},{j}) out of range")));
            }
            up[i].insert(j);
        }
        // Warshall closure on bitsets.
        for k in 0..n {
            let uk = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&uk);
                }
            }
        }
        Self::from_up_sets(ids, up)
    }

    fn from_up_sets(ids: Vec<String>, up: Vec<PointSet>) -> Result<Self> {
        let n = ids.len();
        let mut index = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate point id `{id}`")));
            }
        }
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::InvalidSpace(format!("not reflexive at `{}`", ids[i])));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidSpace(format!(
                        "not antisymmetric (T0 fails): `{}` and `{}`",
                        ids[i], ids[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InvalidSpace(format!("not transitive through `{}`", ids[j])));
                }
            }
        }
        let covers = (0..n)
            .map(|i| {
                up[i]
                    .ones()
                    .filter(|&j| j != i)
                    .filter(|&j| !up[i].ones().any(|k| k != i && k != j && up[k].contains(j)))
                    .collect()
            })
            .collect();
        Ok(FiniteSpace { ids, index, up, covers })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// `U_i` as a bitset.
    pub fn up_set(&self, i: usize) -> &PointSet {
        &self.up[i]
    }

    /// Points j covering i (i < j with nothing strictly between).
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// `U_i`, sorted.
    pub fn minimal_open(&self, i: usize) -> Vec<usize> {
        self.up[i].ones().collect()
    }

    pub fn minimal_open_of(&self, id: &str) -> Result<Vec<String>> {
        let i = self.index_of(id)?;
        Ok(self.minimal_open(i).into_iter().map(|j| self.ids[j].clone()).collect())
    }

    pub fn all_points(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn is_open(&self, set: &[usize]) -> bool {
        self.check_open(set).is_ok()
    }

    /// Bitset of `set`, after checking that it is open.
    pub fn check_open(&self, set: &[usize]) -> Result<PointSet> {
        let mut s = PointSet::with_capacity(self.len());
        for &i in set {
            if i >= self.len() {
                return Err(Error::UnknownPoint(format!("#{i}")));
            }
            s.insert(i);
        }
        for i in s.ones() {
            if !self.up[i].is_subset(&s) {
                return Err(Error::NotOpen(self.ids[i].clone()));
            }
        }
        Ok(s)
    }

    /// Union of minimal opens of `set`.
    pub fn open_hull(&self, set: &[usize]) -> Vec<usize> {
        let mut s = PointSet::with_capacity(self.len());
        for &i in set {
            s.union_with(&self.up[i]);
        }
        s.ones().collect()
    }

    /// `{i : U_i ⊆ W}` minimal elements of a nonempty open `W`.
    fn minimal_points(&self, w: &PointSet) -> Vec<usize> {
        w.ones().filter(|&i| !w.ones().any(|k| k != i && self.up[k].contains(i))).collect()
    }

    /// If the open set `w` equals some `U_j`, return j.
    pub fn as_minimal_open(&self, w: &PointSet) -> Option<usize> {
        let mins = self.minimal_points(w);
        (mins.len() == 1 && &self.up[mins[0]] == w).then(|| mins[0])
    }

    pub fn validate_intersection_axiom(&self) -> IntersectionReport {
        let n = self.len();
        let mut report = IntersectionReport::default();
        for i in 0..n {
            for k in i..n {
                report.pairs_checked += 1;
                let mut w = self.up[i].clone();
                w.intersect_with(&self.up[k]);
                if w.is_clear() {
                    report.empty += 1;
                } else if self.as_minimal_open(&w).is_none() {
                    let mins = self.minimal_points(&w);
                    report.violations.push(IntersectionViolation {
                        first: self.ids[i].clone(),
                        second: self.ids[k].clone(),
                        minimal_points: mins.into_iter().map(|m| self.ids[m].clone()).collect(),
                    });
                }
            }
        }
        report
    }

    /// The same space with points relabelled: new point `k` is old point `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteSpace {
        let ids = perm.iter().map(|&p| self.ids[p].clone()).collect();
        FiniteSpace::from_order(ids, |a, b| self.leq(perm[a], perm[b])).expect("permutation of a valid space")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntersectionViolation {
    pub first: String,
    pub second: String,
    pub minimal_points: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub pairs_checked: usize,
    pub empty: usize,
    pub violations: Vec<IntersectionViolation>,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A graded vector space with labelled bases; zero-dimensional degrees are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedSpace {
    parts: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_dims<I: IntoIterator<Item = (i32, usize)>>(dims: I) -> Self {
        let mut g = GradedSpace::zero();
        for (d, n) in dims {
            g.set_labels(d, (0..n).map(|k| format!("e{k}")).collect());
        }
        g
    }

    pub fn set_labels(&mut self, degree: i32, labels: Vec<String>) {
        if labels.is_empty() {
            self.parts.remove(&degree);
        } else {
            self.parts.insert(degree, labels);
        }
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.parts.get(&degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: i32) -> &[String] {
        self.parts.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.parts.iter().map(|(d, l)| (*d, l.len())).collect()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.parts.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.parts.keys().next().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.parts.values().map(Vec::len).sum()
    }
}

/// A sheaf of graded vector spaces given by stalks and restriction maps for comparable pairs.
///
/// Missing maps between comparable points are zero.
#[derive(Clone, Debug)]
pub struct GradedSheaf {
    stalks: Vec<GradedSpace>,
    maps: HashMap<(usize, usize), BTreeMap<i32, LinMap>>,
}

impl GradedSheaf {
    /// Validate shapes, degree preservation and functoriality against `space`.
    pub fn new(
        space: &FiniteSpace,
        stalks: Vec<GradedSpace>,
        maps: HashMap<(usize, usize), BTreeMap<i32, LinMap>>,
    ) -> Result<Self> {
        let sheaf = GradedSheaf { stalks, maps };
        sheaf.validate(space)?;
        Ok(sheaf)
    }

    pub fn zero(n: usize) -> Self {
        GradedSheaf { stalks: vec![GradedSpace::zero(); n], maps: HashMap::new() }
    }

    pub fn validate(&self, space: &FiniteSpace) -> Result<()> {
        let n = space.len();
        if self.stalks.len() != n {
            return Err(Error::InvalidSheaf(format!("{} stalks for {} points", self.stalks.len(), n)));
        }
        for (&(i, j), by_deg) in &self.maps {
            if i >= n || j >= n || i == j || !space.leq(i, j) {
                return Err(Error::InvalidSheaf(format!("restriction for non-comparable pair ({i},{j})")));
            }
            for (&t, m) in by_deg {
                if m.source_dim() != self.stalks[i].dim(t) || m.target_dim() != self.stalks[j].dim(t) {
                    return Err(Error::InvalidSheaf(format!(
                        "restriction {}→{} in degree {t} has shape {}→{}",
                        space.id(i),
                        space.id(j),
                        m.source_dim(),
                        m.target_dim()
                    )));
                }
            }
        }
        for i in 0..n {
            for j in space.up_set(i).ones().filter(|&j| j != i) {
                for k in space.up_set(j).ones().filter(|&k| k != j) {
                    for t in self.stalks[i].degrees() {
                        let direct = self.restriction(i, k, t);
                        let composite = self.restriction(j, k, t).after(&self.restriction(i, j, t));
                        if *direct != composite {
                            return Err(Error::InvalidSheaf(format!(
                                "functoriality fails on {} ≤ {} ≤ {} in degree {t}",
                                space.id(i),
                                space.id(j),
                                space.id(k)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn stalk(&self, i: usize) -> &GradedSpace {
        &self.stalks[i]
    }

    pub fn stalks(&self) -> &[GradedSpace] {
        &self.stalks
    }

    /// Restriction F_i → F_j in degree t (identity when i = j).
    pub fn restriction(&self, i: usize, j: usize, t: i32) -> Cow<'_, LinMap> {
        if i == j {
            return Cow::Owned(LinMap::identity(self.stalks[i].dim(t)));
        }
        match self.maps.get(&(i, j)).and_then(|m| m.get(&t)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(LinMap::zero(self.stalks[i].dim(t), self.stalks[j].dim(t))),
        }
    }

    /// Occupied degrees over the points of `set`.
    pub fn degrees_on(&self, set: &[usize]) -> BTreeSet<i32> {
        set.iter().flat_map(|&i| self.stalks[i].degrees()).collect()
    }

    /// The sheaf transported along a relabelling (`perm[k]` is the old index of new point k).
    pub fn permuted(&self, perm: &[usize]) -> GradedSheaf {
        let mut inv = vec![0; perm.len()];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        GradedSheaf {
            stalks: perm.iter().map(|&p| self.stalks[p].clone()).collect(),
            maps: self.maps.iter().map(|(&(i, j), m)| ((inv[i], inv[j]), m.clone())).collect(),
        }
    }
}

/// Coordinate layout of ⊕_{i∈U} F_i in one degree: points ascending, stalk blocks concatenated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    points: Vec<usize>,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    total: usize,
}

impl Layout {
    pub fn new(points: &[usize], sheaf: &GradedSheaf, degree: i32) -> Self {
        let mut offsets = Vec::with_capacity(points.len());
        let mut dims = Vec::with_capacity(points.len());
        let mut total = 0;
        for &p in points {
            offsets.push(total);
            let d = sheaf.stalk(p).dim(degree);
            dims.push(d);
            total += d;
        }
        Layout { points: points.to_vec(), offsets, dims, total }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    fn slot(&self, point: usize) -> Option<usize> {
        self.points.binary_search(&point).ok()
    }

    /// Offset and dimension of the block of `point`.
    pub fn block(&self, point: usize) -> Option<(usize, usize)> {
        self.slot(point).map(|k| (self.offsets[k], self.dims[k]))
    }

    /// Split a coordinate into (point, index within stalk).
    pub fn locate(&self, coord: usize) -> (usize, usize) {
        let k = match self.offsets.binary_search(&coord) {
            Ok(mut k) => {
                while self.dims[k] == 0 {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        (self.points[k], coord - self.offsets[k])
    }

    pub fn component(&self, v: &SparseVec, point: usize) -> SparseVec {
        match self.block(point) {
            Some((o, d)) => v.window(o, o + d),
            None => SparseVec::new(),
        }
    }
}

/// Sections of a sheaf over an open set in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    pub layout: Layout,
    pub space: Subspace,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[SparseVec] {
        self.space.basis()
    }
}

/// Global sections per degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Sections {
    pub by_degree: BTreeMap<i32, SectionSpace>,
}

impl Sections {
    pub fn dim(&self, degree: i32) -> usize {
        self.by_degree.get(&degree).map_or(0, SectionSpace::dim)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.by_degree.iter().filter(|(_, s)| s.dim() > 0).map(|(d, s)| (*d, s.dim())).collect()
    }

    pub fn to_graded_space(&self, space: &FiniteSpace) -> GradedSpace {
        let mut g = GradedSpace::zero();
        for (&t, s) in &self.by_degree {
            let labels = s
                .basis()
                .iter()
                .map(|b| {
                    let (p, k) = s.layout.locate(b.leading().expect("nonzero"));
                    format!("{}#{k}", space.id(p))
                })
                .collect();
            g.set_labels(t, labels);
        }
        g
    }
}

fn check_cutoff(sheaf: &GradedSheaf, points: &[usize], cutoff: i32) -> Result<BTreeSet<i32>> {
    let degrees = sheaf.degrees_on(points);
    if let Some(&min) = degrees.iter().next() {
        if cutoff < min {
            return Err(Error::CutoffTooSmall { cutoff, min_degree: min });
        }
    }
    Ok(degrees.into_iter().filter(|&t| t <= cutoff).collect())
}

/// Kernel of the matrix with the given columns (each of length `nrows`).
fn kernel_of_columns(cols: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, crate::linalg::Q)>> = vec![Vec::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.entries() {
            rows[*i].push((j, x.clone()));
        }
    }
    let rows: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_sorted).collect();
    kernel(&rows, cols.len())
}

/// Sections over the open `points` (sorted) in a single degree, by adding points top-down
/// and solving the fibre-product condition against upper covers only.
pub fn sections_in_degree(space: &FiniteSpace, points: &[usize], sheaf: &GradedSheaf, t: i32) -> SectionSpace {
    let layout = Layout::new(points, sheaf, t);
    let mut order = points.to_vec();
    order.sort_by_key(|&i| (space.up_set(i).count_ones(..), i));
    let mut cur: Vec<SparseVec> = Vec::new();
    for &i in &order {
        let (off_i, dim_i) = layout.block(i).expect("point of layout");
        let covers = space.upper_covers(i);
        // Rows: stacked coordinates of all covers.
        let mut cover_off = Vec::with_capacity(covers.len());
        let mut nrows = 0;
        for &j in covers {
            cover_off.push(nrows);
            nrows += sheaf.stalk(j).dim(t);
        }
        let mut cols = Vec::with_capacity(cur.len() + dim_i);
        for b in &cur {
            let mut stacked = SparseVec::new();
            for (&j, &o) in covers.iter().zip(&cover_off) {
                stacked = stacked.add_scaled(&crate::linalg::q(-1), &layout.component(b, j).shifted(o));
            }
            cols.push(stacked);
        }
        for e in 0..dim_i {
            let mut stacked = SparseVec::new();
            for (&j, &o) in covers.iter().zip(&cover_off) {
                let r = sheaf.restriction(i, j, t);
                stacked = stacked.add_scaled(&crate::linalg::q(1), &r.col(e).shifted(o));
            }
            cols.push(stacked);
        }
        let ker = kernel_of_columns(&cols, nrows);
        let nb = cur.len();
        cur = ker
            .iter()
            .map(|kv| {
                let mut v = SparseVec::new();
                for (idx, c) in kv.entries() {
                    if *idx < nb {
                        v = v.add_scaled(c, &cur[*idx]);
                    } else {
                        v = v.add_scaled(c, &SparseVec::unit(off_i + idx - nb));
                    }
                }
                v
            })
            .collect();
    }
    SectionSpace { layout, space: Subspace::span(&cur) }
}

/// Degreewise global sections over the open `u` up to `cutoff`, with canonical bases.
pub fn global_sections(space: &FiniteSpace, u: &[usize], sheaf: &GradedSheaf, cutoff: i32) -> Result<Sections> {
    let set = space.check_open(u)?;
    let points: Vec<usize> = set.ones().collect();
    let degrees: Vec<i32> = check_cutoff(sheaf, &points, cutoff)?.into_iter().collect();
    let parts = exec::map(&degrees, |&t| sections_in_degree(space, &points, sheaf, t));
    Ok(Sections { by_degree: degrees.into_iter().zip(parts).collect() })
}

/// One simplex of the ordered Čech nerve: strictly increasing vertices with nonempty meet.
#[derive(Clone, Debug)]
struct Cell {
    verts: Vec<usize>,
    meet: PointSet,
    minimal: Option<usize>,
}

/// The ordered nerve of the cover {U_i : i ∈ U}.
#[derive(Clone, Debug)]
pub struct Nerve {
    levels: Vec<Vec<Cell>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn new(space: &FiniteSpace, u: &[usize]) -> Self {
        let mut cells: Vec<Vec<Cell>> = Vec::new();
        // Depth-first extension in increasing vertex order yields lexicographic order per level.
        fn extend(space: &FiniteSpace, u: &[usize], cell: Cell, start: usize, cells: &mut Vec<Vec<Cell>>) {
            let p = cell.verts.len() - 1;
            if cells.len() <= p {
                cells.resize(p + 1, Vec::new());
            }
            cells[p].push(cell.clone());
            for k in start..u.len() {
                let mut meet = cell.meet.clone();
                meet.intersect_with(space.up_set(u[k]));
                if meet.is_clear() {
                    continue;
                }
                let mut verts = cell.verts.clone();
                verts.push(u[k]);
                let minimal = space.as_minimal_open(&meet);
                extend(space, u, Cell { verts, meet, minimal }, k + 1, cells);
            }
        }
        for (k, &i) in u.iter().enumerate() {
            let cell = Cell { verts: vec![i], meet: space.up_set(i).clone(), minimal: Some(i) };
            extend(space, u, cell, k + 1, &mut cells);
        }
        for level in cells.iter_mut() {
            level.sort_by(|a, b| a.verts.cmp(&b.verts));
        }
        let lookup = cells
            .iter()
            .map(|level| level.iter().enumerate().map(|(k, c)| (c.verts.clone(), k)).collect())
            .collect();
        Nerve { levels: cells, lookup }
    }

    pub fn max_level(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

/// Γ(W) for the meet W of a Čech cell.
enum CellSections {
    Stalk { point: usize, dim: usize },
    General(SectionSpace),
}

impl CellSections {
    fn dim(&self) -> usize {
        match self {
            CellSections::Stalk { dim, .. } => *dim,
            CellSections::General(s) => s.dim(),
        }
    }

    /// Component at `q` of the k-th basis section.
    fn component(&self, sheaf: &GradedSheaf, k: usize, q: usize, t: i32) -> SparseVec {
        match self {
            CellSections::Stalk { point, .. } => sheaf.restriction(*point, q, t).col(k).clone(),
            CellSections::General(s) => s.layout.component(&s.basis()[k], q),
        }
    }

    /// Matrix of the restriction from `self` to the smaller open described by `target`.
    fn restrict_to(&self, target: &CellSections, sheaf: &GradedSheaf, t: i32) -> LinMap {
        let cols = (0..self.dim())
            .map(|k| match target {
                CellSections::Stalk { point, .. } => self.component(sheaf, k, *point, t),
                CellSections::General(s) => {
                    let mut v = SparseVec::new();
                    for &q in s.layout.points() {
                        let (o, _) = s.layout.block(q).expect("layout point");
                        v = v.add_scaled(&crate::linalg::q(1), &self.component(sheaf, k, q, t).shifted(o));
                    }
                    s.space.coords(&v).expect("restriction of a section is a section")
                }
            })
            .collect();
        LinMap::new(target.dim(), cols)
    }
}

/// Čech cohomology dimensions per (Čech level, internal degree) and the explicit H⁰.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCohomology {
    pub dims: Vec<BTreeMap<i32, usize>>,
    pub h0: Sections,
    pub cells: Vec<usize>,
}

impl CechCohomology {
    pub fn groups(&self) -> Vec<GradedSpace> {
        self.dims.iter().map(|m| GradedSpace::from_dims(m.iter().map(|(d, n)| (*d, *n)))).collect()
    }

    /// True when every level p ≥ 1 vanishes.
    pub fn higher_vanish(&self) -> bool {
        self.dims.iter().skip(1).all(|m| m.values().all(|&n| n == 0))
    }

    pub fn dim(&self, p: usize, t: i32) -> usize {
        self.dims.get(p).and_then(|m| m.get(&t)).copied().unwrap_or(0)
    }
}

struct DegreeResult {
    dims: Vec<usize>,
    h0: SectionSpace,
}

fn cech_degree(space: &FiniteSpace, u: &[usize], nerve: &Nerve, sheaf: &GradedSheaf, t: i32) -> DegreeResult {
    let mut general: HashMap<Vec<usize>, SectionSpace> = HashMap::new();
    let secs: Vec<Vec<CellSections>> = nerve
        .levels
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|c| match c.minimal {
                    Some(point) => CellSections::Stalk { point, dim: sheaf.stalk(point).dim(t) },
                    None => {
                        let pts: Vec<usize> = c.meet.ones().collect();
                        let s = general
                            .entry(pts.clone())
                            .or_insert_with(|| sections_in_degree(space, &pts, sheaf, t))
                            .clone();
                        CellSections::General(s)
                    }
                })
                .collect()
        })
        .collect();
    let offsets: Vec<Vec<usize>> = secs
        .iter()
        .map(|level| {
            let mut acc = 0;
            level
                .iter()
                .map(|s| {
                    let o = acc;
                    acc += s.dim();
                    o
                })
                .collect()
        })
        .collect();
    let level_dim = |p: usize| -> usize { secs[p].iter().map(CellSections::dim).sum() };
    let nlev = nerve.levels.len();
    let mut ranks = vec![0usize; nlev];
    let mut d0_cols = Vec::new();
    for p in 0..nlev.saturating_sub(1) {
        let mut cols = Vec::with_capacity(level_dim(p));
        for (ci, cell) in nerve.levels[p].iter().enumerate() {
            let src = &secs[p][ci];
            if src.dim() == 0 {
                continue;
            }
            let mut images = vec![SparseVec::new(); src.dim()];
            for &v in u.iter().filter(|v| !cell.verts.contains(v)) {
                let pos = cell.verts.partition_point(|&x| x < v);
                let mut verts = cell.verts.clone();
                verts.insert(pos, v);
                let Some(&ti) = nerve.lookup[p + 1].get(&verts) else { continue };
                let tgt = &secs[p + 1][ti];
                if tgt.dim() == 0 {
                    continue;
                }
                let sign = if pos % 2 == 0 { crate::linalg::q(1) } else { crate::linalg::q(-1) };
                let m = src.restrict_to(tgt, sheaf, t);
                let o = offsets[p + 1][ti];
                for (k, img) in images.iter_mut().enumerate() {
                    *img = img.add_scaled(&sign, &m.col(k).shifted(o));
                }
            }
            cols.extend(images);
        }
        let mut e = Echelon::partial();
        for c in &cols {
            e.insert(c);
        }
        ranks[p] = e.rank();
        if p == 0 {
            d0_cols = cols;
        }
    }
    let dims = (0..nlev)
        .map(|p| level_dim(p) - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 })
        .collect();
    let layout = Layout::new(u, sheaf, t);
    let h0 = if nlev <= 1 {
        Subspace::span(&(0..layout.total()).map(SparseVec::unit).collect::<Vec<_>>())
    } else {
        let nrows = level_dim(1);
        Subspace::from_rref(kernel_of_columns(&d0_cols, nrows))
    };
    DegreeResult { dims, h0: SectionSpace { layout, space: h0 } }
}

/// Čech cohomology of `sheaf` over the open `u` for the ordered cover by minimal opens.
pub fn cech_cohomology(space: &FiniteSpace, u: &[usize], sheaf: &GradedSheaf, cutoff: i32) -> Result<CechCohomology> {
    let set = space.check_open(u)?;
    let points: Vec<usize> = set.ones().collect();
    let degrees: Vec<i32> = check_cutoff(sheaf, &points, cutoff)?.into_iter().collect();
    let nerve = Nerve::new(space, &points);
    let results = exec::map(&degrees, |&t| cech_degree(space, &points, &nerve, sheaf, t));
    let nlev = nerve.levels.len();
    let mut dims = vec![BTreeMap::new(); nlev];
    let mut h0 = Sections::default();
    for (&t, r) in degrees.iter().zip(results) {
        for (p, &n) in r.dims.iter().enumerate() {
            if n > 0 {
                dims[p].insert(t, n);
            }
        }
        h0.by_degree.insert(t, r.h0);
    }
    Ok(CechCohomology { dims, h0, cells: nerve.cell_counts() })
}
