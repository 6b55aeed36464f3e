//! The Ext algebra as graded global sections of H with the face-wise product, its module
//! summands, and the vanishing and concentration checks.

use crate::error::{Error, Result};
use crate::exec;
use crate::faces::{closed_face, face_id, g_stable_open};
use crate::hsheaf::{HSheaf, LocalProduct};
use crate::linalg::{q, q_to_string, Echelon, SparseVec, Q};
use crate::poset::{cech_cohomology, global_sections, sections_in_degree, Sections};
use crate::sets::DivSet;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// A basis element of 𝓔: position `pos` in the canonical basis of block (α,β) in `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisRef {
    pub alpha: usize,
    pub beta: usize,
    pub degree: i32,
    pub pos: usize,
}

/// Face-local expansion of a section: (face, stalk basis index, coefficient), sorted by face.
type LocalTerms = Vec<(usize, usize, Q)>;

/// Graded algebra 𝓔 = Γ(𝓕; H) up to a cutoff.
#[derive(Clone, Debug)]
pub struct ExtAlgebra {
    pub cutoff: i32,
    pub nlabels: usize,
    /// Sections per block, indexed `α·n + β`.
    pub sections: Vec<Sections>,
    pub basis: Vec<BasisRef>,
    offsets: HashMap<(usize, i32), usize>,
    local: Vec<LocalTerms>,
    /// Nonzero products y·x, keyed by (y, x) global indices.
    pub table: BTreeMap<(usize, usize), SparseVec>,
    /// Composable pairs whose product degree exceeds the cutoff.
    pub truncated_pairs: u64,
    /// 1_α in global coordinates, one per label.
    pub units: Vec<SparseVec>,
}

fn local_terms(sections: &Sections, t: i32, k: usize) -> LocalTerms {
    let s = &sections.by_degree[&t];
    s.basis()[k]
        .entries()
        .iter()
        .map(|(c, x)| {
            let (f, i) = s.layout.locate(*c);
            (f, i, x.clone())
        })
        .collect()
}

/// Face-wise product of y ∈ (β,γ) and x ∈ (α,β) expanded locally, as a vector in the
/// coordinates of the degree-t layout of block (α,γ).
fn multiply_local(
    h: &HSheaf,
    (a, b, c): (usize, usize, usize),
    y: (&LocalTerms, i32),
    x: (&LocalTerms, i32),
    target: &crate::poset::SectionSpace,
) -> Result<SparseVec> {
    let mut entries = Vec::new();
    let (ys, xs) = (y.0, x.0);
    let mut j0 = 0;
    for (fy, iy, cy) in ys {
        while j0 < xs.len() && xs[j0].0 < *fy {
            j0 += 1;
        }
        let mut j = j0;
        while j < xs.len() && xs[j].0 == *fy {
            let (_, ix, cx) = &xs[j];
            if let LocalProduct::Basis { index, .. } = h.product(a, b, c, *fy, y.1, *iy, x.1, *ix)? {
                let (off, _) = target.layout.block(*fy).ok_or_else(|| Error::Internal("face missing".into()))?;
                entries.push((off + index, cy * cx));
            }
            j += 1;
        }
    }
    Ok(SparseVec::from_entries(entries))
}

struct TableInput<'a> {
    h: &'a HSheaf,
    sections: &'a [Sections],
    offsets: &'a HashMap<(usize, i32), usize>,
    local: &'a [LocalTerms],
    basis: &'a [BasisRef],
    by_block: &'a [Vec<usize>],
}

type TableEntries = Vec<((usize, usize), SparseVec)>;

fn block_table(inp: &TableInput<'_>, a: usize, b: usize, c: usize) -> Result<(TableEntries, u64)> {
    let n = inp.h.nlabels();
    let (bc, ab, ac) = (b * n + c, a * n + b, a * n + c);
    let mut out = Vec::new();
    let mut truncated = 0;
    for &yi in &inp.by_block[bc] {
        for &xi in &inp.by_block[ab] {
            let (ty, tx) = (inp.basis[yi].degree, inp.basis[xi].degree);
            let t = tx + ty;
            if t > inp.h.cutoff {
                truncated += 1;
                continue;
            }
            let Some(target) = inp.sections[ac].by_degree.get(&t) else {
                // No target degree: the product must vanish locally.
                if local_product_nonzero(inp.h, (a, b, c), (&inp.local[yi], ty), (&inp.local[xi], tx))? {
                    return Err(Error::Internal(format!("product of #{yi} and #{xi} has no target degree")));
                }
                continue;
            };
            let v = multiply_local(inp.h, (a, b, c), (&inp.local[yi], ty), (&inp.local[xi], tx), target)?;
            if v.is_zero() {
                continue;
            }
            let coords = target
                .space
                .coords(&v)
                .ok_or_else(|| Error::Internal(format!("product of #{yi} and #{xi} is not a section")))?;
            let off = inp.offsets[&(ac, t)];
            out.push(((yi, xi), coords.shifted(off)));
        }
    }
    Ok((out, truncated))
}

fn local_product_nonzero(h: &HSheaf, abc: (usize, usize, usize), y: (&LocalTerms, i32), x: (&LocalTerms, i32)) -> Result<bool> {
    for (fy, iy, _) in y.0 {
        for (fx, ix, _) in x.0 {
            if fy == fx && h.product(abc.0, abc.1, abc.2, *fy, y.1, *iy, x.1, *ix)? != LocalProduct::Zero {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

impl ExtAlgebra {
    /// Global index of a basis element.
    pub fn index(&self, alpha: usize, beta: usize, degree: i32, pos: usize) -> Option<usize> {
        let off = self.offsets.get(&(alpha * self.nlabels + beta, degree))?;
        let dim = self.block_sections(alpha, beta).dim(degree);
        (pos < dim).then_some(off + pos)
    }

    pub fn block_sections(&self, alpha: usize, beta: usize) -> &Sections {
        &self.sections[alpha * self.nlabels + beta]
    }

    /// Hilbert series of block (α,β) in degrees 0..=cutoff.
    pub fn hilbert(&self, alpha: usize, beta: usize) -> Vec<usize> {
        let s = self.block_sections(alpha, beta);
        (0..=self.cutoff).map(|t| s.dim(t)).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// y·x as a vector over the global basis; zero when not composable.
    pub fn mul_basis(&self, y: usize, x: usize) -> SparseVec {
        self.table.get(&(y, x)).cloned().unwrap_or_default()
    }

    /// Bilinear extension of the table.
    pub fn mul(&self, y: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, ci) in y.entries() {
            for (j, cj) in x.entries() {
                if let Some(p) = self.table.get(&(*i, *j)) {
                    acc = acc.add_scaled(&(ci * cj), p);
                }
            }
        }
        acc
    }

    /// Σ_α 1_α.
    pub fn unit(&self) -> SparseVec {
        self.units.iter().fold(SparseVec::new(), |acc, u| acc.add_scaled(&q(1), u))
    }

    /// Face-local terms of a basis element: (face id, stalk label, coefficient).
    pub fn describe(&self, h: &HSheaf, idx: usize) -> Vec<(String, String, String)> {
        let r = self.basis[idx];
        self.local[idx]
            .iter()
            .map(|(f, i, c)| {
                let label = h.stalk(r.alpha, r.beta, *f).labels(r.degree)[*i].clone();
                (face_id(&h.datum, &h.faces.points[*f]), label, q_to_string(c))
            })
            .collect()
    }
}

/// Compute 𝓔 with its full multiplication table up to `cutoff` (at most the sheaf's cutoff).
pub fn ext_algebra(h: &HSheaf, cutoff: i32) -> Result<ExtAlgebra> {
    let n = h.nlabels();
    if cutoff > h.cutoff {
        return Err(Error::CutoffExceeded { degree: cutoff, cutoff: h.cutoff });
    }
    let all = h.faces.space.all_points();
    let sections = exec::map_range(n * n, |k| {
        let blk = &h.blocks()[k];
        if blk.is_zero() {
            Ok(Sections::default())
        } else {
            global_sections(&h.faces.space, &all, &blk.sheaf, cutoff)
        }
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    assemble(h, cutoff, sections)
}

fn assemble(h: &HSheaf, cutoff: i32, sections: Vec<Sections>) -> Result<ExtAlgebra> {
    let n = h.nlabels();
    let mut basis = Vec::new();
    let mut offsets = HashMap::new();
    let mut local = Vec::new();
    let mut by_block = vec![Vec::new(); n * n];
    for (k, s) in sections.iter().enumerate() {
        for (&t, sp) in &s.by_degree {
            if sp.dim() == 0 {
                continue;
            }
            offsets.insert((k, t), basis.len());
            for pos in 0..sp.dim() {
                by_block[k].push(basis.len());
                basis.push(BasisRef { alpha: k / n, beta: k % n, degree: t, pos });
                local.push(local_terms(s, t, pos));
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
    let inp = TableInput { h, sections: &sections, offsets: &offsets, local: &local, basis: &basis, by_block: &by_block };
    let parts = exec::map(&triples, |&(a, b, c)| block_table(&inp, a, b, c));
    let mut table = BTreeMap::new();
    let mut truncated_pairs = 0;
    for p in parts {
        let (entries, tr) = p?;
        truncated_pairs += tr;
        table.extend(entries);
    }
    let mut units = Vec::with_capacity(n);
    for a in 0..n {
        let k = a * n + a;
        let Some(sp) = sections[k].by_degree.get(&0) else {
            units.push(SparseVec::new());
            continue;
        };
        let mut v = SparseVec::new();
        for f in 0..h.faces.len() {
            if let Some(i) = h.local_unit(a, f) {
                let (off, _) = sp.layout.block(f).expect("face in layout");
                v = v.add_scaled(&q(1), &SparseVec::unit(off + i));
            }
        }
        let coords = sp.space.coords(&v).ok_or_else(|| Error::Internal(format!("1_{a} is not a section")))?;
        units.push(coords.shifted(offsets[&(k, 0)]));
    }
    Ok(ExtAlgebra { cutoff, nlabels: n, sections, basis, offsets, local, table, truncated_pairs, units })
}

/// 𝓔_α = ⊕_{α′} 𝓔^{α′α} with the action m·x = m∘x of x ∈ 𝓔^{α″α′}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtModule {
    pub label: usize,
    pub basis: Vec<usize>,
    /// (m, x, m∘x) for nonzero products, in global coordinates.
    pub action: Vec<(usize, usize, SparseVec)>,
}

impl ExtModule {
    pub fn hilbert(&self, e: &ExtAlgebra) -> Vec<usize> {
        let mut v = vec![0; (e.cutoff.max(0) + 1) as usize];
        for &i in &self.basis {
            v[e.basis[i].degree as usize] += 1;
        }
        v
    }
}

pub fn ext_module(e: &ExtAlgebra, alpha: usize) -> Result<ExtModule> {
    if alpha >= e.nlabels {
        return Err(Error::UnknownLabel(alpha));
    }
    let basis: Vec<usize> = (0..e.dim()).filter(|&i| e.basis[i].beta == alpha).collect();
    let action = e
        .table
        .iter()
        .filter(|((m, _), _)| e.basis[*m].beta == alpha)
        .map(|((m, x), v)| (*m, *x, v.clone()))
        .collect();
    Ok(ExtModule { label: alpha, basis, action })
}

/// Outcome of the algebra-law checks on 𝓔.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraLawReport {
    pub associativity_triples: u64,
    pub unit_checks: u64,
    pub failures: Vec<String>,
}

impl AlgebraLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type SmallTable = HashMap<(usize, usize), Vec<(usize, i64)>>;

/// The table with machine-integer coefficients, when every structure constant is an integer
/// of modest size. Products of such constants are then exact in i128.
fn small_table(e: &ExtAlgebra) -> Option<SmallTable> {
    let bound = num_bigint::BigInt::from(1i64 << 40);
    let mut t = HashMap::with_capacity(e.table.len());
    for (k, v) in &e.table {
        let mut row = Vec::with_capacity(v.nnz());
        for (i, c) in v.entries() {
            if !c.is_integer() || c.numer().magnitude() >= bound.magnitude() {
                return None;
            }
            row.push((*i, i64::try_from(c.numer()).ok()?));
        }
        t.insert(*k, row);
    }
    Some(t)
}

fn small_combination(t: &SmallTable, terms: impl Iterator<Item = (i64, (usize, usize))>) -> Vec<(usize, i128)> {
    let mut acc: Vec<(usize, i128)> = Vec::new();
    for (c, key) in terms {
        if let Some(row) = t.get(&key) {
            acc.extend(row.iter().map(|&(i, x)| (i, c as i128 * x as i128)));
        }
    }
    acc.sort_unstable_by_key(|p| p.0);
    let mut out: Vec<(usize, i128)> = Vec::with_capacity(acc.len());
    for (i, x) in acc {
        match out.last_mut() {
            Some(l) if l.0 == i => l.1 += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|p| p.1 != 0);
    out
}

fn small_associator_vanishes(t: &SmallTable, z: usize, y: usize, x: usize) -> bool {
    let empty = Vec::new();
    let yx = t.get(&(y, x)).unwrap_or(&empty);
    let zy = t.get(&(z, y)).unwrap_or(&empty);
    let left = small_combination(t, yx.iter().map(|&(k, c)| (c, (z, k))));
    let right = small_combination(t, zy.iter().map(|&(k, c)| (c, (k, x))));
    left == right
}

/// Associativity on every composable basis triple within the cutoff, and 1·x = x·1 = x.
pub fn check_algebra_laws(e: &ExtAlgebra) -> AlgebraLawReport {
    laws(e, true)
}

fn laws(e: &ExtAlgebra, fast: bool) -> AlgebraLawReport {
    let n = e.nlabels;
    let mut by_block = vec![Vec::new(); n * n];
    for (i, r) in e.basis.iter().enumerate() {
        by_block[r.alpha * n + r.beta].push(i);
    }
    let quads: Vec<(usize, usize, usize, usize)> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| (a, b, c, d)))))
        .collect();
    let small = if fast { small_table(e) } else { None };
    let parts = exec::map(&quads, |&(a, b, c, d)| {
        let mut rep = AlgebraLawReport::default();
        let (xs, ys, zs) = (&by_block[a * n + b], &by_block[b * n + c], &by_block[c * n + d]);
        for &x in xs {
            for &y in ys {
                let txy = e.basis[x].degree + e.basis[y].degree;
                if txy > e.cutoff {
                    continue;
                }
                for &z in zs {
                    if txy + e.basis[z].degree > e.cutoff {
                        continue;
                    }
                    rep.associativity_triples += 1;
                    let same = match &small {
                        Some(t) => small_associator_vanishes(t, z, y, x),
                        None => {
                            let left = e.mul(&SparseVec::unit(z), &e.mul_basis(y, x));
                            let right = e.mul(&e.mul_basis(z, y), &SparseVec::unit(x));
                            left == right
                        }
                    };
                    if !same {
                        rep.failures.push(format!("associativity fails on basis triple ({z},{y},{x})"));
                    }
                }
            }
        }
        rep
    });
    let mut rep = AlgebraLawReport::default();
    for p in parts {
        rep.associativity_triples += p.associativity_triples;
        rep.failures.extend(p.failures);
    }
    let one = e.unit();
    for i in 0..e.dim() {
        let x = SparseVec::unit(i);
        rep.unit_checks += 1;
        if e.mul(&one, &x) != x || e.mul(&x, &one) != x {
            rep.failures.push(format!("unit law fails on basis element {i}"));
        }
    }
    rep.failures.truncate(50);
    rep
}

/// One H^p ≠ 0 finding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyFinding {
    pub open: Vec<String>,
    pub alpha: usize,
    pub beta: usize,
    pub level: usize,
    pub degree: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub opens_checked: usize,
    pub groups_checked: usize,
    pub mayer_vietoris_steps: usize,
    pub nonvanishing: Vec<CohomologyFinding>,
    pub failures: Vec<String>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.nonvanishing.is_empty() && self.failures.is_empty()
    }
}

/// Čech vanishing over every G-stable open, plus the Mayer–Vietoris step for each maximal orbit.
pub fn vanishing_report(h: &HSheaf, cutoff: i32) -> Result<VanishingReport> {
    let fams = h.datum.stable_families();
    let n = h.nlabels();
    let space = &h.faces.space;
    let tasks: Vec<(usize, usize)> = (0..fams.len()).flat_map(|f| (0..n * n).map(move |k| (f, k))).collect();
    let parts = exec::map(&tasks, |&(fi, k)| -> Result<VanishingReport> {
        let mut rep = VanishingReport::default();
        let fam = &fams[fi];
        let blk = &h.blocks()[k];
        if k == 0 {
            rep.opens_checked = 1;
        }
        if blk.is_zero() {
            return Ok(rep);
        }
        let u = g_stable_open(&h.datum, &h.faces, fam)?;
        let open_names: Vec<String> = fam.iter().map(|d| h.datum.show_delta(*d)).collect();
        let record = |rep: &mut VanishingReport, c: &crate::poset::CechCohomology, tag: &[String]| {
            for (p, m) in c.dims.iter().enumerate().skip(1) {
                rep.groups_checked += m.len().max(1);
                for (&t, &d) in m {
                    rep.nonvanishing.push(CohomologyFinding {
                        open: tag.to_vec(),
                        alpha: k / n,
                        beta: k % n,
                        level: p,
                        degree: t,
                        dim: d,
                    });
                }
            }
        };
        let c = cech_cohomology(space, &u, &blk.sheaf, cutoff.max(blk.sheaf.degrees_on(&u).into_iter().next().unwrap_or(0)))?;
        record(&mut rep, &c, &open_names);
        // Mayer–Vietoris: U = U″ ∪ U_F for each maximal Δ ∈ S′.
        for &d in fam.iter().filter(|d| !d.is_empty()) {
            if fam.iter().any(|e| *e != d && d.is_subset(*e)) {
                continue;
            }
            rep.mayer_vietoris_steps += 1;
            let rest: Vec<DivSet> = fam.iter().copied().filter(|e| *e != d).collect();
            let u2 = g_stable_open(&h.datum, &h.faces, &rest)?;
            let f = h.faces.index_of(&closed_face(&h.datum, d)?).expect("closed face");
            let inter: Vec<usize> = u2.iter().copied().filter(|&p| space.leq(f, p)).collect();
            let mut tag = open_names.clone();
            tag.push(format!("∩U[{}]", space.id(f)));
            let degs = blk.sheaf.degrees_on(&inter);
            if degs.is_empty() {
                continue;
            }
            let c = cech_cohomology(space, &inter, &blk.sheaf, cutoff.max(*degs.iter().next().expect("nonempty")))?;
            record(&mut rep, &c, &tag);
            // H⁰(U″) ⊕ H⁰(U_F) → H⁰(U″ ∩ U_F) must be onto.
            for t in degs.into_iter().filter(|&t| t <= cutoff) {
                let target = sections_in_degree(space, &inter, &blk.sheaf, t);
                let mut e = Echelon::partial();
                for col in 0..blk.sheaf.stalk(f).dim(t) {
                    let mut v = SparseVec::new();
                    for &p in &inter {
                        let (o, _) = target.layout.block(p).expect("layout");
                        v = v.add_scaled(&q(1), &blk.sheaf.restriction(f, p, t).col(col).shifted(o));
                    }
                    e.insert(&v);
                }
                let outer = sections_in_degree(space, &u2, &blk.sheaf, t);
                for s in outer.basis() {
                    let mut v = SparseVec::new();
                    for &p in &inter {
                        let (o, _) = target.layout.block(p).expect("layout");
                        let c = outer.layout.component(s, p);
                        v = v.add_scaled(&q(1), &c.shifted(o));
                    }
                    e.insert(&v);
                }
                if e.rank() != target.dim() {
                    rep.failures.push(format!(
                        "block ({},{}) degree {t}: sections over {} and {:?} do not surject onto their intersection",
                        k / n,
                        k % n,
                        space.id(f),
                        tag
                    ));
                }
            }
        }
        Ok(rep)
    });
    let mut rep = VanishingReport::default();
    for p in parts {
        let p = p?;
        rep.opens_checked += p.opens_checked;
        rep.groups_checked += p.groups_checked;
        rep.mayer_vietoris_steps += p.mayer_vietoris_steps;
        rep.nonvanishing.extend(p.nonvanishing);
        rep.failures.extend(p.failures);
    }
    Ok(rep)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConcentrationReport {
    pub blocks_checked: usize,
    pub degrees_compared: usize,
    pub products_compared: usize,
    pub nonvanishing: Vec<CohomologyFinding>,
    pub failures: Vec<String>,
}

impl ConcentrationReport {
    pub fn passed(&self) -> bool {
        self.nonvanishing.is_empty() && self.failures.is_empty()
    }
}

/// Čech cohomology over the full minimal-open cover: H^{>0} = 0, H⁰ equal to the sections of
/// `e` degreewise, and the multiplication table rebuilt from the Čech H⁰ bases equal to `e`'s.
pub fn concentration_check(h: &HSheaf, e: &ExtAlgebra) -> Result<ConcentrationReport> {
    let n = h.nlabels();
    let all = h.faces.space.all_points();
    let cutoff = e.cutoff;
    let cech = exec::map_range(n * n, |k| {
        let blk = &h.blocks()[k];
        if blk.is_zero() {
            return Ok(None);
        }
        let min = blk.sheaf.degrees_on(&all).into_iter().next().unwrap_or(0);
        cech_cohomology(&h.faces.space, &all, &blk.sheaf, cutoff.max(min)).map(Some)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut rep = ConcentrationReport::default();
    let mut h0s = Vec::with_capacity(n * n);
    for (k, c) in cech.into_iter().enumerate() {
        let Some(c) = c else {
            h0s.push(Sections::default());
            continue;
        };
        rep.blocks_checked += 1;
        for (p, m) in c.dims.iter().enumerate().skip(1) {
            for (&t, &d) in m {
                rep.nonvanishing.push(CohomologyFinding { open: vec!["all".into()], alpha: k / n, beta: k % n, level: p, degree: t, dim: d });
            }
        }
        let mut h0 = c.h0.clone();
        h0.by_degree.retain(|&t, _| t <= cutoff);
        for (&t, s) in &h0.by_degree {
            rep.degrees_compared += 1;
            let ours = e.sections[k].by_degree.get(&t);
            let same = match ours {
                Some(o) => o.layout == s.layout && o.space == s.space,
                None => s.dim() == 0,
            };
            if !same {
                rep.failures.push(format!("block ({},{}) degree {t}: Čech H⁰ differs from sections", k / n, k % n));
            }
        }
        h0s.push(h0);
    }
    // Rebuild the algebra from the Čech bases and compare structure constants.
    let other = assemble(h, cutoff, h0s)?;
    if other.basis != e.basis {
        rep.failures.push("Čech H⁰ bases differ from the section bases".into());
    } else {
        rep.products_compared = other.table.len().max(e.table.len());
        if other.table != e.table {
            let diff = e.table.iter().find(|(k, v)| other.table.get(k) != Some(v)).map(|(k, _)| *k);
            rep.failures.push(format!("structure constants differ, first at {diff:?}"));
        }
        if other.units != e.units {
            rep.failures.push("units differ".into());
        }
    }
    Ok(rep)
}

/// Gysin floor and single-closed-orbit polynomial checks for every block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GysinReport {
    pub blocks_checked: usize,
    pub polynomial_blocks: usize,
    pub failures: Vec<String>,
}

impl GysinReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn poly_ring_dim(vars: usize, t: i32) -> usize {
    if t < 0 || t % 2 != 0 {
        return 0;
    }
    let k = (t / 2) as usize;
    // C(k + vars - 1, vars - 1)
    if vars == 0 {
        return usize::from(k == 0);
    }
    (1..vars).fold(1usize, |acc, i| acc * (k + i) / i)
}

pub fn gysin_check(h: &HSheaf, e: &ExtAlgebra) -> GysinReport {
    let n = h.nlabels();
    let s = h.datum.orbit_sets();
    let mut rep = GysinReport::default();
    let trivial_isotropy = h.datum.is_toric() && h.datum.isotropy.m() == 0;
    for a in 0..n {
        for b in 0..n {
            let blk = h.block(a, b);
            if blk.support.fab.is_empty() {
                continue;
            }
            rep.blocks_checked += 1;
            let floor = 2 * blk.support.d as i32;
            let secs = e.block_sections(a, b);
            if let Some((t, _)) = secs.dims().into_iter().find(|(t, _)| *t < floor) {
                rep.failures.push(format!("block ({a},{b}) nonzero in degree {t} below 2d = {floor}"));
            }
            let (la, lb) = (h.catalog.labels()[a], h.catalog.labels()[b]);
            let top = la.delta | lb.delta;
            let closed = !s.iter().any(|d| *d != top && top.is_subset(*d));
            let single = blk.support.fab.len() == 1 && blk.support.fab_prime.is_empty();
            if trivial_isotropy && closed && single {
                rep.polynomial_blocks += 1;
                for t in 0..=e.cutoff {
                    let want = poly_ring_dim(top.len(), t - floor);
                    if secs.dim(t) != want {
                        rep.failures.push(format!("block ({a},{b}) degree {t}: {} ≠ predicted {want}", secs.dim(t)));
                    }
                }
            }
        }
    }
    rep
}

/// True when every coefficient of every structure constant is an integer.
pub fn integral_table(e: &ExtAlgebra) -> bool {
    e.table.values().all(|v| v.entries().iter().all(|(_, c)| c.is_integer() && !c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::tests::canonical;
    use crate::graded::Character;
    use crate::hsheaf::build_h;
    use crate::hsheaf::tests::p1;
    use crate::isotropy::{Label, LabelCatalog};

    #[test]
    fn p1_trivial_algebra() {
        let d = p1(false);
        let cat = LabelCatalog::all(&d.isotropy, 2).unwrap();
        let h = build_h(&d, &cat, 10).unwrap();
        let e = ext_algebra(&h, 10).unwrap();
        assert_eq!(e.hilbert(0, 0), vec![1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2]);
        let plus = cat.index_of(&Label { delta: DivSet::singleton(0), rho: Character(0) }).unwrap();
        assert_eq!(e.hilbert(plus, 0), vec![0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(e.hilbert(0, plus), vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let laws = check_algebra_laws(&e);
        assert!(laws.passed(), "{:?}", laws.failures);
        // A corrupted structure constant is caught on both paths.
        let mut bad = e.clone();
        let key = *bad.table.keys().find(|(y, x)| bad.basis[*y].degree > 0 && bad.basis[*x].degree > 0).unwrap();
        bad.table.insert(key, bad.table[&key].scaled(&q(2)));
        assert!(!super::laws(&bad, true).passed());
        assert!(!super::laws(&bad, false).passed());
        let c = concentration_check(&h, &e).unwrap();
        assert!(c.passed(), "{:?}", c);
        let v = vanishing_report(&h, 10).unwrap();
        assert!(v.passed(), "{:?}", v);
        assert!(gysin_check(&h, &e).passed());
        let total: usize = (0..cat.len()).map(|a| ext_module(&e, a).unwrap().basis.len()).sum();
        assert_eq!(total, e.dim());
        assert!(ext_module(&e, 7).is_err());
    }

    #[test]
    fn p1_halfint_sign_blocks() {
        let d = p1(true);
        let cat = LabelCatalog::all(&d.isotropy, 2).unwrap();
        let h = build_h(&d, &cat, 10).unwrap();
        let e = ext_algebra(&h, 10).unwrap();
        let sign = cat.index_of(&Label { delta: DivSet::EMPTY, rho: Character(1) }).unwrap();
        let triv = cat.index_of(&Label { delta: DivSet::EMPTY, rho: Character(0) }).unwrap();
        let mut want = vec![0; 11];
        want[0] = 1;
        assert_eq!(e.hilbert(sign, sign), want);
        assert!(e.hilbert(sign, triv).iter().all(|&x| x == 0));
        assert!(e.hilbert(triv, sign).iter().all(|&x| x == 0));
        assert!(check_algebra_laws(&e).passed());
    }

    #[test]
    fn canonical_examples_pass_checks() {
        for l in [1, 2] {
            let d = canonical(l);
            let cat = LabelCatalog::all(&d.isotropy, l).unwrap();
            let h = build_h(&d, &cat, 8).unwrap();
            let e = ext_algebra(&h, 8).unwrap();
            assert!(small_table(&e).is_some());
            assert_eq!(laws(&e, true), laws(&e, false));
            let v = vanishing_report(&h, 8).unwrap();
            assert!(v.passed(), "{v:?}");
            assert!(concentration_check(&h, &e).unwrap().passed());
        }
    }
}
