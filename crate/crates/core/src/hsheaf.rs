//! The cohomology sheaf H = ⊕_{α,β} H^{αβ} on the face space: supports, stalks with Gysin
//! shifts and K-parts, restriction maps and the ∇-twisted face-local product.

use crate::error::{Error, Result};
use crate::exec;
use crate::faces::{build_faces, FacePoint, FaceSpace, SymmetricDatum};
use crate::graded::{add_exps, gysin_shift, monomial_label, monomials_of_degree, nabla, support, Character, Exps};
use crate::isotropy::LabelCatalog;
use crate::linalg::{LinMap, SparseVec, Q};
use crate::poset::{GradedSheaf, GradedSpace};
use crate::sets::DivSet;
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Support data of one block (α, β).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSupport {
    pub fab: Vec<usize>,
    pub fab_prime: Vec<usize>,
    pub transport: BTreeMap<usize, usize>,
    pub d: usize,
    pub dab_prime: DivSet,
    /// Δ′_α ∪ Δ′_β, removed from a face to reach its home face.
    forbidden: DivSet,
}

impl BlockSupport {
    pub fn is_empty(&self) -> bool {
        self.fab.is_empty() && self.fab_prime.is_empty()
    }

    pub fn contains(&self, face: usize) -> bool {
        self.fab.binary_search(&face).is_ok() || self.fab_prime.binary_search(&face).is_ok()
    }
}

/// Compute F_{αβ}, F′_{αβ}, the transport map, d_{αβ} and Δ′_{αβ}.
pub fn support_sets(faces: &FaceSpace, catalog: &LabelCatalog, a: usize, b: usize) -> Result<BlockSupport> {
    let (la, lb) = (catalog.label(a)?, catalog.label(b)?);
    let (pa, pb) = (catalog.delta_prime(a), catalog.delta_prime(b));
    let lower = la.delta | lb.delta;
    let forbidden = pa | pb;
    let dab_prime = pa ^ pb;
    let both = pa & pb;
    let mut fab = Vec::new();
    let mut fab_prime = Vec::new();
    let mut transport = BTreeMap::new();
    for (i, f) in faces.points.iter().enumerate() {
        if !lower.is_subset(f.delta) {
            continue;
        }
        if !f.delta.intersects(forbidden) {
            fab.push(i);
        } else if !f.delta.intersects(dab_prime) && f.delta.intersects(both) {
            fab_prime.push(i);
            let target = FacePoint { delta: f.delta - both, j: f.j };
            let j = faces.index_of(&target).ok_or_else(|| {
                Error::datum("support: transport face exists", format!("no face for image of face #{i}"))
            })?;
            transport.insert(i, j);
        }
    }
    Ok(BlockSupport { fab, fab_prime, transport, d: gysin_shift(la.delta, lb.delta), dab_prime, forbidden })
}

/// Check facts (a)–(c) for one block.
pub fn validate_facts(faces: &FaceSpace, s: &BlockSupport, catalog: &LabelCatalog, a: usize, b: usize) -> Result<()> {
    let tag = || format!("block ({a},{b})");
    if s.fab.is_empty() && !s.fab_prime.is_empty() {
        return Err(Error::datum("support: F_{αβ} = ∅ ⟹ F′_{αβ} = ∅", tag()));
    }
    let sp = &faces.space;
    let n = faces.len();
    let closure: Vec<bool> = (0..n).map(|x| s.fab.iter().any(|&y| sp.leq(x, y))).collect();
    for &x in s.fab.iter().chain(&s.fab_prime) {
        if !closure[x] {
            return Err(Error::datum("support: F′_{αβ} lies in the closure of F_{αβ}", tag()));
        }
        for y in sp.up_set(x).ones() {
            if closure[y] && !s.contains(y) {
                return Err(Error::datum("support: F_{αβ} ⊔ F′_{αβ} open in the closure of F_{αβ}", tag()));
            }
        }
    }
    let w = catalog.delta_prime(a) & catalog.delta_prime(b);
    for (&i, &j) in &s.transport {
        if s.fab.binary_search(&j).is_err() {
            return Err(Error::datum("support: transport lands in F_{αβ}", tag()));
        }
        let cut: Vec<usize> = sp.up_set(i).ones().filter(|&y| !faces.points[y].delta.intersects(w)).collect();
        if cut != sp.minimal_open(j) {
            return Err(Error::datum("support: U_i minus the divisors of Δ′_α ∩ Δ′_β equals U_j", tag()));
        }
    }
    Ok(())
}

/// Monomial basis of one stalk in one degree: (X exponents over V, K exponents over H_J).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StalkBasis {
    pub elems: Vec<(Exps, Exps)>,
    index: HashMap<(Exps, Exps), usize>,
}

impl StalkBasis {
    fn new(mut elems: Vec<(Exps, Exps)>) -> Self {
        elems.sort();
        let index = elems.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        StalkBasis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, x: &[u16], k: &[u16]) -> Option<usize> {
        self.index.get(&(x.to_vec(), k.to_vec())).copied()
    }
}

type GradedBasis = BTreeMap<i32, Arc<StalkBasis>>;

/// One block H^{αβ}.
#[derive(Clone, Debug)]
pub struct Block {
    pub alpha: usize,
    pub beta: usize,
    pub support: BlockSupport,
    /// Home face of each face in the support.
    pub home: Vec<Option<usize>>,
    bases: Vec<GradedBasis>,
    pub sheaf: GradedSheaf,
}

impl Block {
    pub fn is_zero(&self) -> bool {
        self.sheaf.stalks().iter().all(GradedSpace::is_zero)
    }

    pub fn basis(&self, face: usize, t: i32) -> Option<&StalkBasis> {
        self.bases[face].get(&t).map(Arc::as_ref)
    }

    pub fn stalk(&self, face: usize) -> &GradedSpace {
        self.sheaf.stalk(face)
    }
}

/// The assembled sheaf of algebras.
#[derive(Clone, Debug)]
pub struct HSheaf {
    pub datum: SymmetricDatum,
    pub faces: FaceSpace,
    pub catalog: LabelCatalog,
    pub cutoff: i32,
    blocks: Vec<Block>,
}

fn stalk_basis(datum: &SymmetricDatum, home: FacePoint, d: usize, chi: Character, t: i32) -> Vec<(Exps, Exps)> {
    let nv = datum.nvars();
    let part = datum.kdatum.part(home.j);
    let kdeg = part.module.degrees();
    let mut out = Vec::new();
    let rest = t - 2 * d as i32;
    if rest < 0 {
        return out;
    }
    for xdeg in (0..=rest).step_by(2) {
        let kd = rest - xdeg;
        let ks: Vec<Exps> = monomials_of_degree(part.module.ngens(), DivSet::full(part.module.ngens()), &kdeg, kd)
            .into_iter()
            .filter(|e| part.module.character_of(e) == chi)
            .collect();
        if ks.is_empty() {
            continue;
        }
        for x in monomials_of_degree(nv, home.delta, &vec![2; nv], xdeg) {
            for k in &ks {
                out.push((x.clone(), k.clone()));
            }
        }
    }
    out
}

fn basis_label(datum: &SymmetricDatum, home: FacePoint, x: &[u16], k: &[u16]) -> String {
    let xl = monomial_label(x, &datum.divisors);
    let module = &datum.kdatum.part(home.j).module;
    if module.ngens() == 0 {
        xl
    } else {
        format!("{xl}|{}", monomial_label(k, &module.names()))
    }
}

fn build_block(datum: &SymmetricDatum, faces: &FaceSpace, catalog: &LabelCatalog, a: usize, b: usize, cutoff: i32) -> Result<Block> {
    let support = support_sets(faces, catalog, a, b)?;
    validate_facts(faces, &support, catalog, a, b)?;
    let n = faces.len();
    let rho = catalog.label(a)?.rho.product(catalog.label(b)?.rho);
    let mut home = vec![None; n];
    for i in support.fab.iter().chain(&support.fab_prime) {
        let f = faces.points[*i];
        let h = FacePoint { delta: f.delta - support.forbidden, j: f.j };
        home[*i] = Some(faces.index_of(&h).ok_or_else(|| Error::Internal("home face missing".into()))?);
    }
    let mut cache: HashMap<usize, GradedBasis> = HashMap::new();
    let mut bases = vec![GradedBasis::new(); n];
    let mut stalks = vec![GradedSpace::zero(); n];
    for i in 0..n {
        let Some(h) = home[i] else { continue };
        let hp = faces.points[h];
        let gb = cache
            .entry(h)
            .or_insert_with(|| {
                let chi = datum.kdatum.part(hp.j).induced(rho);
                (0..=cutoff)
                    .step_by(2)
                    .filter_map(|t| {
                        let e = stalk_basis(datum, hp, support.d, chi, t);
                        (!e.is_empty()).then(|| (t, Arc::new(StalkBasis::new(e))))
                    })
                    .collect()
            })
            .clone();
        for (&t, sb) in &gb {
            stalks[i].set_labels(t, sb.elems.iter().map(|(x, k)| basis_label(datum, hp, x, k)).collect());
        }
        bases[i] = gb;
    }
    let mut maps = HashMap::new();
    for i in 0..n {
        let Some(h) = home[i] else { continue };
        for j in faces.space.up_set(i).ones().filter(|&j| j != i) {
            let Some(h2) = home[j] else { continue };
            let (src, tgt) = (faces.points[h], faces.points[h2]);
            let mut by_deg = BTreeMap::new();
            for (&t, sb) in &bases[i] {
                let Some(tb) = bases[j].get(&t) else { continue };
                let cols = sb
                    .elems
                    .iter()
                    .map(|(x, k)| restrict_element(datum, src, tgt, x, k, tb))
                    .collect::<Result<Vec<_>>>()?;
                by_deg.insert(t, LinMap::new(tb.len(), cols));
            }
            if !by_deg.is_empty() {
                maps.insert((i, j), by_deg);
            }
        }
    }
    let sheaf = GradedSheaf::new(&faces.space, stalks, maps)?;
    Ok(Block { alpha: a, beta: b, support, home, bases, sheaf })
}

/// Image of the basis element X^x ⊗ k at home face `src` in the stalk basis at `tgt`.
fn restrict_element(datum: &SymmetricDatum, src: FacePoint, tgt: FacePoint, x: &[u16], k: &[u16], tb: &StalkBasis) -> Result<SparseVec> {
    if !support(x).is_subset(tgt.delta) {
        return Ok(SparseVec::new());
    }
    let terms: Vec<(Exps, Q)> = if src.j == tgt.j {
        vec![(k.to_vec(), Q::one())]
    } else {
        let r = datum.kdatum.restriction(src.j, tgt.j);
        let ng = datum.kdatum.part(tgt.j).module.ngens();
        r.apply(k, ng).terms().iter().map(|(e, c)| (e.clone(), c.clone())).collect()
    };
    let mut entries = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        let pos = tb.position(x, &e).ok_or_else(|| {
            Error::datum("K-datum maps preserve isotypic components", format!("image {e:?} missing in target stalk"))
        })?;
        entries.push((pos, c));
    }
    Ok(SparseVec::from_entries(entries))
}

/// Build every block up to `cutoff` and validate the sheaf axioms.
pub fn build_h(datum: &SymmetricDatum, catalog: &LabelCatalog, cutoff: i32) -> Result<HSheaf> {
    if cutoff < 0 {
        return Err(Error::CutoffTooSmall { cutoff, min_degree: 0 });
    }
    let faces = build_faces(datum)?;
    let n = catalog.len();
    let blocks = exec::map_range(n * n, |k| build_block(datum, &faces, catalog, k / n, k % n, cutoff))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(HSheaf { datum: datum.clone(), faces, catalog: catalog.clone(), cutoff, blocks })
}

/// Result of a face-local product of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalProduct {
    Zero,
    /// Index in the target stalk basis at the given degree (coefficient 1).
    Basis { degree: i32, index: usize },
}

impl HSheaf {
    pub fn nlabels(&self) -> usize {
        self.catalog.len()
    }

    pub fn block(&self, a: usize, b: usize) -> &Block {
        &self.blocks[a * self.nlabels() + b]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn stalk(&self, a: usize, b: usize, face: usize) -> &GradedSpace {
        self.block(a, b).stalk(face)
    }

    /// Restriction of block (α,β) from `face` to a face above it, in degree t.
    pub fn restriction(&self, a: usize, b: usize, face: usize, to: usize, t: i32) -> Result<LinMap> {
        if !self.faces.space.leq(face, to) {
            return Err(Error::InvalidSheaf(format!("faces #{face} and #{to} are not comparable")));
        }
        Ok(self.block(a, b).sheaf.restriction(face, to, t).into_owned())
    }

    /// y·x at `face` for basis elements y ∈ H^{βγ} (degree ty) and x ∈ H^{αβ} (degree tx).
    #[allow(clippy::too_many_arguments)]
    pub fn product(&self, a: usize, b: usize, c: usize, face: usize, ty: i32, iy: usize, tx: i32, ix: usize) -> Result<LocalProduct> {
        let (byc, bab, bac) = (self.block(b, c), self.block(a, b), self.block(a, c));
        let (Some(ey), Some(ex)) = (byc.basis(face, ty), bab.basis(face, tx)) else {
            return Err(Error::Internal(format!("no basis element at face #{face}")));
        };
        let (yx, yk) = &ey.elems[iy];
        let (xx, xk) = &ex.elems[ix];
        let t = tx + ty;
        let Some(h) = bac.home[face] else { return Ok(LocalProduct::Zero) };
        if byc.home[face] != Some(h) || bab.home[face] != Some(h) {
            return Err(Error::Internal(format!("home faces disagree at face #{face}")));
        }
        let (la, lb, lc) = (self.catalog.label(a)?, self.catalog.label(b)?, self.catalog.label(c)?);
        let nab = nabla(la.delta, lb.delta, lc.delta);
        let hd = self.faces.points[h].delta;
        if !nab.is_subset(hd) {
            return Ok(LocalProduct::Zero);
        }
        if t > self.cutoff {
            return Err(Error::CutoffExceeded { degree: t, cutoff: self.cutoff });
        }
        let mut z = add_exps(yx, xx);
        for v in nab.iter() {
            z[v] += 1;
        }
        let zk = add_exps(yk, xk);
        let tb = bac.basis(face, t).ok_or_else(|| Error::Internal(format!("degree {t} missing in target stalk")))?;
        let index = tb.position(&z, &zk).ok_or_else(|| Error::Internal("product not in target stalk".into()))?;
        Ok(LocalProduct::Basis { degree: t, index })
    }

    /// Index of the unit 1_α in block (α,α) at `face`, if the stalk is nonzero there.
    pub fn local_unit(&self, a: usize, face: usize) -> Option<usize> {
        let b = self.block(a, a).basis(face, 0)?;
        let zero_x = vec![0u16; self.datum.nvars()];
        let h = self.block(a, a).home[face]?;
        let zero_k = vec![0u16; self.datum.kdatum.part(self.faces.points[h].j).module.ngens()];
        b.position(&zero_x, &zero_k)
    }
}

/// Counters from exhaustive face-local law checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct LocalLawReport {
    pub associativity_triples: u64,
    pub unit_checks: u64,
    pub restriction_checks: u64,
    pub failures: Vec<String>,
}

impl LocalLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn local_elements(h: &HSheaf, a: usize, b: usize, face: usize) -> Vec<(i32, usize)> {
    let blk = h.block(a, b);
    blk.bases[face].iter().flat_map(|(&t, sb)| (0..sb.len()).map(move |k| (t, k))).collect()
}

/// Face-local associativity on all composable basis triples, unit laws, and compatibility
/// of products with restriction along covering pairs.
pub fn check_local_laws(h: &HSheaf) -> LocalLawReport {
    let n = h.nlabels();
    let nf = h.faces.len();
    let tasks: Vec<(usize, usize)> = (0..nf).flat_map(|f| (0..n).map(move |a| (f, a))).collect();
    let parts = exec::map(&tasks, |&(face, a)| {
        let mut rep = LocalLawReport::default();
        let cutoff = h.cutoff;
        let mul = |a: usize, b: usize, c: usize, y: (i32, usize), x: (i32, usize)| -> Option<(i32, usize)> {
            if x.0 + y.0 > cutoff {
                return None;
            }
            match h.product(a, b, c, face, y.0, y.1, x.0, x.1) {
                Ok(LocalProduct::Basis { degree, index }) => Some((degree, index)),
                _ => None,
            }
        };
        for b in 0..n {
            let xs = local_elements(h, a, b, face);
            if xs.is_empty() {
                continue;
            }
            if let Some(u) = h.local_unit(b, face) {
                for &x in &xs {
                    rep.unit_checks += 1;
                    if mul(a, b, b, (0, u), x) != Some(x) {
                        rep.failures.push(format!("left unit fails at face #{face} block ({a},{b})"));
                    }
                }
            }
            if let Some(u) = h.local_unit(a, face) {
                for &x in &xs {
                    rep.unit_checks += 1;
                    if mul(a, a, b, x, (0, u)) != Some(x) {
                        rep.failures.push(format!("right unit fails at face #{face} block ({a},{b})"));
                    }
                }
            }
            for c in 0..n {
                let ys = local_elements(h, b, c, face);
                if ys.is_empty() {
                    continue;
                }
                for d in 0..n {
                    let zs = local_elements(h, c, d, face);
                    if zs.is_empty() {
                        continue;
                    }
                    for &x in &xs {
                        for &y in &ys {
                            if x.0 + y.0 > cutoff {
                                continue;
                            }
                            let yx = mul(a, b, c, y, x);
                            for &z in &zs {
                                if x.0 + y.0 + z.0 > cutoff {
                                    continue;
                                }
                                rep.associativity_triples += 1;
                                let left = yx.and_then(|p| mul(a, c, d, z, p));
                                let right = mul(b, c, d, z, y).and_then(|p| mul(a, b, d, p, x));
                                if left != right {
                                    rep.failures.push(format!(
                                        "associativity fails at face #{face} labels ({a},{b},{c},{d})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        // Restriction commutes with products along covering pairs.
        for &to in h.faces.space.upper_covers(face) {
            for b in 0..n {
                for c in 0..n {
                    let xs = local_elements(h, a, b, face);
                    let ys = local_elements(h, b, c, face);
                    for &x in &xs {
                        for &y in &ys {
                            if x.0 + y.0 > cutoff {
                                continue;
                            }
                            rep.restriction_checks += 1;
                            let lhs = match mul(a, b, c, y, x) {
                                Some((t, k)) => h.block(a, c).sheaf.restriction(face, to, t).col(k).clone(),
                                None => SparseVec::new(),
                            };
                            let rx = h.block(a, b).sheaf.restriction(face, to, x.0).col(x.1).clone();
                            let ry = h.block(b, c).sheaf.restriction(face, to, y.0).col(y.1).clone();
                            let mut rhs = SparseVec::new();
                            for (i, ci) in ry.entries() {
                                for (j, cj) in rx.entries() {
                                    let pr = match h.product(a, b, c, to, y.0, *i, x.0, *j) {
                                        Ok(LocalProduct::Basis { index, .. }) => SparseVec::unit(index),
                                        _ => SparseVec::new(),
                                    };
                                    rhs = rhs.add_scaled(&(ci * cj), &pr);
                                }
                            }
                            if lhs != rhs {
                                rep.failures.push(format!(
                                    "restriction does not commute with product: face #{face} → #{to}, labels ({a},{b},{c})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        rep
    });
    let mut total = LocalLawReport::default();
    for p in parts {
        total.associativity_triples += p.associativity_triples;
        total.unit_checks += p.unit_checks;
        total.restriction_checks += p.restriction_checks;
        total.failures.extend(p.failures);
    }
    total.failures.sort();
    total.failures.dedup();
    total
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::faces::tests::canonical;
    use crate::graded::hilbert_series;
    use crate::isotropy::{toric_isotropy, Fan, Label};

    fn toric(gens: &[Vec<i64>], fan: Fan, names: &[&str]) -> SymmetricDatum {
        let t = toric_isotropy(fan.dim, gens, 2, fan).unwrap();
        let fam = t.family.clone();
        let m = fam.m();
        let jmap = fam.orbit_sets().into_iter().map(|d| (d, DivSet::EMPTY)).collect();
        SymmetricDatum::new(
            names.iter().map(|s| s.to_string()).collect(),
            0,
            jmap,
            fam,
            None,
            (0..m).map(|i| format!("d{i}")).collect(),
            Some(t),
        )
        .unwrap()
    }

    pub(crate) fn p1(half: bool) -> SymmetricDatum {
        let fan = Fan { dim: 1, rays: vec![vec![1], vec![-1]], max_cones: vec![vec![0], vec![1]] };
        let gens = if half { vec![vec![1]] } else { vec![] };
        toric(&gens, fan, &["v+", "v-"])
    }

    fn face_of(h: &HSheaf, delta: DivSet) -> usize {
        h.faces.index_of(&FacePoint { delta, j: DivSet::EMPTY }).unwrap()
    }

    #[test]
    fn p1_trivial_stalks() {
        let d = p1(false);
        let cat = LabelCatalog::all(&d.isotropy, 2).unwrap();
        assert_eq!(cat.len(), 3);
        let h = build_h(&d, &cat, 8).unwrap();
        assert_eq!(h.blocks().len(), 9);
        let plus = cat.index_of(&Label { delta: DivSet::singleton(0), rho: Character(0) }).unwrap();
        let zero = 0;
        let fp = face_of(&h, DivSet::singleton(0));
        let open = face_of(&h, DivSet::EMPTY);
        assert_eq!(hilbert_series(h.stalk(plus, plus, fp), 8), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(hilbert_series(h.stalk(plus, zero, fp), 8), vec![0, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert!(h.stalk(plus, zero, open).is_zero());
        let s00 = support_sets(&h.faces, &cat, zero, zero).unwrap();
        assert_eq!(s00.fab.len(), 3);
        assert_eq!(s00.d, 0);
        // Restriction Q[X+] → Q at the open orbit kills X+.
        let r = h.restriction(zero, zero, fp, open, 2).unwrap();
        assert_eq!((r.source_dim(), r.target_dim()), (1, 0));
        let r0 = h.restriction(zero, zero, fp, open, 0).unwrap();
        assert_eq!(r0, LinMap::identity(1));
    }

    #[test]
    fn euler_class_product() {
        let d = p1(false);
        let cat = LabelCatalog::all(&d.isotropy, 2).unwrap();
        let h = build_h(&d, &cat, 8).unwrap();
        let plus = 1;
        let fp = face_of(&h, DivSet::singleton(0));
        // x ∈ (α0, α+) degree 0 unit, y ∈ (α+, α0) degree 2 generator; y·x ∈ (α0,α0) = X+.
        let x = h.block(0, plus).basis(fp, 0).unwrap().position(&[0, 0], &[]).unwrap();
        let y = h.block(plus, 0).basis(fp, 2).unwrap().position(&[0, 0], &[]).unwrap();
        let p = h.product(0, plus, 0, fp, 2, y, 0, x).unwrap();
        let target = h.block(0, 0).basis(fp, 2).unwrap().position(&[1, 0], &[]).unwrap();
        assert_eq!(p, LocalProduct::Basis { degree: 2, index: target });
    }

    #[test]
    fn p1_halfint_supports() {
        let d = p1(true);
        let cat = LabelCatalog::all(&d.isotropy, 2).unwrap();
        let sign = cat.index_of(&Label { delta: DivSet::EMPTY, rho: Character(1) }).unwrap();
        let triv = cat.index_of(&Label { delta: DivSet::EMPTY, rho: Character(0) }).unwrap();
        let sky = cat.index_of(&Label { delta: DivSet::singleton(0), rho: Character(0) }).unwrap();
        let faces = build_faces(&d).unwrap();
        let s = support_sets(&faces, &cat, sign, triv).unwrap();
        assert_eq!(s.fab, vec![faces.index_of(&FacePoint { delta: DivSet::EMPTY, j: DivSet::EMPTY }).unwrap()]);
        assert!(s.fab_prime.is_empty());
        assert_eq!(s.dab_prime, DivSet::from_indices([0, 1]));
        let s = support_sets(&faces, &cat, sign, sky).unwrap();
        assert!(s.is_empty());
        let h = build_h(&d, &cat, 6).unwrap();
        assert!(h.block(sign, triv).is_zero());
        assert!(h.block(sign, sky).is_zero());
        assert!(!h.block(sign, sign).is_zero());
    }

    #[test]
    fn local_laws_hold_on_small_examples() {
        for d in [p1(false), p1(true), canonical(1), canonical(2)] {
            let cat = LabelCatalog::all(&d.isotropy, d.nvars()).unwrap();
            let h = build_h(&d, &cat, 6).unwrap();
            let r = check_local_laws(&h);
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.associativity_triples > 0);
        }
    }

    #[test]
    fn canonical_l1_transport_faces() {
        let d = canonical(1);
        let cat = LabelCatalog::all(&d.isotropy, 1).unwrap();
        let h = build_h(&d, &cat, 4).unwrap();
        // (∅, sign) has Δ′ = {v1}; the closed face moves to (∅,{1}) in block (sign, sign).
        let sign = cat.index_of(&Label { delta: DivSet::EMPTY, rho: Character(1) }).unwrap();
        let s = &h.block(sign, sign).support;
        assert_eq!(s.fab_prime.len(), 1);
        let closed = h.faces.index_of(&FacePoint { delta: DivSet::singleton(0), j: DivSet::singleton(0) }).unwrap();
        let open = h.faces.index_of(&FacePoint { delta: DivSet::EMPTY, j: DivSet::singleton(0) }).unwrap();
        assert_eq!(s.transport[&closed], open);
        assert_eq!(h.stalk(sign, sign, closed), h.stalk(sign, sign, open));
        assert_eq!(h.restriction(sign, sign, closed, open, 0).unwrap(), LinMap::identity(1));
    }

    #[test]
    fn empty_catalog_gives_zero_sheaf() {
        let d = p1(false);
        let h = build_h(&d, &LabelCatalog::empty(), 4).unwrap();
        assert!(h.blocks().is_empty());
    }
}
