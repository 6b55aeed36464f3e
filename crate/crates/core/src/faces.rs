//! Face posets of symmetric varieties (and orbit posets of toric varieties), the K-datum
//! carried by each J-stratum, and the distinguished opens.

use crate::error::{Error, Result};
use crate::graded::{Character, Poly, TwoGroupModule};
use crate::isotropy::{IsotropyFamily, ToricData};
use crate::poset::FiniteSpace;
use crate::sets::DivSet;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// The K-part at a J-stratum: the group τ_J (rank, images in D) and its module H_J.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPart {
    /// Image in D of each generator of τ_J, as bits over the D basis.
    pub to_d: Vec<u64>,
    pub module: TwoGroupModule,
}

impl KPart {
    pub fn rank(&self) -> usize {
        self.module.rank
    }

    /// Character of τ_J induced by a character of D.
    pub fn induced(&self, rho: Character) -> Character {
        rho.pullback(&self.to_d)
    }
}

/// Restriction H_J → H_{J′} for J ⊆ J′: a group map τ_{J′} → τ_J and generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRestriction {
    /// Image in τ_J of each generator of τ_{J′}.
    pub group_map: Vec<u64>,
    /// Image of each generator of H_J as a polynomial in the generators of H_{J′}.
    pub images: Vec<Poly>,
}

impl KRestriction {
    /// Apply to a monomial of H_J.
    pub fn apply(&self, exps: &[u16], target_ngens: usize) -> Poly {
        let mut r = Poly::one(target_ngens);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                r = r.mul(&self.images[i].pow(u32::from(e), target_ngens));
            }
        }
        r
    }

    /// `later ∘ self` for J ⊆ J′ ⊆ J″.
    fn then(&self, later: &KRestriction, target_ngens: usize) -> KRestriction {
        let group_map = later
            .group_map
            .iter()
            .map(|&w| (0..64).filter(|i| w >> i & 1 == 1).fold(0u64, |acc, i| acc ^ self.group_map[i]))
            .collect();
        let images = self
            .images
            .iter()
            .map(|p| {
                let mut out = Poly::zero();
                for (e, c) in p.terms() {
                    out = out.add(&later.apply(e, target_ngens).scale(c));
                }
                out
            })
            .collect();
        KRestriction { group_map, images }
    }
}

/// K-parts for every J ⊆ {1..l} with restrictions for every J ⊆ J′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDatum {
    parts: BTreeMap<DivSet, KPart>,
    maps: BTreeMap<(DivSet, DivSet), KRestriction>,
    trivial: bool,
}

impl KDatum {
    /// τ_J = D for every J, H_J = Q.
    pub fn trivial(m: usize, l: usize) -> Self {
        let to_d: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
        let parts: BTreeMap<DivSet, KPart> = DivSet::full(l)
            .subsets()
            .map(|j| (j, KPart { to_d: to_d.clone(), module: TwoGroupModule::trivial(m) }))
            .collect();
        let mut maps = BTreeMap::new();
        for j in parts.keys() {
            for jp in parts.keys() {
                if j.is_subset(*jp) && j != jp {
                    maps.insert((*j, *jp), KRestriction { group_map: to_d.clone(), images: Vec::new() });
                }
            }
        }
        KDatum { parts, maps, trivial: true }
    }

    /// Validate the parts and covering restrictions, then derive all composites.
    pub fn new(
        m: usize,
        l: usize,
        parts: BTreeMap<DivSet, KPart>,
        covering: BTreeMap<(DivSet, DivSet), KRestriction>,
    ) -> Result<Self> {
        let all = DivSet::full(l);
        for j in all.subsets() {
            if !parts.contains_key(&j) {
                return Err(Error::datum("K-datum defines every J ⊆ {1..l}", format!("J = {}", show_j(j))));
            }
        }
        for (j, p) in &parts {
            if !j.is_subset(all) {
                return Err(Error::datum("K-datum J ⊆ {1..l}", format!("J = {}", show_j(*j))));
            }
            if p.to_d.len() != p.rank() || p.to_d.iter().any(|&w| !Character(w).fits(m)) {
                return Err(Error::datum("K-datum to_D maps τ_J into D", format!("J = {}", show_j(*j))));
            }
        }
        for (&(j, jp), r) in &covering {
            if !(j.is_subset(jp) && jp.len() == j.len() + 1) {
                return Err(Error::datum(
                    "K-datum restrictions are given for covering pairs J ⊂ J′",
                    format!("{} → {}", show_j(j), show_j(jp)),
                ));
            }
            let (src, tgt) = (&parts[&j], &parts[&jp]);
            let tag = format!("{} → {}", show_j(j), show_j(jp));
            if r.group_map.len() != tgt.rank() || r.group_map.iter().any(|&w| !Character(w).fits(src.rank())) {
                return Err(Error::datum("K-datum group map τ_{J′} → τ_J has the right shape", tag));
            }
            for (k, &w) in r.group_map.iter().enumerate() {
                let via: u64 = (0..src.rank()).filter(|i| w >> i & 1 == 1).fold(0, |acc, i| acc ^ src.to_d[i]);
                if via != tgt.to_d[k] {
                    return Err(Error::datum("K-datum maps to D commute with restriction", tag));
                }
            }
            if r.images.len() != src.module.ngens() {
                return Err(Error::datum("K-datum restriction images one per generator", tag));
            }
            let tdeg = tgt.module.degrees();
            for (g, img) in src.module.gens.iter().zip(&r.images) {
                if img.terms().keys().any(|e| e.len() != tgt.module.ngens()) {
                    return Err(Error::datum("K-datum restriction images live in H_{J′}", tag));
                }
                if img.degrees(&tdeg).iter().any(|&d| d != g.degree) {
                    return Err(Error::datum("K-datum maps are graded", format!("{tag}: image of `{}`", g.name)));
                }
                let want = g.action.pullback(&r.group_map);
                if img.terms().keys().any(|e| tgt.module.character_of(e) != want) {
                    return Err(Error::datum("K-datum maps are equivariant", format!("{tag}: image of `{}`", g.name)));
                }
            }
        }
        for j in all.subsets() {
            for v in (all - j).iter() {
                if !covering.contains_key(&(j, j.with(v))) {
                    return Err(Error::datum(
                        "K-datum restriction given for each covering pair",
                        format!("{} → {}", show_j(j), show_j(j.with(v))),
                    ));
                }
            }
        }
        // Composites along chains, checked for path independence.
        let mut maps = covering.clone();
        let mut by_size: Vec<DivSet> = all.subsets().collect();
        by_size.sort();
        for &j in &by_size {
            for &jpp in &by_size {
                if !(j.is_subset(jpp) && jpp.len() >= j.len() + 2) {
                    continue;
                }
                let mut found: Option<KRestriction> = None;
                for v in (jpp - j).iter() {
                    let mid = j.with(v);
                    let first = &covering[&(j, mid)];
                    let rest = maps.get(&(mid, jpp)).expect("shorter chains first").clone();
                    let comp = first.then(&rest, parts[&jpp].module.ngens());
                    match &found {
                        None => found = Some(comp),
                        Some(prev) if *prev == comp => {}
                        Some(_) => {
                            return Err(Error::datum(
                                "K-datum restrictions compose consistently",
                                format!("{} → {}", show_j(j), show_j(jpp)),
                            ))
                        }
                    }
                }
                maps.insert((j, jpp), found.expect("nonempty difference"));
            }
        }
        Ok(KDatum { parts, maps, trivial: false })
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn part(&self, j: DivSet) -> &KPart {
        &self.parts[&j]
    }

    /// Restriction for J ⊊ J′.
    pub fn restriction(&self, j: DivSet, jp: DivSet) -> &KRestriction {
        &self.maps[&(j, jp)]
    }

    pub fn parts(&self) -> &BTreeMap<DivSet, KPart> {
        &self.parts
    }
}

/// Render a J-set with 1-based indices.
pub fn show_j(j: DivSet) -> String {
    format!("{{{}}}", j.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
}

/// The combinatorial datum of a symmetric (or, with l = 0, toric) variety.
#[derive(Clone, Debug)]
pub struct SymmetricDatum {
    pub divisors: Vec<String>,
    pub l: usize,
    pub jmap: BTreeMap<DivSet, DivSet>,
    pub isotropy: IsotropyFamily,
    pub kdatum: KDatum,
    pub d_basis: Vec<String>,
    pub toric: Option<ToricData>,
}

impl SymmetricDatum {
    /// Validates S downward closed and Jmap monotone with Jmap(∅) = ∅. S is the key set
    /// of the isotropy family.
    pub fn new(
        divisors: Vec<String>,
        l: usize,
        jmap: BTreeMap<DivSet, DivSet>,
        isotropy: IsotropyFamily,
        kdatum: Option<KDatum>,
        d_basis: Vec<String>,
        toric: Option<ToricData>,
    ) -> Result<Self> {
        let nv = divisors.len();
        if nv > 64 || l > 16 {
            return Err(Error::datum("|V| ≤ 64 and l ≤ 16", format!("|V| = {nv}, l = {l}")));
        }
        let all_v = DivSet::full(nv);
        let s = isotropy.orbit_sets();
        for &d in &s {
            if !d.is_subset(all_v) {
                return Err(Error::datum("S consists of subsets of V", format!("{d:?}")));
            }
            for v in d.iter() {
                if !isotropy.in_s(d.without(v)) {
                    return Err(Error::datum("S downward closed", format!("{d:?} minus {v}")));
                }
            }
        }
        let mut jmap = jmap;
        jmap.entry(DivSet::EMPTY).or_insert(DivSet::EMPTY);
        if jmap[&DivSet::EMPTY] != DivSet::EMPTY {
            return Err(Error::datum("Jmap(∅) = ∅", "Jmap(∅) is nonempty"));
        }
        let all_j = DivSet::full(l);
        for &d in &s {
            let Some(&j) = jmap.get(&d) else {
                return Err(Error::datum("Jmap defined on S", format!("no Jmap for {d:?}")));
            };
            if !j.is_subset(all_j) {
                return Err(Error::datum("Jmap values ⊆ {1..l}", format!("Jmap({d:?}) = {}", show_j(j))));
            }
            for v in d.iter() {
                if !jmap[&d.without(v)].is_subset(j) {
                    return Err(Error::datum("Jmap monotone", format!("at {d:?}")));
                }
            }
        }
        if let Some(k) = jmap.keys().find(|k| !isotropy.in_s(**k)) {
            return Err(Error::datum("Jmap defined on S", format!("{k:?} ∉ S")));
        }
        if d_basis.len() != isotropy.m() {
            return Err(Error::datum("D basis has m elements", format!("{} names for m = {}", d_basis.len(), isotropy.m())));
        }
        let kdatum = kdatum.unwrap_or_else(|| KDatum::trivial(isotropy.m(), l));
        Ok(SymmetricDatum { divisors, l, jmap, isotropy, kdatum, d_basis, toric })
    }

    pub fn nvars(&self) -> usize {
        self.divisors.len()
    }

    pub fn orbit_sets(&self) -> Vec<DivSet> {
        self.isotropy.orbit_sets()
    }

    pub fn is_toric(&self) -> bool {
        self.toric.is_some()
    }

    pub fn show_delta(&self, d: DivSet) -> String {
        format!("{{{}}}", d.iter().map(|i| self.divisors.get(i).cloned().unwrap_or_else(|| format!("#{i}"))).collect::<Vec<_>>().join(","))
    }

    pub fn jmap(&self, d: DivSet) -> Result<DivSet> {
        self.jmap.get(&d).copied().ok_or_else(|| Error::NotInS(self.show_delta(d)))
    }

    /// All downward-closed subfamilies S′ ⊆ S containing ∅, in a canonical order.
    pub fn stable_families(&self) -> Vec<Vec<DivSet>> {
        let s = self.orbit_sets();
        let mut out = Vec::new();
        fn rec(s: &[DivSet], k: usize, cur: &mut Vec<DivSet>, out: &mut Vec<Vec<DivSet>>) {
            if k == s.len() {
                out.push(cur.clone());
                return;
            }
            let d = s[k];
            rec(s, k + 1, cur, out);
            if d.iter().all(|v| cur.contains(&d.without(v))) {
                cur.push(d);
                rec(s, k + 1, cur, out);
                cur.pop();
            }
        }
        let mut cur = vec![DivSet::EMPTY];
        rec(&s[1..], 0, &mut cur, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// A face (Δ, J).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FacePoint {
    pub delta: DivSet,
    pub j: DivSet,
}

#[derive(Clone, Debug)]
pub struct FaceSpace {
    pub points: Vec<FacePoint>,
    pub space: FiniteSpace,
    index: HashMap<FacePoint, usize>,
}

impl FaceSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, f: &FacePoint) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn point(&self, i: usize) -> FacePoint {
        self.points[i]
    }
}

/// Display id of a face.
pub fn face_id(datum: &SymmetricDatum, f: &FacePoint) -> String {
    if datum.l == 0 {
        datum.show_delta(f.delta)
    } else {
        format!("{}|{}", datum.show_delta(f.delta), show_j(f.j))
    }
}

/// All faces (Δ, J) with J ⊇ Jmap(Δ), ordered by (Δ, J); (Δ,J) ≤ (Δ′,J′) iff Δ′ ⊆ Δ and J ⊆ J′.
pub fn build_faces(datum: &SymmetricDatum) -> Result<FaceSpace> {
    let all_j = DivSet::full(datum.l);
    let mut points = Vec::new();
    for d in datum.orbit_sets() {
        let jd = datum.jmap(d)?;
        let mut js: Vec<DivSet> = (all_j - jd).subsets().map(|extra| jd | extra).collect();
        js.sort();
        points.extend(js.into_iter().map(|j| FacePoint { delta: d, j }));
    }
    let ids = points.iter().map(|f| face_id(datum, f)).collect();
    let space = FiniteSpace::from_order(ids, |a, b| {
        let (x, y) = (points[a], points[b]);
        y.delta.is_subset(x.delta) && x.j.is_subset(y.j)
    })?;
    let index = points.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    Ok(FaceSpace { points, space, index })
}

/// Exhaustive face-poset axiom checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FaceAxiomReport {
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl FaceAxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// T0, the minimal-open intersection property, the closure characterization in both directions
/// and U_F ∩ U_F′ = U_{(Δ∩Δ′, J∪J′)}, over all pairs.
pub fn face_axioms(faces: &FaceSpace) -> FaceAxiomReport {
    let sp = &faces.space;
    let n = faces.len();
    let mut rep = FaceAxiomReport::default();
    let inter = sp.validate_intersection_axiom();
    for v in &inter.violations {
        rep.failures.push(format!("U_{} ∩ U_{} is not a minimal open", v.first, v.second));
    }
    for a in 0..n {
        for b in 0..n {
            rep.pairs_checked += 1;
            let (x, y) = (faces.points[a], faces.points[b]);
            if a != b && sp.leq(a, b) && sp.leq(b, a) {
                rep.failures.push(format!("T0 fails for {} and {}", sp.id(a), sp.id(b)));
            }
            let formula = y.delta.is_subset(x.delta) && x.j.is_subset(y.j);
            if sp.leq(a, b) != formula {
                rep.failures.push(format!("closure relation of {} and {} disagrees with the face order", sp.id(a), sp.id(b)));
            }
            let meet = FacePoint { delta: x.delta & y.delta, j: x.j | y.j };
            let lhs: Vec<usize> = (0..n).filter(|&k| sp.leq(a, k) && sp.leq(b, k)).collect();
            let rhs = faces.index_of(&meet).map(|m| sp.minimal_open(m));
            if rhs.as_deref() != Some(lhs.as_slice()) {
                rep.failures.push(format!("U_{} ∩ U_{} ≠ U of their meet", sp.id(a), sp.id(b)));
            }
        }
    }
    rep
}

/// The orbit poset of a toric datum (no J-direction).
pub fn orbit_space(datum: &SymmetricDatum) -> Result<FaceSpace> {
    if datum.l != 0 {
        return Err(Error::datum("orbit space needs toric mode (l = 0)", format!("l = {}", datum.l)));
    }
    build_faces(datum)
}

/// Faces whose Δ lies in the downward-closed family S′.
pub fn g_stable_open(datum: &SymmetricDatum, faces: &FaceSpace, sprime: &[DivSet]) -> Result<Vec<usize>> {
    for &d in sprime {
        if !datum.isotropy.in_s(d) {
            return Err(Error::NotInS(datum.show_delta(d)));
        }
        for e in datum.orbit_sets() {
            if e.is_subset(d) && !sprime.contains(&e) {
                return Err(Error::datum(
                    "S′ downward closed",
                    format!("{} ∈ S′ but {} ∉ S′", datum.show_delta(d), datum.show_delta(e)),
                ));
            }
        }
    }
    Ok((0..faces.len()).filter(|&i| sprime.contains(&faces.points[i].delta)).collect())
}

/// (Δ, Jmap(Δ)).
pub fn closed_face(datum: &SymmetricDatum, d: DivSet) -> Result<FacePoint> {
    Ok(FacePoint { delta: d, j: datum.jmap(d)? })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::isotropy::{F2Space, IsotropyMode};

    /// Canonical X of rank l: V = {1..l}, S = all subsets, Jmap(Δ) = Δ, D_Δ = span of e_v.
    pub(crate) fn canonical(l: usize) -> SymmetricDatum {
        let mut sub = BTreeMap::new();
        let mut jmap = BTreeMap::new();
        for d in DivSet::full(l).subsets() {
            sub.insert(d, F2Space::from_generators(&d.iter().map(|i| 1u64 << i).collect::<Vec<_>>()));
            jmap.insert(d, d);
        }
        let fam = IsotropyFamily::new(l, IsotropyMode::Symmetric, sub).unwrap();
        SymmetricDatum::new(
            (1..=l).map(|i| format!("v{i}")).collect(),
            l,
            jmap,
            fam,
            None,
            (1..=l).map(|i| format!("d{i}")).collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn canonical_l1_faces() {
        let d = canonical(1);
        let f = build_faces(&d).unwrap();
        assert_eq!(f.len(), 3);
        let closed = f.index_of(&FacePoint { delta: DivSet::singleton(0), j: DivSet::singleton(0) }).unwrap();
        let open = f.index_of(&FacePoint { delta: DivSet::EMPTY, j: DivSet::singleton(0) }).unwrap();
        let other = f.index_of(&FacePoint { delta: DivSet::EMPTY, j: DivSet::EMPTY }).unwrap();
        // The interval: two closed endpoints, one open segment.
        assert_eq!(f.space.minimal_open(closed), {
            let mut v = vec![closed, open];
            v.sort();
            v
        });
        assert_eq!(f.space.minimal_open(other), {
            let mut v = vec![other, open];
            v.sort();
            v
        });
        assert_eq!(f.space.minimal_open(open), vec![open]);
        assert!(f.space.validate_intersection_axiom().passed());
        let u = g_stable_open(&d, &f, &[DivSet::EMPTY]).unwrap();
        assert_eq!(u.len(), 2);
        assert!(u.contains(&open) && u.contains(&other));
        assert_eq!(closed_face(&d, DivSet::singleton(0)).unwrap().j, DivSet::singleton(0));
        assert_eq!(closed_face(&d, DivSet::EMPTY).unwrap().j, DivSet::EMPTY);
    }

    #[test]
    fn canonical_l2_has_nine_faces_and_intersection_law() {
        let d = canonical(2);
        let f = build_faces(&d).unwrap();
        assert_eq!(f.len(), 9);
        for a in 0..f.len() {
            for b in 0..f.len() {
                let (x, y) = (f.points[a], f.points[b]);
                let meet = FacePoint { delta: x.delta & y.delta, j: x.j | y.j };
                let k = f.index_of(&meet).expect("meet is a face");
                let mut w = f.space.up_set(a).clone();
                w.intersect_with(f.space.up_set(b));
                assert_eq!(&w, f.space.up_set(k));
                let le = f.space.leq(a, b);
                assert_eq!(le, y.delta.is_subset(x.delta) && x.j.is_subset(y.j));
            }
        }
        assert!(f.space.validate_intersection_axiom().passed());
    }

    #[test]
    fn axioms_hold_on_canonical_examples() {
        for l in 0..=3 {
            let r = face_axioms(&build_faces(&canonical(l)).unwrap());
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn stable_families_and_errors() {
        let d = canonical(2);
        let fams = d.stable_families();
        assert_eq!(fams.len(), 5);
        let f = build_faces(&d).unwrap();
        assert!(g_stable_open(&d, &f, &[DivSet::EMPTY, DivSet::full(2)]).is_err());
        assert_eq!(g_stable_open(&d, &f, &d.orbit_sets()).unwrap().len(), 9);
        assert!(orbit_space(&d).is_err());
        assert!(closed_face(&d, DivSet::singleton(5)).is_err());
    }

    #[test]
    fn jmap_must_be_monotone() {
        let mut sub = BTreeMap::new();
        sub.insert(DivSet::EMPTY, F2Space::zero());
        sub.insert(DivSet::singleton(0), F2Space::full(1));
        let fam = IsotropyFamily::new(1, IsotropyMode::Symmetric, sub).unwrap();
        let jmap = BTreeMap::from([(DivSet::EMPTY, DivSet::singleton(0)), (DivSet::singleton(0), DivSet::singleton(0))]);
        let r = SymmetricDatum::new(vec!["v".into()], 1, jmap, fam, None, vec!["d".into()], None);
        assert!(r.is_err());
    }

    #[test]
    fn kdatum_validation() {
        use crate::graded::KGenerator;
        use crate::linalg::q;
        let y = KGenerator { name: "Y".into(), degree: 4, action: Character(1) };
        let z = KGenerator { name: "Z".into(), degree: 2, action: Character(0b01) };
        let zp = KGenerator { name: "Zp".into(), degree: 2, action: Character(0b10) };
        let p0 = KPart { to_d: vec![1], module: TwoGroupModule::new(1, vec![y]).unwrap() };
        let p1 = KPart { to_d: vec![1, 1], module: TwoGroupModule::new(2, vec![z, zp]).unwrap() };
        let parts = BTreeMap::from([(DivSet::EMPTY, p0), (DivSet::singleton(0), p1)]);
        let good = KRestriction { group_map: vec![1, 1], images: vec![Poly::monomial(vec![1, 1], q(1))] };
        let cov = BTreeMap::from([((DivSet::EMPTY, DivSet::singleton(0)), good)]);
        assert!(KDatum::new(1, 1, parts.clone(), cov).is_ok());
        // Y ↦ Z²: right degree, wrong character.
        let bad = KRestriction { group_map: vec![1, 1], images: vec![Poly::monomial(vec![2, 0], q(1))] };
        let cov = BTreeMap::from([((DivSet::EMPTY, DivSet::singleton(0)), bad)]);
        let e = KDatum::new(1, 1, parts.clone(), cov).unwrap_err();
        assert!(e.to_string().contains("equivariant"));
        // Y ↦ Z: wrong degree.
        let bad = KRestriction { group_map: vec![1, 1], images: vec![Poly::monomial(vec![1, 0], q(1))] };
        let cov = BTreeMap::from([((DivSet::EMPTY, DivSet::singleton(0)), bad)]);
        assert!(KDatum::new(1, 1, parts, cov).unwrap_err().to_string().contains("graded"));
    }

    #[test]
    fn kdatum_composites_are_checked() {
        // l = 2, H_J = Q[Y_J] with Y of degree 2 everywhere, trivial groups.
        use crate::graded::KGenerator;
        use crate::linalg::q;
        let gen = KGenerator { name: "Y".into(), degree: 2, action: Character(0) };
        let part = KPart { to_d: vec![], module: TwoGroupModule::new(0, vec![gen]).unwrap() };
        let parts: BTreeMap<DivSet, KPart> = DivSet::full(2).subsets().map(|j| (j, part.clone())).collect();
        let map = |c: i64| KRestriction { group_map: vec![], images: vec![Poly::monomial(vec![1], q(c))] };
        let mut cov = BTreeMap::new();
        cov.insert((DivSet::EMPTY, DivSet::singleton(0)), map(1));
        cov.insert((DivSet::EMPTY, DivSet::singleton(1)), map(1));
        cov.insert((DivSet::singleton(0), DivSet::full(2)), map(1));
        cov.insert((DivSet::singleton(1), DivSet::full(2)), map(-1));
        let e = KDatum::new(0, 2, parts.clone(), cov.clone()).unwrap_err();
        assert!(e.to_string().contains("compose consistently"));
        cov.insert((DivSet::singleton(1), DivSet::full(2)), map(1));
        let k = KDatum::new(0, 2, parts, cov).unwrap();
        assert_eq!(k.restriction(DivSet::EMPTY, DivSet::full(2)).images[0], Poly::monomial(vec![1], q(1)));
    }
}
