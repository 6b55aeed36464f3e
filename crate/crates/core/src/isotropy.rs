//! The F₂ model of component groups: D ≅ F₂^m with subspaces D_Δ, characters, monodromy,
//! forbidden-divisor sets Δ′_α, and the construction of the family from toric lattice data.

use crate::error::{Error, Result};
use crate::graded::Character;
use crate::linalg::Q;
use crate::sets::DivSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// A subspace of F₂^m kept in reduced echelon form (pivot = lowest set bit).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct F2Space {
    rows: Vec<u64>,
}

impl F2Space {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_generators(gens: &[u64]) -> Self {
        let mut s = F2Space::zero();
        for &g in gens {
            s.insert(g);
        }
        s
    }

    pub fn full(m: usize) -> Self {
        Self::from_generators(&(0..m).map(|i| 1u64 << i).collect::<Vec<_>>())
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v >> r.trailing_zeros() & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let p = r.trailing_zeros();
        for row in self.rows.iter_mut() {
            if *row >> p & 1 == 1 {
                *row ^= r;
            }
        }
        self.rows.push(r);
        self.rows.sort_by_key(|r| r.trailing_zeros());
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn is_subset(&self, other: &F2Space) -> bool {
        self.rows.iter().all(|&r| other.contains(r))
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn sum(&self, other: &F2Space) -> F2Space {
        let mut s = self.clone();
        for &r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn pivots(&self) -> u64 {
        self.rows.iter().fold(0, |acc, r| acc | 1 << r.trailing_zeros())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsotropyMode {
    Symmetric,
    Toric,
}

/// D = F₂^m with the monotone family Δ ↦ D_Δ over the orbit family S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyFamily {
    m: usize,
    mode: IsotropyMode,
    subspaces: BTreeMap<DivSet, F2Space>,
}

/// τ_Δ = D/D_Δ with coset representatives of a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentGroup {
    pub rank: usize,
    pub coset_reps: Vec<u64>,
}

impl IsotropyFamily {
    /// Validates D_∅ = 0, monotonicity and the dimension rule of the mode.
    /// The keys of `subspaces` form S.
    pub fn new(m: usize, mode: IsotropyMode, subspaces: BTreeMap<DivSet, F2Space>) -> Result<Self> {
        if m > 64 {
            return Err(Error::datum("rank of D at most 64", format!("m = {m}")));
        }
        match subspaces.get(&DivSet::EMPTY) {
            Some(z) if z.dim() == 0 => {}
            Some(_) => return Err(Error::datum("D_∅ = 0", "D_∅ is nonzero")),
            None => return Err(Error::datum("∅ ∈ S", "S does not contain ∅")),
        }
        for (d, sp) in &subspaces {
            if sp.rows().iter().any(|&r| !Character(r).fits(m)) {
                return Err(Error::datum("D_Δ ⊆ F₂^m", format!("D_{d:?} has a vector outside F₂^{m}")));
            }
            let rule_ok = match mode {
                IsotropyMode::Symmetric => sp.dim() == d.len(),
                IsotropyMode::Toric => sp.dim() <= d.len().min(m),
            };
            if !rule_ok {
                let rule = match mode {
                    IsotropyMode::Symmetric => "symmetric mode: dim D_Δ = |Δ|",
                    IsotropyMode::Toric => "toric mode: dim D_Δ ≤ min(|Δ|, m)",
                };
                return Err(Error::datum(rule, format!("Δ = {d:?} has dim D_Δ = {}", sp.dim())));
            }
            for v in d.iter() {
                let smaller = d.without(v);
                if let Some(sub) = subspaces.get(&smaller) {
                    if !sub.is_subset(sp) {
                        return Err(Error::datum(
                            "monotone: Δ ⊆ Δ′ ⟹ D_Δ ⊆ D_Δ′",
                            format!("D_{smaller:?} ⊄ D_{d:?}"),
                        ));
                    }
                }
            }
        }
        Ok(IsotropyFamily { m, mode, subspaces })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> IsotropyMode {
        self.mode
    }

    /// S in canonical order.
    pub fn orbit_sets(&self) -> Vec<DivSet> {
        self.subspaces.keys().copied().collect()
    }

    pub fn in_s(&self, d: DivSet) -> bool {
        self.subspaces.contains_key(&d)
    }

    pub fn subspace(&self, d: DivSet) -> Result<&F2Space> {
        self.subspaces.get(&d).ok_or_else(|| Error::NotInS(format!("{d:?}")))
    }

    pub fn component_group(&self, d: DivSet) -> Result<ComponentGroup> {
        let sp = self.subspace(d)?;
        let piv = sp.pivots();
        let coset_reps: Vec<u64> = (0..self.m).filter(|i| piv >> i & 1 == 0).map(|i| 1u64 << i).collect();
        Ok(ComponentGroup { rank: coset_reps.len(), coset_reps })
    }

    /// Whether ρ vanishes on D_Δ.
    pub fn vanishes_on(&self, rho: Character, d: DivSet) -> Result<bool> {
        Ok(self.subspace(d)?.rows().iter().all(|&r| !rho.is_negative_on(r)))
    }

    /// All characters of D vanishing on D_Δ, in increasing bit order.
    pub fn characters_vanishing_on(&self, d: DivSet) -> Result<Vec<Character>> {
        let sp = self.subspace(d)?;
        Ok((0..1u64 << self.m).map(Character).filter(|c| sp.rows().iter().all(|&r| !c.is_negative_on(r))).collect())
    }
}

/// A label α = (Δ_α, ρ_α).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub delta: DivSet,
    pub rho: Character,
}

/// −1 iff ρ_α is nonzero on D_{Δ_α ∪ {v}}.
pub fn monodromy(fam: &IsotropyFamily, alpha: &Label, v: usize) -> Result<i8> {
    if alpha.delta.contains(v) {
        return Err(Error::datum("monodromy: v ∉ Δ_α", format!("v = {v} lies in Δ_α")));
    }
    let up = alpha.delta.with(v);
    if !fam.in_s(up) {
        return Err(Error::NotInS(format!("{up:?}")));
    }
    Ok(if fam.vanishes_on(alpha.rho, up)? { 1 } else { -1 })
}

/// Δ′_α: the divisors next to Δ_α with monodromy −1.
pub fn delta_prime(fam: &IsotropyFamily, alpha: &Label, nvars: usize) -> DivSet {
    DivSet::from_indices((0..nvars).filter(|&v| {
        !alpha.delta.contains(v) && fam.in_s(alpha.delta.with(v)) && monodromy(fam, alpha, v) == Ok(-1)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelCatalog {
    labels: Vec<Label>,
    delta_prime: Vec<DivSet>,
}

impl LabelCatalog {
    /// Every (Δ, ρ) with ρ vanishing on D_Δ, ordered by Δ (canonical) then ρ.
    pub fn all(fam: &IsotropyFamily, nvars: usize) -> Result<Self> {
        let mut labels = Vec::new();
        for d in fam.orbit_sets() {
            for rho in fam.characters_vanishing_on(d)? {
                labels.push(Label { delta: d, rho });
            }
        }
        Self::explicit(fam, labels, nvars)
    }

    /// Validates each label and the extension-consistency invariant.
    pub fn explicit(fam: &IsotropyFamily, labels: Vec<Label>, nvars: usize) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut delta_prime_sets = Vec::with_capacity(labels.len());
        for a in &labels {
            if !seen.insert(*a) {
                return Err(Error::datum("labels distinct", format!("{a:?} repeated")));
            }
            if !a.rho.fits(fam.m()) {
                return Err(Error::CharacterOutOfRange(a.rho.0, fam.m()));
            }
            if !fam.vanishes_on(a.rho, a.delta)? {
                return Err(Error::datum("ρ_α vanishes on D_{Δ_α}", format!("{a:?}")));
            }
            let dp = delta_prime(fam, a, nvars);
            let allowed = DivSet::full(nvars) - dp;
            for d in fam.orbit_sets() {
                if a.delta.is_subset(d) && d.is_subset(allowed) && !fam.vanishes_on(a.rho, d)? {
                    return Err(Error::datum(
                        "extension consistency: ρ_α vanishes on D_Δ for Δ_α ⊆ Δ ⊆ V∖Δ′_α",
                        format!("label {a:?} fails at Δ = {d:?}"),
                    ));
                }
            }
            delta_prime_sets.push(dp);
        }
        Ok(LabelCatalog { labels, delta_prime: delta_prime_sets })
    }

    pub fn empty() -> Self {
        LabelCatalog { labels: Vec::new(), delta_prime: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Result<&Label> {
        self.labels.get(i).ok_or(Error::UnknownLabel(i))
    }

    pub fn delta_prime(&self, i: usize) -> DivSet {
        self.delta_prime[i]
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }
}

/// A fan as input: ray directions in N-coordinates and maximal cones as ray-index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// Output of [`toric_isotropy`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricData {
    pub family: IsotropyFamily,
    pub fan: Fan,
    /// Primitive ray generators in coordinates of a basis of N′.
    pub primitive: Vec<Vec<i64>>,
    /// Representatives in N′-coordinates of the chosen basis of D = N′/N.
    pub d_basis: Vec<Vec<i64>>,
}

type IMat = Vec<Vec<BigInt>>;

/// Basis (as rows) of the lattice spanned by `rows` in Z^n, via integer row reduction.
fn lattice_basis(mut rows: IMat, n: usize) -> IMat {
    let mut basis = Vec::new();
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&r| rows[r][col].abs()).expect("nonempty");
            for &r in &nz {
                if r != piv {
                    let f = rows[r][col].div_floor(&rows[piv][col]);
                    let prow = rows[piv].clone();
                    for (x, p) in rows[r].iter_mut().zip(&prow) {
                        *x -= &f * p;
                    }
                }
            }
        }
        if let Some(r) = (0..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            basis.push(rows.remove(r));
        }
    }
    basis
}

/// Dense solve of x·B = y over Q for square invertible B (rows of B are basis vectors).
fn solve_row_combination(b: &IMat, y: &[BigInt]) -> Option<Vec<Q>> {
    let n = b.len();
    // Augmented system Bᵀ xᵀ = yᵀ.
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = (0..n).map(|j| Q::from_integer(b[j][i].clone())).collect();
            row.push(Q::from_integer(y[i].clone()));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pr = a[c].clone();
                for (x, pv) in a[r].iter_mut().zip(&pr) {
                    *x -= &f * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::from_integer(BigInt::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                let pr = a[c].clone();
                for (x, pv) in a[r].iter_mut().zip(&pr) {
                    *x -= &f * pv;
                }
            }
        }
    }
    d
}

fn to_q_rows(rows: &[&Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect()).collect()
}

/// Primitive integer vector on the ray through a nonzero rational vector.
fn primitive(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64().expect("small lattice coordinates")).collect()
}

/// Build the isotropy family of a toric variety with D = N′/N.
///
/// `overlattice_generators` are integer vectors g_k; N′ = Z^n + Σ Z·g_k/denominator.
pub fn toric_isotropy(
    lattice_rank: usize,
    overlattice_generators: &[Vec<i64>],
    denominator: i64,
    fan: Fan,
) -> Result<ToricData> {
    let n = lattice_rank;
    if n == 0 || n > 16 {
        return Err(Error::datum("lattice rank between 1 and 16", format!("rank {n}")));
    }
    if denominator < 1 {
        return Err(Error::datum("overlattice denominator positive", format!("{denominator}")));
    }
    if fan.dim != n {
        return Err(Error::datum("fan lives in N_R", format!("fan dimension {} vs rank {n}", fan.dim)));
    }
    let den = BigInt::from(denominator);
    let mut gens: IMat = (0..n).map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect()).collect();
    for g in overlattice_generators {
        if g.len() != n {
            return Err(Error::datum("overlattice generators have lattice rank entries", format!("{g:?}")));
        }
        gens.push(g.iter().map(|&x| BigInt::from(x)).collect());
    }
    // L = den·N′ inside Z^n.
    let b = lattice_basis(gens, n);
    assert_eq!(b.len(), n, "L contains den·Z^n so it has full rank");
    let two = BigInt::from(2);
    for row in &b {
        if row.iter().any(|x| !(x * &two).is_multiple_of(&den)) {
            return Err(Error::datum("N′/N is 2-torsion", format!("2·{row:?}/{denominator} ∉ N")));
        }
    }
    // N-basis vectors in N′-coordinates, reduced mod 2.
    let mut rel = F2Space::zero();
    for i in 0..n {
        let y: Vec<BigInt> = (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect();
        let c = solve_row_combination(&b, &y).expect("B invertible");
        let bits = c.iter().enumerate().fold(0u64, |acc, (k, x)| {
            let xi = x.to_integer();
            if xi.is_odd() {
                acc | 1 << k
            } else {
                acc
            }
        });
        rel.insert(bits);
    }
    let piv = rel.pivots();
    let free: Vec<usize> = (0..n).filter(|k| piv >> k & 1 == 0).collect();
    let m = free.len();
    let to_d = |v: &[i64]| -> u64 {
        let bits = v.iter().enumerate().fold(0u64, |acc, (k, &x)| if x.rem_euclid(2) == 1 { acc | 1 << k } else { acc });
        let r = rel.reduce(bits);
        free.iter().enumerate().fold(0u64, |acc, (t, &k)| if r >> k & 1 == 1 { acc | 1 << t } else { acc })
    };
    let d_basis = free.iter().map(|&k| (0..n).map(|j| i64::from(j == k)).collect()).collect();

    // Rays.
    let mut prim = Vec::with_capacity(fan.rays.len());
    for r in &fan.rays {
        if r.len() != n || r.iter().all(|&x| x == 0) {
            return Err(Error::datum("rays are nonzero vectors of N", format!("{r:?}")));
        }
        let y: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x) * &den).collect();
        prim.push(primitive(&solve_row_combination(&b, &y).expect("B invertible")));
    }
    // Cones: full-dimensional and unimodular in N′.
    let nr = fan.rays.len();
    let mut cones: Vec<DivSet> = Vec::new();
    for c in &fan.max_cones {
        let set = DivSet::from_indices(c.iter().copied());
        if c.iter().any(|&i| i >= nr) || set.len() != c.len() {
            return Err(Error::datum("cones list distinct valid ray indices", format!("{c:?}")));
        }
        if c.len() != n {
            return Err(Error::datum("fan complete: maximal cones are full-dimensional", format!("{c:?}")));
        }
        let d = det(&to_q_rows(&c.iter().map(|&i| &prim[i]).collect::<Vec<_>>()));
        if d.abs() != Q::from_integer(BigInt::from(1)) {
            return Err(Error::datum("fan smooth: cone generators form a basis of N′", format!("{c:?} has |det| = {d}")));
        }
        if cones.contains(&set) {
            return Err(Error::datum("maximal cones distinct", format!("{c:?}")));
        }
        cones.push(set);
    }
    if cones.is_empty() {
        return Err(Error::datum("fan complete", "no maximal cones"));
    }
    check_complete(&fan, &cones)?;
    if (0..nr).any(|i| !cones.iter().any(|c| c.contains(i))) {
        return Err(Error::datum("every ray lies in a cone", "unused ray"));
    }
    let mut subspaces = BTreeMap::new();
    for c in &cones {
        for s in c.subsets() {
            subspaces.entry(s).or_insert_with(|| F2Space::from_generators(&s.iter().map(|i| to_d(&prim[i])).collect::<Vec<_>>()));
        }
    }
    let family = IsotropyFamily::new(m, IsotropyMode::Toric, subspaces)?;
    Ok(ToricData { family, fan, primitive: prim, d_basis })
}

/// Walls shared by exactly two cones on opposite sides, and a generic point covered once.
fn check_complete(fan: &Fan, cones: &[DivSet]) -> Result<()> {
    let n = fan.dim;
    let rows = |s: DivSet, extra: &[Vec<i64>]| -> Vec<Vec<Q>> {
        let mut v: Vec<&Vec<i64>> = s.iter().map(|i| &fan.rays[i]).collect();
        v.extend(extra.iter());
        to_q_rows(&v)
    };
    for c in cones {
        for omit in c.iter() {
            let wall = c.without(omit);
            let sharing: Vec<&DivSet> = cones.iter().filter(|d| wall.is_subset(**d)).collect();
            if sharing.len() != 2 {
                return Err(Error::datum(
                    "fan complete: each wall lies in exactly two maximal cones",
                    format!("wall {wall:?} lies in {} cones", sharing.len()),
                ));
            }
            let other = sharing.iter().find(|d| **d != c).expect("two cones");
            let o2 = (**other - wall).iter().next().expect("one extra ray");
            let s1 = det(&rows(wall, &[fan.rays[omit].clone()]));
            let s2 = det(&rows(wall, &[fan.rays[o2].clone()]));
            if (s1.is_positive()) == (s2.is_positive()) {
                return Err(Error::datum(
                    "fan complete: cones sharing a wall lie on opposite sides",
                    format!("wall {wall:?}"),
                ));
            }
        }
    }
    // Generic point: avoid every wall hyperplane.
    let mut chosen = None;
    for k in 2..200i64 {
        let p: Vec<i64> = (0..n).map(|i| k.pow(i as u32) + i as i64).collect();
        let on_wall = cones.iter().any(|c| c.iter().any(|o| det(&rows(c.without(o), std::slice::from_ref(&p))).is_zero()));
        if !on_wall {
            chosen = Some(p);
            break;
        }
    }
    let p = chosen.ok_or_else(|| Error::Internal("no generic point found".into()))?;
    let pb: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
    let covering = cones
        .iter()
        .filter(|c| {
            let b: IMat = c.iter().map(|i| fan.rays[i].iter().map(|&x| BigInt::from(x)).collect()).collect();
            solve_row_combination(&b, &pb).is_some_and(|l| l.iter().all(Signed::is_positive))
        })
        .count();
    if covering != 1 {
        return Err(Error::datum("fan complete: a generic point lies in exactly one cone", format!("{covering} cones")));
    }
    Ok(())
}
