//! Polynomial algebras on degree-2 generators, the ∇ set formula and twist factors,
//! Hilbert series, and the twisted tensor product for elementary abelian 2-groups.

use crate::error::{Error, Result};
use crate::linalg::{q_to_string, Q};
use crate::poset::GradedSpace;
use crate::sets::DivSet;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Exponent vector of a monomial.
pub type Exps = Vec<u16>;

/// A polynomial as a sparse map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Q::one())
    }

    pub fn monomial(exps: Exps, c: Q) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    /// ∏_{v ∈ set} X_v.
    pub fn squarefree(nvars: usize, set: DivSet) -> Self {
        Self::monomial(indicator(nvars, set), Q::one())
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exps, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, a: &Q) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * a)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term(add_exps(e1, e2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32, nvars: usize) -> Poly {
        (0..k).fold(Poly::one(nvars), |acc, _| acc.mul(self))
    }

    /// Internal degrees of the terms, given per-variable degrees.
    pub fn degrees(&self, var_degrees: &[i32]) -> Vec<i32> {
        self.terms.keys().map(|e| weighted_degree(e, var_degrees)).collect()
    }

    /// Set X_w = 0 for every variable w outside `keep`.
    pub fn restrict(&self, keep: DivSet) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| support(e).is_subset(keep))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let m = monomial_label(e, names);
                if c.is_one() {
                    m
                } else {
                    format!("{}*{}", q_to_string(c), m)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn support(e: &[u16]) -> DivSet {
    DivSet::from_indices(e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i))
}

pub fn indicator(nvars: usize, set: DivSet) -> Exps {
    (0..nvars).map(|i| u16::from(set.contains(i))).collect()
}

pub fn weighted_degree(e: &[u16], var_degrees: &[i32]) -> i32 {
    e.iter().zip(var_degrees).map(|(&x, &d)| i32::from(x) * d).sum()
}

/// `X_a^2*X_b`, or `1` for the empty monomial.
pub fn monomial_label(e: &[u16], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Exponent vectors over `nvars` variables, supported on `vars`, with weighted degree `degree`;
/// sorted lexicographically.
pub fn monomials_of_degree(nvars: usize, vars: DivSet, var_degrees: &[i32], degree: i32) -> Vec<Exps> {
    let idx: Vec<usize> = vars.iter().filter(|&i| i < nvars).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(k: usize, left: i32, idx: &[usize], degs: &[i32], cur: &mut Exps, out: &mut Vec<Exps>) {
        if k == idx.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let v = idx[k];
        let d = degs[v];
        assert!(d > 0, "generator degrees must be positive");
        let mut e = 0u16;
        while i32::from(e) * d <= left {
            cur[v] = e;
            rec(k + 1, left - i32::from(e) * d, idx, degs, cur, out);
            e += 1;
        }
        cur[v] = 0;
    }
    if degree >= 0 {
        rec(0, degree, &idx, var_degrees, &mut cur, &mut out);
    }
    out.sort();
    out
}

/// A polynomial algebra Q[X_v] on named degree-2 generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAlgebra {
    pub names: Vec<String>,
}

impl PolyAlgebra {
    pub fn new(names: Vec<String>) -> Self {
        PolyAlgebra { names }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Basis of the degree-`degree` part of Q[X_v : v ∈ vars].
    pub fn basis(&self, vars: DivSet, degree: i32) -> Vec<Exps> {
        monomials_of_degree(self.nvars(), vars, &vec![2; self.nvars()], degree)
    }

    pub fn graded_space(&self, vars: DivSet, cutoff: i32) -> GradedSpace {
        let mut g = GradedSpace::zero();
        for t in (0..=cutoff).step_by(2) {
            g.set_labels(t, self.basis(vars, t).iter().map(|e| monomial_label(e, &self.names)).collect());
        }
        g
    }
}

/// ∇(Δ, Δ′, Δ″) = (Δ′ ∖ (Δ ∪ Δ″)) ∪ ((Δ ∩ Δ″) ∖ Δ′).
pub fn nabla(d: DivSet, dp: DivSet, dpp: DivSet) -> DivSet {
    (dp - (d | dpp)) | ((d & dpp) - dp)
}

/// Gysin shift d_{αβ} = |Δ_α ∖ Δ_β|.
pub fn gysin_shift(da: DivSet, db: DivSet) -> usize {
    (da - db).len()
}

/// The set ∇ when it lies inside the face's divisor set, else `None` (the twist is 0).
pub fn twist_set(face: DivSet, da: DivSet, db: DivSet, dc: DivSet) -> Option<DivSet> {
    let n = nabla(da, db, dc);
    n.is_subset(face).then_some(n)
}

/// ∏_{v∈∇} X_v if ∇(Δα,Δβ,Δγ) ⊆ Δ_face, else 0.
pub fn twist_factor(face: DivSet, da: DivSet, db: DivSet, dc: DivSet, nvars: usize) -> Poly {
    match twist_set(face, da, db, dc) {
        Some(n) => Poly::squarefree(nvars, n),
        None => Poly::zero(),
    }
}

/// An F₂-linear functional on F₂^k, read multiplicatively as ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Character(pub u64);

impl Character {
    pub const TRIVIAL: Character = Character(0);

    /// Whether the group element `w` acts by −1.
    pub fn is_negative_on(self, w: u64) -> bool {
        (self.0 & w).count_ones() % 2 == 1
    }

    pub fn sign(self, w: u64) -> i64 {
        if self.is_negative_on(w) {
            -1
        } else {
            1
        }
    }

    pub fn fits(self, rank: usize) -> bool {
        rank >= 64 || self.0 >> rank == 0
    }

    pub fn product(self, other: Character) -> Character {
        Character(self.0 ^ other.0)
    }

    /// Pull back along a group map given by generator images (each a vector of the target group).
    pub fn pullback(self, images: &[u64]) -> Character {
        Character(
            images.iter().enumerate().fold(0u64, |acc, (i, &w)| if self.is_negative_on(w) { acc | 1 << i } else { acc }),
        )
    }

    pub fn to_bits(self, rank: usize) -> String {
        (0..rank).map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn from_bits(bits: &str) -> Option<Character> {
        if bits.len() > 64 {
            return None;
        }
        bits.chars().enumerate().try_fold(0u64, |acc, (i, c)| match c {
            '0' => Some(acc),
            '1' => Some(acc | 1 << i),
            _ => None,
        })
        .map(Character)
    }
}

/// A generator of a [`TwoGroupModule`] with its degree and ±1 action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGenerator {
    pub name: String,
    pub degree: i32,
    pub action: Character,
}

/// A polynomial algebra on even-degree generators with a diagonal action of F₂^rank.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoGroupModule {
    pub rank: usize,
    pub gens: Vec<KGenerator>,
}

impl TwoGroupModule {
    /// Q in degree 0 with the trivial action of F₂^rank.
    pub fn trivial(rank: usize) -> Self {
        TwoGroupModule { rank, gens: Vec::new() }
    }

    pub fn new(rank: usize, gens: Vec<KGenerator>) -> Result<Self> {
        for g in &gens {
            if g.degree <= 0 || g.degree % 2 != 0 {
                return Err(Error::datum("generator degree positive and even", format!("`{}` has degree {}", g.name, g.degree)));
            }
            if !g.action.fits(rank) {
                return Err(Error::CharacterOutOfRange(g.action.0, rank));
            }
        }
        Ok(TwoGroupModule { rank, gens })
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    /// Character by which the group acts on a monomial.
    pub fn character_of(&self, e: &[u16]) -> Character {
        Character(
            e.iter().zip(&self.gens).filter(|(&x, _)| x % 2 == 1).fold(0u64, |acc, (_, g)| acc ^ g.action.0),
        )
    }

    /// Monomial basis of the carrier in one degree.
    pub fn basis(&self, degree: i32) -> Vec<Exps> {
        monomials_of_degree(self.ngens(), DivSet::full(self.ngens()), &self.degrees(), degree)
    }

    /// Monomials of `degree` on which the group acts by `chi`.
    pub fn isotypic_basis(&self, chi: Character, degree: i32) -> Vec<Exps> {
        self.basis(degree).into_iter().filter(|e| self.character_of(e) == chi).collect()
    }

    pub fn check_character(&self, c: Character) -> Result<()> {
        if c.fits(self.rank) {
            Ok(())
        } else {
            Err(Error::CharacterOutOfRange(c.0, self.rank))
        }
    }
}

/// Balanced tensor (H)ᵗ[τ] ⊗_B Hom(V_ρ, V_ρ′) degreewise, computed as the isotypic component
/// of H for the character ρ·ρ′.
pub fn twisted_tensor(h: &TwoGroupModule, rho: Character, rhop: Character, cutoff: i32) -> Result<GradedSpace> {
    h.check_character(rho)?;
    h.check_character(rhop)?;
    let chi = rho.product(rhop);
    let names = h.names();
    let mut g = GradedSpace::zero();
    for t in (0..=cutoff).step_by(2) {
        g.set_labels(t, h.isotypic_basis(chi, t).iter().map(|e| monomial_label(e, &names)).collect());
    }
    Ok(g)
}

/// An element of a twisted tensor block Hom(V_source, V_target) ⊗ H, as a polynomial in the
/// generators of H whose terms all lie in the isotypic component of source·target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    pub source: Character,
    pub target: Character,
    pub poly: Poly,
}

impl TwistedElement {
    pub fn new(h: &TwoGroupModule, source: Character, target: Character, poly: Poly) -> Result<Self> {
        h.check_character(source)?;
        h.check_character(target)?;
        let chi = source.product(target);
        if let Some(e) = poly.terms().keys().find(|e| h.character_of(e) != chi) {
            return Err(Error::NotComposable(format!("monomial {e:?} is not in the {chi:?}-isotypic part")));
        }
        Ok(TwistedElement { source, target, poly })
    }

    pub fn unit(h: &TwoGroupModule, rho: Character) -> Self {
        TwistedElement { source: rho, target: rho, poly: Poly::one(h.ngens()) }
    }
}

/// Product y∘x of x: ρ → ρ′ and y: ρ′ → ρ″.
pub fn twisted_product(y: &TwistedElement, x: &TwistedElement) -> Result<TwistedElement> {
    if y.source != x.target {
        return Err(Error::NotComposable(format!("target {:?} of x differs from source {:?} of y", x.target, y.source)));
    }
    Ok(TwistedElement { source: x.source, target: y.target, poly: y.poly.mul(&x.poly) })
}

/// Dimensions in degrees 0..=cutoff.
pub fn hilbert_series(v: &GradedSpace, cutoff: i32) -> Vec<usize> {
    (0..=cutoff.max(-1)).map(|t| v.dim(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    fn s(ix: &[usize]) -> DivSet {
        DivSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn nabla_examples() {
        let (a, b) = (0, 1);
        assert_eq!(nabla(s(&[a]), s(&[b]), s(&[a])), s(&[a, b]));
        assert_eq!(nabla(s(&[0, 2]), s(&[0, 2]), s(&[1])), DivSet::EMPTY);
        assert_eq!(nabla(DivSet::EMPTY, s(&[b]), DivSet::EMPTY), s(&[b]));
    }

    #[test]
    fn twist_factor_examples() {
        let face = s(&[0, 1]);
        // ∇ = {0}: Δα = ∅, Δβ = {0}, Δγ = ∅.
        assert_eq!(twist_factor(face, DivSet::EMPTY, s(&[0]), DivSet::EMPTY, 2), Poly::var(2, 0));
        assert!(twist_factor(s(&[1]), DivSet::EMPTY, s(&[0]), DivSet::EMPTY, 2).is_zero());
        assert_eq!(twist_factor(face, s(&[1]), s(&[1]), s(&[0]), 2), Poly::one(2));
    }

    #[test]
    fn hilbert_of_polynomial_ring() {
        let a = PolyAlgebra::new(vec!["X".into()]);
        assert_eq!(hilbert_series(&a.graded_space(DivSet::full(1), 6), 6), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(hilbert_series(&GradedSpace::zero(), 4), vec![0; 5]);
        let b = PolyAlgebra::new(vec!["X".into(), "Y".into()]);
        assert_eq!(hilbert_series(&b.graded_space(DivSet::full(2), 6), 6), vec![1, 0, 2, 0, 3, 0, 4]);
    }

    fn z2_on_x(action: u64) -> TwoGroupModule {
        TwoGroupModule::new(1, vec![KGenerator { name: "X".into(), degree: 2, action: Character(action) }]).unwrap()
    }

    #[test]
    fn twisted_tensor_examples() {
        let trivial_group = TwoGroupModule::new(0, vec![KGenerator { name: "X".into(), degree: 2, action: Character(0) }]).unwrap();
        let g = twisted_tensor(&trivial_group, Character(0), Character(0), 6).unwrap();
        assert_eq!(hilbert_series(&g, 6), vec![1, 0, 1, 0, 1, 0, 1]);

        let q_only = TwoGroupModule::trivial(1);
        assert_eq!(twisted_tensor(&q_only, Character(1), Character(1), 4).unwrap().dims(), BTreeMap::from([(0, 1)]));
        assert!(twisted_tensor(&q_only, Character(0), Character(1), 4).unwrap().is_zero());

        let m = z2_on_x(1);
        let g = twisted_tensor(&m, Character(0), Character(0), 8).unwrap();
        assert_eq!(hilbert_series(&g, 8), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert!(matches!(twisted_tensor(&m, Character(2), Character(0), 4), Err(Error::CharacterOutOfRange(..))));
    }

    #[test]
    fn twisted_products() {
        let m = z2_on_x(1);
        let triv = Character(0);
        let u = TwistedElement::unit(&m, triv);
        assert_eq!(twisted_product(&u, &u).unwrap(), u);
        let x2 = TwistedElement::new(&m, triv, triv, Poly::monomial(vec![2], q(1))).unwrap();
        let p = twisted_product(&x2, &x2).unwrap();
        assert_eq!(p.poly, Poly::monomial(vec![4], q(1)));
        assert_eq!(p.poly.degrees(&m.degrees()), vec![8]);
        let odd = TwistedElement::new(&m, triv, Character(1), Poly::monomial(vec![1], q(1))).unwrap();
        assert!(twisted_product(&odd, &odd).is_err());
        assert!(TwistedElement::new(&m, triv, triv, Poly::monomial(vec![1], q(1))).is_err());
    }

    #[test]
    fn character_bits_roundtrip() {
        let c = Character::from_bits("101").unwrap();
        assert_eq!(c, Character(0b101));
        assert_eq!(c.to_bits(3), "101");
        assert!(Character::from_bits("12").is_none());
        // Pull back the character x0 along F₂ → F₂², 1 ↦ (1,1).
        assert_eq!(Character(1).pullback(&[0b11]), Character(1));
        assert_eq!(Character(0b11).pullback(&[0b11]), Character(0));
    }

    #[test]
    fn restriction_kills_dropped_variables() {
        let p = Poly::var(2, 0).add(&Poly::var(2, 1)).add(&Poly::one(2));
        assert_eq!(p.restrict(s(&[1])), Poly::var(2, 1).add(&Poly::one(2)));
    }

    proptest! {
        #[test]
        fn shift_identity(a in 0u64..256, b in 0u64..256, c in 0u64..256) {
            let (a, b, c) = (DivSet(a), DivSet(b), DivSet(c));
            prop_assert_eq!(gysin_shift(a, b) + gysin_shift(b, c), gysin_shift(a, c) + nabla(a, b, c).len());
        }

        #[test]
        fn cocycle(a in 0u64..256, b in 0u64..256, c in 0u64..256, d in 0u64..256) {
            let (a, b, c, d) = (DivSet(a), DivSet(b), DivSet(c), DivSet(d));
            let lhs = add_exps(&indicator(8, nabla(a, b, c)), &indicator(8, nabla(a, c, d)));
            let rhs = add_exps(&indicator(8, nabla(b, c, d)), &indicator(8, nabla(a, b, d)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn poly_mul_commutes(e1 in proptest::collection::vec(0u16..3, 3), e2 in proptest::collection::vec(0u16..3, 3)) {
            let p = Poly::monomial(e1, q(2)).add(&Poly::one(3));
            let r = Poly::monomial(e2, q(-1));
            prop_assert_eq!(p.mul(&r), r.mul(&p));
        }
    }
}
