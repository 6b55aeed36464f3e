//! Independent ground truth. Nothing here uses the engine's sparse elimination: linear algebra
//! goes through the dense Gauss–Jordan routine below.

use crate::exec;
use crate::graded::{nabla, Character, KGenerator, TwoGroupModule};
use crate::isotropy::Fan;
use crate::linalg::{LinMap, SparseVec, Q};
use crate::poset::{FiniteSpace, GradedSheaf, GradedSpace, Sections};
use crate::sets::DivSet;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

type Dense = Vec<Vec<Q>>;

/// Dense row-reduced echelon form; returns the nonzero rows.
pub fn dense_rref(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot, other) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in other.iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

pub fn dense_rank(rows: Vec<Vec<Q>>) -> usize {
    dense_rref(rows).len()
}

/// Null space {x : Σ_j a_ij x_j = 0} of an m×n system, as an RREF basis.
pub fn dense_nullspace(rows: Vec<Vec<Q>>, n: usize) -> Vec<Vec<Q>> {
    let red = dense_rref(rows);
    let pivots: Vec<usize> = red.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); n];
        v[free] = Q::one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    dense_rref(out)
}

fn dense_inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain((0..n).map(|j| if i == j { Q::one() } else { Q::zero() })).collect())
        .collect();
    let red = dense_rref(aug);
    if red.len() < n || (0..n).any(|i| red[i][i] != Q::one()) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn to_dense(v: &SparseVec, n: usize) -> Vec<Q> {
    let mut d = vec![Q::zero(); n];
    for (i, x) in v.entries() {
        d[*i] = x.clone();
    }
    d
}

fn map_to_dense(m: &LinMap) -> Vec<Vec<Q>> {
    // rows × cols
    let mut d = vec![vec![Q::zero(); m.source_dim()]; m.target_dim()];
    for (j, c) in m.cols().iter().enumerate() {
        for (i, x) in c.entries() {
            d[*i][j] = x.clone();
        }
    }
    d
}

fn dense_to_map(d: &[Vec<Q>], source: usize) -> LinMap {
    let cols = (0..source)
        .map(|j| SparseVec::from_entries(d.iter().enumerate().map(|(i, r)| (i, r[j].clone()))))
        .collect();
    LinMap::new(d.len(), cols)
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>], inner: usize, cols: usize) -> Vec<Vec<Q>> {
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &r[k] * &b[k][j])).collect())
        .collect()
}

// ---------------------------------------------------------------------------------------------
// Piecewise polynomials on a fan.

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("fan is not complete: {0}")]
    NotComplete(String),
}

/// All exponent vectors of total degree k in n variables.
fn monomials(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in 0..=k {
        for mut rest in monomials(n - 1, k - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Polynomial in t-variables as exponent map.
type TPoly = BTreeMap<Vec<usize>, Q>;

fn tpoly_mul(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = TPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Restrict a monomial x^a to span(r_1..r_s): x_j = Σ_i t_i r_i[j].
fn restrict_monomial(a: &[usize], rays: &[&Vec<i64>]) -> TPoly {
    let s = rays.len();
    let one: TPoly = [(vec![0; s], Q::one())].into_iter().collect();
    let mut acc = one;
    for (j, &aj) in a.iter().enumerate() {
        let lin: TPoly = (0..s)
            .filter(|&i| rays[i][j] != 0)
            .map(|i| {
                let mut e = vec![0; s];
                e[i] = 1;
                (e, Q::from_integer(rays[i][j].into()))
            })
            .collect();
        for _ in 0..aj {
            acc = tpoly_mul(&acc, &lin);
        }
    }
    acc
}

fn check_walls(fan: &Fan) -> Result<(), OracleError> {
    let mut walls: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in &fan.max_cones {
        if c.len() != fan.dim {
            return Err(OracleError::NotComplete(format!("cone {c:?} is not full-dimensional")));
        }
        for skip in 0..c.len() {
            let mut w: Vec<usize> = c.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| *r).collect();
            w.sort_unstable();
            *walls.entry(w).or_default() += 1;
        }
    }
    match walls.iter().find(|(_, &k)| k != 2) {
        Some((w, k)) => Err(OracleError::NotComplete(format!("wall {w:?} lies in {k} maximal cones"))),
        None if fan.max_cones.is_empty() && fan.dim > 0 => Err(OracleError::NotComplete("no cones".into())),
        None => Ok(()),
    }
}

/// Dimension per degree of continuous piecewise polynomials on a complete simplicial fan.
pub fn pp_hilbert(fan: &Fan, cutoff: i32) -> Result<Vec<usize>, OracleError> {
    check_walls(fan)?;
    let n = fan.dim;
    let cones = &fan.max_cones;
    let mut out = Vec::new();
    for t in 0..=cutoff {
        if t % 2 != 0 {
            out.push(0);
            continue;
        }
        let mons = monomials(n, (t / 2) as usize);
        let nm = mons.len();
        let nu = nm * cones.len();
        let mut rows = Vec::new();
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                let common: Vec<&Vec<i64>> =
                    cones[a].iter().filter(|r| cones[b].contains(r)).map(|&r| &fan.rays[r]).collect();
                // f_a − f_b vanishes on span(common).
                let mut eqs: BTreeMap<Vec<usize>, Vec<Q>> = BTreeMap::new();
                for (k, m) in mons.iter().enumerate() {
                    for (e, c) in restrict_monomial(m, &common) {
                        let row = eqs.entry(e).or_insert_with(|| vec![Q::zero(); nu]);
                        row[a * nm + k] += &c;
                        row[b * nm + k] -= &c;
                    }
                }
                rows.extend(eqs.into_values());
            }
        }
        let rank = if rows.is_empty() { 0 } else { dense_rank(rows) };
        out.push(nu - rank);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------------------------
// Brute-force sections.

/// Sections over `u` per degree, from the full compatibility system over all comparable pairs,
/// as dense RREF bases in the engine's layout (points ascending, stalks concatenated).
pub fn brute_sections(space: &FiniteSpace, u: &[usize], sheaf: &GradedSheaf, cutoff: i32) -> BTreeMap<i32, Vec<Vec<Q>>> {
    let mut pts = u.to_vec();
    pts.sort_unstable();
    let degrees: BTreeSet<i32> = pts.iter().flat_map(|&p| sheaf.stalk(p).degrees().collect::<Vec<_>>()).filter(|&t| t <= cutoff).collect();
    let mut out = BTreeMap::new();
    for t in degrees {
        let mut offs = HashMap::new();
        let mut n = 0;
        for &p in &pts {
            offs.insert(p, n);
            n += sheaf.stalk(p).dim(t);
        }
        let mut rows = Vec::new();
        for &i in &pts {
            for &j in &pts {
                if i == j || !space.leq(i, j) {
                    continue;
                }
                let r = map_to_dense(&sheaf.restriction(i, j, t));
                for (row_j, r_row) in r.iter().enumerate() {
                    let mut row = vec![Q::zero(); n];
                    for (c, x) in r_row.iter().enumerate() {
                        row[offs[&i] + c] = x.clone();
                    }
                    row[offs[&j] + row_j] -= Q::one();
                    rows.push(row);
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..n).map(|k| (0..n).map(|c| if c == k { Q::one() } else { Q::zero() }).collect()).collect()
        } else {
            dense_nullspace(rows, n)
        };
        if !basis.is_empty() {
            out.insert(t, basis);
        }
    }
    out
}

/// Whether engine sections span the same spaces as the brute-force solution in every degree.
pub fn sections_agree(engine: &Sections, brute: &BTreeMap<i32, Vec<Vec<Q>>>, cutoff: i32) -> bool {
    let degrees: BTreeSet<i32> = engine.dims().keys().chain(brute.keys()).copied().filter(|&t| t <= cutoff).collect();
    degrees.into_iter().all(|t| {
        let ours = engine.by_degree.get(&t).filter(|s| s.dim() > 0);
        match (ours, brute.get(&t)) {
            (None, None) => true,
            (Some(s), Some(b)) => {
                let n = s.layout.total();
                let rows: Vec<Vec<Q>> = s.basis().iter().map(|v| to_dense(v, n)).collect();
                b.iter().all(|r| r.len() == n) && dense_rref(rows) == dense_rref(b.clone())
            }
            _ => false,
        }
    })
}

/// A random finite T0 space on `n` points.
pub fn random_space(n: usize, rng: &mut ChaCha8Rng) -> FiniteSpace {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.35) {
                pairs.push((i, j));
            }
        }
    }
    FiniteSpace::from_pairs((0..n).map(|i| format!("p{i}")).collect(), &pairs).expect("acyclic relation")
}

/// Direct sum of rank-one constant sheaves on random closed sets, under a random change of basis
/// in every stalk.
pub fn random_sheaf(space: &FiniteSpace, rng: &mut ChaCha8Rng) -> GradedSheaf {
    let n = space.len();
    let summands = rng.gen_range(1..=4);
    // (closed support, degree)
    let mut parts = Vec::new();
    for _ in 0..summands {
        let gens: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let closed: BTreeSet<usize> = (0..n).filter(|&i| gens.iter().any(|&g| space.leq(i, g))).collect();
        parts.push((closed, 2 * rng.gen_range(0..2)));
    }
    // Summands present at each point, per degree, in order.
    let present = |p: usize, t: i32| -> Vec<usize> {
        parts.iter().enumerate().filter(|(_, (z, d))| *d == t && z.contains(&p)).map(|(k, _)| k).collect()
    };
    let degrees = [0, 2];
    // A change of basis and its inverse per (point, degree).
    let mut change: HashMap<(usize, i32), (Dense, Dense)> = HashMap::new();
    let mut stalks = Vec::with_capacity(n);
    for p in 0..n {
        let mut g = GradedSpace::zero();
        for &t in &degrees {
            let k = present(p, t).len();
            if k == 0 {
                continue;
            }
            g.set_labels(t, (0..k).map(|i| format!("e{i}")).collect());
            let m = loop {
                let m: Vec<Vec<Q>> = (0..k).map(|_| (0..k).map(|_| Q::from_integer(rng.gen_range(-2..=2).into())).collect()).collect();
                if let Some(inv) = dense_inverse(&m) {
                    break (m, inv);
                }
            };
            change.insert((p, t), m);
        }
        stalks.push(g);
    }
    let mut maps = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !space.leq(i, j) {
                continue;
            }
            let mut per = BTreeMap::new();
            for &t in &degrees {
                let (si, sj) = (present(i, t), present(j, t));
                if si.is_empty() || sj.is_empty() {
                    continue;
                }
                // Standard coordinates: identity on common summands.
                let std: Vec<Vec<Q>> = sj
                    .iter()
                    .map(|a| si.iter().map(|b| if a == b { Q::one() } else { Q::zero() }).collect())
                    .collect();
                let (gj, _) = &change[&(j, t)];
                let (_, gi_inv) = &change[&(i, t)];
                let m = matmul(&matmul(gj, &std, sj.len(), si.len()), gi_inv, si.len(), si.len());
                per.insert(t, dense_to_map(&m, si.len()));
            }
            if !per.is_empty() {
                maps.insert((i, j), per);
            }
        }
    }
    GradedSheaf::new(space, stalks, maps).expect("closed-support sums are sheaves")
}

// ---------------------------------------------------------------------------------------------
// The quadrant lemma.

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QuadrantReport {
    pub phi: usize,
    pub multisets: usize,
    pub failures: Vec<String>,
}

impl QuadrantReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cohomology of the punctured quadrant [0,∞)^Φ ∖ {0} with coefficients in the direct sum of
/// constant sheaves on the closed strata {x_k = 0, k ∈ Φ₁}, plus surjectivity from the origin.
///
/// Strata are indexed by the set of vanishing coordinates. The punctured quadrant is covered by
/// the opens {x_k > 0}, whose intersections are again of this form, so the Čech complex is that
/// of a simplex with the stalk at the stratum Φ ∖ K over the face K.
pub fn quadrant_check_one(phi: usize, components: &[DivSet]) -> Option<String> {
    let full = DivSet::full(phi);
    // Coordinates of M at the stratum P: one per component contained in P.
    let stalk = |p: DivSet| -> Vec<usize> { (0..components.len()).filter(|&c| components[c].is_subset(p)).collect() };
    let faces_of = |size: usize| -> Vec<DivSet> { full.subsets().filter(|k| k.len() == size).collect() };
    let dim_c = |size: usize| -> usize { faces_of(size).iter().map(|k| stalk(full - *k).len()).sum() };
    // d^p : C^p → C^{p+1}, C^p = ⊕_{|K|=p+1} M(Φ∖K); rows indexed by C^{p+1}.
    let differential = |p: usize| -> Vec<Vec<Q>> {
        let src = faces_of(p + 1);
        let dst = faces_of(p + 2);
        let mut src_off = BTreeMap::new();
        let mut o = 0;
        for k in &src {
            src_off.insert(*k, o);
            o += stalk(full - *k).len();
        }
        let nsrc = o;
        let mut rows = Vec::new();
        for kk in &dst {
            let target = stalk(full - *kk);
            let members: Vec<usize> = kk.iter().collect();
            for &c in &target {
                let mut row = vec![Q::zero(); nsrc];
                for (pos, &v) in members.iter().enumerate() {
                    let k = kk.without(v);
                    let s = stalk(full - k);
                    let idx = s.iter().position(|&x| x == c).expect("component restricts");
                    let sign = if pos % 2 == 0 { Q::one() } else { -Q::one() };
                    row[src_off[&k] + idx] += sign;
                }
                rows.push(row);
            }
        }
        rows
    };
    let rank = |rows: Vec<Vec<Q>>| -> usize { if rows.is_empty() || rows[0].is_empty() { 0 } else { dense_rank(rows) } };
    let mut ranks = Vec::new();
    for p in 0..phi.saturating_sub(1) {
        ranks.push(rank(differential(p)));
    }
    for p in 1..phi {
        let h = dim_c(p + 1) - ranks[p - 1] - ranks.get(p).copied().unwrap_or(0);
        if h != 0 {
            return Some(format!("Φ = {phi}, components {components:?}: H^{p} has dimension {h}"));
        }
    }
    // H⁰ of the punctured quadrant and the image of the stalk at the origin.
    let h0 = dim_c(1) - ranks.first().copied().unwrap_or(0);
    let origin = stalk(full);
    let singles = faces_of(1);
    let mut images = Vec::new();
    for &c in &origin {
        let mut v = Vec::new();
        for k in &singles {
            for &x in &stalk(full - *k) {
                v.push(if x == c { Q::one() } else { Q::zero() });
            }
        }
        images.push(v);
    }
    let image_rank = rank(images);
    (image_rank != h0).then(|| format!("Φ = {phi}, components {components:?}: H⁰ restriction has rank {image_rank} < {h0}"))
}

/// All component sets for small Φ, and `cap` seeded random multisets when there are more.
pub fn quadrant_check(phi: usize, cap: usize, seed: u64) -> QuadrantReport {
    let subsets: Vec<DivSet> = DivSet::full(phi).subsets().collect();
    let total_sets = 1u64.checked_shl(subsets.len() as u32).unwrap_or(u64::MAX);
    let families: Vec<Vec<DivSet>> = if total_sets as usize <= cap {
        (0..total_sets).map(|mask| subsets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| *s).collect()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..cap)
            .map(|_| subsets.iter().flat_map(|s| std::iter::repeat_n(*s, rng.gen_range(0..3))).collect())
            .collect()
    };
    let results = exec::map(&families, |f| quadrant_check_one(phi, f));
    QuadrantReport { phi, multisets: families.len(), failures: results.into_iter().flatten().collect() }
}

// ---------------------------------------------------------------------------------------------
// Set-identity fuzzing.

fn in_nabla(a: bool, b: bool, c: bool) -> bool {
    (b && !a && !c) || (a && c && !b)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the four-set identities elementwise on one quadruple of membership vectors.
fn check_quadruple(sets: &[Vec<bool>; 4]) -> Option<String> {
    let [a, b, c, d] = sets;
    let n = a.len();
    let count = |x: &[bool]| x.iter().filter(|&&v| v).count();
    let nab = |x: &[bool], y: &[bool], z: &[bool]| -> Vec<bool> { (0..n).map(|i| in_nabla(x[i], y[i], z[i])).collect() };
    let minus = |x: &[bool], y: &[bool]| -> Vec<bool> { (0..n).map(|i| x[i] && !y[i]).collect() };
    let (abc, acd, bcd, abd) = (nab(a, b, c), nab(a, c, d), nab(b, c, d), nab(a, b, d));
    for i in 0..n {
        let left = usize::from(abc[i]) + usize::from(acd[i]);
        let right = usize::from(bcd[i]) + usize::from(abd[i]);
        if left != right {
            return Some(format!("cocycle fails at element {i} for {sets:?}"));
        }
    }
    let lhs = count(&minus(a, b)) + count(&minus(b, c));
    let rhs = count(&minus(a, c)) + count(&abc);
    if lhs != rhs {
        return Some(format!("degree identity fails: {lhs} ≠ {rhs} for {sets:?}"));
    }
    // The engine's bitset ∇ must agree with the elementwise definition.
    let bits = |x: &[bool]| DivSet::from_indices(x.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i));
    if nabla(bits(a), bits(b), bits(c)) != bits(&abc) {
        return Some(format!("engine ∇ differs from the elementwise rule for {sets:?}"));
    }
    None
}

pub fn identity_fuzz(trials: usize, seed: u64) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quads: Vec<[Vec<bool>; 4]> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            std::array::from_fn(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect())
        })
        .collect();
    let failures = exec::map(&quads, check_quadruple).into_iter().flatten().collect();
    FuzzReport { seed, trials, failures }
}

/// Every membership pattern of one element in four sets.
pub fn identity_patterns() -> FuzzReport {
    let failures = (0..16u32)
        .filter_map(|m| check_quadruple(&std::array::from_fn(|k| vec![m >> k & 1 == 1])))
        .collect();
    FuzzReport { seed: 0, trials: 16, failures }
}

// ---------------------------------------------------------------------------------------------
// Twisted tensors by relations.

/// dim of H_t ⊗_{Q[τ]} Q_χ = H_t / ⟨g·h − χ(g)h⟩, from the defining relations over all g ∈ τ,
/// and whether the image of the χ-isotypic monomials is a basis of the quotient.
pub fn relation_quotient(h: &TwoGroupModule, chi: Character, degree: i32) -> (usize, bool) {
    let basis = h.basis(degree);
    let n = basis.len();
    let mut rels = Vec::new();
    for g in 0..1u64 << h.rank {
        for (k, e) in basis.iter().enumerate() {
            // g acts on the monomial by the product of generator signs.
            let mut sign = 1i64;
            for (gen, &p) in h.gens.iter().zip(e) {
                if gen.action.is_negative_on(g) && p % 2 == 1 {
                    sign = -sign;
                }
            }
            let chi_g: i64 = if chi.is_negative_on(g) { -1 } else { 1 };
            let mut row = vec![Q::zero(); n];
            row[k] = Q::from_integer((sign - chi_g).into());
            if row[k].is_zero() {
                continue;
            }
            rels.push(row);
        }
    }
    let r = if rels.is_empty() { 0 } else { dense_rank(rels.clone()) };
    let dim = n - r;
    // Isotypic monomials: χ(g)-eigenvectors for every g.
    let iso: Vec<Vec<Q>> = basis
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            (0..1u64 << h.rank).all(|g| {
                let neg = h.gens.iter().zip(e.iter()).filter(|(gen, &p)| gen.action.is_negative_on(g) && p % 2 == 1).count() % 2 == 1;
                neg == chi.is_negative_on(g)
            })
        })
        .map(|(k, _)| (0..n).map(|c| if c == k { Q::one() } else { Q::zero() }).collect())
        .collect();
    let spans = iso.len() == dim && {
        let mut all = rels;
        all.extend(iso);
        all.is_empty() || dense_rank(all) == n
    };
    (dim, spans)
}

/// A random module: rank ≤ 3 (|τ| ≤ 8), up to three generators in degrees 2 or 4.
pub fn random_module(rng: &mut ChaCha8Rng) -> TwoGroupModule {
    let rank = rng.gen_range(0..=3);
    let ngens = rng.gen_range(0..=3);
    let gens = (0..ngens)
        .map(|i| KGenerator {
            name: format!("Y{i}"),
            degree: 2 * rng.gen_range(1..=2),
            action: Character(rng.gen_range(0..1u64 << rank)),
        })
        .collect();
    TwoGroupModule::new(rank, gens).expect("valid random module")
}

pub fn random_character(rank: usize, rng: &mut ChaCha8Rng) -> Character {
    Character(rng.gen_range(0..1u64 << rank))
}
