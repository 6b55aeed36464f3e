//! The JSON input document and its conversion to a datum and a label catalog.

use crate::error::Error;
use crate::faces::{KDatum, KPart, KRestriction, SymmetricDatum};
use crate::graded::{Character, KGenerator, Poly, TwoGroupModule};
use crate::isotropy::{toric_isotropy, F2Space, Fan, IsotropyFamily, IsotropyMode, Label, LabelCatalog};
use crate::linalg::q_parse;
use crate::sets::DivSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Toric,
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<SymmetricInput>,
    pub labels: LabelsInput,
    #[serde(default = "default_cutoff")]
    pub cutoff: i32,
}

fn default_cutoff() -> i32 {
    20
}

fn default_denominator() -> i64 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricInput {
    pub lattice_rank: usize,
    /// N′ = N + Σ Z·g/denominator.
    #[serde(default)]
    pub overlattice_generators: Vec<Vec<i64>>,
    #[serde(default = "default_denominator")]
    pub overlattice_denominator: i64,
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray_names: Option<Vec<String>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetricInput {
    #[serde(rename = "V")]
    pub v: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<String>>,
    pub l: usize,
    #[serde(rename = "Jmap")]
    pub jmap: Vec<JmapEntry>,
    pub m: usize,
    #[serde(rename = "D_basis", default, skip_serializing_if = "Option::is_none")]
    pub d_basis: Option<Vec<String>>,
    #[serde(rename = "D_subspaces", default)]
    pub d_subspaces: Vec<SubspaceEntry>,
    #[serde(rename = "Kdatum", default, skip_serializing_if = "Option::is_none")]
    pub kdatum: Option<KDatumInput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JmapEntry {
    pub delta: Vec<String>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceEntry {
    pub delta: Vec<String>,
    /// Bit-strings over the D basis.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KDatumInput {
    pub parts: Vec<KPartInput>,
    #[serde(default)]
    pub restrictions: Vec<KRestrictionInput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KPartInput {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub group_rank: usize,
    /// Image in D of each generator of τ_J, as bit-strings over the D basis.
    #[serde(rename = "to_D")]
    pub to_d: Vec<String>,
    #[serde(default)]
    pub generators: Vec<KGeneratorInput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KGeneratorInput {
    pub name: String,
    pub degree: i32,
    /// Character of τ_J by which the generator transforms, as a bit-string.
    pub action: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KRestrictionInput {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    /// Image in τ_from of each generator of τ_to.
    pub group_map: Vec<String>,
    /// One polynomial in the generators of H_to per generator of H_from.
    pub images: Vec<Vec<TermInput>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermInput {
    pub coeff: String,
    pub exps: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelsInput {
    Keyword(String),
    Explicit(Vec<LabelInput>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelInput {
    pub delta: Vec<String>,
    pub character: String,
}

/// Failure to load a document.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Datum(#[from] Error),
}

fn schema<T>(msg: impl Into<String>) -> std::result::Result<T, LoadError> {
    Err(LoadError::Schema(msg.into()))
}

type LoadResult<T> = std::result::Result<T, LoadError>;

/// A validated document.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub document: InputDocument,
    pub datum: SymmetricDatum,
    pub catalog: LabelCatalog,
}

pub fn parse(text: &str) -> LoadResult<InputDocument> {
    serde_json::from_str(text).map_err(|e| LoadError::Schema(e.to_string()))
}

pub fn load(text: &str) -> LoadResult<Loaded> {
    let document = parse(text)?;
    let (datum, catalog) = document.build()?;
    Ok(Loaded { document, datum, catalog })
}

fn bits(s: &str, len: usize, what: &str) -> LoadResult<u64> {
    let c = if s.is_empty() && len == 0 { Some(Character(0)) } else { Character::from_bits(s) };
    match c {
        Some(c) if s.len() == len => Ok(c.0),
        _ => schema(format!("{what}: expected a bit-string of length {len}, got {s:?}")),
    }
}

fn name_set(names: &[String], index: &BTreeMap<&str, usize>, what: &str) -> LoadResult<DivSet> {
    let mut d = DivSet::EMPTY;
    for n in names {
        match index.get(n.as_str()) {
            Some(&i) => d = d.with(i),
            None => return schema(format!("{what}: unknown divisor {n:?}")),
        }
    }
    Ok(d)
}

fn j_set(j: &[usize], l: usize, what: &str) -> LoadResult<DivSet> {
    let mut d = DivSet::EMPTY;
    for &k in j {
        if k == 0 || k > l {
            return schema(format!("{what}: J entries lie in 1..={l}, got {k}"));
        }
        d = d.with(k - 1);
    }
    Ok(d)
}

impl InputDocument {
    pub fn build(&self) -> LoadResult<(SymmetricDatum, LabelCatalog)> {
        if self.cutoff < 0 || self.cutoff % 2 != 0 {
            return schema(format!("cutoff must be a nonnegative even integer, got {}", self.cutoff));
        }
        let datum = match (&self.mode, &self.toric, &self.symmetric) {
            (Mode::Toric, Some(t), None) => build_toric(t)?,
            (Mode::Symmetric, None, Some(s)) => build_symmetric(s)?,
            (Mode::Toric, _, _) => return schema("mode \"toric\" requires exactly the \"toric\" section"),
            (Mode::Symmetric, _, _) => return schema("mode \"symmetric\" requires exactly the \"symmetric\" section"),
        };
        let m = datum.isotropy.m();
        let catalog = match &self.labels {
            LabelsInput::Keyword(k) if k == "all" => LabelCatalog::all(&datum.isotropy, datum.nvars())?,
            LabelsInput::Keyword(k) => return schema(format!("labels: expected \"all\" or a list, got {k:?}")),
            LabelsInput::Explicit(list) => {
                let index: BTreeMap<&str, usize> =
                    datum.divisors.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
                let labels = list
                    .iter()
                    .map(|l| {
                        Ok(Label {
                            delta: name_set(&l.delta, &index, "labels")?,
                            rho: Character(bits(&l.character, m, "labels.character")?),
                        })
                    })
                    .collect::<LoadResult<Vec<_>>>()?;
                LabelCatalog::explicit(&datum.isotropy, labels, datum.nvars())?
            }
        };
        Ok((datum, catalog))
    }
}

fn build_toric(t: &ToricInput) -> LoadResult<SymmetricDatum> {
    let names = match &t.ray_names {
        Some(n) if n.len() == t.rays.len() => n.clone(),
        Some(_) => return schema("ray_names must have one entry per ray"),
        None => (1..=t.rays.len()).map(|i| format!("v{i}")).collect(),
    };
    let fan = Fan { dim: t.lattice_rank, rays: t.rays.clone(), max_cones: t.max_cones.clone() };
    let data = toric_isotropy(t.lattice_rank, &t.overlattice_generators, t.overlattice_denominator, fan)?;
    let fam = data.family.clone();
    let jmap = fam.orbit_sets().into_iter().map(|d| (d, DivSet::EMPTY)).collect();
    let d_basis = data
        .d_basis
        .iter()
        .map(|v| {
            let c: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})/{}", c.join(","), t.overlattice_denominator)
        })
        .collect();
    Ok(SymmetricDatum::new(names, 0, jmap, fam, None, d_basis, Some(data))?)
}

fn build_symmetric(s: &SymmetricInput) -> LoadResult<SymmetricDatum> {
    let index: BTreeMap<&str, usize> = s.v.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != s.v.len() {
        return schema("V: divisor names must be distinct");
    }
    let d_basis = match &s.d_basis {
        Some(b) if b.len() == s.m => b.clone(),
        Some(_) => return schema("D_basis must have m entries"),
        None => (1..=s.m).map(|i| format!("d{i}")).collect(),
    };
    let mut orbit = Vec::new();
    for d in &s.s {
        orbit.push(name_set(d, &index, "S")?);
    }
    let mut subspaces: BTreeMap<DivSet, F2Space> = orbit.iter().map(|d| (*d, F2Space::zero())).collect();
    subspaces.insert(DivSet::EMPTY, F2Space::zero());
    for e in &s.d_subspaces {
        let d = name_set(&e.delta, &index, "D_subspaces")?;
        if !subspaces.contains_key(&d) {
            return Err(Error::datum("D_subspaces indexed by S", format!("Δ = {:?} not in S", e.delta)).into());
        }
        let gens = e.generators.iter().map(|g| bits(g, s.m, "D_subspaces.generators")).collect::<LoadResult<Vec<_>>>()?;
        subspaces.insert(d, F2Space::from_generators(&gens));
    }
    let fam = IsotropyFamily::new(s.m, IsotropyMode::Symmetric, subspaces)?;
    let mut jmap = BTreeMap::new();
    for e in &s.jmap {
        let d = name_set(&e.delta, &index, "Jmap")?;
        if jmap.insert(d, j_set(&e.j, s.l, "Jmap")?).is_some() {
            return schema(format!("Jmap: duplicate entry for {:?}", e.delta));
        }
    }
    let kdatum = s.kdatum.as_ref().map(|k| build_kdatum(k, s.m, s.l)).transpose()?;
    Ok(SymmetricDatum::new(s.v.clone(), s.l, jmap, fam, kdatum, d_basis, None)?)
}

fn build_kdatum(k: &KDatumInput, m: usize, l: usize) -> LoadResult<KDatum> {
    let mut parts = BTreeMap::new();
    for p in &k.parts {
        let j = j_set(&p.j, l, "Kdatum.parts")?;
        let to_d = p.to_d.iter().map(|b| bits(b, m, "Kdatum.to_D")).collect::<LoadResult<Vec<_>>>()?;
        let gens = p
            .generators
            .iter()
            .map(|g| {
                Ok(KGenerator {
                    name: g.name.clone(),
                    degree: g.degree,
                    action: Character(bits(&g.action, p.group_rank, "Kdatum.generators.action")?),
                })
            })
            .collect::<LoadResult<Vec<_>>>()?;
        let part = KPart { to_d, module: TwoGroupModule::new(p.group_rank, gens)? };
        if parts.insert(j, part).is_some() {
            return schema(format!("Kdatum.parts: duplicate J {:?}", p.j));
        }
    }
    let mut covering = BTreeMap::new();
    for r in &k.restrictions {
        let (j, jp) = (j_set(&r.from, l, "Kdatum.restrictions")?, j_set(&r.to, l, "Kdatum.restrictions")?);
        let (Some(src), Some(dst)) = (parts.get(&j), parts.get(&jp)) else {
            return schema(format!("Kdatum.restrictions: no part for {:?} or {:?}", r.from, r.to));
        };
        let src_rank = src.rank();
        let dst_ngens = dst.module.ngens();
        let group_map = r.group_map.iter().map(|b| bits(b, src_rank, "Kdatum.group_map")).collect::<LoadResult<Vec<_>>>()?;
        let mut images = Vec::new();
        for img in &r.images {
            let mut p = Poly::zero();
            for t in img {
                let Some(c) = q_parse(&t.coeff) else {
                    return schema(format!("Kdatum.images: bad coefficient {:?}", t.coeff));
                };
                if t.exps.len() != dst_ngens {
                    return schema(format!("Kdatum.images: exponent vectors have length {dst_ngens}"));
                }
                p.add_term(t.exps.clone(), c);
            }
            images.push(p);
        }
        if covering.insert((j, jp), KRestriction { group_map, images }).is_some() {
            return schema("Kdatum.restrictions: duplicate pair");
        }
    }
    Ok(KDatum::new(m, l, parts, covering)?)
}
