//! Command-line front end: parse a datum document, run one computation, render JSON or TSV.
//!
//! Exit codes: 0 success, 1 schema or usage error, 2 invalid datum, 3 failed check.

use clap::{Parser, ValueEnum};
use extsheaf::document::{self, LoadError, Loaded};
use extsheaf::exec;
use extsheaf::ext::{self, ExtAlgebra};
use extsheaf::faces::{face_axioms, g_stable_open, show_j};
use extsheaf::graded::{twisted_tensor, Character};
use extsheaf::hsheaf::{build_h, check_local_laws, HSheaf};
use extsheaf::isotropy::Fan;
use extsheaf::linalg::{q, q_to_string, SparseVec};
use extsheaf::oracles;
use extsheaf::poset::cech_cohomology;
use extsheaf::sets::DivSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Faces,
    Labels,
    Ext,
    Hilbert,
    Cohomology,
    CheckAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Parser, Debug)]
#[command(name = "extsheaf", about = "Equivariant Ext algebras on finite face posets")]
pub struct Args {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub command: Command,
    /// Internal-degree cutoff; defaults to the document's value.
    #[arg(long)]
    pub cutoff: Option<i32>,
    /// Restrict output to one block, as α:β label indices.
    #[arg(long)]
    pub block: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Orbits generating the G-stable open for `cohomology`: `;`-separated divisor lists,
    /// e.g. `v1,v2;v3`. Defaults to the whole space.
    #[arg(long)]
    pub open: Option<String>,
    /// Run without the thread pool.
    #[arg(long)]
    pub sequential: bool,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: msg.into() + "\n" }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub command: String,
    pub datum: String,
    pub mode: String,
    pub cutoff: i32,
    pub labels: usize,
    pub faces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRow {
    pub index: usize,
    pub id: String,
    pub delta: Vec<String>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub open: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesOutput {
    pub meta: Meta,
    pub faces: Vec<FaceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRow {
    pub index: usize,
    pub delta: Vec<String>,
    pub character: String,
    pub delta_prime: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelsOutput {
    pub meta: Meta,
    pub labels: Vec<LabelRow>,
}

/// One entry of a check report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

fn check(name: &str, passed: bool, detail: Value) -> Check {
    Check { name: name.into(), passed, detail }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome { code, stdout: if code == 0 { e.to_string() } else { String::new() }, stderr: if code == 0 { String::new() } else { e.to_string() } };
        }
    };
    exec::set_sequential(args.sequential);
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(1, format!("cannot read {}: {e}", args.input.display())),
    };
    let loaded = match document::load(&text) {
        Ok(l) => l,
        Err(LoadError::Schema(m)) => return Outcome::fail(1, format!("schema error: {m}")),
        Err(LoadError::Datum(e)) => return Outcome::fail(2, format!("datum invalid: {e}")),
    };
    let name = loaded
        .document
        .name
        .clone()
        .unwrap_or_else(|| args.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    let cutoff = args.cutoff.unwrap_or(loaded.document.cutoff);
    if cutoff < 0 || cutoff % 2 != 0 {
        return Outcome::fail(1, format!("schema error: cutoff must be a nonnegative even integer, got {cutoff}"));
    }
    match execute(&args, &loaded, &name, cutoff) {
        Ok((code, value)) => Outcome { code, stdout: render(&value, args.format), stderr: String::new() },
        Err(e) => Outcome::fail(2, format!("datum invalid: {e}")),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Tsv => {
            let mut lines = Vec::new();
            flatten("", v, &mut lines);
            lines.join("\n") + "\n"
        }
    }
}

fn flatten(path: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push(format!("{path}\t{}", a.iter().map(scalar).collect::<Vec<_>>().join(",")));
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        _ => out.push(format!("{path}\t{}", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn meta(command: &str, l: &Loaded, name: &str, cutoff: i32, nfaces: usize) -> Meta {
    Meta {
        command: command.into(),
        datum: name.into(),
        mode: if l.datum.is_toric() { "toric" } else { "symmetric" }.into(),
        cutoff,
        labels: l.catalog.len(),
        faces: nfaces,
    }
}

fn names(l: &Loaded, d: DivSet) -> Vec<String> {
    d.iter().map(|i| l.datum.divisors[i].clone()).collect()
}

fn parse_block(s: &str, n: usize) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("--block expects α:β, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad label index {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad label index {b:?}"))?;
    if a >= n || b >= n {
        return Err(format!("--block {s}: the catalog has {n} labels"));
    }
    Ok((a, b))
}

pub fn faces_output(l: &Loaded, name: &str, cutoff: i32) -> extsheaf::Result<FacesOutput> {
    let faces = extsheaf::faces::build_faces(&l.datum)?;
    let rows = faces
        .points
        .iter()
        .enumerate()
        .map(|(i, f)| FaceRow {
            index: i,
            id: faces.space.id(i).to_string(),
            delta: names(l, f.delta),
            j: f.j.iter().map(|k| k + 1).collect(),
            open: faces.space.minimal_open(i).into_iter().map(|k| faces.space.id(k).to_string()).collect(),
        })
        .collect();
    Ok(FacesOutput { meta: meta("faces", l, name, cutoff, faces.len()), faces: rows })
}

pub fn labels_output(l: &Loaded, name: &str, cutoff: i32) -> extsheaf::Result<LabelsOutput> {
    let nfaces = extsheaf::faces::build_faces(&l.datum)?.len();
    let m = l.datum.isotropy.m();
    let rows = l
        .catalog
        .labels()
        .iter()
        .enumerate()
        .map(|(i, lab)| LabelRow {
            index: i,
            delta: names(l, lab.delta),
            character: lab.rho.to_bits(m),
            delta_prime: names(l, l.catalog.delta_prime(i)),
        })
        .collect();
    Ok(LabelsOutput { meta: meta("labels", l, name, cutoff, nfaces), labels: rows })
}

fn vec_json(v: &SparseVec) -> Value {
    Value::Array(v.entries().iter().map(|(i, c)| json!({"index": i, "coeff": q_to_string(c)})).collect())
}

fn ext_blocks(h: &HSheaf, e: &ExtAlgebra, only: Option<(usize, usize)>, with_table: bool) -> Value {
    let n = h.nlabels();
    let mut blocks = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if only.is_some_and(|o| o != (a, b)) {
                continue;
            }
            let mut blk = json!({"alpha": a, "beta": b, "hilbert": e.hilbert(a, b)});
            if with_table {
                let basis: Vec<Value> = (0..e.dim())
                    .filter(|&i| (e.basis[i].alpha, e.basis[i].beta) == (a, b))
                    .map(|i| {
                        let terms: Vec<Value> = e
                            .describe(h, i)
                            .into_iter()
                            .map(|(f, m, c)| json!({"face": f, "monomial": m, "coeff": c}))
                            .collect();
                        json!({"index": i, "degree": e.basis[i].degree, "terms": terms})
                    })
                    .collect();
                let table: Vec<Value> = e
                    .table
                    .iter()
                    .filter(|((y, x), _)| e.basis[*x].alpha == a && e.basis[*y].beta == b)
                    .map(|((y, x), v)| json!({"y": y, "x": x, "product": vec_json(v)}))
                    .collect();
                blk["basis"] = Value::Array(basis);
                blk["table"] = Value::Array(table);
            }
            blocks.push(blk);
        }
    }
    Value::Array(blocks)
}

fn execute(args: &Args, l: &Loaded, name: &str, cutoff: i32) -> extsheaf::Result<(i32, Value)> {
    let only = match &args.block {
        Some(s) => match parse_block(s, l.catalog.len()) {
            Ok(p) => Some(p),
            Err(m) => return Ok((1, json!({"error": m}))),
        },
        None => None,
    };
    let cmd = args.command.to_possible_value().expect("named").get_name().to_string();
    match args.command {
        Command::Faces => Ok((0, serde_json::to_value(faces_output(l, name, cutoff)?).expect("json"))),
        Command::Labels => Ok((0, serde_json::to_value(labels_output(l, name, cutoff)?).expect("json"))),
        Command::Validate => {
            let h = build_h(&l.datum, &l.catalog, cutoff)?;
            let checks = vec![
                axioms_check(&h),
                check("support_facts", true, json!({"blocks": h.nlabels() * h.nlabels()})),
                check("sheaf_axioms", true, json!({"blocks": h.nlabels() * h.nlabels()})),
            ];
            Ok(report(&cmd, l, name, cutoff, &h, checks))
        }
        Command::Hilbert | Command::Ext => {
            let h = build_h(&l.datum, &l.catalog, cutoff)?;
            let e = ext::ext_algebra(&h, cutoff)?;
            let mut out = json!({
                "meta": meta(&cmd, l, name, cutoff, h.faces.len()),
                "blocks": ext_blocks(&h, &e, only, args.command == Command::Ext),
            });
            if args.command == Command::Ext {
                out["units"] = Value::Array(e.units.iter().map(vec_json).collect());
                out["meta"]["truncated_pairs"] = json!(e.truncated_pairs);
            }
            Ok((0, out))
        }
        Command::Cohomology => {
            let h = build_h(&l.datum, &l.catalog, cutoff)?;
            let fam = match open_family(l, args.open.as_deref()) {
                Ok(f) => f,
                Err(m) => return Ok((1, json!({"error": m}))),
            };
            let u = g_stable_open(&l.datum, &h.faces, &fam)?;
            let n = h.nlabels();
            let mut blocks = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if only.is_some_and(|o| o != (a, b)) || h.block(a, b).is_zero() {
                        continue;
                    }
                    let c = cech_cohomology(&h.faces.space, &u, &h.block(a, b).sheaf, cutoff)?;
                    let rows: Vec<Value> = c
                        .dims
                        .iter()
                        .enumerate()
                        .flat_map(|(p, m)| m.iter().map(move |(t, d)| json!({"cech_degree": p, "internal_degree": t, "dim": d})))
                        .collect();
                    blocks.push(json!({"alpha": a, "beta": b, "cech": rows}));
                }
            }
            Ok((
                0,
                json!({
                    "meta": meta(&cmd, l, name, cutoff, h.faces.len()),
                    "open": {
                        "orbits": fam.iter().map(|d| l.datum.show_delta(*d)).collect::<Vec<_>>(),
                        "faces": u.iter().map(|&i| h.faces.space.id(i)).collect::<Vec<_>>(),
                    },
                    "blocks": blocks,
                }),
            ))
        }
        Command::CheckAll => {
            let h = build_h(&l.datum, &l.catalog, cutoff)?;
            let checks = check_all(l, &h, cutoff, args.seed)?;
            Ok(report(&cmd, l, name, cutoff, &h, checks))
        }
    }
}

fn report(cmd: &str, l: &Loaded, name: &str, cutoff: i32, h: &HSheaf, checks: Vec<Check>) -> (i32, Value) {
    let ok = checks.iter().all(|c| c.passed);
    let v = json!({"meta": meta(cmd, l, name, cutoff, h.faces.len()), "checks": checks, "passed": ok});
    (if ok { 0 } else { 3 }, v)
}

fn open_family(l: &Loaded, text: Option<&str>) -> Result<Vec<DivSet>, String> {
    let s = l.datum.orbit_sets();
    let Some(text) = text.filter(|x| *x != "all") else { return Ok(s) };
    let mut gens = Vec::new();
    for part in text.split(';') {
        let mut d = DivSet::EMPTY;
        for v in part.split(',').map(str::trim).filter(|v| !v.is_empty() && *v != "{}") {
            let i = l.datum.divisors.iter().position(|x| x == v).ok_or_else(|| format!("--open: unknown divisor {v:?}"))?;
            d = d.with(i);
        }
        if !s.contains(&d) {
            return Err(format!("--open: {} is not an orbit set", l.datum.show_delta(d)));
        }
        gens.push(d);
    }
    Ok(s.into_iter().filter(|d| gens.iter().any(|g| d.is_subset(*g))).collect())
}

fn axioms_check(h: &HSheaf) -> Check {
    let r = face_axioms(&h.faces);
    check("face_axioms", r.passed(), json!({"pairs": r.pairs_checked, "failures": r.failures}))
}

/// Index of the label (∅, trivial), if present.
fn trivial_label(h: &HSheaf) -> Option<usize> {
    h.catalog.labels().iter().position(|lab| lab.delta.is_empty() && lab.rho == Character::TRIVIAL)
}

/// The full invariant and oracle battery.
pub fn check_all(l: &Loaded, h: &HSheaf, cutoff: i32, seed: u64) -> extsheaf::Result<Vec<Check>> {
    let n = h.nlabels();
    let mut out = vec![axioms_check(h), check("support_facts", true, json!({"blocks": n * n}))];

    let local = check_local_laws(h);
    out.push(check(
        "local_laws",
        local.passed(),
        json!({"associativity_triples": local.associativity_triples, "unit_checks": local.unit_checks,
               "restriction_checks": local.restriction_checks, "failures": local.failures}),
    ));

    let e = ext::ext_algebra(h, cutoff)?;
    let laws = ext::check_algebra_laws(&e);
    out.push(check(
        "algebra_laws",
        laws.passed(),
        json!({"associativity_triples": laws.associativity_triples, "unit_checks": laws.unit_checks,
               "truncated_pairs": e.truncated_pairs, "failures": laws.failures}),
    ));

    let mut unit_failures = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let p = e.mul(&e.units[a], &e.units[b]);
            let want = if a == b { e.units[a].clone() } else { SparseVec::new() };
            if p != want {
                unit_failures.push(format!("1_{a}·1_{b} ≠ {}", if a == b { format!("1_{a}") } else { "0".into() }));
            }
        }
    }
    let sum = e.units.iter().fold(SparseVec::new(), |acc, u| acc.add_scaled(&q(1), u));
    if sum != e.unit() {
        unit_failures.push("unit ≠ Σ 1_α".into());
    }
    out.push(check("unit_decomposition", unit_failures.is_empty(), json!({"labels": n, "failures": unit_failures})));

    let mut module_dims = vec![0usize; (cutoff + 1) as usize];
    for a in 0..n {
        for (t, d) in ext::ext_module(&e, a)?.hilbert(&e).into_iter().enumerate() {
            module_dims[t] += d;
        }
    }
    let mut total = vec![0usize; (cutoff + 1) as usize];
    for r in &e.basis {
        total[r.degree as usize] += 1;
    }
    out.push(check("module_decomposition", module_dims == total, json!({"hilbert": total})));

    let g = ext::gysin_check(h, &e);
    out.push(check(
        "gysin_floor",
        g.passed(),
        json!({"blocks": g.blocks_checked, "polynomial_blocks": g.polynomial_blocks, "failures": g.failures}),
    ));

    let v = ext::vanishing_report(h, cutoff)?;
    out.push(check("vanishing", v.passed(), serde_json::to_value(&v).expect("json")));

    let c = ext::concentration_check(h, &e)?;
    out.push(check("concentration", c.passed(), serde_json::to_value(&c).expect("json")));

    let all = h.faces.space.all_points();
    let brute = exec::map_range(n * n, |k| {
        let blk = &h.blocks()[k];
        let b = oracles::brute_sections(&h.faces.space, &all, &blk.sheaf, cutoff);
        oracles::sections_agree(&e.sections[k], &b, cutoff)
    });
    let bad: Vec<String> = brute.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| format!("({},{})", k / n, k % n)).collect();
    out.push(check("brute_sections", bad.is_empty(), json!({"blocks": n * n, "failures": bad})));

    if let Some(fan) = l.datum.toric.as_ref().filter(|t| t.family.m() == 0).map(|t| &t.fan) {
        if let Some(t0) = trivial_label(h) {
            let pp = pp_or_empty(fan, cutoff);
            let ours = e.hilbert(t0, t0);
            out.push(check("piecewise_polynomials", pp == ours, json!({"engine": ours, "oracle": pp})));
        }
    }

    let mut tt_failures = Vec::new();
    let mut tt_cases = 0;
    for (j, part) in l.datum.kdatum.parts() {
        let r = part.module.rank;
        for rho in 0..1u64 << r {
            for rhop in 0..1u64 << r {
                let (rho, rhop) = (Character(rho), Character(rhop));
                let iso = twisted_tensor(&part.module, rho, rhop, cutoff)?;
                for t in (0..=cutoff).step_by(2) {
                    tt_cases += 1;
                    let (dim, spans) = oracles::relation_quotient(&part.module, rho.product(rhop), t);
                    if dim != iso.dim(t) || !spans {
                        tt_failures.push(format!("J = {}, ρ = {}, ρ′ = {}, degree {t}", show_j(*j), rho.to_bits(r), rhop.to_bits(r)));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let m = oracles::random_module(&mut rng);
        let (rho, rhop) = (oracles::random_character(m.rank, &mut rng), oracles::random_character(m.rank, &mut rng));
        let iso = twisted_tensor(&m, rho, rhop, 12)?;
        for t in (0..=12).step_by(2) {
            tt_cases += 1;
            let (dim, spans) = oracles::relation_quotient(&m, rho.product(rhop), t);
            if dim != iso.dim(t) || !spans {
                tt_failures.push(format!("random module {:?}, degree {t}", m.degrees()));
            }
        }
    }
    out.push(check("twisted_tensor", tt_failures.is_empty(), json!({"cases": tt_cases, "seed": seed, "failures": tt_failures})));

    let fz = oracles::identity_fuzz(10_000, seed);
    out.push(check("identity_fuzz", fz.passed(), serde_json::to_value(&fz).expect("json")));

    let phi = l.datum.orbit_sets().iter().map(|d| d.len()).max().unwrap_or(0).max(1);
    let qd = oracles::quadrant_check(phi, 500, seed);
    out.push(check("quadrant", qd.passed(), serde_json::to_value(&qd).expect("json")));
    Ok(out)
}

fn pp_or_empty(fan: &Fan, cutoff: i32) -> Vec<usize> {
    oracles::pp_hilbert(fan, cutoff).unwrap_or_default()
}
