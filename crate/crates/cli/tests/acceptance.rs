//! Acceptance criteria 1–10, one line each. Exits nonzero if any criterion fails.

use extsheaf::document::{self, Loaded};
use extsheaf::ext::{self, ExtAlgebra};
use extsheaf::faces::face_axioms;
use extsheaf::graded::{twisted_tensor, Character, KGenerator, TwoGroupModule};
use extsheaf::hsheaf::{build_h, check_local_laws, HSheaf};
use extsheaf::isotropy::Label;
use extsheaf::oracles;
use extsheaf::poset::global_sections;
use extsheaf::sets::DivSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::time::{Duration, Instant};

/// Internal-degree cutoff for every criterion.
const CUTOFF: i32 = 20;
/// Wall-clock budget per criterion.
const BUDGET: Duration = Duration::from_secs(60);
/// All comparisons are exact over Q or over the integers: no tolerance.
const SEED: u64 = 20_261_014;
const FUZZ_TRIALS: usize = 10_000;
const QUADRANT_MAX_PHI: usize = 4;
const QUADRANT_CAP: usize = 500;
const RANDOM_SHEAVES: usize = 100;
const RANDOM_TENSOR_CASES: usize = 200;
/// Degree cutoff for the exhaustive sweep over all groups of order ≤ 8.
const GROUP_SWEEP_CUTOFF: i32 = 8;

const DATUMS: [&str; 7] =
    ["p1_trivial", "p1_halfint", "p1xp1", "p2", "canonical_l1", "canonical_l2", "synthetic_symmetric_rank1"];

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"))
}

struct Datum {
    name: &'static str,
    loaded: Loaded,
    h: HSheaf,
    e: ExtAlgebra,
}

fn load(name: &'static str) -> Datum {
    let text = std::fs::read_to_string(example(name)).expect("example readable");
    let loaded = document::load(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    let h = build_h(&loaded.datum, &loaded.catalog, CUTOFF).unwrap_or_else(|e| panic!("{name}: {e}"));
    let e = ext::ext_algebra(&h, CUTOFF).unwrap_or_else(|e| panic!("{name}: {e}"));
    Datum { name, loaded, h, e }
}

fn label(d: &Datum, delta: &[&str], rho: u64) -> usize {
    let mut s = DivSet::EMPTY;
    for v in delta {
        s = s.with(d.loaded.datum.divisors.iter().position(|x| x == v).expect("divisor"));
    }
    d.loaded.catalog.index_of(&Label { delta: s, rho: Character(rho) }).expect("label in catalog")
}

fn series(first: usize, step: usize, value: usize) -> Vec<usize> {
    (0..=CUTOFF as usize).map(|t| usize::from(t >= first && (t - first).is_multiple_of(step)) * value).collect()
}

type Outcome = Result<String, String>;

fn criterion1(ds: &[Datum]) -> Outcome {
    let mut notes = Vec::new();
    for d in ds.iter().filter(|d| ["p1_trivial", "p1xp1", "p2"].contains(&d.name)) {
        let fan = &d.loaded.datum.toric.as_ref().ok_or("not toric")?.fan;
        let pp = oracles::pp_hilbert(fan, CUTOFF).map_err(|e| e.to_string())?;
        let t = label(d, &[], 0);
        let ours = d.e.hilbert(t, t);
        if ours != pp {
            return Err(format!("{}: engine {ours:?} vs oracle {pp:?}", d.name));
        }
        notes.push(format!("{} deg2={}", d.name, ours[2]));
    }
    Ok(notes.join(", "))
}

fn criterion2(ds: &[Datum]) -> Outcome {
    let mut poly = 0;
    for d in ds {
        let g = ext::gysin_check(&d.h, &d.e);
        if !g.passed() {
            return Err(format!("{}: {:?}", d.name, g.failures));
        }
        poly += g.polynomial_blocks;
    }
    let p1 = ds.iter().find(|d| d.name == "p1_trivial").ok_or("p1_trivial missing")?;
    let (plus, zero) = (label(p1, &["v+"], 0), label(p1, &[], 0));
    let got = p1.e.hilbert(plus, zero);
    if got != series(2, 2, 1) {
        return Err(format!("P1 block (α₊,α₀) = {got:?}"));
    }
    Ok(format!("{poly} single-orbit polynomial blocks, P1 (α₊,α₀) first nonzero in degree 2"))
}

fn criterion3(ds: &[Datum]) -> Outcome {
    let d = ds.iter().find(|d| d.name == "p1_halfint").ok_or("p1_halfint missing")?;
    let (sign, triv) = (label(d, &[], 1), label(d, &[], 0));
    let sky = [label(d, &["v+"], 0), label(d, &["v-"], 0)];
    let zero = vec![0; CUTOFF as usize + 1];
    if d.e.hilbert(sign, sign) != series(0, usize::MAX, 1) {
        return Err(format!("Ext(L_sign, L_sign) = {:?}", d.e.hilbert(sign, sign)));
    }
    for other in std::iter::once(triv).chain(sky) {
        if d.e.hilbert(sign, other) != zero || d.e.hilbert(other, sign) != zero {
            return Err(format!("sign block with label {other} is nonzero"));
        }
    }
    Ok("Ext(sign,sign) = Q[0]; sign vs trivial and both skyscrapers vanish".into())
}

fn criterion4(ds: &[Datum]) -> Outcome {
    let mut opens = 0;
    let mut mv = 0;
    for d in ds {
        let r = ext::vanishing_report(&d.h, CUTOFF).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{}: nonvanishing {:?}, failures {:?}", d.name, r.nonvanishing.first(), r.failures.first()));
        }
        opens += r.opens_checked;
        mv += r.mayer_vietoris_steps;
    }
    Ok(format!("{opens} G-stable opens, {mv} Mayer–Vietoris steps"))
}

fn criterion5(ds: &[Datum]) -> Outcome {
    let mut products = 0;
    for d in ds {
        let r = ext::concentration_check(&d.h, &d.e).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{}: {:?} {:?}", d.name, r.nonvanishing.first(), r.failures));
        }
        products += r.products_compared;
    }
    Ok(format!("{products} structure constants compared"))
}

fn criterion6(ds: &[Datum]) -> Outcome {
    let mut triples = 0;
    for d in ds {
        let ax = face_axioms(&d.h.faces);
        if !ax.passed() {
            return Err(format!("{}: {:?}", d.name, ax.failures));
        }
        let local = check_local_laws(&d.h);
        if !local.passed() {
            return Err(format!("{}: {:?}", d.name, local.failures));
        }
        let laws = ext::check_algebra_laws(&d.e);
        if !laws.passed() {
            return Err(format!("{}: {:?}", d.name, laws.failures));
        }
        triples += laws.associativity_triples;
    }
    Ok(format!("{triples} basis triples"))
}

fn criterion7() -> Outcome {
    let mut sets = 0;
    for phi in 1..=QUADRANT_MAX_PHI {
        let r = oracles::quadrant_check(phi, QUADRANT_CAP, SEED);
        if !r.passed() {
            return Err(format!("{:?}", r.failures.first()));
        }
        sets += r.multisets;
    }
    Ok(format!("{sets} component multisets, |Φ| ≤ {QUADRANT_MAX_PHI}"))
}

fn criterion8() -> Outcome {
    let r = oracles::identity_fuzz(FUZZ_TRIALS, SEED);
    let p = oracles::identity_patterns();
    if !r.passed() || !p.passed() {
        return Err(format!("{:?} {:?}", r.failures.first(), p.failures.first()));
    }
    Ok(format!("{FUZZ_TRIALS} quadruples, seed {SEED}"))
}

fn tensor_agrees(m: &TwoGroupModule, rho: Character, rhop: Character, cutoff: i32) -> bool {
    let iso = twisted_tensor(m, rho, rhop, cutoff).expect("characters fit");
    (0..=cutoff).step_by(2).all(|t| {
        let (dim, spans) = oracles::relation_quotient(m, rho.product(rhop), t);
        dim == iso.dim(t) && spans
    })
}

fn criterion9(ds: &[Datum]) -> Outcome {
    let mut sheaves = 0;
    for d in ds {
        let all = d.h.faces.space.all_points();
        let n = d.h.nlabels();
        for k in 0..n * n {
            let brute = oracles::brute_sections(&d.h.faces.space, &all, &d.h.blocks()[k].sheaf, CUTOFF);
            if !oracles::sections_agree(&d.e.sections[k], &brute, CUTOFF) {
                return Err(format!("{} block ({},{})", d.name, k / n, k % n));
            }
            sheaves += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_SHEAVES {
        let space = oracles::random_space(rng.gen_range(1..=6), &mut rng);
        let sheaf = oracles::random_sheaf(&space, &mut rng);
        let all = space.all_points();
        let ours = global_sections(&space, &all, &sheaf, 2).map_err(|e| e.to_string())?;
        if !oracles::sections_agree(&ours, &oracles::brute_sections(&space, &all, &sheaf, 2), 2) {
            return Err("random sheaf disagreement".into());
        }
        sheaves += 1;
    }
    // Every group of order ≤ 8, with one generator per character, and all character pairs.
    let mut cases = 0;
    for rank in 0..=3usize {
        let gens = (0..1u64 << rank)
            .map(|c| KGenerator { name: format!("Y{c}"), degree: 2, action: Character(c) })
            .collect();
        let m = TwoGroupModule::new(rank, gens).map_err(|e| e.to_string())?;
        for rho in 0..1u64 << rank {
            for rhop in 0..1u64 << rank {
                cases += 1;
                if !tensor_agrees(&m, Character(rho), Character(rhop), GROUP_SWEEP_CUTOFF) {
                    return Err(format!("rank {rank}, ρ = {rho}, ρ′ = {rhop}"));
                }
            }
        }
    }
    for _ in 0..RANDOM_TENSOR_CASES {
        let m = oracles::random_module(&mut rng);
        let (rho, rhop) = (oracles::random_character(m.rank, &mut rng), oracles::random_character(m.rank, &mut rng));
        cases += 1;
        if !tensor_agrees(&m, rho, rhop, 12) {
            return Err(format!("random module {:?}", m.degrees()));
        }
    }
    Ok(format!("{sheaves} sheaves, {cases} twisted tensors"))
}

fn check_all_suite(sequential: bool) -> Result<Vec<String>, String> {
    DATUMS
        .iter()
        .map(|n| {
            let mut argv = vec!["extsheaf".to_string(), "--input".into(), example(n).display().to_string()];
            argv.extend(["--command", "check-all", "--seed", "5"].map(String::from));
            if sequential {
                argv.push("--sequential".into());
            }
            let out = extsheaf_cli::run(argv);
            if out.code != 0 {
                return Err(format!("{n}: exit {}: {}", out.code, out.stderr));
            }
            Ok(out.stdout)
        })
        .collect()
}

fn criterion10() -> Outcome {
    let first = check_all_suite(false)?;
    let second = check_all_suite(true)?;
    match first.iter().zip(&second).position(|(a, b)| a != b) {
        Some(i) => Err(format!("{} differs between runs", DATUMS[i])),
        None => Ok(format!("{} reports, {} bytes, parallel vs sequential", first.len(), first.iter().map(String::len).sum::<usize>())),
    }
}

fn main() {
    let start = Instant::now();
    let ds: Vec<Datum> = DATUMS.iter().map(|n| load(n)).collect();
    println!("acceptance: built {} datums at cutoff {CUTOFF} in {:.1}s", ds.len(), start.elapsed().as_secs_f64());
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("toric equivariant cohomology = piecewise polynomials", Box::new(|| criterion1(&ds))),
        ("Gysin shifts", Box::new(|| criterion2(&ds))),
        ("twisted local systems on p1_halfint", Box::new(|| criterion3(&ds))),
        ("vanishing on every G-stable open", Box::new(|| criterion4(&ds))),
        ("concentration and dual path", Box::new(|| criterion5(&ds))),
        ("algebra laws and face-poset axioms", Box::new(|| criterion6(&ds))),
        ("quadrant lemma", Box::new(criterion7)),
        ("identity fuzz", Box::new(criterion8)),
        ("oracle independence", Box::new(|| criterion9(&ds))),
        ("determinism of check-all", Box::new(criterion10)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let r = match r {
            Ok(m) if dt > BUDGET => Err(format!("{m}; over budget")),
            other => other,
        };
        match r {
            Ok(m) => println!("criterion {:>2} PASS  {name}: {m} ({:.1}s)", i + 1, dt.as_secs_f64()),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {m} ({:.1}s)", i + 1, dt.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 10 criteria passed");
}
