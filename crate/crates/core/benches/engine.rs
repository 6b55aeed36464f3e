use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use extsheaf::document;
use extsheaf::exec;
use extsheaf::ext::{check_algebra_laws, ext_algebra, vanishing_report};
use extsheaf::hsheaf::build_h;

const P1XP1: &str = r#"{"mode":"toric","toric":{"lattice_rank":2,
    "rays":[[1,0],[0,1],[-1,0],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[3,0]]},"labels":"all"}"#;
const CUTOFF: i32 = 12;

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", false), ("sequential", true)]
}

fn engine(c: &mut Criterion) {
    let l = document::load(P1XP1).expect("datum");
    let h = build_h(&l.datum, &l.catalog, CUTOFF).expect("sheaf");
    let e = ext_algebra(&h, CUTOFF).expect("ext");

    let mut g = c.benchmark_group("p1xp1");
    g.sample_size(10);
    for (name, seq) in modes() {
        exec::set_sequential(seq);
        g.bench_function(BenchmarkId::new("build_h", name), |b| b.iter(|| build_h(&l.datum, &l.catalog, CUTOFF).unwrap()));
        g.bench_function(BenchmarkId::new("ext_algebra", name), |b| b.iter(|| ext_algebra(&h, CUTOFF).unwrap()));
        g.bench_function(BenchmarkId::new("algebra_laws", name), |b| b.iter(|| check_algebra_laws(&e)));
        g.bench_function(BenchmarkId::new("vanishing", name), |b| b.iter(|| vanishing_report(&h, CUTOFF).unwrap()));
    }
    exec::set_sequential(false);
    g.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
