use extsheaf::document;
use extsheaf::ext::{check_algebra_laws, ext_algebra, ext_module};
use extsheaf::graded::{gysin_shift, nabla};
use extsheaf::hsheaf::build_h;
use extsheaf::oracles::{brute_sections, random_sheaf, random_space, sections_agree};
use extsheaf::poset::{cech_cohomology, global_sections};
use extsheaf::sets::DivSet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P1: &str = r#"{"mode":"toric","toric":{"lattice_rank":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]},"labels":"all","cutoff":8}"#;

#[test]
fn p1_from_document() {
    let l = document::load(P1).unwrap();
    let h = build_h(&l.datum, &l.catalog, 8).unwrap();
    let e = ext_algebra(&h, 8).unwrap();
    assert_eq!(e.hilbert(0, 0), vec![1, 0, 2, 0, 2, 0, 2, 0, 2]);
    assert!(check_algebra_laws(&e).passed());
    let dims: usize = (0..l.catalog.len()).map(|a| ext_module(&e, a).unwrap().basis.len()).sum();
    assert_eq!(dims, e.dim());
}

#[test]
fn unit_is_sum_of_idempotents() {
    let l = document::load(P1).unwrap();
    let h = build_h(&l.datum, &l.catalog, 4).unwrap();
    let e = ext_algebra(&h, 4).unwrap();
    let one = e.unit();
    assert_eq!(e.mul(&one, &one), one);
    for (a, u) in e.units.iter().enumerate() {
        assert_eq!(e.mul(u, u), *u, "1_{a} idempotent");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_section_paths_agree(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = random_space(n, &mut rng);
        let sheaf = random_sheaf(&space, &mut rng);
        let all = space.all_points();
        let limit = global_sections(&space, &all, &sheaf, 2).unwrap();
        prop_assert!(sections_agree(&limit, &brute_sections(&space, &all, &sheaf, 2), 2));
        let cech = cech_cohomology(&space, &all, &sheaf, 2).unwrap();
        prop_assert_eq!(cech.h0.dims(), limit.dims());
    }

    #[test]
    fn sections_on_an_open_match_brute_force(seed in any::<u64>(), n in 2usize..7, pick in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = random_space(n, &mut rng);
        let sheaf = random_sheaf(&space, &mut rng);
        let u = space.minimal_open(pick % n);
        let limit = global_sections(&space, &u, &sheaf, 2).unwrap();
        prop_assert!(sections_agree(&limit, &brute_sections(&space, &u, &sheaf, 2), 2));
    }

    #[test]
    fn gysin_degree_identity(a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let (a, b, c) = (DivSet(a as u64), DivSet(b as u64), DivSet(c as u64));
        prop_assert_eq!(gysin_shift(a, b) + gysin_shift(b, c), gysin_shift(a, c) + nabla(a, b, c).len());
    }
}
