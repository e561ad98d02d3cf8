mod common;

use common::oracle::{check_cohomology_instance, small_instances};

// With p odd and |G| <= 8 the Sylow p-subgroup is cyclic, so every H1_loc
// here is zero; the oracle still pins Z1, B1 and Z1_loc exactly.
#[test]
fn engine_matches_brute_force_on_small_groups() {
    let instances = small_instances();
    assert!(instances.len() >= 20);
    for (gens, p, n, kind) in instances {
        let brute = check_cohomology_instance(&gens, p, n, kind)
            .unwrap_or_else(|e| panic!("gens {gens:?} over Z/{p}^{n}, module {kind}: {e}"));
        assert!(brute.b1 <= brute.z1_loc && brute.z1_loc <= brute.z1);
    }
}

#[test]
fn engine_matches_brute_force_on_noncyclic_three_groups() {
    use h1loc_core::ModuleKind::*;
    let cases: Vec<Vec<[u64; 4]>> = vec![
        vec![[1, 3, 0, 1], [4, 0, 0, 7]],
        vec![[1, 3, 0, 1], [1, 0, 3, 1]],
        vec![[4, 0, 0, 1], [1, 0, 0, 4]],
        vec![[1, 1, 0, 1], [4, 0, 0, 7]],
        vec![[1, 3, 0, 1], [8, 0, 0, 1]],
    ];
    let mut nonzero = 0;
    for gens in cases {
        for kind in [Full, PTorsion] {
            let brute = common::oracle::check_cohomology_instance_any_size(&gens, 3, 2, kind)
                .unwrap_or_else(|e| panic!("gens {gens:?}, module {kind}: {e}"));
            nonzero += usize::from(brute.h1_loc() > 1);
        }
    }
    assert!(nonzero > 0);
}
