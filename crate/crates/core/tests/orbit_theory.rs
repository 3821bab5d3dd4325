use supchar::algebra::{census, is_singular, is_singular_form, ActionSpace, Algebra, Bounds, DualForm, Idempotent};
use supchar::scalars::Field;
use supchar::triangular::{basic_subsets, is_regular_d, make_triangular};

fn tri(n: usize, p: u32) -> Algebra {
    make_triangular(n, &Field::new(p, 1).unwrap()).unwrap()
}

#[test]
fn regular_counts_agree_and_residuals_vanish() {
    for n in 2..=4 {
        for p in [2, 3] {
            let alg = tri(n, p);
            let j = census(&alg, ActionSpace::J, &Bounds::default()).unwrap();
            let d = census(&alg, ActionSpace::Dual, &Bounds::default()).unwrap();
            assert_eq!(j.n_regular_corner, d.n_regular_corner, "t({n},{p})");
            assert_eq!((j.residual, d.residual), (0, 0), "t({n},{p})");
            assert_eq!(j.n(), basic_subsets(n).len());
            assert_eq!(d.n(), basic_subsets(n).len());
        }
    }
}

#[test]
fn frozen_census_values() {
    // regular rook placements: n=3 {(1,2),(2,3)}; n=4 {(1,2),(3,4)}, {(1,3),(2,4)}, {(1,4),(2,3)}, {(1,2),(2,3),(3,4)}
    let all = |n: usize| Idempotent::all(n).last().unwrap().0 as usize;
    for (n, p, orbits, regular) in [(2, 2, 2, 1), (3, 2, 5, 1), (3, 3, 5, 1), (4, 2, 15, 4)] {
        let alg = tri(n, p);
        let j = census(&alg, ActionSpace::J, &Bounds::default()).unwrap();
        assert_eq!((j.n(), j.n_regular_corner[all(n)]), (orbits, regular), "t({n},{p})");
    }
}

#[test]
fn singularity_constant_on_orbits() {
    for (n, p) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
        let alg = tri(n, p);
        let r = alg.radical_dim();
        for space in [ActionSpace::J, ActionSpace::Dual] {
            let c = census(&alg, space, &Bounds::default()).unwrap();
            for o in &c.orbits {
                for &m in &o.members {
                    let v = alg.unpack(m, r);
                    let s = match space {
                        ActionSpace::J => is_singular(&alg, &alg.from_j_coords(&v)),
                        _ => is_singular_form(&alg, &DualForm(v)),
                    };
                    assert_eq!(s, o.singular, "t({n},{p}) {space:?} member {m}");
                }
            }
        }
    }
}

#[test]
fn annihilator_test_matches_rook_criterion() {
    for n in 2..=4 {
        for p in [2, 3] {
            let alg = tri(n, p);
            let j = census(&alg, ActionSpace::J, &Bounds::default()).unwrap();
            let d = census(&alg, ActionSpace::Dual, &Bounds::default()).unwrap();
            let mut seen_j = Vec::new();
            let mut seen_d = Vec::new();
            for b in basic_subsets(n) {
                let v = b.element_coords(n);
                let regular = is_regular_d(&b, n);
                assert_eq!(!is_singular(&alg, &alg.from_j_coords(&v)), regular, "{b}");
                assert_eq!(!is_singular_form(&alg, &DualForm(v.clone())), regular, "{b}");
                seen_j.push(j.orbit_index(alg.pack(&v)));
                seen_d.push(d.orbit_index(alg.pack(&v)));
            }
            seen_j.sort_unstable();
            seen_j.dedup();
            seen_d.sort_unstable();
            seen_d.dedup();
            assert_eq!(seen_j.len(), j.n());
            assert_eq!(seen_d.len(), d.n());
        }
    }
}
