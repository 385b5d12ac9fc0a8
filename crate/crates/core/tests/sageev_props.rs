mod common;

use cubeflat::median::{is_isomorphic, ComplexJson, CubeComplex, ValidationConfig};
use proptest::prelude::*;

use common::*;

#[test]
fn grid_duals_are_grids() {
    for m in 1..=6 {
        for n in 1..=6 {
            let d = grid_wallspace(m, n).dual().unwrap();
            let g = CubeComplex::grid(m, n);
            assert!(is_isomorphic(&d.complex, &g), "{m}x{n}");
            assert!(petgraph::algo::is_isomorphic(&to_petgraph(&d.complex), &to_petgraph(&g)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dual_passes_strict_validation(seed in any::<u64>()) {
        let d = random_wallspace(&mut rng(seed), 10).dual().unwrap();
        let j = ComplexJson::from_complex(&d.complex);
        let back = j.to_complex(&ValidationConfig::default()).unwrap();
        prop_assert!(is_isomorphic(&back, &d.complex));
        prop_assert_eq!(d.orientations.len(), d.complex.vertex_count());
    }

    #[test]
    fn canonical_orientations_differ_on_separating_walls(seed in any::<u64>()) {
        let ws = random_wallspace(&mut rng(seed), 10);
        let d = ws.dual().unwrap();
        for p in 0..ws.point_count() {
            for q in 0..ws.point_count() {
                let (op, oq) = (ws.canonical_orientation(p).unwrap(), ws.canonical_orientation(q).unwrap());
                let separating = (0..ws.wall_count()).filter(|&w| ws.side(w, p) != ws.side(w, q)).count();
                prop_assert_eq!(op.0.hamming(&oq.0), separating);
                let (vp, vq) = (d.vertex_of(&op).unwrap(), d.vertex_of(&oq).unwrap());
                prop_assert_eq!(d.complex.distance(vp, vq).unwrap(), separating);
            }
        }
    }

    #[test]
    fn every_orientation_agrees_with_some_point_on_each_pair(seed in any::<u64>()) {
        let ws = random_wallspace(&mut rng(seed), 10);
        let d = ws.dual().unwrap();
        for o in &d.orientations {
            for i in 0..ws.wall_count() {
                for j in 0..ws.wall_count() {
                    let hit = (0..ws.point_count())
                        .any(|p| ws.side(i, p) == o.side(i) && ws.side(j, p) == o.side(j));
                    prop_assert!(hit, "sides {:?}/{:?} of walls {}/{} meet no point", o.side(i), o.side(j), i, j);
                }
            }
        }
    }
}
