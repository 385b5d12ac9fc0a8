mod common;

use cubeflat::median::{canonical_form, is_isomorphic, CubeComplex, Helly};
use proptest::prelude::*;
use rand::Rng;

use common::*;

fn complex(seed: u64) -> CubeComplex {
    random_wallspace(&mut rng(seed), 8).dual().unwrap().complex
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_matches_breadth_first_search(seed in any::<u64>()) {
        let c = complex(seed);
        let d = bfs_distances(&c);
        for u in 0..c.vertex_count() {
            for v in 0..c.vertex_count() {
                prop_assert_eq!(c.distance(u, v).unwrap(), d[u][v]);
            }
        }
    }

    #[test]
    fn median_is_symmetric_and_geodesic(seed in any::<u64>()) {
        let c = complex(seed);
        let d = bfs_distances(&c);
        let mut r = rng(seed ^ 1);
        let n = c.vertex_count();
        for _ in 0..40 {
            let (x, y, z) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
            let m = c.median(x, y, z).unwrap();
            for (a, b, e) in [(y, x, z), (z, y, x), (x, z, y), (y, z, x), (z, x, y)] {
                prop_assert_eq!(c.median(a, b, e).unwrap(), m);
            }
            prop_assert_eq!(c.median(x, x, y).unwrap(), x);
            for (a, b) in [(x, y), (y, z), (x, z)] {
                prop_assert_eq!(d[a][m] + d[m][b], d[a][b]);
            }
        }
    }

    #[test]
    fn hull_is_the_geodesic_closure(seed in any::<u64>()) {
        let c = complex(seed);
        let d = bfs_distances(&c);
        let mut r = rng(seed ^ 2);
        let s = random_subset(&mut r, c.vertex_count(), 4);
        let h = c.hull(&set(&c, &s)).unwrap();
        prop_assert_eq!(h.to_vec(), interval_closure(&d, &s));
        prop_assert!(c.is_convex(&h).unwrap());
        prop_assert_eq!(c.hull(&h).unwrap(), h.clone());
        let mut bigger = s.clone();
        bigger.push(r.gen_range(0..c.vertex_count()));
        prop_assert!(h.is_subset(&c.hull(&set(&c, &bigger)).unwrap()));
    }

    #[test]
    fn pairwise_meeting_convex_sets_share_a_vertex(seed in any::<u64>()) {
        let c = complex(seed);
        let mut r = rng(seed ^ 3);
        let family: Vec<_> = (0..r.gen_range(1..=4))
            .map(|_| c.hull(&set(&c, &random_subset(&mut r, c.vertex_count(), 3))).unwrap())
            .collect();
        let pairwise = family.iter().all(|a| family.iter().all(|b| a.intersects(b)));
        match c.helly_point(&family).unwrap() {
            Helly::Common { vertex } => prop_assert!(family.iter().all(|y| y.contains(vertex))),
            Helly::NoCommonPoint { first, second } => {
                prop_assert!(!pairwise);
                prop_assert!(!family[first].intersects(&family[second]));
            }
        }
    }

    #[test]
    fn packing_number_is_monotone(seed in any::<u64>()) {
        let c = complex(seed);
        let mut r = rng(seed ^ 4);
        let sets: Vec<_> = (0..r.gen_range(1..=5))
            .map(|_| c.hull(&set(&c, &random_subset(&mut r, c.vertex_count(), 2))).unwrap())
            .collect();
        let mut prev = 0;
        for radius in 0..4 {
            let p = c.packing_number(&sets, radius).unwrap();
            prop_assert!(p >= prev && p <= sets.len());
            prev = p;
        }
    }

    #[test]
    fn isomorphism_agrees_with_petgraph(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (random_wallspace(&mut rng(a), 4), random_wallspace(&mut rng(b), 4));
        let (x, y) = (x.dual().unwrap().complex, y.dual().unwrap().complex);
        let oracle = petgraph::algo::is_isomorphic(&to_petgraph(&x), &to_petgraph(&y));
        prop_assert_eq!(is_isomorphic(&x, &y), oracle);
        prop_assert_eq!(canonical_form(&x) == canonical_form(&y), oracle);
        let n = x.vertex_count();
        let reversed: Vec<(usize, usize, u64)> =
            x.edges().iter().map(|&(u, v, h)| (n - 1 - u, n - 1 - v, h as u64)).collect();
        let r = CubeComplex::from_edges(n, &reversed, &Default::default()).unwrap();
        prop_assert!(is_isomorphic(&x, &r));
    }

    #[test]
    fn product_decomposition_reassembles(a in any::<u64>(), b in any::<u64>()) {
        let c = complex(a).product(&complex(b));
        let p = c.product_decomposition();
        prop_assert!(p.exact);
        let mut rebuilt = CubeComplex::path(0);
        for f in &p.factors {
            rebuilt = rebuilt.product(f);
        }
        // Mixed-radix index of the projection tuple in the rebuilt product.
        let index = |v: usize| {
            p.projection[v].iter().zip(&p.factors).fold(0, |acc, (&x, f)| acc * f.vertex_count() + x)
        };
        let mut seen = vec![false; rebuilt.vertex_count()];
        for v in 0..c.vertex_count() {
            prop_assert!(!std::mem::replace(&mut seen[index(v)], true));
        }
        prop_assert_eq!(c.edge_count(), rebuilt.edge_count());
        for &(u, v, _) in c.edges() {
            let (x, y) = (index(u), index(v));
            prop_assert!(rebuilt.neighbors(x).iter().any(|&(w, _)| w == y));
        }
    }
}

#[test]
fn grid_is_a_product_of_two_paths() {
    let p = CubeComplex::grid(4, 6).product_decomposition();
    assert!(is_isomorphic(&p.factors[0].product(&p.factors[1]), &CubeComplex::grid(4, 6)));
    assert_eq!(p.factors.len(), 2);
    let mut sizes: Vec<usize> = p.factors.iter().map(|f| f.vertex_count()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![4, 6]);
}
