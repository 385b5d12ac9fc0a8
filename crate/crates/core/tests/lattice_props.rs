use cubeflat::lattice::{binomial, commensurable, hnf, intersect, obstruction, Sublattice};
use proptest::prelude::*;

fn gens(p: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, p), 0..=3)
}

fn lattice(p: usize) -> impl Strategy<Value = Sublattice> {
    gens(p).prop_map(move |g| hnf(p, &g).unwrap())
}

fn line(p: usize) -> impl Strategy<Value = Sublattice> {
    prop::collection::vec(-4i64..=4, p)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(move |v| hnf(p, &[v]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_ignores_unimodular_moves(g in gens(3), f in -3i64..=3, i in 0usize..3, j in 0usize..3) {
        let base = hnf(3, &g).unwrap();
        let mut moved = g.clone();
        if i < moved.len() && j < moved.len() && i != j {
            let src = moved[j].clone();
            for (x, y) in moved[i].iter_mut().zip(&src) {
                *x += f * y;
            }
            moved.swap(i, j);
        }
        if let Some(first) = moved.first_mut() {
            first.iter_mut().for_each(|x| *x = -*x);
        }
        prop_assert_eq!(hnf(3, &moved).unwrap(), base);
    }

    #[test]
    fn intersection_is_commutative_and_associative(a in lattice(3), b in lattice(3), c in lattice(3)) {
        prop_assert_eq!(intersect(&a, &b).unwrap(), intersect(&b, &a).unwrap());
        let left = intersect(&intersect(&a, &b).unwrap(), &c).unwrap();
        let right = intersect(&a, &intersect(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(intersect(&a, &a).unwrap(), a.clone());
        prop_assert_eq!(intersect(&a, &Sublattice::full(3)).unwrap(), a);
    }

    #[test]
    fn commensurability_is_an_equivalence(a in lattice(2), b in lattice(2), c in lattice(2)) {
        prop_assert!(commensurable(&a, &a).unwrap());
        prop_assert_eq!(commensurable(&a, &b).unwrap(), commensurable(&b, &a).unwrap());
        if commensurable(&a, &b).unwrap() && commensurable(&b, &c).unwrap() {
            prop_assert!(commensurable(&a, &c).unwrap());
        }
    }

    #[test]
    fn adding_lattices_never_unfires(ls in prop::collection::vec(line(2), 0..6), extra in line(2)) {
        let before = obstruction(2, 1, &ls).unwrap();
        let mut more = ls.clone();
        more.push(extra);
        let after = obstruction(2, 1, &more).unwrap();
        prop_assert!(after.class_count >= before.class_count);
        prop_assert!(!before.fired || after.fired);
    }

    #[test]
    fn binomial_follows_pascal(n in 1usize..60, k in 1usize..60) {
        prop_assume!(k <= n);
        let lhs = binomial(n, k).unwrap();
        prop_assert_eq!(lhs, binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap());
    }
}
