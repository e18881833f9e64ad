use mixedcake::cake::{max_envy, Division, Interval, PartitionPoint, ValueDensity};
use mixedcake::degree::{all_faces_degree_sum, boundary_degree, interior_degree};
use mixedcake::labeling::{LabelMode, Labeling};
use mixedcake::rational::{self, int, ratio, Rational};
use mixedcake::simplex::{
    are_friends, canonical_friend, friend_from_f1, friend_orbit, friend_to_f1, permutation_sign,
    zero_face, LabelPermutation,
};
use mixedcake::triangulation::{barycentric_triangulation, Triangulation, DEFAULT_CELL_CAP};
use proptest::prelude::*;
use std::sync::OnceLock;

fn point() -> impl Strategy<Value = PartitionPoint> {
    prop::collection::vec(0i64..5, 2..=5)
        .prop_filter("some positive coordinate", |w| w.iter().any(|&x| x > 0))
        .prop_map(|w| {
            let total: i64 = w.iter().sum();
            PartitionPoint::new(w.iter().map(|&x| ratio(x, total)).collect()).unwrap()
        })
}

fn density() -> impl Strategy<Value = ValueDensity> {
    (
        prop::collection::btree_set(1i64..32, 0..5),
        prop::collection::vec(-7i64..=7, 6),
    )
        .prop_map(|(cuts, vals)| {
            let mut bps = vec![int(0)];
            bps.extend(cuts.iter().map(|&c| ratio(c, 32)));
            bps.push(int(1));
            let values = vals[..bps.len() - 1].iter().map(|&v| int(v)).collect();
            ValueDensity::new(bps, values).unwrap()
        })
}

fn fraction() -> impl Strategy<Value = Rational> {
    (0i64..=64).prop_map(|k| ratio(k, 64))
}

fn triangle_depth2() -> &'static Triangulation {
    static TRI: OnceLock<Triangulation> = OnceLock::new();
    TRI.get_or_init(|| barycentric_triangulation(3, 2, DEFAULT_CELL_CAP).unwrap().0)
}

fn tetra_depth1() -> &'static Triangulation {
    static TRI: OnceLock<Triangulation> = OnceLock::new();
    TRI.get_or_init(|| barycentric_triangulation(4, 1, DEFAULT_CELL_CAP).unwrap().0)
}

proptest! {
    #[test]
    fn values_are_additive(d in density(), a in fraction(), b in fraction(), c in fraction()) {
        let mut p = [a, b, c];
        p.sort();
        let [a, b, c] = p;
        let left = d.value_of(&a, &b).unwrap() + d.value_of(&b, &c).unwrap();
        prop_assert_eq!(left, d.value_of(&a, &c).unwrap());
        prop_assert_eq!(d.interval_value(&Interval::new(a.clone(), c.clone())), d.value_of(&a, &c).unwrap());
    }

    #[test]
    fn antiderivative_reaches_the_total(d in density()) {
        prop_assert_eq!(d.antiderivative(&int(1)), d.total());
        prop_assert_eq!(d.antiderivative(&int(0)), int(0));
    }

    #[test]
    fn friend_orbit_is_one_physical_partition(x in point()) {
        let orbit = friend_orbit(&x);
        prop_assert!(orbit.contains(&x));
        let canon = canonical_friend(&x);
        prop_assert_eq!(&canon, &orbit[0]);
        for y in &orbit {
            prop_assert!(are_friends(&x, y));
            prop_assert_eq!(canonical_friend(y), canon.clone());
        }
    }

    #[test]
    fn friend_maps_invert_each_other(x in point()) {
        for k in zero_face(&x) {
            let y = friend_to_f1(&x, k).unwrap();
            prop_assert!(y.lengths()[0] == int(0));
            prop_assert_eq!(friend_from_f1(&y, k).unwrap(), x.clone());
        }
    }

    #[test]
    fn label_permutation_sign_matches_its_sequence(n in 2usize..7, k in 1usize..7) {
        prop_assume!(k <= n);
        let pi = LabelPermutation::new(n, k).unwrap();
        let image: Vec<usize> = (1..=n).map(|l| pi.apply(l)).collect();
        prop_assert_eq!(permutation_sign(&image), pi.sign());
        for l in 1..=n {
            prop_assert_eq!(pi.invert(pi.apply(l)), l);
        }
    }

    #[test]
    fn rationals_round_trip_through_text(p in -1000i64..1000, q in 1i64..1000) {
        let r = ratio(p, q);
        prop_assert_eq!(rational::parse(&rational::format(&r)).unwrap(), r);
    }

    #[test]
    fn degree_identity_on_triangle(labels in prop::collection::vec(1usize..=3, 25)) {
        let tri = triangle_depth2();
        let ell = &labels[..tri.vertices().len()];
        let b = boundary_degree(tri, ell);
        prop_assert_eq!(Rational::from_integer(interior_degree(tri, ell).into()), b.clone());
        prop_assert_eq!(all_faces_degree_sum(tri, ell), b);
    }

    #[test]
    fn degree_identity_on_tetrahedron(labels in prop::collection::vec(1usize..=4, 15)) {
        let tri = tetra_depth1();
        let ell = &labels[..tri.vertices().len()];
        prop_assert_eq!(
            Rational::from_integer(interior_degree(tri, ell).into()),
            boundary_degree(tri, ell)
        );
    }

    #[test]
    fn relabeling_by_a_permutation_scales_degree_by_its_sign(labels in prop::collection::vec(1usize..=3, 25), k in 1usize..=3) {
        let tri = triangle_depth2();
        let ell = &labels[..tri.vertices().len()];
        let pi = LabelPermutation::new(3, k).unwrap();
        let moved: Vec<usize> = ell.iter().map(|&l| pi.apply(l)).collect();
        prop_assert_eq!(interior_degree(tri, &moved), pi.sign() as i64 * interior_degree(tri, ell));
    }

    #[test]
    fn labeling_dump_round_trips(sets in prop::collection::vec(prop::collection::btree_set(1usize..=4, 1..=3), 1..10)) {
        let labels: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let l = Labeling::new(4, LabelMode::Set, labels).unwrap();
        prop_assert_eq!(Labeling::parse_dump(4, LabelMode::Set, &l.dump()).unwrap(), l);
    }

    #[test]
    fn equal_cuts_of_uniform_cake_are_envy_free(n in 2usize..6, value in -5i64..=5) {
        let agents = vec![ValueDensity::uniform(int(value)); n];
        let cuts = (1..n).map(|i| ratio(i as i64, n as i64)).collect();
        let d = Division::new(cuts, (1..=n).rev().collect()).unwrap();
        prop_assert_eq!(max_envy(&d, &agents).unwrap(), int(0));
    }
}
