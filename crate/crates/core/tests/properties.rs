use cremona_core::baselocus::{chamber_signature_with, k_w, wdim_with};
use cremona_core::cycles::{kappa, sweeping_curve, Join, WeylPlanes};
use cremona_core::lattice::{dm_pairing, intersect};
use cremona_core::oracle::{system_dimension, InterpolationProblem};
use cremona_core::weyl::{cremona_curve, cremona_divisor, CremonaIndexSet};
use cremona_core::{CurveClass, DivisorClass, Space};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

fn x36() -> Space {
    Space::new(3, 6).unwrap()
}

fn planes_x36() -> &'static WeylPlanes {
    static P: OnceLock<WeylPlanes> = OnceLock::new();
    P.get_or_init(|| WeylPlanes::build(x36(), None).unwrap())
}

fn divisor(space: Space) -> impl Strategy<Value = DivisorClass> {
    (-5i64..15, prop::collection::vec(-4i64..10, space.s))
        .prop_map(move |(d, m)| DivisorClass::from_ints(space, d, &m).unwrap())
}

fn curve(space: Space) -> impl Strategy<Value = CurveClass> {
    (-5i64..15, prop::collection::vec(-4i64..10, space.s))
        .prop_map(move |(d, m)| CurveClass::from_ints(space, d, &m).unwrap())
}

fn gamma(space: Space) -> impl Strategy<Value = CremonaIndexSet> {
    Just((0..space.s).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |v| CremonaIndexSet::from_zero_based(space, &v[..space.n + 1]).unwrap())
}

fn join(space: Space) -> impl Strategy<Value = Join> {
    (0..=(space.n + 1) / 2, Just((0..space.s).collect::<Vec<_>>()).prop_shuffle(), 0..space.s)
        .prop_filter_map("join fits", move |(t, perm, size)| Join::new(space, &perm[..size], t).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cremona_is_an_involution(d in divisor(Space::new(4, 7).unwrap()), c in curve(Space::new(4, 7).unwrap()),
                                g in gamma(Space::new(4, 7).unwrap())) {
        let d2 = cremona_divisor(&cremona_divisor(&d, &g).unwrap().0, &g).unwrap().0;
        let c2 = cremona_curve(&cremona_curve(&c, &g).unwrap().0, &g).unwrap().0;
        prop_assert_eq!(d2, d);
        prop_assert_eq!(c2, c);
    }

    #[test]
    fn pairings_are_preserved(d in divisor(Space::new(3, 8).unwrap()), e in divisor(Space::new(3, 8).unwrap()),
                              c in curve(Space::new(3, 8).unwrap()), g in gamma(Space::new(3, 8).unwrap())) {
        let (d1, _) = cremona_divisor(&d, &g).unwrap();
        let (e1, _) = cremona_divisor(&e, &g).unwrap();
        let (c1, _) = cremona_curve(&c, &g).unwrap();
        prop_assert_eq!(intersect(&d1, &c1).unwrap(), intersect(&d, &c).unwrap());
        prop_assert_eq!(dm_pairing(&d1, &e1).unwrap(), dm_pairing(&d, &e).unwrap());
    }

    #[test]
    fn kappa_is_minus_intersection_with_sweeping_curve(j in join(Space::new(5, 8).unwrap()),
                                                       d in divisor(Space::new(5, 8).unwrap())) {
        prop_assert_eq!(kappa(&j, &d).unwrap(), -intersect(&d, &sweeping_curve(&j)).unwrap());
    }

    #[test]
    fn wdim_is_weyl_invariant(d in divisor(x36()), g in gamma(x36())) {
        let (img, _) = cremona_divisor(&d, &g).unwrap();
        let a = wdim_with(&d, planes_x36()).unwrap().value;
        let b = wdim_with(&img, planes_x36()).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn base_locus_multiplicity_scales(d in divisor(x36()), lambda in 0i64..6) {
        let scaled = d.scaled(&BigInt::from(lambda));
        for p in planes_x36().planes() {
            prop_assert_eq!(k_w(&scaled, p).unwrap(), k_w(&d, p).unwrap() * lambda);
        }
    }

    #[test]
    fn chamber_signature_is_scale_invariant(d in divisor(x36()), lambda in 1i64..6) {
        let a = chamber_signature_with(&d, planes_x36()).unwrap();
        let b = chamber_signature_with(&d.scaled(&BigInt::from(lambda)), planes_x36()).unwrap();
        prop_assert_eq!(a.sign_string(), b.sign_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn oracle_is_monotone(d in 1u32..6, mults in prop::collection::vec(1u32..4, 1..6), i in 0usize..6, seed in any::<u64>()) {
        let i = i % mults.len();
        let base = system_dimension(&InterpolationProblem::new(2, d, mults.clone(), seed)).unwrap().dimension;
        let mut more = mults.clone();
        more[i] += 1;
        let fewer_forms = system_dimension(&InterpolationProblem::new(2, d, more, seed)).unwrap().dimension;
        let higher = system_dimension(&InterpolationProblem::new(2, d + 1, mults, seed)).unwrap().dimension;
        prop_assert!(fewer_forms <= base);
        prop_assert!(higher >= base);
    }
}
