mod common;

use rand::Rng;

use m22_core::chambers::{
    cone_contains, cross_check, is_semistable, subgroup_weights, unstable_loci, Chamber, Character, Cone2D, LocusName,
};
use m22_core::moduli::{apply_action, Coord, ModuliPoint, COORDS};
use m22_core::rational::int;
use m22_core::special::c0_point;

const LISTED: [Chamber; 3] = [Chamber::I, Chamber::II, Chamber::III];

#[test]
fn cone_examples() {
    assert!(cone_contains(&Cone2D::open((1, 0), (0, 1)).unwrap(), Character(1, 1)));
    assert!(cone_contains(&Cone2D::closed((1, 0), (3, -1)).unwrap(), Character(3, -1)));
    assert!(!cone_contains(&Cone2D::open((1, 0), (3, -1)).unwrap(), Character(3, -1)));
    assert!(!cone_contains(&Cone2D::open((3, -1), (2, -1)).unwrap(), Character(1, 1)));
}

#[test]
fn semistability_examples() {
    let zero = ModuliPoint::zero();
    for chi in [Character(1, 1), Character(4, -1), Character(-2, 7)] {
        assert!(!is_semistable(&zero, chi));
    }
    let gammas = zero.clone().with(Coord::Gamma12, int(1)).with(Coord::Gamma21, int(-2));
    assert!(is_semistable(&gammas, Character(1, 1)));
    let z1 = zero
        .with(Coord::Alpha21, int(1))
        .with(Coord::Beta21, int(2))
        .with(Coord::Gamma21, int(3))
        .with(Coord::Epsilon21, int(1))
        .with(Coord::PiTilde2, int(4));
    assert!(!is_semistable(&z1, Character(1, 1)));
}

#[test]
fn locus_examples() {
    let zero = ModuliPoint::zero();
    assert_eq!(unstable_loci(&zero, Chamber::I).unwrap(), vec![LocusName::Z1, LocusName::Z2]);
    let p = zero.clone().with(Coord::Alpha21, int(1)).with(Coord::Beta21, int(2));
    assert_eq!(unstable_loci(&p, Chamber::II).unwrap(), vec![LocusName::P2]);
    for ch in LISTED {
        assert!(unstable_loci(&c0_point(), ch).unwrap().is_empty());
        assert!(cross_check(&c0_point(), ch).unwrap());
        assert!(cross_check(&zero, ch).unwrap());
    }
    assert!(unstable_loci(&zero, Chamber::C0a).is_err());
}

#[test]
fn cross_check_on_random_points() {
    let mut r = common::rng(21);
    for k in 0..250 {
        let p = common::rank_le1_point(&mut r, if k % 3 == 0 { 0.6 } else { 0.3 });
        for ch in LISTED {
            assert!(cross_check(&p, ch).unwrap(), "{} {}", ch.name(), p.to_json());
        }
    }
}

#[test]
fn cross_check_counterexample_off_the_scheme() {
    // rank two: α12 = β12 = 0 while α21 and ε12 are nonzero
    let p = ModuliPoint::zero().with(Coord::Alpha21, int(1)).with(Coord::Epsilon12, int(1));
    assert!(!cross_check(&p, Chamber::II).unwrap());
}

#[test]
fn weights_of_the_subgroup() {
    let w: Vec<i64> = subgroup_weights().into_iter().map(|(_, w)| w).collect();
    assert_eq!(w, vec![3, 5, 1, 3, 2, 4]);
    let mut sorted = w.clone();
    sorted.sort();
    assert_eq!(sorted, vec![1, 2, 3, 3, 4, 5]);
    let (a, b) = Coord::Alpha21.weight();
    assert_eq!(a + 2 * b, 3);
}

#[test]
fn semistability_is_torus_invariant_and_constant_on_chambers() {
    let mut r = common::rng(22);
    let chars = [
        (Chamber::I, [Character(1, 1), Character(2, 3), Character(5, 1)]),
        (Chamber::II, [Character(4, -1), Character(7, -2), Character(10, -3)]),
        (Chamber::III, [Character(5, -2), Character(8, -3), Character(7, -3)]),
    ];
    for _ in 0..100 {
        let p = common::rank_le1_point(&mut r, 0.4);
        let l = (common::nonzero(&mut r), common::nonzero(&mut r));
        let moved = apply_action((&l.0, &l.1), &p).unwrap();
        for (ch, cs) in &chars {
            let base = is_semistable(&p, ch.representative());
            for c in cs {
                assert_eq!(is_semistable(&p, *c), base, "{} {c}", ch.name());
                assert_eq!(is_semistable(&moved, *c), base);
            }
        }
    }
}

#[test]
fn loci_are_monotone_under_zeroing() {
    let mut r = common::rng(23);
    for _ in 0..100 {
        let p = common::rank_le1_point(&mut r, 0.3);
        let c = COORDS[r.gen_range(0..COORDS.len())];
        let smaller = p.clone().with(c, int(0));
        for ch in LISTED {
            let a = unstable_loci(&p, ch).unwrap();
            let b = unstable_loci(&smaller, ch).unwrap();
            assert!(a.iter().all(|l| b.contains(l)));
        }
    }
}
