mod common;

use std::collections::BTreeMap;

use m22_core::groebner::{ideal_equal, IdealPresentation};
use m22_core::moduli::{
    apply_action, build_curve_ideal, curve_ring, has_standard_basis, minors_rank_ok, curve_order, pi_from_pi_tilde,
    same_orbit, verify_universal_relations, verify_universal_relations_with, Coord, FormulaVariant, ModuliPoint,
    UniversalOptions,
};
use m22_core::poly::{parse_polynomial, Polynomial};
use m22_core::rational::{int, q};
use m22_core::special::{blowdown_image, c0_point};

#[test]
fn pi_conversion_examples() {
    assert_eq!(pi_from_pi_tilde(&ModuliPoint::zero(), 1).unwrap(), int(0));
    assert_eq!(pi_from_pi_tilde(&c0_point(), 1).unwrap(), q(-3, 16));
    assert_eq!(pi_from_pi_tilde(&c0_point(), 2).unwrap(), q(-3, 16));
    let p = ModuliPoint::zero().with(Coord::PiTilde1, int(7)).with(Coord::Beta12, int(2)).with(Coord::Epsilon21, int(3));
    assert_eq!(pi_from_pi_tilde(&p, 1).unwrap(), int(7));
}

#[test]
fn rank_condition_examples() {
    assert!(minors_rank_ok(&ModuliPoint::zero()));
    let c0 = c0_point();
    assert!(minors_rank_ok(&c0));
    // second row is 5/2 times the first
    assert_eq!(&(int(2) * c0.get(Coord::Epsilon12)), &(q(5, 2) * c0.get(Coord::Alpha12)));
    assert_eq!(c0.get(Coord::PiTilde2), &(q(5, 2) * c0.get(Coord::Beta21)));
    let bad = ModuliPoint::zero().with(Coord::Alpha12, int(1)).with(Coord::Epsilon21, int(1));
    assert!(!minors_rank_ok(&bad));
}

#[test]
fn curve_at_zero_point() {
    let r = curve_ring();
    let gens = build_curve_ideal(&ModuliPoint::zero()).generators;
    let want: Vec<Polynomial> = ["f1*f2", "f1*h2", "f2*h1", "h1^2 - f1^3", "h2^2 - f2^3", "h1*h2"]
        .iter()
        .map(|s| parse_polynomial(&r, s).unwrap())
        .collect();
    assert_eq!(gens, want);
}

#[test]
fn curve_over_z1_contains_plane_cubic() {
    // on Z1 the first-index coordinates vanish and h1² − f1³ survives in the square equation
    let p = ModuliPoint::zero()
        .with(Coord::Alpha21, int(2))
        .with(Coord::Beta21, int(3))
        .with(Coord::Gamma21, int(-1))
        .with(Coord::Epsilon21, int(3))
        .with(Coord::PiTilde2, int(9));
    assert!(minors_rank_ok(&p));
    let gens = build_curve_ideal(&p).generators;
    let r = curve_ring();
    let sq = &gens[3];
    let cubic = parse_polynomial(&r, "h1^2 - f1^3").unwrap();
    let rest = sq - &cubic;
    assert!(!rest.involves("h1") && !rest.involves("f1"), "{sq}");
    assert!(has_standard_basis(&p).unwrap());
}

#[test]
fn c0_curve_has_standard_basis() {
    assert!(has_standard_basis(&c0_point()).unwrap());
    assert!(has_standard_basis(&ModuliPoint::zero()).unwrap());
}

#[test]
fn standard_basis_on_random_points() {
    let mut r = common::rng(11);
    for _ in 0..100 {
        let p = common::rank_le1_point(&mut r, 0.25);
        assert!(minors_rank_ok(&p));
        assert!(has_standard_basis(&p).unwrap(), "{}", p.to_json());
    }
    let mut refused = 0;
    while refused < 20 {
        let p = common::dense_point(&mut r);
        if minors_rank_ok(&p) {
            continue;
        }
        assert!(!has_standard_basis(&p).unwrap(), "{}", p.to_json());
        refused += 1;
    }
}

#[test]
fn universal_relations_and_controls() {
    assert!(verify_universal_relations().unwrap());
    let flipped = verify_universal_relations_with(UniversalOptions {
        variant: FormulaVariant { flip_a: true },
        use_minor_ideal: true,
    })
    .unwrap();
    assert!(!flipped.pass);
    let no_minors =
        verify_universal_relations_with(UniversalOptions { variant: FormulaVariant::default(), use_minor_ideal: false })
            .unwrap();
    assert!(!no_minors.pass);
}

#[test]
fn action_examples() {
    let c0 = c0_point();
    assert_eq!(apply_action((&int(1), &int(1)), &c0).unwrap(), c0);
    let (l1, l2) = (q(2, 3), int(-5));
    let back = apply_action((&l1.recip(), &l2.recip()), &c0).unwrap();
    assert_eq!(apply_action((&l1, &l2), &back).unwrap(), c0);
    assert!(apply_action((&int(0), &int(1)), &c0).is_err());
    for (b, f) in [(1, 1), (2, 3), (-1, 4), (5, -2)] {
        let (b, f) = (int(b), int(f));
        let img = blowdown_image(&b, &f).unwrap();
        assert_eq!(apply_action((&(&b * &f), &(&b * &f * &f)), &img).unwrap(), c0);
    }
}

#[test]
fn orbit_examples() {
    let c0 = c0_point();
    assert_eq!(same_orbit(&c0, &c0), Some((int(1), int(1))));
    let a = blowdown_image(&int(1), &int(2)).unwrap();
    let b = blowdown_image(&int(2), &int(1)).unwrap();
    let l = same_orbit(&a, &b).unwrap();
    assert_eq!(apply_action((&l.0, &l.1), &a).unwrap(), b);
    assert_eq!(same_orbit(&ModuliPoint::zero(), &c0), None);
}

#[test]
fn action_rescales_the_curve() {
    let mut r = common::rng(12);
    let ring = curve_ring();
    for _ in 0..10 {
        let p = common::rank_le1_point(&mut r, 0.2);
        let l = (common::nonzero(&mut r), common::nonzero(&mut r));
        let moved = apply_action((&l.0, &l.1), &p).unwrap();
        // f_i ↦ λ_i^2 f_i, h_i ↦ λ_i^3 h_i carries the curve over p to the curve over λ·p
        let mut s: BTreeMap<String, Polynomial> = BTreeMap::new();
        for (i, li) in [(1, &l.0), (2, &l.1)] {
            let f = Polynomial::var(&ring, &format!("f{i}")).unwrap();
            let h = Polynomial::var(&ring, &format!("h{i}")).unwrap();
            s.insert(format!("f{i}"), f.scale(&(li * li)));
            s.insert(format!("h{i}"), h.scale(&(li * li * li)));
        }
        let scaled: Vec<Polynomial> =
            build_curve_ideal(&p).generators.iter().map(|g| g.substitute(&s, &ring).unwrap()).collect();
        let a = IdealPresentation::new(scaled, curve_order(&ring)).unwrap();
        let b = build_curve_ideal(&moved).presentation();
        assert!(ideal_equal(&a, &b).unwrap());
    }
}

#[test]
fn json_rejects_decimals() {
    let mut text = ModuliPoint::zero().to_json();
    assert!(ModuliPoint::from_json(&text).is_ok());
    text = text.replacen("\"0\"", "\"0.5\"", 1);
    assert!(ModuliPoint::from_json(&text).is_err());
}
