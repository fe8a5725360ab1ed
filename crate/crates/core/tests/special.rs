use m22_core::catalog::{classify_geometric, is_z_stable, CurveDescription, Stability};
use m22_core::chambers::{unstable_loci, Chamber};
use m22_core::moduli::{minors_rank_ok, Coord};
use m22_core::rational::{int, q};
use m22_core::special::{
    blowdown_image, c0_point, run_check, verify_blowdown_orbit_report, verify_c0_geometry_report,
    verify_p2_probe_report, verify_report, verify_weierstrass_with, weierstrass_specialization_matches,
    BlowdownImage, WeierstrassConstants, CHECK_NAMES,
};

#[test]
fn blowdown_examples() {
    assert_eq!(blowdown_image(&int(1), &int(1)).unwrap(), c0_point());
    let p = blowdown_image(&int(1), &int(2)).unwrap();
    assert_eq!(p.get(Coord::Alpha21), &int(8));
    assert_eq!(p.get(Coord::Beta21), &int(48));
    assert!(blowdown_image(&int(0), &int(2)).is_err());
    let b = BlowdownImage::new(int(3), int(-2)).unwrap();
    assert_eq!(b.beta2(), int(-12));
}

#[test]
fn blowdown_points_are_stable_everywhere() {
    for (b, f) in [(1, 1), (1, 2), (3, -2), (-5, 7)] {
        let p = blowdown_image(&int(b), &q(f, 3)).unwrap();
        assert!(minors_rank_ok(&p));
        for ch in [Chamber::I, Chamber::II, Chamber::III] {
            assert!(unstable_loci(&p, ch).unwrap().is_empty());
        }
    }
}

#[test]
fn orbit_identity_and_controls() {
    let r = verify_blowdown_orbit_report().unwrap();
    assert!(r.pass);
    assert!(r.mismatches.is_empty());
    assert!(!r.flipped_pass);
    assert!(r.numeric_pass);
}

#[test]
fn c0_point_examples() {
    let c0 = c0_point();
    assert_eq!(c0.get(Coord::PiTilde1), &q(15, 4));
    assert_eq!(c0.get(Coord::PiTilde2), &q(15, 4));
    assert!(minors_rank_ok(&c0));
    for ch in [Chamber::I, Chamber::II, Chamber::III] {
        assert!(unstable_loci(&c0, ch).unwrap().is_empty());
    }
    let d = CurveDescription::c0();
    assert!(!is_z_stable(&d));
    assert_eq!(classify_geometric(&d).unwrap().i, Stability::Stable);
}

#[test]
fn c0_geometry() {
    let r = verify_c0_geometry_report().unwrap();
    assert!(r.pass);
    assert!(r.branches_on_curve);
    assert_eq!(r.distinct_kernels, 2);
    assert!(r.union_equals_curve);
    assert_eq!(r.intersection_colength, Some(3));
    assert!(r.intersection_local);
    assert_eq!(r.branches.len(), 2);
}

#[test]
fn p2_probe() {
    let r = verify_p2_probe_report().unwrap();
    assert!(r.pass);
    assert!(r.with_minor["plane_x_eq_y"]);
    assert!(r.with_minor["parabola"]);
    assert!(r.with_minor["cubic_equation"]);
    assert!(r.with_minor["parabola_on_curve"]);
    assert!(!r.without_minor["parabola_on_curve"]);
}

#[test]
fn weierstrass_relations_and_control() {
    assert!(verify_weierstrass_with(&WeierstrassConstants::default()).unwrap().pass);
    let bad = WeierstrassConstants { beta: "q1".into(), ..Default::default() };
    assert!(!verify_weierstrass_with(&bad).unwrap().pass);
    let qs = [int(2), q(-1, 2), int(3), int(0), q(7, 5)];
    assert!(weierstrass_specialization_matches(&qs, 12).unwrap());
}

#[test]
fn report_lists_every_check() {
    let r = verify_report(&[]).unwrap();
    assert_eq!(r.len(), CHECK_NAMES.len());
    assert!(r.values().all(|c| c.pass));
    assert!(run_check("nonsense").is_err());
}
