use m22_core::canonical::{describe, extract, sample_family, FamilyKind};
use m22_core::catalog::{
    catalog, check, classify_geometric, classify_invariant, invariants_of, is_z_stable, validate, Branch,
    CohomInvariants, CurveDescription, SpecialIso, Stability,
};
use m22_core::chambers::{unstable_loci, Chamber};
use m22_core::Error;

use Branch::*;
use Stability::*;

fn node_node() -> CurveDescription {
    CurveDescription::two(1, 1, 1, &[(Node, Node)])
}

#[test]
fn validation_examples() {
    assert!(validate(&CurveDescription::irreducible(false, None)));
    assert!(!validate(&CurveDescription::two(0, 0, 2, &[(Smooth, Smooth), (Smooth, Smooth)])));
    assert!(validate(&node_node()));
    assert!(!validate(&CurveDescription::two(1, 1, 1, &[(Node, Node), (Node, Node)])));
}

#[test]
fn missing_special_tag_is_not_tabulated() {
    let d = CurveDescription::two(1, 0, 2, &[(Cusp, Smooth)]);
    assert!(matches!(check(&d), Err(Error::NotTabulated(_))));
}

#[test]
fn geometric_examples() {
    let w = classify_geometric(&CurveDescription::irreducible(true, None)).unwrap();
    assert_eq!((w.i, w.ii, w.iii), (Stable, Stable, Unstable));
    let n = classify_geometric(&node_node()).unwrap();
    assert_eq!((n.i, n.ii, n.iii), (Stable, Unstable, Unstable));
    let c = classify_geometric(&CurveDescription::cusp_special(SpecialIso::Ccusp10)).unwrap();
    assert_eq!((c.i, c.ii, c.iii), (Unstable, Unstable, Unstable));
    let z = classify_geometric(&CurveDescription::c0()).unwrap();
    assert_eq!((z.i, z.ii, z.iii), (Stable, Stable, Stable));
}

#[test]
fn invariant_examples() {
    let n = invariants_of(&node_node()).unwrap();
    assert_eq!((n.h1_3p1, n.h1_3p2, n.h1_p1p2, n.max_e), (1, 1, 0, 5));
    let z = invariants_of(&CurveDescription::c0()).unwrap();
    assert_eq!((z.h1_3p1, z.h1_3p2, z.max_e), (0, 0, 5));
    let c = invariants_of(&CurveDescription::cusp_special(SpecialIso::Ccusp10)).unwrap();
    assert_eq!((c.h1_2p1, c.max_e), (0, 6));
}

#[test]
fn invariant_classifier_examples() {
    let base = CohomInvariants { h1_2p1: 0, h1_3p1: 0, h1_3p2: 0, h1_p1p2: 0, max_e: 3 };
    assert_eq!(classify_invariant(&base).ii, Stable);
    assert_eq!(classify_invariant(&CohomInvariants { max_e: 6, ..base }).iii, Unstable);
    for e in [0, 3, 6] {
        assert_eq!(classify_invariant(&CohomInvariants { h1_3p1: 1, max_e: e, ..base }).ii, Unstable);
    }
}

#[test]
fn z_stability_examples() {
    assert!(is_z_stable(&node_node()));
    assert!(!is_z_stable(&CurveDescription::c0()));
    assert!(!is_z_stable(&CurveDescription::cusp_special(SpecialIso::Ccusp10)));
}

#[test]
fn classifiers_agree_on_catalog() {
    for d in catalog() {
        let g = classify_geometric(&d).unwrap();
        let v = classify_invariant(&invariants_of(&d).unwrap());
        assert_eq!((v.ii, v.iii), (g.ii, g.iii), "{d:?}");
    }
}

#[test]
fn git_vs_z_stability() {
    for d in catalog() {
        if classify_geometric(&d).unwrap().i == Stable && !d.is_c0() {
            assert!(is_z_stable(&d), "{d:?}");
        }
    }
}

#[test]
fn pipeline_consistency_on_families() {
    for k in FamilyKind::ALL {
        let pres = sample_family(k).build().unwrap();
        let point = extract(&pres).unwrap().point;
        let g = classify_geometric(&describe(&pres).unwrap()).unwrap();
        for (ch, s) in [(Chamber::I, g.i), (Chamber::II, g.ii), (Chamber::III, g.iii)] {
            assert_eq!(unstable_loci(&point, ch).unwrap().is_empty(), s.is_stable(), "{k:?} {}", ch.name());
        }
    }
}

#[test]
fn json_roundtrip_and_schema() {
    for d in catalog() {
        assert_eq!(CurveDescription::from_json(&d.to_json()).unwrap(), d);
    }
    assert!(CurveDescription::from_json(r#"{"kind": "irreducible", "weierstrass_p1": true, "extra": 1}"#).is_err());
}

#[test]
fn decision_paths_end_in_the_verdict() {
    use m22_core::catalog::decision_path;
    for d in catalog() {
        let v = classify_geometric(&d).unwrap();
        for (k, want) in [(1, v.i), (2, v.ii), (3, v.iii)] {
            let (got, path) = decision_path(&d, k).unwrap();
            assert_eq!(got, want);
            assert_eq!(path.last().unwrap(), &want.to_string());
        }
    }
    assert!(decision_path(&catalog()[0], 4).is_err());
}
