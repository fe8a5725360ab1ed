use m22_core::rational::int;
use m22_core::singularity::{
    delta, delta_t_at, e_invariant, germ_catalog, invariants, semigroup_symmetric, t_invariant, transversal_union,
    value_semigroup, Germ, GermInvariants, CATALOG_NAMES,
};

fn g(name: &str) -> Germ {
    germ_catalog(name, None).unwrap()
}

fn gn(name: &str, n: usize) -> Germ {
    germ_catalog(name, Some(n)).unwrap()
}

fn all_catalog() -> Vec<Germ> {
    let mut out = Vec::new();
    for name in CATALOG_NAMES {
        match name {
            "elliptic_nfold" => out.extend((3..=5).map(|n| gn(name, n))),
            "coordinate_cross" => out.extend((2..=4).map(|n| gn(name, n))),
            _ => out.push(g(name)),
        }
    }
    out
}

#[test]
fn catalog_shapes() {
    let c = g("cusp_line_Ccusp10");
    assert_eq!(c.branches, 2);
    assert_eq!(c.conductor, vec![3, 2]);
    let node = g("node");
    assert_eq!(node.branches, 2);
    let g345 = g("genus2_cusp_345");
    assert_eq!(g345.branches, 1);
    // elements below the conductor 3
    assert_eq!(value_semigroup(&g345).unwrap().unwrap(), vec![0]);
    assert_eq!(value_semigroup(&g("genus2_cusp_25")).unwrap().unwrap(), vec![0, 2]);
    assert!(germ_catalog("no_such_germ", None).is_err());
    assert!(germ_catalog("coordinate_cross", Some(1)).is_err());
}

#[test]
fn delta_examples() {
    assert_eq!(delta(&g("node")).unwrap(), 1);
    assert_eq!(delta(&g("cusp")).unwrap(), 1);
    assert_eq!(delta(&g("tacnode")).unwrap(), 2);
    assert_eq!(delta(&g("cusp_line_Ccusp10")).unwrap(), 3);
}

#[test]
fn t_examples() {
    assert_eq!(t_invariant(&g("node")).unwrap(), 1);
    assert_eq!(t_invariant(&gn("coordinate_cross", 4)).unwrap(), 3);
    assert_eq!(t_invariant(&g("cusp_line_Ccusp10")).unwrap(), 2);
}

#[test]
fn invariant_rows() {
    let row = |germ: &Germ| {
        let i = invariants(germ).unwrap();
        (i.delta, i.r, i.t, i.e)
    };
    assert_eq!(row(&g("tacnode")), (2, 2, 1, 3));
    assert_eq!(row(&gn("coordinate_cross", 4)), (3, 4, 3, 5));
    assert_eq!(row(&g("cusp_line_Ccusp10")), (3, 2, 2, 6));
    assert_eq!(invariants(&g("line")).unwrap(), GermInvariants { delta: 0, r: 1, t: 1, e: 0 });
}

#[test]
fn e_table() {
    let cusp = g("cusp");
    let table: Vec<(Germ, usize)> = vec![
        (g("node"), 1),
        (cusp.clone(), 2),
        (g("tacnode"), 3),
        (transversal_union(&cusp, &g("line")).unwrap(), 4),
        (g("planar_cusp_line"), 5),
        (g("cusp_line_Ccusp10"), 6),
        (transversal_union(&cusp, &cusp).unwrap(), 7),
        (g("genus2_cusp_345"), 5),
        (g("osculating_P1s"), 5),
        (gn("elliptic_nfold", 3), 4),
        (gn("elliptic_nfold", 4), 5),
        (gn("elliptic_nfold", 5), 6),
        (gn("coordinate_cross", 2), 1),
        (gn("coordinate_cross", 3), 3),
        (gn("coordinate_cross", 4), 5),
    ];
    for (germ, e) in table {
        assert_eq!(e_invariant(&germ).unwrap(), e, "{}", germ.name);
    }
}

#[test]
fn truncation_stabilizes() {
    for germ in all_catalog() {
        let n = germ.default_truncation();
        assert_eq!(delta_t_at(&germ, n).unwrap(), delta_t_at(&germ, n + 2).unwrap(), "{}", germ.name);
    }
}

#[test]
fn gorenstein_iff_symmetric_semigroup() {
    for name in ["cusp", "genus2_cusp_345", "genus2_cusp_25"] {
        let germ = g(name);
        let t = t_invariant(&germ).unwrap();
        let sym = semigroup_symmetric(&germ).unwrap().unwrap();
        assert_eq!(t == 1, sym, "{name}");
    }
    assert_eq!(t_invariant(&g("genus2_cusp_345")).unwrap(), 2);
    assert_eq!(t_invariant(&g("genus2_cusp_25")).unwrap(), 1);
}

#[test]
fn transversal_union_law() {
    let gorenstein = [g("node"), g("cusp"), g("tacnode"), g("genus2_cusp_25")];
    for a in &gorenstein {
        assert_eq!(t_invariant(a).unwrap(), 1, "{}", a.name);
        let with_line = transversal_union(&g("line"), a).unwrap();
        assert_eq!(t_invariant(&with_line).unwrap(), 2, "line + {}", a.name);
        for b in &gorenstein {
            let u = transversal_union(a, b).unwrap();
            assert_eq!(t_invariant(&u).unwrap(), 3, "{} + {}", a.name, b.name);
        }
    }
}

#[test]
fn non_quasihomogeneous_germs_are_refused() {
    let mut germ = g("cusp");
    germ.quasihomogeneous = false;
    assert!(e_invariant(&germ).is_err());
    assert_eq!(delta(&germ).unwrap(), 1);
}

#[test]
fn generators_must_vanish_at_the_point() {
    assert!(Germ::new("bad", 1, vec![vec![vec![int(1)]]], vec![0], true).is_err());
}

#[test]
fn json_roundtrip() {
    for germ in all_catalog() {
        assert_eq!(Germ::from_json(&germ.to_json()).unwrap(), germ);
    }
}
