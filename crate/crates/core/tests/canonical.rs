use m22_core::canonical::{
    canonical_parameter, describe, extract, normalize_generators, poly_to_series, sample_family, verify_canonical,
    Chart, CurveFunction, FamilyKind, FamilySpec, DEFAULT_PRECISION,
};
use m22_core::chambers::{unstable_loci, Chamber, LocusName};
use m22_core::catalog::classify_geometric;
use m22_core::moduli::{has_standard_basis, minors_rank_ok, Coord};
use m22_core::poly::parse_polynomial;
use m22_core::rational::{int, q, Rational};
use m22_core::series::TruncatedSeries;

const N: i64 = DEFAULT_PRECISION;

fn spec(kind: FamilyKind, kv: &[(&str, i64)]) -> FamilySpec {
    let v: Vec<(&str, Rational)> = kv.iter().map(|(k, x)| (*k, int(*x))).collect();
    FamilySpec::new(kind, &v)
}

fn family_a(a: i64, b: i64, pa: i64, pb: i64, pc: i64, pd: i64) -> FamilySpec {
    spec(FamilyKind::A, &[("a", a), ("b", b), ("A", pa), ("B", pb), ("C", pc), ("D", pd)])
}

fn family_b(a: i64, b: i64, pa: i64, pb: i64, pc: i64, pd: i64) -> FamilySpec {
    spec(FamilyKind::B, &[("a", a), ("b", b), ("A", pa), ("B", pb), ("C", pc), ("D", pd)])
}

fn func(pres: &m22_core::canonical::CurvePresentation, on1: &str, on2: &str) -> CurveFunction {
    CurveFunction {
        on1: parse_polynomial(&pres.chart(1).ring(), on1).unwrap(),
        on2: parse_polynomial(&pres.chart(2).ring(), on2).unwrap(),
    }
}

#[test]
fn cuspidal_chart_expands_exactly() {
    let ex = Chart::Weierstrass { a: int(0), b: int(0) }.expand_at_infinity(12).unwrap();
    let x = &ex["x"];
    let y = &ex["y"];
    assert_eq!(x.terms().count(), 1);
    assert_eq!(x.coeff(-2).unwrap(), int(1));
    assert_eq!(y.terms().count(), 1);
    assert_eq!(y.coeff(-3).unwrap(), int(1));
}

#[test]
fn weierstrass_equation_holds_to_precision() {
    for (a, b) in [(int(1), int(2)), (q(-1, 3), int(5)), (int(0), int(-7))] {
        let ch = Chart::Weierstrass { a: a.clone(), b: b.clone() };
        let ex = ch.expand_at_infinity(N).unwrap();
        let vals = [ex["x"].clone(), ex["y"].clone()];
        let eq = poly_to_series(&ch.equation().unwrap(), &vals, "t").unwrap();
        assert!(eq.precision() >= N - 6);
        for k in -20..eq.precision() {
            assert_eq!(eq.coeff(k).unwrap(), int(0), "t^{k} for a={a}, b={b}");
        }
    }
}

#[test]
fn line_chart_expansion() {
    let ex = Chart::Line.expand_at_infinity(N).unwrap();
    let z = &ex["z"];
    assert_eq!(z.coeff(-1).unwrap(), int(1));
    assert_eq!(z.precision(), N);
}

#[test]
fn canonical_parameter_examples() {
    let g = TruncatedSeries::new("t", [(-2, int(1)), (0, int(5)), (1, int(2))], 4);
    let step = canonical_parameter(&g, 2).unwrap();
    assert_eq!(step.c, int(0));
    assert_eq!(step.forward.coeff(1).unwrap(), int(1));
    assert_eq!(step.forward.coeff(2).unwrap(), int(0));

    let g = TruncatedSeries::new("t", [(-2, int(1)), (-1, int(3)), (0, int(1))], 6);
    let step = canonical_parameter(&g, 2).unwrap();
    assert_eq!(step.forward.coeff(2).unwrap(), q(-3, 2));
    // in the new parameter the t^-1 term is gone, and a second step changes nothing
    let g2 = g.compose(&step.inverse).unwrap();
    assert_eq!(g2.coeff(-1).unwrap(), int(0));
    let again = canonical_parameter(&g2, 2).unwrap();
    assert_eq!(again.c, int(0));
}

#[test]
fn family_a_normalization_on_the_line() {
    let pres = family_a(0, 1, 0, 1, 2, 3).build().unwrap();
    let ft = pres.element_with_pole(2, 2).unwrap();
    let ht = pres.element_with_pole(2, 3).unwrap();
    let nf = normalize_generators(&pres, 2, &ft, &ht, N).unwrap();
    let z = pres.chart(2).ring();
    assert_eq!(nf.f.on2, parse_polynomial(&z, "z^2 - 2/3").unwrap());
    assert_eq!(nf.h.on2, parse_polynomial(&z, "z^3 - z").unwrap());
    // value on the elliptic component
    assert_eq!(nf.f.on1.constant_term(), q(1, 3));
    assert!(verify_canonical(&pres, &nf.f, &nf.h, N).unwrap());

    let again = normalize_generators(&pres, 2, &nf.f, &nf.h, N).unwrap();
    assert_eq!((again.a, again.b, again.c), (int(0), int(0), int(0)));
}

#[test]
fn family_a_canonical_pair_at_the_elliptic_point() {
    // points (A, B) = (0, 1) and (C, D) = (2, 3) on y² = x³ + 1, glued to z = −1 and z = 1
    let pres = family_a(0, 1, 0, 1, 2, 3).build().unwrap();
    let f = func(&pres, "x", "z + 1");
    let h = func(&pres, "y", "z + 2");
    assert!(verify_canonical(&pres, &f, &h, N).unwrap());
    // the swapped reading ½(D+B)z + ½(D−B) does not glue
    assert!(!verify_canonical(&pres, &f, &func(&pres, "y", "2*z + 1"), N).unwrap());
    // shifting f without recomputing h breaks the pole condition
    assert!(!verify_canonical(&pres, &f.add_constant(&int(1)), &h, N).unwrap());
}

#[test]
fn cusp_glued_at_the_cusp() {
    let f = spec(
        FamilyKind::F,
        &[("a1", 0), ("b1", 0), ("a2", -1), ("b2", 1), ("X1", 0), ("Y1", 0), ("X2", 1), ("Y2", 1)],
    );
    let pres = f.build().unwrap();
    assert!(verify_canonical(&pres, &func(&pres, "x", "0"), &func(&pres, "y", "0"), N).unwrap());
    let r = extract(&pres).unwrap();
    assert_eq!(r.point.get(Coord::Gamma12), &int(0));
    assert_eq!(r.point.get(Coord::Epsilon12), &int(0));
    assert_eq!(r.point.get(Coord::PiTilde1), &int(0));
    assert!(unstable_loci(&r.point, Chamber::I).unwrap().contains(&LocusName::Z1));
}

#[test]
fn family_constraints() {
    assert!(spec(FamilyKind::C, &[("lambda", 2), ("mu", 3)]).build().is_ok());
    assert!(spec(FamilyKind::C, &[("lambda", 2), ("mu", 2)]).build().is_err());
    assert!(spec(FamilyKind::E, &[("A", 0), ("B", 1), ("C", 1), ("lambda", 1)]).build().is_err());
    assert!(family_b(0, 1, 0, 0, 0, 1).build().is_err());
}

#[test]
fn family_b_coordinates() {
    // (a, b, A, B, C, D) with D² = B³ + aB + b and 2DC = (3B² + a)A
    for [a, b, pa, pb, pc, pd] in [[0, 1, 2, 0, 0, 1], [1, 2, 3, 1, 3, 2], [-1, 19, 10, 2, 11, 5]] {
        let r = extract(&family_b(a, b, pa, pb, pc, pd).build().unwrap()).unwrap();
        let p = &r.point;
        assert_eq!(p.get(Coord::Alpha12), &int(pa));
        assert_eq!(p.get(Coord::Beta12), &int(pc));
        assert_eq!(p.get(Coord::Gamma12), &int(pb));
        assert_eq!(p.get(Coord::Epsilon12), &int(pd));
        assert_eq!(p.get(Coord::PiTilde1), &int(a + 3 * pb * pb));
        for c in [Coord::Alpha21, Coord::Beta21, Coord::Gamma21, Coord::Epsilon21, Coord::PiTilde2] {
            assert_eq!(p.get(c), &int(0));
        }
    }
}

#[test]
fn family_b_special_loci() {
    // cusp at the gluing point with C = 0: only α12 survives
    let s = extract(&family_b(0, 0, 1, 0, 0, 0).build().unwrap()).unwrap().point;
    assert!(LocusName::S.contains(&s));
    let r = extract(&family_b(0, 0, 1, 0, 2, 0).build().unwrap()).unwrap().point;
    assert!(LocusName::R.contains(&r));
}

#[test]
fn family_c_coordinates() {
    for (l, m) in [(2, 3), (3, -1), (-2, 5), (4, 7)] {
        let r = extract(&spec(FamilyKind::C, &[("lambda", l), ("mu", m)]).build().unwrap()).unwrap();
        assert_eq!(r.point.get(Coord::Alpha12), &q(l * l - l, m - l));
        assert_eq!(r.point.get(Coord::Alpha21), &q(m * m - m, l - m));
    }
}

#[test]
fn family_a_coordinates() {
    let r = extract(&family_a(0, 1, 0, 1, 2, 3).build().unwrap()).unwrap();
    let p = &r.point;
    assert_eq!(p.get(Coord::Alpha12), &int(1));
    // β12 = ½(D − B), ε12 = ½(D + B)
    assert_eq!(p.get(Coord::Beta12), &int(1));
    assert_eq!(p.get(Coord::Epsilon12), &int(2));
    assert_eq!(p.get(Coord::Alpha21), &int(0));
    assert_eq!(p.get(Coord::Beta21), &int(0));
    // γ21 is the value of f2 on the elliptic component; f2 at z = 0 is −2/3
    assert_eq!(p.get(Coord::Gamma21), &q(1, 3));
}

#[test]
fn family_a_points_in_one_fiber() {
    // C = A: both gluing points share x, so they are swapped by the elliptic involution
    let r = extract(&family_a(0, 1, 2, 3, 2, -3).build().unwrap()).unwrap();
    assert_eq!(r.point.get(Coord::Alpha12), &int(0));
}

#[test]
fn extraction_invariants_on_samples() {
    for k in FamilyKind::ALL {
        let pres = sample_family(k).build().unwrap();
        let r = extract(&pres).unwrap();
        assert!(minors_rank_ok(&r.point), "{k:?}");
        assert!(has_standard_basis(&r.point).unwrap(), "{k:?}");
        assert!(r.diagonal_normalization, "{k:?}");
        let g = classify_geometric(&describe(&pres).unwrap()).unwrap();
        for (ch, s) in [(Chamber::I, g.i), (Chamber::II, g.ii), (Chamber::III, g.iii)] {
            assert_eq!(unstable_loci(&r.point, ch).unwrap().is_empty(), s.is_stable(), "{k:?}");
        }
    }
}

#[test]
fn family_json_roundtrip() {
    for k in FamilyKind::ALL {
        let s = sample_family(k);
        assert_eq!(FamilySpec::from_json(&s.to_json()).unwrap(), s);
    }
}
