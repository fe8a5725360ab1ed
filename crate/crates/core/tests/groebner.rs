use m22_core::groebner::{
    buchberger, buchberger_with_budget, eliminate, ideal_equal, quotient_colength, Colength, IdealPresentation,
};
use m22_core::moduli::{build_curve_ideal, curve_ring, expected_leading_monomials, curve_order, Coord};
use m22_core::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring};
use m22_core::rational::{int, q, Rational};
use m22_core::special::{branch_kernel, c0_point, solve_branch};
use m22_core::Error;

fn ring(v: &[&str]) -> Ring {
    Ring::new(v).unwrap()
}

fn p(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

fn deglex(r: &Ring) -> MonomialOrder {
    let w: Vec<(&str, i64)> = r.vars().iter().map(|v| (v.as_str(), 1)).collect();
    let names: Vec<&str> = r.vars().iter().map(String::as_str).collect();
    MonomialOrder::weighted_deglex(r, &w, &names).unwrap()
}

fn pres(r: &Ring, gens: &[&str]) -> IdealPresentation {
    IdealPresentation::new(gens.iter().map(|g| p(r, g)).collect(), deglex(r)).unwrap()
}

#[test]
fn monomial_ideal_is_its_own_basis() {
    let r = ring(&["x", "y"]);
    let gb = buchberger(&pres(&r, &["x^2", "x*y"])).unwrap();
    assert_eq!(gb.len(), 2);
    assert!(gb.verify().unwrap());
}

#[test]
fn minors_of_generic_matrix_form_a_basis() {
    let r = ring(&["a", "b", "c", "d", "e", "f", "g", "h"]);
    let top = ["a", "b", "c", "d"];
    let bot = ["e", "f", "g", "h"];
    let mut minors = Vec::new();
    for k in 0..4 {
        for l in k + 1..4 {
            minors.push(format!("{}*{} - {}*{}", top[k], bot[l], top[l], bot[k]));
        }
    }
    let refs: Vec<&str> = minors.iter().map(String::as_str).collect();
    let ideal = pres(&r, &refs);
    let gb = buchberger(&ideal).unwrap();
    assert!(gb.verify().unwrap());
    for m in &ideal.generators {
        assert!(gb.contains(m).unwrap());
    }
    // the minors already have the six diagonal leading terms
    assert_eq!(gb.len(), 6);
}

#[test]
fn curve_ideal_at_c0_has_the_six_leading_terms() {
    let ideal = build_curve_ideal(&c0_point());
    let gb = buchberger(&ideal.presentation()).unwrap();
    let mut lead = gb.leading().to_vec();
    lead.sort();
    let mut want = expected_leading_monomials(&curve_ring());
    want.sort();
    assert_eq!(lead, want);
}

#[test]
fn normal_forms_on_the_curve() {
    let pt = c0_point();
    let ideal = build_curve_ideal(&pt);
    let gb = buchberger(&ideal.presentation()).unwrap();
    let r = curve_ring();
    let k = &ideal.coefficients;
    // h1² ≡ f1³ + π1 f1 − α12³ h2 + (β12² − 3α12²γ12) f2 + s1
    let a12 = pt.get(Coord::Alpha12);
    let b12 = pt.get(Coord::Beta12);
    let g12 = pt.get(Coord::Gamma12);
    let mut want = &p(&r, "f1^3") + &p(&r, "f1").scale(&k.pi1);
    want = &want - &p(&r, "h2").scale(&(a12 * a12 * a12));
    want = &want + &p(&r, "f2").scale(&(b12 * b12 - int(3) * a12 * a12 * g12));
    want = &want + &Polynomial::constant(&r, k.s1.clone());
    assert_eq!(gb.normal_form(&p(&r, "h1^2")).unwrap(), gb.normal_form(&want).unwrap());
    assert_eq!(gb.normal_form(&p(&r, "f1^3")).unwrap(), p(&r, "f1^3"));
    assert_eq!(k.pi1, q(-3, 16));

    for g in &ideal.generators {
        assert!(gb.normal_form(g).unwrap().is_zero());
    }
    let std = p(&r, "f1^2*h1");
    assert_eq!(gb.normal_form(&std).unwrap(), std);
}

#[test]
fn ideal_equality_examples() {
    let r = ring(&["x", "y"]);
    assert!(ideal_equal(&pres(&r, &["x"]), &pres(&r, &["x", "x^2"])).unwrap());
    assert!(!ideal_equal(&pres(&r, &["x"]), &pres(&r, &["x^2"])).unwrap());
}

#[test]
fn elimination_examples() {
    let r = ring(&["t", "x", "y"]);
    let o = MonomialOrder::elimination(&r, &["t"]).unwrap();
    let i = IdealPresentation::new(vec![p(&r, "y - t^2"), p(&r, "x - t^3")], o).unwrap();
    let e = eliminate(&i, &["t"]).unwrap();
    assert_eq!(e.len(), 1);
    let want = p(&r, "y^3 - x^2");
    assert!(e[0] == want || e[0] == -want);

    let r2 = ring(&["t", "z", "w"]);
    let o2 = MonomialOrder::elimination(&r2, &["t"]).unwrap();
    let i2 = IdealPresentation::new(vec![p(&r2, "z - t"), p(&r2, "w - t")], o2).unwrap();
    let e2 = eliminate(&i2, &["t"]).unwrap();
    assert_eq!(e2.len(), 1);
    let want2 = p(&r2, "z - w");
    assert!(e2[0] == want2 || e2[0] == -want2);
}

#[test]
fn elimination_needs_an_elimination_order() {
    let r = ring(&["t", "x"]);
    let i = IdealPresentation::new(vec![p(&r, "x - t")], deglex(&r)).unwrap();
    assert!(matches!(eliminate(&i, &["x"]), Err(Error::NotEliminationOrder(_))));
}

#[test]
fn c0_branch_kernel_vanishes_on_the_branch() {
    let b = solve_branch(&c0_point(), 1).unwrap();
    let k = branch_kernel(&b).unwrap();
    let r = curve_ring();
    let gb = buchberger(&IdealPresentation::new(k.clone(), curve_order(&r)).unwrap()).unwrap();
    assert!(gb.standard_monomials().is_none());
    for sv in -5..5 {
        let s = q(sv, 3);
        let at = |c: &Vec<Rational>| c.iter().rev().fold(Rational::from_integer(0.into()), |acc, x| acc * &s + x);
        let vals = ["h1", "h2", "f1", "f2"]
            .iter()
            .zip(&b.components)
            .map(|(n, c)| (n.to_string(), at(c)))
            .collect();
        for g in &k {
            assert_eq!(g.evaluate(&vals).unwrap(), int(0));
        }
    }
}

#[test]
fn colength_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(quotient_colength(&pres(&r, &["x^2", "y^2"])).unwrap(), Colength::Finite(4));
    assert_eq!(quotient_colength(&pres(&r, &["x"])).unwrap(), Colength::Infinite);
}

#[test]
fn budget_exhaustion_is_reported() {
    let r = ring(&["x", "y", "z"]);
    let i = pres(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
    let r = buchberger_with_budget(&i, 1);
    assert!(matches!(r, Err(Error::BudgetExhausted(1))), "{r:?}");
}
