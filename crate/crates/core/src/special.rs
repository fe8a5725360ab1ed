//! Identities at special points and loci: the blow-down image and its orbit,
//! the point `C⁰` and its two osculating branches, the decomposition of the
//! curve over the locus `P2`, and the relations of the Weierstrass fibration.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, buchberger_with_budget, eliminate, ideal_equal, intersect, parametric_check, GroebnerBasis,
    IdealPresentation, DEFAULT_BUDGET,
};
use crate::moduli::{
    self, apply_action, build_curve_ideal, curve_ring, curve_order, pi_tilde_from_pi, symbolic_generators, Coord,
    FormulaVariant, ModuliPoint, COORDS,
};
use crate::poly::{parse_polynomial, Monomial, MonomialOrder, Polynomial, Ring};
use crate::rational::{format_rational, int, q, Rational};

/// A point of the blow-down locus, given by `β1` and `φ`; `β2 = −φ²β1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowdownImage {
    pub beta1: Rational,
    pub phi: Rational,
}

impl BlowdownImage {
    pub fn new(beta1: Rational, phi: Rational) -> Result<BlowdownImage> {
        if beta1.is_zero() || phi.is_zero() {
            return Err(Error::Invalid("β1 and φ must be nonzero".into()));
        }
        Ok(BlowdownImage { beta1, phi })
    }

    pub fn beta2(&self) -> Rational {
        -(&self.phi * &self.phi) * &self.beta1
    }

    pub fn point(&self) -> ModuliPoint {
        let table = blowdown_table();
        let mut p = ModuliPoint::zero();
        for (c, (coef, eb, ep)) in &table.coords {
            *p.get_mut(*c) = coef * self.beta1.pow(*eb as i32) * self.phi.pow(*ep as i32);
        }
        finish_pi_tilde(p, |i| {
            let (coef, eb, ep) = &table.pi[i];
            coef * self.beta1.pow(*eb as i32) * self.phi.pow(*ep as i32)
        })
    }
}

/// `(coefficient, exponent of β1, exponent of φ)` for each listed coordinate.
struct BlowdownTable {
    coords: Vec<(Coord, (Rational, i64, i64))>,
    pi: [(Rational, i64, i64); 2],
}

fn blowdown_table() -> BlowdownTable {
    use Coord::*;
    BlowdownTable {
        coords: vec![
            (Alpha12, (int(-1), 1, 0)),
            (Alpha21, (int(1), 1, 3)),
            (Beta12, (q(3, 2), 2, 1)),
            (Beta21, (q(3, 2), 2, 5)),
            (Gamma12, (q(5, 4), 2, 2)),
            (Gamma21, (q(5, 4), 2, 4)),
            (Epsilon12, (q(-5, 4), 3, 3)),
            (Epsilon21, (q(5, 4), 3, 6)),
        ],
        pi: [(q(-3, 16), 4, 4), (q(-3, 16), 4, 8)],
    }
}

/// Fills `π̃1, π̃2` from `π1, π2` and the other coordinates already in `p`.
fn finish_pi_tilde(mut p: ModuliPoint, pi: impl Fn(usize) -> Rational) -> ModuliPoint {
    use Coord::*;
    let t1 = pi_tilde_from_pi(&pi(0), p.get(Alpha12), p.get(Alpha21), p.get(Beta12), p.get(Gamma12), p.get(Gamma21));
    let t2 = pi_tilde_from_pi(&pi(1), p.get(Alpha21), p.get(Alpha12), p.get(Beta21), p.get(Gamma21), p.get(Gamma12));
    *p.get_mut(PiTilde1) = t1;
    *p.get_mut(PiTilde2) = t2;
    p
}

pub fn blowdown_image(beta1: &Rational, phi: &Rational) -> Result<ModuliPoint> {
    Ok(BlowdownImage::new(beta1.clone(), phi.clone())?.point())
}

/// The point `C⁰`: two osculating rational curves.
pub fn c0_point() -> ModuliPoint {
    use Coord::*;
    let p = ModuliPoint::zero()
        .with(Alpha12, int(-1))
        .with(Alpha21, int(1))
        .with(Beta12, q(3, 2))
        .with(Beta21, q(3, 2))
        .with(Gamma12, q(5, 4))
        .with(Gamma21, q(5, 4))
        .with(Epsilon12, q(-5, 4))
        .with(Epsilon21, q(5, 4));
    finish_pi_tilde(p, |_| q(-3, 16))
}

// Laurent polynomials in β1, φ keyed by exponent pairs.
type Laurent = BTreeMap<(i64, i64), Rational>;

fn l_mono(c: Rational, eb: i64, ep: i64) -> Laurent {
    let mut m = Laurent::new();
    if !c.is_zero() {
        m.insert((eb, ep), c);
    }
    m
}

fn l_add(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn l_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            out = l_add(&out, &l_mono(va * vb, ka.0 + kb.0, ka.1 + kb.1));
        }
    }
    out
}

fn l_scale(a: &Laurent, c: i64) -> Laurent {
    l_mul(a, &l_mono(int(c), 0, 0))
}

/// The blow-down image as Laurent polynomials in `β1, φ`.
fn symbolic_image() -> BTreeMap<Coord, Laurent> {
    use Coord::*;
    let t = blowdown_table();
    let mut m: BTreeMap<Coord, Laurent> =
        t.coords.iter().map(|(c, (k, eb, ep))| (*c, l_mono(k.clone(), *eb, *ep))).collect();
    let pi: Vec<Laurent> = t.pi.iter().map(|(k, eb, ep)| l_mono(k.clone(), *eb, *ep)).collect();
    for (i, (pt, aij, aji, bij, gij, gji)) in [
        (PiTilde1, Alpha12, Alpha21, Beta12, Gamma12, Gamma21),
        (PiTilde2, Alpha21, Alpha12, Beta21, Gamma21, Gamma12),
    ]
    .into_iter()
    .enumerate()
    {
        // π̃ = π + 3α_ij²γ_ji + 3α_ij α_ji β_ij + 3γ_ij²
        let a2g = l_mul(&l_mul(&m[&aij], &m[&aij]), &m[&gji]);
        let aab = l_mul(&l_mul(&m[&aij], &m[&aji]), &m[&bij]);
        let g2 = l_mul(&m[&gij], &m[&gij]);
        let v = l_add(&pi[i], &l_add(&l_scale(&a2g, 3), &l_add(&l_scale(&aab, 3), &l_scale(&g2, 3))));
        m.insert(pt, v);
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub pass: bool,
    /// Same identity with the action `λ^{+w}` instead of `λ^{−w}`.
    pub flipped_pass: bool,
    pub numeric_pass: bool,
    pub mismatches: Vec<String>,
}

fn orbit_identity(sign: i64) -> Vec<String> {
    let target = c0_point();
    let image = symbolic_image();
    let mut bad = Vec::new();
    for c in COORDS {
        let (w1, w2) = c.weight();
        // λ = (β1 φ, β1 φ²), factor λ1^{−sign·w1} λ2^{−sign·w2}
        let eb = -sign * (w1 + w2);
        let ep = -sign * (w1 + 2 * w2);
        let acted = l_mul(&image[&c], &l_mono(Rational::one(), eb, ep));
        let want = l_mono(target.get(c).clone(), 0, 0);
        if acted != want {
            bad.push(c.name().to_string());
        }
    }
    bad
}

/// Symbolic check that `(β1φ, β1φ²)` moves every blow-down image to `C⁰`.
pub fn verify_blowdown_orbit_report() -> Result<OrbitReport> {
    let mismatches = orbit_identity(1);
    let flipped_pass = orbit_identity(-1).is_empty();
    let (b, f) = (int(3), int(-2));
    let lambda = (&b * &f, &b * &f * &f);
    let numeric = apply_action((&lambda.0, &lambda.1), &blowdown_image(&b, &f)?)?;
    let numeric_pass = numeric == c0_point();
    Ok(OrbitReport { pass: mismatches.is_empty() && numeric_pass, flipped_pass, numeric_pass, mismatches })
}

pub fn verify_blowdown_orbit() -> Result<bool> {
    Ok(verify_blowdown_orbit_report()?.pass)
}

/// The minors condition holds identically on the blow-down image.
pub fn blowdown_minors_vanish() -> bool {
    let m = symbolic_image();
    let c = |x: Coord| &m[&x];
    use Coord::*;
    let top = [c(Alpha12), c(Alpha21), c(Beta12), c(Beta21)];
    let bot: Vec<Laurent> = vec![l_scale(c(Epsilon12), 2), l_scale(c(Epsilon21), 2), c(PiTilde1).clone(), c(PiTilde2).clone()];
    for k in 0..4 {
        for l in k + 1..4 {
            let d = l_add(&l_mul(top[k], &bot[l]), &l_scale(&l_mul(top[l], &bot[k]), -1));
            if !d.is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// C⁰ geometry

/// A polynomial map `s ↦ (h1, h2, f1, f2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Which marked point lies at infinity of this branch.
    pub point: u8,
    /// Coefficients by ascending power of `s`, in the order h1, h2, f1, f2.
    pub components: [Vec<Rational>; 4],
}

impl Branch {
    fn polys(&self, ring: &Ring) -> Vec<Polynomial> {
        let s = Polynomial::var(ring, "s").expect("s");
        self.components
            .iter()
            .map(|cs| {
                let mut acc = Polynomial::zero(ring);
                for (k, c) in cs.iter().enumerate() {
                    acc = &acc + &s.pow(k as u32).scale(c);
                }
                acc
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        let names = ["h1", "h2", "f1", "f2"];
        let ring = Ring::new(&["s"]).expect("s");
        self.polys(&ring)
            .iter()
            .zip(names)
            .map(|(p, n)| format!("{n} = {p}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

const ANSATZ: [&str; 8] = ["u0", "u1", "u2", "u3", "u4", "u5", "u6", "u7"];

/// Solves the branch ansatz through `p_i` on the curve over `p`: the i-side `f`
/// is `s² + u0`, the i-side `h` is `s³ + u1 s² + u2 s + u3`, the other pair is
/// affine in `s`. The ansatz must have exactly one solution.
pub fn solve_branch(p: &ModuliPoint, i: u8) -> Result<Branch> {
    let mut names = vec!["s"];
    names.extend(ANSATZ);
    let ring = Ring::new(&names)?;
    let v = |n: &str| Polynomial::var(&ring, n).expect("ansatz variable");
    let s = v("s");
    let fi = &s.pow(2) + &v("u0");
    let hi = &(&(&s.pow(3) + &(&v("u1") * &s.pow(2))) + &(&v("u2") * &s)) + &v("u3");
    let fj = &(&v("u4") * &s) + &v("u5");
    let hj = &(&v("u6") * &s) + &v("u7");
    let (h1, h2, f1, f2) = if i == 1 { (hi, hj, fi, fj) } else { (hj, hi, fj, fi) };
    let subst: BTreeMap<String, Polynomial> =
        [("h1", h1), ("h2", h2), ("f1", f1), ("f2", f2)].into_iter().map(|(k, p)| (k.to_string(), p)).collect();
    let uring = Ring::new(&ANSATZ)?;
    let sidx = ring.index("s")?;
    let mut eqs = Vec::new();
    for g in build_curve_ideal(p).generators {
        let e = g.substitute(&subst, &ring)?;
        for (_, c) in e.coefficients_in(&[sidx]) {
            eqs.push(c.embed(&uring)?);
        }
    }
    let order = MonomialOrder::lex_default(&uring);
    let gb = buchberger_with_budget(&IdealPresentation::new(eqs, order)?, DEFAULT_BUDGET)?;
    if gb.is_unit() {
        return Err(Error::Internal(format!("no branch through p{i} of the requested shape")));
    }
    match gb.standard_monomials() {
        Some(m) if m.len() == 1 => {}
        _ => return Err(Error::Internal(format!("branch ansatz through p{i} is not determined uniquely"))),
    }
    let mut vals = Vec::new();
    for n in ANSATZ {
        let nf = gb.normal_form(&Polynomial::var(&uring, n)?)?;
        vals.push(nf.constant_term());
    }
    let u = |k: usize| vals[k].clone();
    let zero = Rational::zero;
    let hi = vec![u(3), u(2), u(1), Rational::one()];
    let fi = vec![u(0), zero(), Rational::one()];
    let fj = vec![u(5), u(4)];
    let hj = vec![u(7), u(6)];
    let components = if i == 1 { [hi, hj, fi, fj] } else { [hj, hi, fj, fi] };
    Ok(Branch { point: i, components })
}

/// The ideal of the image of a branch, in the curve ring.
pub fn branch_kernel(b: &Branch) -> Result<Vec<Polynomial>> {
    let ring = Ring::new(&["s", "h1", "h2", "f1", "f2"])?;
    let images = b.polys(&ring);
    let gens: Vec<Polynomial> = ["h1", "h2", "f1", "f2"]
        .iter()
        .zip(&images)
        .map(|(n, p)| &Polynomial::var(&ring, n).expect("curve variable") - p)
        .collect();
    let order = MonomialOrder::elimination(&ring, &["s"])?;
    let kept = eliminate(&IdealPresentation::new(gens, order)?, &["s"])?;
    kept.iter().map(|p| p.embed(&curve_ring())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct C0Report {
    pub pass: bool,
    pub branches: Vec<String>,
    pub branches_on_curve: bool,
    pub distinct_kernels: usize,
    pub union_equals_curve: bool,
    pub intersection_colength: Option<usize>,
    pub intersection_point: Option<BTreeMap<String, String>>,
    pub intersection_local: bool,
}

fn on_curve(p: &ModuliPoint, b: &Branch) -> Result<bool> {
    let ring = Ring::new(&["s"])?;
    let subst: BTreeMap<String, Polynomial> =
        ["h1", "h2", "f1", "f2"].iter().map(|n| n.to_string()).zip(b.polys(&ring)).collect();
    for g in build_curve_ideal(p).generators {
        if !g.substitute(&subst, &ring)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Trace of multiplication by `v` on the quotient with standard monomials `basis`.
fn trace_of(gb: &GroebnerBasis, basis: &[Monomial], v: &Polynomial) -> Result<Rational> {
    let ring = gb.ring().clone();
    let mut tr = Rational::zero();
    for m in basis {
        let mono = Polynomial::monomial(&ring, m.clone(), Rational::one());
        tr += gb.normal_form(&(v * &mono))?.coeff(m);
    }
    Ok(tr)
}

/// The curve over `C⁰` is the union of two rational branches meeting in a
/// length-3 scheme at one point.
pub fn verify_c0_geometry_report() -> Result<C0Report> {
    let p = c0_point();
    let ring = curve_ring();
    let b1 = solve_branch(&p, 1)?;
    let b2 = solve_branch(&p, 2)?;
    let branches_on_curve = on_curve(&p, &b1)? && on_curve(&p, &b2)?;
    let k1 = branch_kernel(&b1)?;
    let k2 = branch_kernel(&b2)?;
    let order = curve_order(&ring);
    let pres = |g: Vec<Polynomial>| IdealPresentation::new(g, order.clone());
    let distinct_kernels = if ideal_equal(&pres(k1.clone())?, &pres(k2.clone())?)? { 1 } else { 2 };
    let inter = intersect(&k1, &k2, &ring)?;
    let union_equals_curve = ideal_equal(&build_curve_ideal(&p).presentation(), &pres(inter)?)?;

    let mut sum = k1.clone();
    sum.extend(k2.iter().cloned());
    let gb = buchberger(&pres(sum)?)?;
    let basis = gb.standard_monomials();
    let mut intersection_point = None;
    let mut intersection_local = false;
    if let Some(basis) = &basis {
        let len = basis.len() as i64;
        let mut point = BTreeMap::new();
        let mut local = len > 0;
        for n in ["h1", "h2", "f1", "f2"] {
            let v = Polynomial::var(&ring, n)?;
            let v0 = trace_of(&gb, basis, &v)? / int(len);
            let shifted = &v - &Polynomial::constant(&ring, v0.clone());
            local &= gb.normal_form(&shifted.pow(len as u32))?.is_zero();
            point.insert(n.to_string(), format_rational(&v0));
        }
        intersection_local = local;
        intersection_point = Some(point);
    }
    let intersection_colength = basis.as_ref().map(Vec::len);
    let pass = branches_on_curve
        && distinct_kernels == 2
        && union_equals_curve
        && intersection_colength == Some(3)
        && intersection_local;
    Ok(C0Report {
        pass,
        branches: vec![b1.describe(), b2.describe()],
        branches_on_curve,
        distinct_kernels,
        union_equals_curve,
        intersection_colength,
        intersection_point,
        intersection_local,
    })
}

pub fn verify_c0_geometry() -> Result<bool> {
    Ok(verify_c0_geometry_report()?.pass)
}

// ---------------------------------------------------------------------------
// The locus P2

const P2_VARS: [&str; 11] = ["x", "y", "z", "ia", "ib", "a21", "b21", "g12", "g21", "e21", "pt2"];

#[derive(Clone, Debug, Serialize)]
pub struct P2Report {
    pub pass: bool,
    pub with_minor: BTreeMap<String, bool>,
    pub without_minor: BTreeMap<String, bool>,
}

fn p2_ring() -> Ring {
    Ring::new(&P2_VARS).expect("fixed names")
}

/// The curve equations over `α12 = β12 = ε12 = π̃1 = 0` in the coordinates
/// `x, y, z` with `f2 = α21x + γ21`, `h2 = β21y + ε21`, `f1 = z + γ12`, `h1 = xz`.
pub fn p2_transformed_equations() -> Result<Vec<Polynomial>> {
    let ring = p2_ring();
    let e = |s: &str| parse_polynomial(&ring, s);
    let mut subst: BTreeMap<String, Polynomial> = BTreeMap::new();
    subst.insert("f2".into(), e("a21*x + g21")?);
    subst.insert("h2".into(), e("b21*y + e21")?);
    subst.insert("f1".into(), e("z + g12")?);
    subst.insert("h1".into(), e("x*z")?);
    for c in [Coord::Alpha12, Coord::Beta12, Coord::Epsilon12, Coord::PiTilde1] {
        subst.insert(c.symbol().into(), Polynomial::zero(&ring));
    }
    let mut out = Vec::new();
    for g in symbolic_generators(FormulaVariant::default()) {
        let t = g.substitute(&subst, &ring)?;
        if !t.is_zero() {
            out.push(t);
        }
    }
    Ok(out)
}

/// The plane cubic of the `z = 0` component.
pub const P2_CUBIC: &str = "a21^3*x^3 - 3*a21^3*g12*x + 3*a21^2*g21*x^2 - 9*a21^2*g12*g21 - b21^2*y^2 \
     + 3*b21^2*g12 + a21*pt2*x - 2*b21*e21*y";

fn p2_targets(ring: &Ring) -> Result<Vec<(&'static str, Polynomial)>> {
    let e = |s: &str| parse_polynomial(ring, s);
    let cubic = e(P2_CUBIC)?;
    let third = &(&cubic - &e("a21^3*x*z + 3*a21^2*g21*z")?) + &e("b21^2*z")?;
    Ok(vec![
        ("plane_x_eq_y", e("b21*z*(x - y)")?),
        ("parabola", e("z*(x^2 - 3*g12 - z)")?),
        ("cubic_equation", third),
        ("cubic_times_x_minus_y", &cubic * &e("x - y")?),
    ])
}

fn p2_gb(mut gens: Vec<Polynomial>, with_minor: bool) -> Result<GroebnerBasis> {
    let ring = p2_ring();
    let e = |s: &str| parse_polynomial(&ring, s);
    gens.push(e("a21*ia - 1")?);
    gens.push(e("b21*ib - 1")?);
    if with_minor {
        gens.push(e("a21*pt2 - 2*b21*e21")?);
    }
    buchberger(&IdealPresentation::new(gens, MonomialOrder::grevlex_default(&ring))?)
}

fn p2_memberships(with_minor: bool) -> Result<BTreeMap<String, bool>> {
    let ring = p2_ring();
    let e = |s: &str| parse_polynomial(&ring, s);
    let eqs = p2_transformed_equations()?;
    let gb = p2_gb(eqs.clone(), with_minor)?;
    let mut out = BTreeMap::new();
    for (name, t) in p2_targets(&ring)? {
        out.insert(name.to_string(), gb.contains(&t)?);
    }
    // each component lies on the curve
    let components = [
        ("plane_cubic_on_curve", vec![e("z")?, e(P2_CUBIC)?]),
        ("parabola_on_curve", vec![e("x - y")?, e("z - x^2 + 3*g12")?]),
    ];
    for (name, comp) in components {
        let cg = p2_gb(comp, with_minor)?;
        let mut all = true;
        for g in &eqs {
            all &= cg.contains(g)?;
        }
        out.insert(name.to_string(), all);
    }
    Ok(out)
}

/// Memberships describing the two components over `P2`, with the minor
/// relation and, as a control, without it.
pub fn verify_p2_probe_report() -> Result<P2Report> {
    let with_minor = p2_memberships(true)?;
    let without_minor = p2_memberships(false)?;
    let pass = with_minor.values().all(|&b| b) && without_minor.values().any(|&b| !b);
    Ok(P2Report { pass, with_minor, without_minor })
}

pub fn verify_p2_probe() -> Result<bool> {
    Ok(verify_p2_probe_report()?.pass)
}

// ---------------------------------------------------------------------------
// Weierstrass fibration

/// Constants of the three `g`-relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassConstants {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub e1: String,
    pub e2: String,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl Default for WeierstrassConstants {
    fn default() -> Self {
        WeierstrassConstants {
            alpha: "0".into(),
            beta: "2*q1".into(),
            gamma: "q20".into(),
            e1: "0".into(),
            e2: "q21".into(),
            a: "q1".into(),
            b: "q20 + q21*f".into(),
            c: "q1*q21 + q30 + q31*f + f^2".into(),
        }
    }
}

pub const WEIERSTRASS_MAIN: [&str; 4] = ["f", "h", "k", "g"];
pub const WEIERSTRASS_PARAMS: [&str; 5] = ["q1", "q20", "q21", "q30", "q31"];
/// Pole orders at the first point; `g` gets its total pole order.
pub const WEIERSTRASS_WEIGHTS: [i64; 4] = [3, 4, 5, 2];

pub fn weierstrass_ring() -> Ring {
    let mut v: Vec<&str> = WEIERSTRASS_MAIN.to_vec();
    v.extend(WEIERSTRASS_PARAMS);
    Ring::new(&v).expect("fixed names")
}

fn weierstrass_main_order(ring: &Ring) -> Result<MonomialOrder> {
    MonomialOrder::matrix(
        ring,
        &WEIERSTRASS_MAIN,
        &[WEIERSTRASS_WEIGHTS.to_vec(), vec![0, 1, 1, 0]],
        &["h", "k", "f", "g"],
    )
}

/// Main variables by the weighted matrix order, parameters recessive.
pub fn weierstrass_order(ring: &Ring) -> Result<MonomialOrder> {
    let inner = weierstrass_main_order(&Ring::new(&WEIERSTRASS_MAIN)?)?;
    let outer = MonomialOrder::grevlex_default(&Ring::new(&WEIERSTRASS_PARAMS)?);
    MonomialOrder::block(ring, &inner, &outer)
}

pub fn weierstrass_generators(k: &WeierstrassConstants) -> Result<Vec<Polynomial>> {
    let ring = weierstrass_ring();
    let texts = [
        "h^2 - f*k - q1*h - 2*q1^2 - f*(q20 + q21*f)".to_string(),
        "h*k - f*(q30 + q31*f + f^2) + q1*k - (q20 + q21*f)*h - q1*(q20 + q21*f)".to_string(),
        "k^2 - (q30 + q31*f + f^2)*h - (q20 + q21*f)^2 + 2*q1*(q30 + q31*f + f^2)".to_string(),
        format!("f*g - ({})*g - h - ({})", k.alpha, k.a),
        format!("h*g - ({})*g - k - ({})", k.beta, k.b),
        format!("k*g - ({})*g - ({})*k - ({})*h - ({})", k.gamma, k.e1, k.e2, k.c),
    ];
    texts.iter().map(|t| parse_polynomial(&ring, t)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WeierstrassReport {
    pub pass: bool,
    pub pairs: usize,
    pub nonzero_remainders: usize,
}

/// Every S-pair of the six generators reduces to zero over the parameter ring.
pub fn verify_weierstrass_with(k: &WeierstrassConstants) -> Result<WeierstrassReport> {
    let ring = weierstrass_ring();
    let order = weierstrass_order(&ring)?;
    let rems = parametric_check(&weierstrass_generators(k)?, &order, &WEIERSTRASS_MAIN, DEFAULT_BUDGET)?;
    let nonzero = rems.iter().filter(|r| !r.is_zero()).count();
    Ok(WeierstrassReport { pass: nonzero == 0, pairs: rems.len(), nonzero_remainders: nonzero })
}

pub fn verify_weierstrass_relations() -> Result<bool> {
    Ok(verify_weierstrass_with(&WeierstrassConstants::default())?.pass)
}

/// Monomials `fⁿ, fⁿh, fⁿk, g^(n+1)` of weighted degree at most `max`.
pub fn predicted_weierstrass_basis(max: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let [wf, wh, wk, wg] = WEIERSTRASS_WEIGHTS;
    let mut n = 0u32;
    while n as i64 * wf <= max {
        for (extra, w) in [(None, 0), (Some(1), wh), (Some(2), wk)] {
            if n as i64 * wf + w <= max {
                let mut e = vec![n, 0, 0, 0];
                if let Some(i) = extra {
                    e[i] = 1;
                }
                out.push(Monomial::from_exponents(e));
            }
        }
        n += 1;
    }
    let mut m = 1u32;
    while m as i64 * wg <= max {
        out.push(Monomial::from_exponents(vec![0, 0, 0, m]));
        m += 1;
    }
    out.sort();
    out
}

/// Specializes the parameters and compares the standard monomials of the
/// resulting ideal up to weighted degree `max` with the predicted basis.
pub fn weierstrass_specialization_matches(qs: &[Rational; 5], max: i64) -> Result<bool> {
    let main = Ring::new(&WEIERSTRASS_MAIN)?;
    let vals: BTreeMap<String, Rational> =
        WEIERSTRASS_PARAMS.iter().map(|s| s.to_string()).zip(qs.iter().cloned()).collect();
    let gens: Vec<Polynomial> = weierstrass_generators(&WeierstrassConstants::default())?
        .iter()
        .map(|g| g.specialize(&vals, &main))
        .collect::<Result<_>>()?;
    let gb = buchberger(&IdealPresentation::new(gens, weierstrass_main_order(&main)?)?)?;
    Ok(gb.standard_monomials_up_to(&WEIERSTRASS_WEIGHTS, max) == predicted_weierstrass_basis(max))
}

// ---------------------------------------------------------------------------
// Report

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub pass: bool,
    pub details: Value,
}

fn check<T: Serialize>(pass: bool, details: &T) -> Check {
    Check { pass, details: serde_json::to_value(details).unwrap_or(Value::Null) }
}

pub const CHECK_NAMES: [&str; 5] = ["universal", "blowdown", "c0", "p2", "weierstrass"];

pub fn run_check(name: &str) -> Result<Check> {
    match name {
        "universal" => {
            let r = moduli::verify_universal_relations_with(Default::default())?;
            Ok(check(r.pass, &r))
        }
        "blowdown" => {
            let r = verify_blowdown_orbit_report()?;
            let minors = blowdown_minors_vanish();
            let pass = r.pass && minors && !r.flipped_pass;
            Ok(check(pass, &json!({ "orbit": r, "minors_vanish": minors })))
        }
        "c0" => {
            let r = verify_c0_geometry_report()?;
            Ok(check(r.pass, &r))
        }
        "p2" => {
            let r = verify_p2_probe_report()?;
            Ok(check(r.pass, &r))
        }
        "weierstrass" => {
            let r = verify_weierstrass_with(&WeierstrassConstants::default())?;
            let control = verify_weierstrass_with(&WeierstrassConstants { beta: "q1".into(), ..Default::default() })?;
            let qs = [int(1), int(-2), q(1, 3), int(5), int(-1)];
            let spec = weierstrass_specialization_matches(&qs, 12)?;
            let pass = r.pass && !control.pass && spec;
            Ok(check(
                pass,
                &json!({ "parametric": r, "control_beta_q1": control, "specialization_degree_12": spec }),
            ))
        }
        other => Err(Error::Invalid(format!("unknown check `{other}`"))),
    }
}

/// Runs the named checks (all of them for an empty list).
pub fn verify_report(names: &[&str]) -> Result<BTreeMap<String, Check>> {
    let list: Vec<&str> = if names.is_empty() { CHECK_NAMES.to_vec() } else { names.to_vec() };
    list.into_iter().map(|n| Ok((n.to_string(), run_check(n)?))).collect()
}
