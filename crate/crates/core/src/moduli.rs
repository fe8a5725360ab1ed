//! The ten-coordinate moduli scheme, its universal curve and the torus action.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{self, parametric_check, GroebnerBasis, IdealPresentation, DEFAULT_BUDGET};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::rational::{self, int, nth_root, pow_i, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Alpha12,
    Alpha21,
    Beta12,
    Beta21,
    Gamma12,
    Gamma21,
    Epsilon12,
    Epsilon21,
    PiTilde1,
    PiTilde2,
}

pub const COORDS: [Coord; 10] = [
    Coord::Alpha12,
    Coord::Alpha21,
    Coord::Beta12,
    Coord::Beta21,
    Coord::Gamma12,
    Coord::Gamma21,
    Coord::Epsilon12,
    Coord::Epsilon21,
    Coord::PiTilde1,
    Coord::PiTilde2,
];

impl Coord {
    /// Key used in JSON.
    pub fn name(self) -> &'static str {
        match self {
            Coord::Alpha12 => "alpha12",
            Coord::Alpha21 => "alpha21",
            Coord::Beta12 => "beta12",
            Coord::Beta21 => "beta21",
            Coord::Gamma12 => "gamma12",
            Coord::Gamma21 => "gamma21",
            Coord::Epsilon12 => "epsilon12",
            Coord::Epsilon21 => "epsilon21",
            Coord::PiTilde1 => "pi_tilde1",
            Coord::PiTilde2 => "pi_tilde2",
        }
    }

    /// Variable name in the symbolic parameter ring.
    pub fn symbol(self) -> &'static str {
        match self {
            Coord::Alpha12 => "a12",
            Coord::Alpha21 => "a21",
            Coord::Beta12 => "b12",
            Coord::Beta21 => "b21",
            Coord::Gamma12 => "g12",
            Coord::Gamma21 => "g21",
            Coord::Epsilon12 => "e12",
            Coord::Epsilon21 => "e21",
            Coord::PiTilde1 => "pt1",
            Coord::PiTilde2 => "pt2",
        }
    }

    pub fn from_name(s: &str) -> Option<Coord> {
        COORDS.iter().copied().find(|c| c.name() == s || c.symbol() == s)
    }

    /// Torus weight `(w1, w2)`.
    pub fn weight(self) -> (i64, i64) {
        match self {
            Coord::Alpha12 => (2, -1),
            Coord::Alpha21 => (-1, 2),
            Coord::Beta12 => (3, -1),
            Coord::Beta21 => (-1, 3),
            Coord::Gamma12 => (2, 0),
            Coord::Gamma21 => (0, 2),
            Coord::Epsilon12 => (3, 0),
            Coord::Epsilon21 => (0, 3),
            Coord::PiTilde1 => (4, 0),
            Coord::PiTilde2 => (0, 4),
        }
    }

    /// Image under the transposition of the two marked points.
    pub fn swapped(self) -> Coord {
        match self {
            Coord::Alpha12 => Coord::Alpha21,
            Coord::Alpha21 => Coord::Alpha12,
            Coord::Beta12 => Coord::Beta21,
            Coord::Beta21 => Coord::Beta12,
            Coord::Gamma12 => Coord::Gamma21,
            Coord::Gamma21 => Coord::Gamma12,
            Coord::Epsilon12 => Coord::Epsilon21,
            Coord::Epsilon21 => Coord::Epsilon12,
            Coord::PiTilde1 => Coord::PiTilde2,
            Coord::PiTilde2 => Coord::PiTilde1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuliPoint {
    #[serde(with = "rational::serde_str")]
    pub alpha12: Rational,
    #[serde(with = "rational::serde_str")]
    pub alpha21: Rational,
    #[serde(with = "rational::serde_str")]
    pub beta12: Rational,
    #[serde(with = "rational::serde_str")]
    pub beta21: Rational,
    #[serde(with = "rational::serde_str")]
    pub gamma12: Rational,
    #[serde(with = "rational::serde_str")]
    pub gamma21: Rational,
    #[serde(with = "rational::serde_str")]
    pub epsilon12: Rational,
    #[serde(with = "rational::serde_str")]
    pub epsilon21: Rational,
    #[serde(with = "rational::serde_str")]
    pub pi_tilde1: Rational,
    #[serde(with = "rational::serde_str")]
    pub pi_tilde2: Rational,
}

impl fmt::Display for ModuliPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = COORDS
            .iter()
            .map(|&c| format!("{}={}", c.name(), rational::format_rational(self.get(c))))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl ModuliPoint {
    pub fn zero() -> ModuliPoint {
        Self::from_values(std::array::from_fn(|_| Rational::zero()))
    }

    /// Values in the order of [`COORDS`].
    pub fn from_values(v: [Rational; 10]) -> ModuliPoint {
        let [alpha12, alpha21, beta12, beta21, gamma12, gamma21, epsilon12, epsilon21, pi_tilde1, pi_tilde2] = v;
        ModuliPoint { alpha12, alpha21, beta12, beta21, gamma12, gamma21, epsilon12, epsilon21, pi_tilde1, pi_tilde2 }
    }

    pub fn values(&self) -> [Rational; 10] {
        COORDS.map(|c| self.get(c).clone())
    }

    pub fn get(&self, c: Coord) -> &Rational {
        match c {
            Coord::Alpha12 => &self.alpha12,
            Coord::Alpha21 => &self.alpha21,
            Coord::Beta12 => &self.beta12,
            Coord::Beta21 => &self.beta21,
            Coord::Gamma12 => &self.gamma12,
            Coord::Gamma21 => &self.gamma21,
            Coord::Epsilon12 => &self.epsilon12,
            Coord::Epsilon21 => &self.epsilon21,
            Coord::PiTilde1 => &self.pi_tilde1,
            Coord::PiTilde2 => &self.pi_tilde2,
        }
    }

    pub fn get_mut(&mut self, c: Coord) -> &mut Rational {
        match c {
            Coord::Alpha12 => &mut self.alpha12,
            Coord::Alpha21 => &mut self.alpha21,
            Coord::Beta12 => &mut self.beta12,
            Coord::Beta21 => &mut self.beta21,
            Coord::Gamma12 => &mut self.gamma12,
            Coord::Gamma21 => &mut self.gamma21,
            Coord::Epsilon12 => &mut self.epsilon12,
            Coord::Epsilon21 => &mut self.epsilon21,
            Coord::PiTilde1 => &mut self.pi_tilde1,
            Coord::PiTilde2 => &mut self.pi_tilde2,
        }
    }

    pub fn with(mut self, c: Coord, v: Rational) -> ModuliPoint {
        *self.get_mut(c) = v;
        self
    }

    /// Coordinates that do not vanish.
    pub fn support(&self) -> Vec<Coord> {
        COORDS.iter().copied().filter(|&c| !self.get(c).is_zero()).collect()
    }

    /// Same curve with the two marked points exchanged.
    pub fn swap_indices(&self) -> ModuliPoint {
        Self::from_values(COORDS.map(|c| self.get(c.swapped()).clone()))
    }

    /// Values keyed by symbol name, for polynomial evaluation.
    pub fn as_symbol_map(&self) -> BTreeMap<String, Rational> {
        COORDS.iter().map(|&c| (c.symbol().to_string(), self.get(c).clone())).collect()
    }

    pub fn from_json(s: &str) -> Result<ModuliPoint> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

/// `π_i = π̃_i − 3α_ij²γ_ji − 3α_ij α_ji β_ij − 3γ_ij²` with `j = 3 − i`.
pub fn pi_from_pi_tilde(p: &ModuliPoint, i: u8) -> Result<Rational> {
    let (pt, aij, aji, bij, gij, gji) = match i {
        1 => (&p.pi_tilde1, &p.alpha12, &p.alpha21, &p.beta12, &p.gamma12, &p.gamma21),
        2 => (&p.pi_tilde2, &p.alpha21, &p.alpha12, &p.beta21, &p.gamma21, &p.gamma12),
        _ => return Err(Error::Invalid(format!("marked point index must be 1 or 2, got {i}"))),
    };
    let three = int(3);
    Ok(pt - &three * aij * aij * gji - &three * aij * aji * bij - &three * gij * gij)
}

/// Inverse of [`pi_from_pi_tilde`].
pub fn pi_tilde_from_pi(pi: &Rational, aij: &Rational, aji: &Rational, bij: &Rational, gij: &Rational, gji: &Rational) -> Rational {
    let three = int(3);
    pi + &three * aij * aij * gji + &three * aij * aji * bij + &three * gij * gij
}

/// The 2x4 matrix whose rank must be at most one.
pub fn rank_matrix(p: &ModuliPoint) -> [[Rational; 4]; 2] {
    let two = int(2);
    [
        [p.alpha12.clone(), p.alpha21.clone(), p.beta12.clone(), p.beta21.clone()],
        [&two * &p.epsilon12, &two * &p.epsilon21, p.pi_tilde1.clone(), p.pi_tilde2.clone()],
    ]
}

/// The six 2x2 minors, in column-pair order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
pub fn minors(p: &ModuliPoint) -> Vec<Rational> {
    let m = rank_matrix(p);
    let mut out = Vec::with_capacity(6);
    for k in 0..4 {
        for l in k + 1..4 {
            out.push(&m[0][k] * &m[1][l] - &m[0][l] * &m[1][k]);
        }
    }
    out
}

pub fn minors_rank_ok(p: &ModuliPoint) -> bool {
    minors(p).iter().all(Zero::is_zero)
}

pub const CURVE_VARS: [&str; 4] = ["h1", "h2", "f1", "f2"];

pub fn curve_ring() -> Ring {
    Ring::new(&CURVE_VARS).expect("fixed names")
}

/// Curve variables followed by the ten coordinate symbols.
pub fn symbolic_ring() -> Ring {
    let mut v: Vec<&str> = CURVE_VARS.to_vec();
    v.extend(COORDS.iter().map(|c| c.symbol()));
    Ring::new(&v).expect("fixed names")
}

/// The ten coordinate symbols alone.
pub fn parameter_ring() -> Ring {
    let v: Vec<&str> = COORDS.iter().map(|c| c.symbol()).collect();
    Ring::new(&v).expect("fixed names")
}

/// Weighted degree with `f = 2`, `h = 3`, ties broken by `h1 > h2 > f1 > f2`.
pub fn curve_order(ring: &Ring) -> MonomialOrder {
    MonomialOrder::weighted_deglex(
        ring,
        &[("h1", 3), ("h2", 3), ("f1", 2), ("f2", 2)],
        &["h1", "h2", "f1", "f2"],
    )
    .expect("curve ring")
}

/// Block order on the symbolic ring: curve variables by the curve order,
/// parameters recessive.
pub fn symbolic_order(ring: &Ring) -> MonomialOrder {
    let inner = curve_order(&curve_ring());
    let outer = MonomialOrder::grevlex_default(&parameter_ring());
    MonomialOrder::block(ring, &inner, &outer).expect("partition")
}

/// Coefficients of the universal curve, as polynomials in the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCoefficients<T> {
    pub a: T,
    pub b12: T,
    pub b21: T,
    pub psi12: T,
    pub psi21: T,
    pub s1: T,
    pub s2: T,
    pub u: T,
    pub pi1: T,
    pub pi2: T,
}

/// Knobs for the negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FormulaVariant {
    /// Negate the formula for `a`.
    pub flip_a: bool,
}

struct Sym {
    ring: Ring,
}

impl Sym {
    fn c(&self, c: Coord) -> Polynomial {
        Polynomial::var(&self.ring, c.symbol()).expect("symbol")
    }
    fn n(&self, x: i64) -> Polynomial {
        Polynomial::constant(&self.ring, int(x))
    }
    fn v(&self, name: &str) -> Polynomial {
        Polynomial::var(&self.ring, name).expect("curve variable")
    }
}

fn pair(i: u8) -> (Coord, Coord, Coord, Coord, Coord, Coord, Coord, Coord, Coord) {
    // (α_ij, α_ji, β_ij, β_ji, γ_ij, γ_ji, ε_ij, ε_ji, π̃_i)
    use Coord::*;
    if i == 1 {
        (Alpha12, Alpha21, Beta12, Beta21, Gamma12, Gamma21, Epsilon12, Epsilon21, PiTilde1)
    } else {
        (Alpha21, Alpha12, Beta21, Beta12, Gamma21, Gamma12, Epsilon21, Epsilon12, PiTilde2)
    }
}

/// Closed formulas for the coefficients, inside `ring` (which must contain the
/// coordinate symbols).
pub fn coefficient_formulas(ring: &Ring, variant: FormulaVariant) -> CurveCoefficients<Polynomial> {
    use Coord::*;
    let s = Sym { ring: ring.clone() };
    let c = |x| s.c(x);
    let n = |x| s.n(x);
    let mut a = -(c(Alpha12).pow(2) * c(Alpha21).pow(2)) - c(Gamma12) * c(Gamma21) + c(Beta12) * c(Beta21);
    if variant.flip_a {
        a = -a;
    }
    let b = |i: u8| {
        let (aij, aji, bij, bji, gij, gji, eij, eji, _) = pair(i);
        c(aij) * c(aji).pow(2) * c(gij) - n(2) * c(aij).pow(2) * c(aji) * c(bji) - n(2) * c(aij) * c(gji).pow(2)
            + n(2) * c(aji) * c(bij) * c(gji)
            + c(bji) * c(eij)
            - c(gij) * c(eji)
    };
    let psi = |i: u8| {
        let (aij, aji, bij, _, gij, gji, _, _, _) = pair(i);
        n(3) * c(aij) * c(aji) * c(gij) + c(gji) * c(bij)
    };
    let si = |i: u8| {
        let (aij, aji, bij, bji, gij, gji, eij, eji, pti) = pair(i);
        c(eij).pow(2) - n(3) * c(aij).pow(3) * c(eji) - c(gij) * c(pti) + n(2) * c(gij).pow(3)
            + n(2) * c(bij).pow(2) * c(gji)
            - n(3) * c(aij).pow(2) * c(gij) * c(gji)
            + n(3) * c(aij) * c(aji) * c(bij) * c(gij)
            - c(aij).pow(2) * c(bij) * c(bji)
            + n(3) * c(aij).pow(4) * c(aji).pow(2)
    };
    let u = c(Beta21) * c(PiTilde1) - c(Epsilon12) * c(Epsilon21)
        + n(2) * c(Alpha12).pow(2) * c(Alpha21) * c(Epsilon21)
        - n(2) * c(Alpha12).pow(3) * c(Alpha21).pow(3)
        - n(2) * c(Gamma21).pow(2) * c(Beta12)
        - n(2) * c(Gamma12).pow(2) * c(Beta21)
        + c(Alpha12) * c(Alpha21) * (n(3) * c(Gamma12) * c(Gamma21) - n(2) * c(Beta12) * c(Beta21));
    let pi = |i: u8| {
        let (aij, aji, bij, _, gij, gji, _, _, pti) = pair(i);
        c(pti) - n(3) * c(aij).pow(2) * c(gji) - n(3) * c(aij) * c(aji) * c(bij) - n(3) * c(gij).pow(2)
    };
    CurveCoefficients {
        a,
        b12: b(1),
        b21: b(2),
        psi12: psi(1),
        psi21: psi(2),
        s1: si(1),
        s2: si(2),
        u,
        pi1: pi(1),
        pi2: pi(2),
    }
}

/// The six curve equations over the symbolic ring, in the order
/// `f1f2, f1h2, f2h1, h1², h2², h1h2`.
pub fn symbolic_generators(variant: FormulaVariant) -> Vec<Polynomial> {
    use Coord::*;
    let ring = symbolic_ring();
    let s = Sym { ring: ring.clone() };
    let c = |x| s.c(x);
    let k = coefficient_formulas(&ring, variant);
    let f = |i: u8| s.v(if i == 1 { "f1" } else { "f2" });
    let h = |i: u8| s.v(if i == 1 { "h1" } else { "h2" });

    let g1 = f(1) * f(2)
        - (c(Alpha21) * h(1) + c(Alpha12) * h(2) + c(Gamma21) * f(1) + c(Gamma12) * f(2) + k.a.clone());
    let mixed = |i: u8| {
        let j = 3 - i;
        let (aij, aji, bij, bji, gij, gji, _, eji, _) = pair(i);
        let bcoef = if i == 1 { k.b12.clone() } else { k.b21.clone() };
        f(i) * h(j)
            - (c(aij) * f(j).pow(2)
                + c(gij) * h(j)
                + c(bji) * h(i)
                + (c(aji) * c(bij) + c(aij) * c(gji)) * f(j)
                + (c(eji) - c(aij) * c(aji).pow(2)) * f(i)
                + bcoef)
    };
    let square = |i: u8| {
        let j = 3 - i;
        let (aij, _, bij, _, gij, _, _, _, _) = pair(i);
        let (pi, si) = if i == 1 { (k.pi1.clone(), k.s1.clone()) } else { (k.pi2.clone(), k.s2.clone()) };
        h(i).pow(2)
            - (f(i).pow(3) + pi * f(i) - c(aij).pow(3) * h(j)
                + (c(bij).pow(2) - s.n(3) * c(aij).pow(2) * c(gij)) * f(j)
                + si)
    };
    let g6 = h(1) * h(2)
        - (c(Beta12) * f(2).pow(2)
            + c(Beta21) * f(1).pow(2)
            + c(Epsilon12) * h(2)
            + c(Epsilon21) * h(1)
            + k.psi12.clone() * f(2)
            + k.psi21.clone() * f(1)
            + k.u.clone());
    vec![g1, mixed(1), mixed(2), square(1), square(2), g6]
}

/// The six 2x2 minors as polynomials in `ring`.
pub fn symbolic_minors(ring: &Ring) -> Vec<Polynomial> {
    use Coord::*;
    let s = Sym { ring: ring.clone() };
    let c = |x| s.c(x);
    let top = [c(Alpha12), c(Alpha21), c(Beta12), c(Beta21)];
    let bot = [s.n(2) * c(Epsilon12), s.n(2) * c(Epsilon21), c(PiTilde1), c(PiTilde2)];
    let mut out = Vec::new();
    for k in 0..4 {
        for l in k + 1..4 {
            out.push(&top[k] * &bot[l] - &top[l] * &bot[k]);
        }
    }
    out
}

/// The universal curve over one point.
#[derive(Clone, Debug)]
pub struct UniversalCurveIdeal {
    pub point: ModuliPoint,
    pub generators: Vec<Polynomial>,
    pub coefficients: CurveCoefficients<Rational>,
}

impl UniversalCurveIdeal {
    pub fn ring(&self) -> &Ring {
        self.generators[0].ring()
    }

    pub fn presentation(&self) -> IdealPresentation {
        IdealPresentation::new(self.generators.clone(), curve_order(self.ring())).expect("same ring")
    }
}

pub fn build_curve_ideal(p: &ModuliPoint) -> UniversalCurveIdeal {
    build_curve_ideal_variant(p, FormulaVariant::default())
}

pub fn build_curve_ideal_variant(p: &ModuliPoint, variant: FormulaVariant) -> UniversalCurveIdeal {
    let target = curve_ring();
    let vals = p.as_symbol_map();
    let generators = symbolic_generators(variant)
        .iter()
        .map(|g| g.specialize(&vals, &target).expect("all symbols valued"))
        .collect();
    let k = coefficient_formulas(&parameter_ring(), variant);
    let ev = |q: &Polynomial| q.evaluate(&vals).expect("all symbols valued");
    let coefficients = CurveCoefficients {
        a: ev(&k.a),
        b12: ev(&k.b12),
        b21: ev(&k.b21),
        psi12: ev(&k.psi12),
        psi21: ev(&k.psi21),
        s1: ev(&k.s1),
        s2: ev(&k.s2),
        u: ev(&k.u),
        pi1: ev(&k.pi1),
        pi2: ev(&k.pi2),
    };
    UniversalCurveIdeal { point: p.clone(), generators, coefficients }
}

/// The monomials `f1f2, f1h2, f2h1, h1², h2², h1h2` of the curve ring.
pub fn expected_leading_monomials(ring: &Ring) -> Vec<Monomial> {
    [
        vec![("f1", 1), ("f2", 1)],
        vec![("f1", 1), ("h2", 1)],
        vec![("f2", 1), ("h1", 1)],
        vec![("h1", 2)],
        vec![("h2", 2)],
        vec![("h1", 1), ("h2", 1)],
    ]
    .iter()
    .map(|m| ring.monomial(m).expect("curve ring"))
    .collect()
}

/// Reduced Gröbner basis of the curve ideal under the curve order.
pub fn curve_groebner_basis(p: &ModuliPoint, budget: usize) -> Result<GroebnerBasis> {
    groebner::buchberger_with_budget(&build_curve_ideal(p).presentation(), budget)
}

/// Whether `1, f_i^n, f_i^n h_i` is a basis of the coordinate ring, i.e.
/// whether the leading-term ideal is generated by the six expected monomials.
/// The six generators have exactly those leading monomials, so this holds
/// iff they already form a Gröbner basis.
pub fn has_standard_basis(p: &ModuliPoint) -> Result<bool> {
    has_standard_basis_with_budget(p, DEFAULT_BUDGET)
}

pub fn has_standard_basis_with_budget(p: &ModuliPoint, budget: usize) -> Result<bool> {
    let ideal = build_curve_ideal(p);
    let order = curve_order(ideal.ring());
    let mut steps = 0usize;
    for i in 0..ideal.generators.len() {
        for j in i + 1..ideal.generators.len() {
            steps += 1;
            if steps > budget {
                return Err(Error::BudgetExhausted(budget));
            }
            let s = groebner::s_polynomial(&ideal.generators[i], &ideal.generators[j], &order)?;
            if !groebner::reduce(&s, &ideal.generators, &order)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Options for [`verify_universal_relations_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniversalOptions {
    pub variant: FormulaVariant,
    /// Reduce remainder coefficients modulo the minors (otherwise require them to vanish).
    pub use_minor_ideal: bool,
}

impl Default for UniversalOptions {
    fn default() -> Self {
        UniversalOptions { variant: FormulaVariant::default(), use_minor_ideal: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub pass: bool,
    pub pairs: usize,
    pub nonzero_remainders: usize,
    pub coefficients_checked: usize,
    pub coefficients_outside_minor_ideal: usize,
}

pub fn verify_universal_relations() -> Result<bool> {
    Ok(verify_universal_relations_with(UniversalOptions::default())?.pass)
}

/// Reduces all S-pairs of the symbolic equations, dividing only by their unit
/// leading coefficients, and tests every parameter coefficient of the
/// remainders for membership in the ideal of minors.
pub fn verify_universal_relations_with(opts: UniversalOptions) -> Result<UniversalReport> {
    let ring = symbolic_ring();
    let order = symbolic_order(&ring);
    let gens = symbolic_generators(opts.variant);
    let rems = parametric_check(&gens, &order, &CURVE_VARS, DEFAULT_BUDGET)?;
    let pring = parameter_ring();
    let minors_gb = if opts.use_minor_ideal {
        let pres = IdealPresentation::new(symbolic_minors(&pring), MonomialOrder::grevlex_default(&pring))?;
        Some(groebner::buchberger(&pres)?)
    } else {
        None
    };
    let mut checked = 0;
    let mut outside = 0;
    for r in &rems {
        for (_, coef) in &r.coefficients {
            checked += 1;
            let c = coef.embed(&pring)?;
            let ok = match &minors_gb {
                Some(gb) => gb.contains(&c)?,
                None => c.is_zero(),
            };
            if !ok {
                outside += 1;
            }
        }
    }
    Ok(UniversalReport {
        pass: outside == 0,
        pairs: rems.len(),
        nonzero_remainders: rems.iter().filter(|r| !r.is_zero()).count(),
        coefficients_checked: checked,
        coefficients_outside_minor_ideal: outside,
    })
}

/// `c ↦ λ1^(−w1) λ2^(−w2) c` for a coordinate of weight `(w1, w2)`.
pub fn apply_action(lambda: (&Rational, &Rational), p: &ModuliPoint) -> Result<ModuliPoint> {
    if lambda.0.is_zero() || lambda.1.is_zero() {
        return Err(Error::Invalid("torus element must have nonzero components".into()));
    }
    Ok(ModuliPoint::from_values(COORDS.map(|c| {
        let (w1, w2) = c.weight();
        p.get(c) * pow_i(lambda.0, -w1) * pow_i(lambda.1, -w2)
    })))
}

/// Some `λ` over the rationals with `apply_action(λ, p) = q`.
pub fn same_orbit(p: &ModuliPoint, q: &ModuliPoint) -> Option<(Rational, Rational)> {
    if p.support() != q.support() {
        return None;
    }
    // each nonzero coordinate gives λ1^w1 λ2^w2 = p_c / q_c
    let mut rows: Vec<(i64, i64, Rational)> =
        p.support().iter().map(|&c| (c.weight().0, c.weight().1, p.get(c) / q.get(c))).collect();
    if rows.is_empty() {
        return Some((Rational::one(), Rational::one()));
    }
    let echelon = hermite(&mut rows);
    let candidates = solve_monomial_system(&echelon);
    candidates.into_iter().find(|(l1, l2)| apply_action((l1, l2), p).ok().as_ref() == Some(q))
}

/// Integer row reduction of `λ^w = value` rows, tracking values multiplicatively.
fn hermite(rows: &mut [(i64, i64, Rational)]) -> Vec<(i64, i64, Rational)> {
    let combine = |r: &mut (i64, i64, Rational), s: &(i64, i64, Rational), m: i64| {
        r.0 -= m * s.0;
        r.1 -= m * s.1;
        r.2 = &r.2 / pow_i(&s.2, m);
    };
    let mut out = Vec::new();
    let mut rest: Vec<(i64, i64, Rational)> = rows.to_vec();
    for col in 0..2 {
        let get = |r: &(i64, i64, Rational)| if col == 0 { r.0 } else { r.1 };
        loop {
            let nz: Vec<usize> = (0..rest.len()).filter(|&i| get(&rest[i]) != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    let mut r = rest.remove(i);
                    if get(&r) < 0 {
                        r = (-r.0, -r.1, r.2.recip());
                    }
                    out.push(r);
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| get(&rest[i]).abs()).unwrap();
            let p = rest[piv].clone();
            for &i in &nz {
                if i != piv {
                    let m = Integer::div_floor(&get(&rest[i]), &get(&p));
                    combine(&mut rest[i], &p, m);
                }
            }
        }
    }
    out
}

fn signed_roots(v: &Rational, k: i64) -> Vec<Rational> {
    if k == 0 {
        return vec![];
    }
    let (k, v) = if k < 0 { (-k, v.recip()) } else { (k, v.clone()) };
    match nth_root(&v, k as u32) {
        Some(r) if k % 2 == 0 && !r.is_zero() => vec![r.clone(), -r],
        Some(r) => vec![r],
        None => vec![],
    }
}

fn solve_monomial_system(rows: &[(i64, i64, Rational)]) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    match rows {
        [(d1, k, s1), (0, d2, s2)] => {
            for l2 in signed_roots(s2, *d2) {
                let rhs = s1 / pow_i(&l2, *k);
                for l1 in signed_roots(&rhs, *d1) {
                    out.push((l1, l2.clone()));
                }
            }
        }
        [(a, b, s)] => {
            let g = Integer::gcd(a, b);
            let (a1, b1) = (a / g, b / g);
            let e = a1.extended_gcd(&b1);
            for mu in signed_roots(s, g) {
                out.push((pow_i(&mu, e.x), pow_i(&mu, e.y)));
            }
        }
        _ => {}
    }
    out
}
