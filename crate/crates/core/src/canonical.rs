//! Two-component curve presentations, Laurent expansions at the marked
//! points, canonical generators and parameters, and extraction of the moduli
//! coordinates.
//!
//! Chart `k` is the affine part of the component containing `p_k`; `p_k` is
//! its point at infinity. Functions on `C \ {p1, p2}` are pairs of chart
//! polynomials agreeing on the gluing data. The first-order parameter at
//! infinity is `x/y` on a Weierstrass chart and `1/z` on a line chart.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{Branch, CurveDescription, SpecialIso};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix};
use crate::moduli::{pi_tilde_from_pi, Coord, ModuliPoint};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::rational::{format_rational, int, parse_rational, q, Rational};
use crate::series::TruncatedSeries;

/// Precision `n` handed to [`Chart::expand_at_infinity`] by default.
pub const DEFAULT_PRECISION: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `y² = x³ + a x + b`.
    Weierstrass { a: Rational, b: Rational },
    /// The affine line with coordinate `z`.
    Line,
}

fn ring_of(names: &[&str]) -> Ring {
    Ring::new(names).expect("distinct names")
}

fn s_ring() -> Ring {
    ring_of(&["s"])
}

impl Chart {
    pub fn genus(&self) -> u8 {
        match self {
            Chart::Weierstrass { .. } => 1,
            Chart::Line => 0,
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            Chart::Weierstrass { .. } => ring_of(&["x", "y"]),
            Chart::Line => ring_of(&["z"]),
        }
    }

    pub fn equation(&self) -> Option<Polynomial> {
        match self {
            Chart::Weierstrass { a, b } => {
                let r = self.ring();
                let x = Polynomial::var(&r, "x").unwrap();
                let y = Polynomial::var(&r, "y").unwrap();
                Some(&y * &y - x.pow(3) - x.scale(a) - Polynomial::constant(&r, b.clone()))
            }
            Chart::Line => None,
        }
    }

    /// The monomial with pole order exactly `k` at infinity, if any.
    pub fn pole_monomial(&self, k: u32) -> Option<Polynomial> {
        let r = self.ring();
        let m = match self {
            Chart::Weierstrass { .. } => match k {
                1 => return None,
                k if k % 2 == 0 => r.monomial(&[("x", k / 2)]).unwrap(),
                k => r.monomial(&[("x", (k - 3) / 2), ("y", 1)]).unwrap(),
            },
            Chart::Line => r.monomial(&[("z", k)]).unwrap(),
        };
        Some(Polynomial::monomial(&r, m, Rational::one()))
    }

    /// Basis of chart functions with pole order at most `m`.
    pub fn staircase(&self, m: u32) -> Vec<(u32, Polynomial)> {
        (0..=m).filter_map(|k| self.pole_monomial(k).map(|p| (k, p))).collect()
    }

    /// Expansions of the chart coordinates at infinity, each known to at
    /// least `O(t^n)`.
    pub fn expand_at_infinity(&self, n: i64) -> Result<BTreeMap<String, TruncatedSeries>> {
        let mut out = BTreeMap::new();
        match self {
            Chart::Line => {
                out.insert("z".to_string(), TruncatedSeries::monomial("t", -1, n));
            }
            Chart::Weierstrass { a, b } => {
                // u = 1/x satisfies u = t²(1 + a u² + b u³) where t = x/y
                let p = n + 5;
                let t2 = TruncatedSeries::monomial("t", 2, p);
                let mut u = t2.clone();
                loop {
                    let u2 = u.mul(&u)?;
                    let u3 = u2.mul(&u)?;
                    let inner = u2.scale(a).add(&u3.scale(b))?.add_constant(&Rational::one());
                    let next = t2.mul(&inner)?.truncate(p);
                    if next == u {
                        break;
                    }
                    u = next;
                }
                let x = u.inverse()?;
                let y = x.shift(-1);
                out.insert("x".to_string(), x);
                out.insert("y".to_string(), y);
            }
        }
        Ok(out)
    }

    /// Branch type of the chart at an affine point.
    pub fn branch_at(&self, pt: &[Rational]) -> Branch {
        match self {
            Chart::Line => Branch::Smooth,
            Chart::Weierstrass { a, b } => {
                let disc = int(4) * a * a * a + int(27) * b * b;
                if !disc.is_zero() || !pt[1].is_zero() {
                    return Branch::Smooth;
                }
                if a.is_zero() {
                    if pt[0].is_zero() {
                        Branch::Cusp
                    } else {
                        Branch::Smooth
                    }
                } else if pt[0] == -int(3) * b / (int(2) * a) {
                    Branch::Node
                } else {
                    Branch::Smooth
                }
            }
        }
    }
}

/// Evaluates a polynomial on series, one per ring variable.
pub fn poly_to_series(p: &Polynomial, vals: &[TruncatedSeries], var: &str) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(var, i64::MAX / 4);
    for (m, c) in p.terms() {
        let mut term = TruncatedSeries::constant(var, c.clone(), i64::MAX / 4);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&vals[i].pow(e as i64)?)?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// An identification `f₁∘map1 ≡ f₂∘map2 (mod s^order)`; the maps send each
/// chart coordinate to a polynomial in `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub map1: Vec<Polynomial>,
    pub map2: Vec<Polynomial>,
    pub order: u32,
}

/// A function on the complement of the marked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunction {
    pub on1: Polynomial,
    pub on2: Polynomial,
}

impl CurveFunction {
    pub fn part(&self, k: usize) -> &Polynomial {
        if k == 1 {
            &self.on1
        } else {
            &self.on2
        }
    }

    pub fn add_constant(&self, c: &Rational) -> CurveFunction {
        CurveFunction {
            on1: &self.on1 + Polynomial::constant(self.on1.ring(), c.clone()),
            on2: &self.on2 + Polynomial::constant(self.on2.ring(), c.clone()),
        }
    }

    pub fn scale(&self, c: &Rational) -> CurveFunction {
        CurveFunction { on1: self.on1.scale(c), on2: self.on2.scale(c) }
    }

    pub fn add(&self, o: &CurveFunction) -> CurveFunction {
        CurveFunction { on1: &self.on1 + &o.on1, on2: &self.on2 + &o.on2 }
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.on1, self.on2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [FamilyKind::A, FamilyKind::B, FamilyKind::C, FamilyKind::D, FamilyKind::E, FamilyKind::F];

    pub fn params(self) -> &'static [&'static str] {
        match self {
            FamilyKind::A | FamilyKind::B => &["a", "b", "A", "B", "C", "D"],
            FamilyKind::C | FamilyKind::D => &["lambda", "mu"],
            FamilyKind::E => &["A", "B", "C", "lambda"],
            FamilyKind::F => &["a1", "b1", "a2", "b2", "X1", "Y1", "X2", "Y2"],
        }
    }
}

/// JSON family descriptor: `{"kind": "A", "params": {"a": "0", ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: &[(&str, Rational)]) -> FamilySpec {
        FamilySpec {
            kind,
            params: params.iter().map(|(k, v)| (k.to_string(), format_rational(v))).collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<FamilySpec> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("family descriptor: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<CurvePresentation> {
        let mut vals = BTreeMap::new();
        for (k, v) in &self.params {
            vals.insert(k.clone(), parse_rational(v)?);
        }
        family(self.kind, &vals)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePresentation {
    pub kind: FamilyKind,
    pub params: BTreeMap<String, Rational>,
    pub charts: [Chart; 2],
    pub gluing: Vec<Jet>,
}

fn sp(coeffs: &[Rational]) -> Polynomial {
    let r = s_ring();
    Polynomial::from_terms(&r, coeffs.iter().enumerate().map(|(k, c)| (Monomial::from_exponents(vec![k as u32]), c.clone())))
        .expect("one variable")
}

fn point_jet(p1: &[Rational], p2: &[Rational]) -> Jet {
    Jet {
        map1: p1.iter().map(|c| sp(std::slice::from_ref(c))).collect(),
        map2: p2.iter().map(|c| sp(std::slice::from_ref(c))).collect(),
        order: 1,
    }
}

fn s_coeff(p: &Polynomial, k: u32) -> Rational {
    p.coeff(&Monomial::from_exponents(vec![k]))
}

/// Builds and validates a family presentation.
pub fn family(kind: FamilyKind, params: &BTreeMap<String, Rational>) -> Result<CurvePresentation> {
    for k in params.keys() {
        if !kind.params().contains(&k.as_str()) {
            return Err(Error::Invalid(format!("family {kind:?} has no parameter `{k}`")));
        }
    }
    let g = |name: &str| -> Result<Rational> {
        params
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("family {kind:?} needs parameter `{name}`")))
    };
    let zero = Rational::zero();
    let one = Rational::one();
    let (charts, gluing) = match kind {
        FamilyKind::A => {
            let (a, b, pa, pb, pc, pd) = (g("a")?, g("b")?, g("A")?, g("B")?, g("C")?, g("D")?);
            if pa == pc && pb == pd {
                return Err(Error::Invalid("family A needs two distinct gluing points".into()));
            }
            (
                [Chart::Weierstrass { a, b }, Chart::Line],
                vec![point_jet(&[pa, pb], &[-one.clone()]), point_jet(&[pc, pd], &[one])],
            )
        }
        FamilyKind::B => {
            let (a, b, pa, pb, pc, pd) = (g("a")?, g("b")?, g("A")?, g("B")?, g("C")?, g("D")?);
            if pa.is_zero() && pc.is_zero() {
                return Err(Error::Invalid("family B needs (A, C) != (0, 0)".into()));
            }
            (
                [Chart::Weierstrass { a, b }, Chart::Line],
                vec![Jet { map1: vec![sp(&[pb, pa]), sp(&[pd, pc])], map2: vec![sp(&[zero, one])], order: 2 }],
            )
        }
        FamilyKind::C => {
            let (l, m) = (g("lambda")?, g("mu")?);
            if l.is_zero() || l == one || m.is_zero() || m == one {
                return Err(Error::Invalid("family C needs lambda, mu outside {0, 1}".into()));
            }
            if l == m {
                return Err(Error::Invalid("family C needs lambda != mu, otherwise h0(p1 + p2) > 1".into()));
            }
            (
                [Chart::Line, Chart::Line],
                vec![point_jet(&[zero.clone()], &[zero]), point_jet(&[one.clone()], &[one]), point_jet(&[l], &[m])],
            )
        }
        FamilyKind::D => {
            let (l, m) = (g("lambda")?, g("mu")?);
            if l.is_zero() || m.is_zero() {
                return Err(Error::Invalid("family D needs lambda, mu != 0".into()));
            }
            if l == m {
                return Err(Error::Invalid("family D needs lambda != mu, otherwise h0(p1 + p2) > 1".into()));
            }
            (
                [Chart::Line, Chart::Line],
                vec![
                    Jet { map1: vec![sp(&[zero.clone(), one.clone()])], map2: vec![sp(&[zero, one])], order: 2 },
                    point_jet(&[l], &[m]),
                ],
            )
        }
        FamilyKind::E => {
            let (pa, pb, pc, l) = (g("A")?, g("B")?, g("C")?, g("lambda")?);
            if pa.is_zero() {
                return Err(Error::Invalid("family E needs A != 0, otherwise h0(p1 + p2) > 1".into()));
            }
            if (int(2) * &pa * &l + &pb).is_zero() {
                return Err(Error::Invalid("family E needs 2 A lambda + B != 0".into()));
            }
            // y = A x² + B x + C with x = lambda + s
            let c0 = &pa * &l * &l + &pb * &l + &pc;
            let c1 = int(2) * &pa * &l + &pb;
            (
                [Chart::Line, Chart::Line],
                vec![Jet { map1: vec![sp(&[l, one])], map2: vec![sp(&[c0, c1, pa])], order: 3 }],
            )
        }
        FamilyKind::F => {
            let (a1, b1, a2, b2) = (g("a1")?, g("b1")?, g("a2")?, g("b2")?);
            let (x1, y1, x2, y2) = (g("X1")?, g("Y1")?, g("X2")?, g("Y2")?);
            (
                [Chart::Weierstrass { a: a1, b: b1 }, Chart::Weierstrass { a: a2, b: b2 }],
                vec![point_jet(&[x1, y1], &[x2, y2])],
            )
        }
    };
    let pres = CurvePresentation { kind, params: params.clone(), charts, gluing };
    pres.validate()?;
    Ok(pres)
}

impl CurvePresentation {
    pub fn chart(&self, k: usize) -> &Chart {
        &self.charts[k - 1]
    }

    pub fn param(&self, name: &str) -> Rational {
        self.params.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    fn jet_map(&self, jet: &Jet, k: usize) -> BTreeMap<String, Polynomial> {
        let maps = if k == 1 { &jet.map1 } else { &jet.map2 };
        self.chart(k).ring().vars().iter().cloned().zip(maps.iter().cloned()).collect()
    }

    fn jet_values(&self, jet: &Jet, k: usize, p: &Polynomial) -> Result<Vec<Rational>> {
        let sub = p.substitute(&self.jet_map(jet, k), &s_ring())?;
        Ok((0..jet.order).map(|e| s_coeff(&sub, e)).collect())
    }

    /// Length of the intersection subscheme.
    pub fn xi_length(&self) -> u32 {
        self.gluing.iter().map(|j| j.order).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for jet in &self.gluing {
            for k in [1, 2] {
                if let Some(eq) = self.chart(k).equation() {
                    if self.jet_values(jet, k, &eq)?.iter().any(|c| !c.is_zero()) {
                        return Err(Error::Invalid(format!(
                            "gluing data does not lie on chart {k} (point off the curve or tangency fails)"
                        )));
                    }
                }
            }
        }
        let genus = self.chart(1).genus() as u32 + self.chart(2).genus() as u32 + self.xi_length() - 1;
        if genus != 2 {
            return Err(Error::Invalid(format!("presentation has arithmetic genus {genus}, expected 2")));
        }
        let dim = self.h0(1, 1)?.len();
        if dim != 1 {
            return Err(Error::Invalid(format!("p1 + p2 is special: h0(p1 + p2) = {dim}")));
        }
        Ok(())
    }

    /// Whether a pair of chart functions satisfies every gluing condition.
    pub fn glues(&self, f: &CurveFunction) -> Result<bool> {
        for jet in &self.gluing {
            if self.jet_values(jet, 1, &f.on1)? != self.jet_values(jet, 2, &f.on2)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of `H⁰(C, m1 p1 + m2 p2)`.
    pub fn h0(&self, m1: u32, m2: u32) -> Result<Vec<CurveFunction>> {
        let r1 = self.chart(1).ring();
        let r2 = self.chart(2).ring();
        let mut basis: Vec<CurveFunction> = Vec::new();
        for (_, p) in self.chart(1).staircase(m1) {
            basis.push(CurveFunction { on1: p, on2: Polynomial::zero(&r2) });
        }
        for (_, p) in self.chart(2).staircase(m2) {
            basis.push(CurveFunction { on1: Polynomial::zero(&r1), on2: p });
        }
        let mut rows: Matrix = Vec::new();
        for jet in &self.gluing {
            let cols: Vec<Vec<Rational>> = basis
                .iter()
                .map(|f| -> Result<Vec<Rational>> {
                    let v1 = self.jet_values(jet, 1, &f.on1)?;
                    let v2 = self.jet_values(jet, 2, &f.on2)?;
                    Ok(v1.iter().zip(&v2).map(|(a, b)| a - b).collect())
                })
                .collect::<Result<_>>()?;
            for e in 0..jet.order as usize {
                rows.push(cols.iter().map(|c| c[e].clone()).collect());
            }
        }
        let ker = kernel(&rows, basis.len());
        Ok(ker
            .into_iter()
            .map(|v| {
                let mut f = CurveFunction { on1: Polynomial::zero(&r1), on2: Polynomial::zero(&r2) };
                for (c, b) in v.iter().zip(&basis) {
                    if !c.is_zero() {
                        f = f.add(&b.scale(c));
                    }
                }
                f
            })
            .collect())
    }

    /// An element of `H⁰(m p_i + p_j)` whose chart-`i` part has unit
    /// coefficient on the pole-order-`m` monomial.
    pub fn element_with_pole(&self, i: usize, m: u32) -> Result<CurveFunction> {
        let (mi, mj) = (m, 1);
        let space = if i == 1 { self.h0(mi, mj)? } else { self.h0(mj, mi)? };
        let lead = self
            .chart(i)
            .pole_monomial(m)
            .ok_or_else(|| Error::Invalid(format!("no pole of order {m} on chart {i}")))?;
        let (lm, _) = lead.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        for f in space {
            let c = f.part(i).coeff(&lm);
            if !c.is_zero() {
                return Ok(f.scale(&c.recip()));
            }
        }
        Err(Error::Invalid(format!("H0({m} p{i} + p{}) has no function with a pole of order {m}", 3 - i)))
    }

    /// Expansion of `f` at `p_i` in the first-order parameter.
    pub fn expand(&self, f: &CurveFunction, i: usize, n: i64) -> Result<TruncatedSeries> {
        let chart = self.chart(i);
        let ex = chart.expand_at_infinity(n)?;
        let vals: Vec<TruncatedSeries> = chart.ring().vars().iter().map(|v| ex[v].clone()).collect();
        poly_to_series(f.part(i), &vals, "t")
    }

    fn product(&self, a: &CurveFunction, b: &CurveFunction) -> CurveFunction {
        CurveFunction { on1: &a.on1 * &b.on1, on2: &a.on2 * &b.on2 }
    }
}

/// Pole order of a series: `-valuation` if negative, else 0.
fn pole_order(s: &TruncatedSeries) -> i64 {
    s.valuation().map(|v| (-v).max(0)).unwrap_or(0)
}

fn check_pole(s: &TruncatedSeries, bound: i64) -> Result<bool> {
    // every coefficient below -bound that the series can see must vanish
    if s.precision() <= -bound {
        return Err(Error::Precision { exponent: -bound - 1, precision: s.precision() });
    }
    Ok(pole_order(s) <= bound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub f: CurveFunction,
    pub h: CurveFunction,
}

/// Adjusts `f̃ ∈ H⁰(2p_i + D)` and `h̃ ∈ H⁰(3p_i + D)` (rescaled to unit
/// leading coefficients) to the canonical pair `f = f̃ + a`,
/// `h = h̃ + b f̃ + c`.
pub fn normalize_generators(pres: &CurvePresentation, i: usize, ft: &CurveFunction, ht: &CurveFunction, n: i64) -> Result<Normalized> {
    let fs = pres.expand(ft, i, n)?;
    let hs = pres.expand(ht, i, n)?;
    if fs.coeff(-2)? != Rational::one() || hs.coeff(-3)? != Rational::one() || pole_order(&fs) != 2 || pole_order(&hs) != 3 {
        return Err(Error::Invalid("raw generators must start with t^-2 and t^-3".into()));
    }
    let d = hs.mul(&hs)?.sub(&fs.pow(3)?)?;
    let hf = hs.mul(&fs)?;
    let b = -d.coeff(-5)? / int(2);
    let a = (d.coeff(-4)? + int(2) * &b * hf.coeff(-4)? + &b * &b) / int(3);
    let f = ft.add_constant(&a);
    let h0 = ht.add(&ft.scale(&b));
    let fs2 = pres.expand(&f, i, n)?;
    let h0s = pres.expand(&h0, i, n)?;
    let e = fs2.mul(&h0s.pow(2)?)?.sub(&fs2.pow(4)?)?;
    let c = -e.coeff(-5)? / int(2);
    let h = h0.add_constant(&c);
    Ok(Normalized { a, b, c, f, h })
}

/// Pole-order conditions `h² − f³ ∈ H⁰(3D)` and `f h² − f⁴ ∈ H⁰(4D)` at both
/// marked points.
pub fn verify_canonical(pres: &CurvePresentation, f: &CurveFunction, h: &CurveFunction, n: i64) -> Result<bool> {
    if !pres.glues(f)? || !pres.glues(h)? {
        return Ok(false);
    }
    let h2 = pres.product(h, h);
    let f2 = pres.product(f, f);
    let f3 = pres.product(&f2, f);
    let f4 = pres.product(&f2, &f2);
    let e3 = CurveFunction { on1: &h2.on1 - &f3.on1, on2: &h2.on2 - &f3.on2 };
    let fh2 = pres.product(f, &h2);
    let e4 = CurveFunction { on1: &fh2.on1 - &f4.on1, on2: &fh2.on2 - &f4.on2 };
    for k in [1, 2] {
        if !check_pole(&pres.expand(&e3, k, n)?, 3)? || !check_pole(&pres.expand(&e4, k, n)?, 4)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One step of the canonical-parameter iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterStep {
    /// The new parameter as a series in the old one.
    pub forward: TruncatedSeries,
    /// The old parameter as a series in the new one.
    pub inverse: TruncatedSeries,
    pub c: Rational,
}

/// Given `g = t^-m + c t^-1 + O(1)` (no terms strictly between), returns
/// `t_m = t − (c/m) t^m`.
pub fn canonical_parameter(g: &TruncatedSeries, m: i64) -> Result<ParameterStep> {
    if g.coeff(-m)? != Rational::one() || pole_order(g) != m {
        return Err(Error::Invalid(format!("expected an expansion starting with t^-{m}")));
    }
    for k in (-m + 1)..-1 {
        if !g.coeff(k)?.is_zero() {
            return Err(Error::Invalid(format!("expansion has a t^{k} term; lift the function first")));
        }
    }
    let c = g.coeff(-1)?;
    let var = g.var();
    let p = g.precision() + m + 1;
    let forward = TruncatedSeries::new(var, [(1, Rational::one()), (m, -&c / int(m))], p);
    let inverse = forward.reversion()?;
    Ok(ParameterStep { forward, inverse, c })
}

/// Coefficient `α_ij[-m, k]` of an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCoefficient {
    pub i: u8,
    pub j: u8,
    pub m: u8,
    pub k: i8,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionResult {
    pub point: ModuliPoint,
    #[serde(with = "pair_str")]
    pub pi: [Rational; 2],
    pub raw: Vec<RawCoefficient>,
    /// `[f1, h1, f2, h2]` as chart pairs.
    pub generators: Vec<String>,
    pub diagonal_normalization: bool,
}

mod pair_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&v[0]), format_rational(&v[1])].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<[Rational; 2], D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let p = |x: &str| parse_rational(x).map_err(serde::de::Error::custom);
        Ok([p(&a)?, p(&b)?])
    }
}

impl ExtractionResult {
    pub fn raw(&self, i: u8, j: u8, m: u8, k: i8) -> Option<&Rational> {
        self.raw.iter().find(|r| (r.i, r.j, r.m, r.k) == (i, j, m, k)).map(|r| &r.value)
    }
}

struct AtPoint {
    f: CurveFunction,
    h: CurveFunction,
    /// first-order parameter as a series in the order-4 canonical parameter
    inv: TruncatedSeries,
    diag: [Rational; 3],
}

fn canonical_at(pres: &CurvePresentation, i: usize, n: i64) -> Result<AtPoint> {
    let ft = pres.element_with_pole(i, 2)?;
    let ht = pres.element_with_pole(i, 3)?;
    let norm = normalize_generators(pres, i, &ft, &ht, n)?;
    if !verify_canonical(pres, &norm.f, &norm.h, n)? {
        return Err(Error::Internal("normalized generators fail the pole-order conditions".into()));
    }
    let big = pres.element_with_pole(i, 4)?;
    let mut fs = pres.expand(&norm.f, i, n)?;
    let mut hs = pres.expand(&norm.h, i, n)?;
    let mut gs = pres.expand(&big, i, n)?;
    let mut inv = TruncatedSeries::monomial("t", 1, n + 8);

    let apply = |step: &ParameterStep, series: &mut [&mut TruncatedSeries], inv: &mut TruncatedSeries| -> Result<()> {
        for s in series.iter_mut() {
            **s = s.compose(&step.inverse)?;
        }
        *inv = inv.compose(&step.inverse)?;
        Ok(())
    };

    let s2 = canonical_parameter(&fs, 2)?;
    apply(&s2, &mut [&mut fs, &mut hs, &mut gs], &mut inv)?;
    let lifted_h = hs.sub(&fs.scale(&hs.coeff(-2)?))?;
    let s3 = canonical_parameter(&lifted_h, 3)?;
    apply(&s3, &mut [&mut fs, &mut hs, &mut gs], &mut inv)?;
    let lifted_h = hs.sub(&fs.scale(&hs.coeff(-2)?))?;
    let g1 = gs.sub(&lifted_h.scale(&gs.coeff(-3)?))?;
    let g2 = g1.sub(&fs.scale(&g1.coeff(-2)?))?;
    let s4 = canonical_parameter(&g2, 4)?;
    apply(&s4, &mut [&mut fs, &mut hs], &mut inv)?;
    let diag = [fs.coeff(0)?, fs.coeff(1)?, hs.coeff(0)?];
    Ok(AtPoint { f: norm.f, h: norm.h, inv, diag })
}

/// Builds canonical generators and parameters and reads off the coordinates.
pub fn extract(pres: &CurvePresentation) -> Result<ExtractionResult> {
    extract_with_precision(pres, DEFAULT_PRECISION)
}

pub fn extract_with_precision(pres: &CurvePresentation, n: i64) -> Result<ExtractionResult> {
    let at = [canonical_at(pres, 1, n)?, canonical_at(pres, 2, n)?];
    let mut raw = Vec::new();
    // α_ij, γ_ij from f_i at p_j; β_ij, ε_ij from h_i at p_j
    let mut vals: BTreeMap<(u8, u8, u8, i8), Rational> = BTreeMap::new();
    for i in [1usize, 2] {
        let j = 3 - i;
        for (m, g) in [(2u8, &at[i - 1].f), (3u8, &at[i - 1].h)] {
            let s = pres.expand(g, j, n)?.compose(&at[j - 1].inv)?;
            if pole_order(&s) > 1 {
                return Err(Error::Internal(format!("f_{i}[-{m}] has a pole of order > 1 at p_{j}")));
            }
            for k in [-1i8, 0] {
                let v = s.coeff(k as i64)?;
                vals.insert((i as u8, j as u8, m, k), v.clone());
                raw.push(RawCoefficient { i: i as u8, j: j as u8, m, k, value: v });
            }
        }
    }
    let mut pi = [Rational::zero(), Rational::zero()];
    let mut diagonal_ok = true;
    for i in [1usize, 2] {
        let a = &at[i - 1];
        let e = pres.product(&a.h, &a.h);
        let f3 = pres.product(&pres.product(&a.f, &a.f), &a.f);
        let d = CurveFunction { on1: &e.on1 - &f3.on1, on2: &e.on2 - &f3.on2 };
        pi[i - 1] = pres.expand(&d, i, n)?.coeff(-2)?;
        let [f0, f1, h0] = &a.diag;
        for (m, k, v) in [(2u8, 0i8, f0), (2, 1, f1), (3, 0, h0)] {
            raw.push(RawCoefficient { i: i as u8, j: i as u8, m, k, value: v.clone() });
        }
        diagonal_ok &= f0.is_zero() && int(2) * h0 == int(3) * f1;
    }
    let v = |i, j, m, k| vals[&(i, j, m, k)].clone();
    let mut p = ModuliPoint::zero();
    *p.get_mut(Coord::Alpha12) = v(1, 2, 2, -1);
    *p.get_mut(Coord::Alpha21) = v(2, 1, 2, -1);
    *p.get_mut(Coord::Beta12) = v(1, 2, 3, -1);
    *p.get_mut(Coord::Beta21) = v(2, 1, 3, -1);
    *p.get_mut(Coord::Gamma12) = v(1, 2, 2, 0);
    *p.get_mut(Coord::Gamma21) = v(2, 1, 2, 0);
    *p.get_mut(Coord::Epsilon12) = v(1, 2, 3, 0);
    *p.get_mut(Coord::Epsilon21) = v(2, 1, 3, 0);
    let pt1 = pi_tilde_from_pi(&pi[0], p.get(Coord::Alpha12), p.get(Coord::Alpha21), p.get(Coord::Beta12), p.get(Coord::Gamma12), p.get(Coord::Gamma21));
    let pt2 = pi_tilde_from_pi(&pi[1], p.get(Coord::Alpha21), p.get(Coord::Alpha12), p.get(Coord::Beta21), p.get(Coord::Gamma21), p.get(Coord::Gamma12));
    *p.get_mut(Coord::PiTilde1) = pt1;
    *p.get_mut(Coord::PiTilde2) = pt2;
    let generators = vec![at[0].f.to_string(), at[0].h.to_string(), at[1].f.to_string(), at[1].h.to_string()];
    Ok(ExtractionResult { point: p, pi, raw, generators, diagonal_normalization: diagonal_ok })
}

fn weierstrass_point(pres: &CurvePresentation, k: usize, x: &str, y: &str) -> Branch {
    pres.chart(k).branch_at(&[pres.param(x), pres.param(y)])
}

/// The catalog description of a family instance.
pub fn describe(pres: &CurvePresentation) -> Result<CurveDescription> {
    use Branch::Smooth;
    let p = |n: &str| pres.param(n);
    Ok(match pres.kind {
        FamilyKind::A => {
            let b1 = weierstrass_point(pres, 1, "A", "B");
            let b2 = weierstrass_point(pres, 1, "C", "D");
            let flag = b1 == Smooth && b2 == Smooth && p("A") == p("C");
            CurveDescription::two(1, 0, 2, &[(b1, Smooth), (b2, Smooth)]).with_divisor_flag(flag)
        }
        FamilyKind::B => {
            let br = weierstrass_point(pres, 1, "B", "D");
            let d = CurveDescription::two(1, 0, 2, &[(br, Smooth)]);
            match br {
                Branch::Smooth => d.with_divisor_flag(p("D").is_zero()),
                Branch::Node => {
                    // branches at a node (x0, 0) have slopes ±sqrt(3 x0)
                    let (a, c, x0) = (p("A"), p("C"), p("B"));
                    if !a.is_zero() && c.clone() * c == int(3) * x0 * a.clone() * a.clone() {
                        return Err(Error::NotTabulated(
                            "length-2 gluing tangent to a branch of the node (germ tacnode + line, e = 5)".into(),
                        ));
                    }
                    d.with_restriction_constant(a.is_zero())
                }
                Branch::Cusp => {
                    let tag = if p("A").is_zero() {
                        SpecialIso::Ccusp01
                    } else if p("C").is_zero() {
                        SpecialIso::Ccusp10
                    } else {
                        SpecialIso::Ccusp11
                    };
                    d.with_special(tag)
                }
            }
        }
        FamilyKind::C => CurveDescription::two(0, 0, 3, &[(Smooth, Smooth); 3]),
        FamilyKind::D => CurveDescription::two(0, 0, 3, &[(Smooth, Smooth); 2]),
        FamilyKind::E => CurveDescription::c0(),
        FamilyKind::F => {
            let b1 = weierstrass_point(pres, 1, "X1", "Y1");
            let b2 = weierstrass_point(pres, 2, "X2", "Y2");
            CurveDescription::two(1, 1, 1, &[(b1, b2)])
        }
    })
}

/// Sample members of each family, used by tests and the command line.
pub fn sample_family(kind: FamilyKind) -> FamilySpec {
    let z = Rational::zero;
    match kind {
        FamilyKind::A => FamilySpec::new(kind, &[("a", z()), ("b", int(1)), ("A", z()), ("B", int(1)), ("C", int(2)), ("D", int(3))]),
        FamilyKind::B => FamilySpec::new(kind, &[("a", z()), ("b", int(1)), ("A", int(2)), ("B", z()), ("C", z()), ("D", int(1))]),
        FamilyKind::C => FamilySpec::new(kind, &[("lambda", int(2)), ("mu", int(3))]),
        FamilyKind::D => FamilySpec::new(kind, &[("lambda", int(2)), ("mu", int(-1))]),
        FamilyKind::E => FamilySpec::new(kind, &[("A", int(2)), ("B", int(1)), ("C", q(1, 2)), ("lambda", int(1))]),
        FamilyKind::F => FamilySpec::new(
            kind,
            &[("a1", z()), ("b1", int(1)), ("a2", int(-1)), ("b2", int(1)), ("X1", int(2)), ("Y1", int(3)), ("X2", int(1)), ("Y2", int(1))],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kv: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn cuspidal_expansion_is_exact() {
        let ex = Chart::Weierstrass { a: int(0), b: int(0) }.expand_at_infinity(10).unwrap();
        assert_eq!(ex["x"], TruncatedSeries::monomial("t", -2, ex["x"].precision()));
        assert_eq!(ex["y"], TruncatedSeries::monomial("t", -3, ex["y"].precision()));
    }

    #[test]
    fn weierstrass_relation_holds() {
        let ch = Chart::Weierstrass { a: q(-2, 3), b: int(5) };
        let n = 12;
        let ex = ch.expand_at_infinity(n).unwrap();
        let r = poly_to_series(&ch.equation().unwrap(), &[ex["x"].clone(), ex["y"].clone()], "t").unwrap();
        assert!(r.precision() >= n - 6);
        assert!(r.terms().next().is_none());
    }

    #[test]
    fn parameter_step() {
        let g = TruncatedSeries::new("t", [(-2, int(1)), (1, int(4))], 8);
        let s = canonical_parameter(&g, 2).unwrap();
        assert_eq!(s.forward.coeff(2).unwrap(), int(0));
        let g = TruncatedSeries::new("t", [(-2, int(1)), (-1, int(3))], 8);
        let s = canonical_parameter(&g, 2).unwrap();
        assert_eq!(s.forward.coeff(2).unwrap(), q(-3, 2));
        let g2 = g.compose(&s.inverse).unwrap();
        assert!(g2.coeff(-1).unwrap().is_zero());
        let again = canonical_parameter(&g2, 2).unwrap();
        assert!(again.c.is_zero());
    }

    #[test]
    fn family_a_line_normalization() {
        let pres = family(
            FamilyKind::A,
            &params(&[("a", int(0)), ("b", int(1)), ("A", int(0)), ("B", int(1)), ("C", int(2)), ("D", int(3))]),
        )
        .unwrap();
        let r1 = pres.chart(1).ring();
        let r2 = pres.chart(2).ring();
        let z = Polynomial::var(&r2, "z").unwrap();
        let ft = CurveFunction { on1: Polynomial::one(&r1), on2: z.pow(2) };
        let ht = CurveFunction { on1: Polynomial::zero(&r1), on2: z.pow(3) - &z };
        let nm = normalize_generators(&pres, 2, &ft, &ht, DEFAULT_PRECISION).unwrap();
        assert_eq!((nm.a.clone(), nm.b.clone(), nm.c.clone()), (q(-2, 3), int(0), int(0)));
        assert_eq!(nm.f.on2, z.pow(2) - Polynomial::constant(&r2, q(2, 3)));
        assert!(verify_canonical(&pres, &nm.f, &nm.h, DEFAULT_PRECISION).unwrap());
    }

    #[test]
    fn family_constraints() {
        assert!(family(FamilyKind::C, &params(&[("lambda", int(2)), ("mu", int(3))])).is_ok());
        assert!(family(FamilyKind::C, &params(&[("lambda", int(2)), ("mu", int(2))])).is_err());
        assert!(family(FamilyKind::E, &params(&[("A", int(0)), ("B", int(1)), ("C", int(0)), ("lambda", int(1))])).is_err());
        // (B, D) off the curve
        assert!(family(
            FamilyKind::B,
            &params(&[("a", int(0)), ("b", int(1)), ("A", int(1)), ("B", int(1)), ("C", int(0)), ("D", int(1))])
        )
        .is_err());
    }

    #[test]
    fn family_c_alpha() {
        let r = extract(&sample_family(FamilyKind::C).build().unwrap()).unwrap();
        assert_eq!(r.point.get(Coord::Alpha12), &int(2));
        assert_eq!(r.point.get(Coord::Alpha21), &int(-6));
        assert!(r.diagonal_normalization);
    }
}
