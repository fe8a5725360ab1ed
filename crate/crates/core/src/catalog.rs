//! Structured descriptions of the curves in the moduli space and the two
//! stability classifiers: the geometric decision tree and the cohomological
//! criterion. Also the catalog-level Z-stability predicate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::singularity::{self, germ_catalog, transversal_union, Germ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Smooth,
    Node,
    Cusp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialIso {
    Ccusp11,
    Ccusp01,
    Ccusp10,
    C0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportPoint {
    pub on_c1: Branch,
    pub on_c2: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveDescription {
    Irreducible {
        weierstrass_p1: bool,
        #[serde(default)]
        germ_tag: Option<String>,
    },
    TwoComponents {
        g1: u8,
        g2: u8,
        xi_length: u8,
        xi_support: Vec<SupportPoint>,
        #[serde(default)]
        xi_divisor_equiv_2p1: bool,
        #[serde(default)]
        restriction_constant: bool,
        #[serde(default)]
        special_iso: Option<SpecialIso>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomInvariants {
    pub h1_2p1: u32,
    pub h1_3p1: u32,
    pub h1_3p2: u32,
    pub h1_p1p2: u32,
    pub max_e: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
}

impl Stability {
    fn from(stable: bool) -> Stability {
        if stable {
            Stability::Stable
        } else {
            Stability::Unstable
        }
    }

    pub fn is_stable(self) -> bool {
        self == Stability::Stable
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_stable() { "stable" } else { "unstable" })
    }
}

/// Verdicts for stabilities (i), (ii), (iii).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub i: Stability,
    pub ii: Stability,
    pub iii: Stability,
}

/// Verdicts for (ii) and (iii) from cohomological data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantVerdict {
    pub ii: Stability,
    pub iii: Stability,
}

const IRREDUCIBLE_TAGS: [&str; 6] = [
    "node",
    "cusp",
    "tacnode",
    "genus2_cusp_345",
    "genus2_cusp_25",
    "coordinate_cross(3)",
];

/// Parses `name` or `name(n)` into a catalog germ.
pub fn germ_from_tag(tag: &str) -> Result<Germ> {
    let tag = tag.trim();
    if let Some(open) = tag.find('(') {
        let name = &tag[..open];
        let n: usize = tag[open + 1..]
            .strip_suffix(')')
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad germ tag `{tag}`")))?;
        germ_catalog(name, Some(n))
    } else {
        germ_catalog(tag, None)
    }
}

fn branch_germ(b: Branch) -> Germ {
    let name = match b {
        Branch::Smooth => "line",
        Branch::Node => "node",
        Branch::Cusp => "cusp",
    };
    germ_catalog(name, None).expect("catalog germ")
}

fn bad(msg: &str) -> Error {
    Error::Invalid(msg.to_string())
}

impl CurveDescription {
    pub fn irreducible(weierstrass_p1: bool, germ_tag: Option<&str>) -> CurveDescription {
        CurveDescription::Irreducible { weierstrass_p1, germ_tag: germ_tag.map(str::to_string) }
    }

    pub fn two(g1: u8, g2: u8, xi_length: u8, support: &[(Branch, Branch)]) -> CurveDescription {
        CurveDescription::TwoComponents {
            g1,
            g2,
            xi_length,
            xi_support: support.iter().map(|&(on_c1, on_c2)| SupportPoint { on_c1, on_c2 }).collect(),
            xi_divisor_equiv_2p1: false,
            restriction_constant: false,
            special_iso: None,
        }
    }

    pub fn with_divisor_flag(mut self, v: bool) -> Self {
        if let CurveDescription::TwoComponents { xi_divisor_equiv_2p1, .. } = &mut self {
            *xi_divisor_equiv_2p1 = v;
        }
        self
    }

    pub fn with_restriction_constant(mut self, v: bool) -> Self {
        if let CurveDescription::TwoComponents { restriction_constant, .. } = &mut self {
            *restriction_constant = v;
        }
        self
    }

    pub fn with_special(mut self, s: SpecialIso) -> Self {
        if let CurveDescription::TwoComponents { special_iso, .. } = &mut self {
            *special_iso = Some(s);
        }
        self
    }

    /// The curve C⁰: two rational components osculating to order 3.
    pub fn c0() -> CurveDescription {
        Self::two(0, 0, 3, &[(Branch::Smooth, Branch::Smooth)]).with_special(SpecialIso::C0)
    }

    pub fn cusp_special(s: SpecialIso) -> CurveDescription {
        Self::two(1, 0, 2, &[(Branch::Cusp, Branch::Smooth)]).with_special(s)
    }

    pub fn is_c0(&self) -> bool {
        match self {
            CurveDescription::TwoComponents { g1: 0, g2: 0, xi_length: 3, xi_support, .. } => xi_support.len() == 1,
            _ => false,
        }
    }

    pub fn from_json(s: &str) -> Result<CurveDescription> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("curve description: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Checks every type invariant, reporting the first one that fails.
pub fn check(d: &CurveDescription) -> Result<()> {
    match d {
        CurveDescription::Irreducible { germ_tag, .. } => {
            if let Some(tag) = germ_tag {
                let g = germ_from_tag(tag)?;
                if !IRREDUCIBLE_TAGS.contains(&tag.trim()) || singularity::delta(&g)? > 2 {
                    return Err(bad(&format!("germ `{tag}` cannot occur on an irreducible genus-2 curve")));
                }
            }
            Ok(())
        }
        CurveDescription::TwoComponents {
            g1,
            g2,
            xi_length,
            xi_support,
            xi_divisor_equiv_2p1,
            restriction_constant,
            special_iso,
        } => {
            let (g1, g2, l) = (*g1, *g2, *xi_length);
            if g1 > 1 || g2 > 1 || !(1..=3).contains(&l) {
                return Err(bad("genera must be 0 or 1 and the intersection length 1, 2 or 3"));
            }
            if g1 + g2 + l != 3 {
                return Err(bad("g1 + g2 + length(xi) - 1 must equal 2"));
            }
            if xi_support.is_empty() || xi_support.len() > l as usize {
                return Err(bad("support size must be between 1 and length(xi)"));
            }
            for (g, side) in [(g1, 1), (g2, 2)] {
                let branches: Vec<Branch> =
                    xi_support.iter().map(|p| if side == 1 { p.on_c1 } else { p.on_c2 }).collect();
                let singular = branches.iter().filter(|b| **b != Branch::Smooth).count();
                if g == 0 && singular > 0 {
                    return Err(bad("a rational component is smooth"));
                }
                if singular > 1 {
                    return Err(bad("a genus-1 component has at most one singular point"));
                }
            }
            let one_point = xi_support.len() == 1;
            let p = xi_support[0];
            // the side with genus 1 when the other is rational
            let elliptic_branch = match (g1, g2) {
                (1, 0) => Some(p.on_c1),
                (0, 1) => Some(p.on_c2),
                _ => None,
            };
            let cusp_tangent = l == 2 && one_point && elliptic_branch == Some(Branch::Cusp);
            match special_iso {
                Some(SpecialIso::C0) => {
                    if !(l == 3 && one_point) {
                        return Err(bad("C0 needs two rational components meeting in one point of length 3"));
                    }
                }
                Some(_) => {
                    if !cusp_tangent {
                        return Err(bad("cuspidal special curves need a length-2 intersection at the cusp"));
                    }
                }
                None => {
                    if cusp_tangent {
                        return Err(Error::NotTabulated(
                            "a length-2 intersection at a cusp needs special_iso Ccusp11, Ccusp01 or Ccusp10".into(),
                        ));
                    }
                }
            }
            if *xi_divisor_equiv_2p1 && !(g1 == 1 && l == 2 && xi_support.iter().all(|p| p.on_c1 == Branch::Smooth)) {
                return Err(bad("xi_divisor_equiv_2p1 needs g1 = 1 and xi in the smooth locus of C1"));
            }
            if *restriction_constant && !(g1 == 1 && l == 2 && one_point && p.on_c1 == Branch::Node) {
                return Err(bad("restriction_constant needs g1 = 1 and xi at a node of C1"));
            }
            Ok(())
        }
    }
}

pub fn validate(d: &CurveDescription) -> bool {
    check(d).is_ok()
}

pub fn classify_geometric(d: &CurveDescription) -> Result<StabilityVerdict> {
    check(d)?;
    let s = Stability::from;
    Ok(match d {
        CurveDescription::Irreducible { weierstrass_p1, .. } => {
            StabilityVerdict { i: s(true), ii: s(true), iii: s(!weierstrass_p1) }
        }
        CurveDescription::TwoComponents {
            g1,
            xi_length,
            xi_support,
            xi_divisor_equiv_2p1,
            restriction_constant,
            special_iso,
            ..
        } => {
            let one_point = xi_support.len() == 1;
            match xi_length {
                1 => {
                    let p = xi_support[0];
                    let nodal = p.on_c1 != Branch::Cusp && p.on_c2 != Branch::Cusp;
                    StabilityVerdict { i: s(nodal), ii: s(false), iii: s(false) }
                }
                2 => {
                    let c1 = xi_support[0].on_c1;
                    let ii_unstable = *g1 == 0 || (*g1 == 1 && one_point && c1 == Branch::Cusp);
                    let smooth_locus = xi_support.iter().all(|p| p.on_c1 == Branch::Smooth);
                    let iii_unstable = *g1 == 0
                        || (*g1 == 1 && smooth_locus && *xi_divisor_equiv_2p1)
                        || (*g1 == 1 && one_point && c1 == Branch::Node && *restriction_constant)
                        || *special_iso == Some(SpecialIso::Ccusp01)
                        || *special_iso == Some(SpecialIso::Ccusp10);
                    StabilityVerdict { i: s(!one_point), ii: s(!ii_unstable), iii: s(!iii_unstable) }
                }
                _ => StabilityVerdict { i: s(true), ii: s(true), iii: s(true) },
            }
        }
    })
}

/// The branch of the decision tree taken for stability `which` (1, 2 or 3
/// for (i), (ii), (iii)), with the verdict it ends in.
pub fn decision_path(d: &CurveDescription, which: u8) -> Result<(Stability, Vec<String>)> {
    if !(1..=3).contains(&which) {
        return Err(Error::Invalid(format!("stability index {which} is not 1, 2 or 3")));
    }
    let v = classify_geometric(d)?;
    let mut path = Vec::new();
    match d {
        CurveDescription::Irreducible { weierstrass_p1, .. } => {
            path.push("irreducible".to_string());
            if which == 3 {
                path.push(format!("p1 Weierstrass: {weierstrass_p1}"));
            }
        }
        CurveDescription::TwoComponents {
            g1,
            g2,
            xi_length,
            xi_support,
            xi_divisor_equiv_2p1,
            restriction_constant,
            special_iso,
        } => {
            let one_point = xi_support.len() == 1;
            path.push(format!("two components, genera ({g1}, {g2})"));
            path.push(format!("length of xi = {xi_length}"));
            match (xi_length, which) {
                (1, 1) => {
                    let p = xi_support[0];
                    path.push(format!("branches at xi: ({:?}, {:?})", p.on_c1, p.on_c2).to_lowercase());
                }
                (1, _) => path.push("length one is unstable".into()),
                (2, 1) => path.push(format!("xi supported at one point: {one_point}")),
                (2, 2) => {
                    path.push(format!("g1 = {g1}"));
                    if *g1 == 1 {
                        path.push(format!("one point with a cusp on C1: {}", one_point && xi_support[0].on_c1 == Branch::Cusp));
                    }
                }
                (2, _) => {
                    path.push(format!("g1 = {g1}"));
                    if *g1 == 1 {
                        let smooth_locus = xi_support.iter().all(|p| p.on_c1 == Branch::Smooth);
                        path.push(format!("xi in smooth locus of C1 and linear to 2p1: {}", smooth_locus && *xi_divisor_equiv_2p1));
                        path.push(format!(
                            "one node point with constant restriction: {}",
                            one_point && xi_support[0].on_c1 == Branch::Node && *restriction_constant
                        ));
                    }
                    if let Some(s) = special_iso {
                        path.push(format!("special isomorphism class {s:?}"));
                    }
                }
                _ => path.push("length at least three".into()),
            }
        }
    }
    let verdict = [v.i, v.ii, v.iii][which as usize - 1];
    path.push(verdict.to_string());
    Ok((verdict, path))
}

/// Germs at the singular points of the curve that lie on the intersection
/// (or the tagged germ of an irreducible curve).
pub fn singular_germs(d: &CurveDescription) -> Result<Vec<Germ>> {
    check(d).map_err(|e| Error::NotTabulated(e.to_string()))?;
    match d {
        CurveDescription::Irreducible { germ_tag, .. } => Ok(germ_tag.iter().map(|t| germ_from_tag(t)).collect::<Result<_>>()?),
        CurveDescription::TwoComponents { g1, xi_length, xi_support, special_iso, .. } => {
            let transversal = |p: &SupportPoint| transversal_union(&branch_germ(p.on_c1), &branch_germ(p.on_c2));
            match (*xi_length, xi_support.len()) {
                (1, _) | (2, 2) | (3, 3) => xi_support.iter().map(transversal).collect(),
                (2, 1) => {
                    let p = xi_support[0];
                    let b = if *g1 == 1 { p.on_c1 } else { p.on_c2 };
                    let name = match (b, special_iso) {
                        (Branch::Smooth, _) => "tacnode",
                        (Branch::Node, _) => "node_tangent_line",
                        (Branch::Cusp, Some(SpecialIso::Ccusp10)) => "cusp_line_Ccusp10",
                        (Branch::Cusp, _) => "planar_cusp_line",
                    };
                    Ok(vec![germ_catalog(name, None)?])
                }
                (3, 2) => Ok(vec![germ_catalog("node", None)?, germ_catalog("tacnode", None)?]),
                (3, 1) => Ok(vec![germ_catalog("osculating_P1s", None)?]),
                _ => Err(Error::NotTabulated(format!("{d:?}"))),
            }
        }
    }
}

pub fn invariants_of(d: &CurveDescription) -> Result<CohomInvariants> {
    let germs = singular_germs(d)?;
    let mut max_e = 0;
    for g in &germs {
        max_e = max_e.max(singularity::e_invariant(g)? as u32);
    }
    let (h1_2p1, h1_3p1, h1_3p2) = match d {
        CurveDescription::Irreducible { weierstrass_p1, .. } => (*weierstrass_p1 as u32, 0, 0),
        CurveDescription::TwoComponents {
            g1,
            g2,
            xi_length,
            xi_support,
            xi_divisor_equiv_2p1,
            restriction_constant,
            special_iso,
        } => match (*g1, *g2, *xi_length) {
            (1, 1, 1) => (1, 1, 1),
            (1, 0, 2) => {
                let h = if xi_support.len() == 2 {
                    *xi_divisor_equiv_2p1 as u32
                } else {
                    match (xi_support[0].on_c1, special_iso) {
                        (Branch::Smooth, _) => *xi_divisor_equiv_2p1 as u32,
                        (Branch::Node, _) => *restriction_constant as u32,
                        (Branch::Cusp, Some(SpecialIso::Ccusp01)) => 1,
                        (Branch::Cusp, _) => 0,
                    }
                };
                (h, 0, 1)
            }
            (0, 1, 2) => (1, 1, 0),
            (0, 0, 3) => (0, 0, 0),
            _ => return Err(Error::NotTabulated(format!("{d:?}"))),
        },
    };
    Ok(CohomInvariants { h1_2p1, h1_3p1, h1_3p2, h1_p1p2: 0, max_e })
}

pub fn classify_invariant(inv: &CohomInvariants) -> InvariantVerdict {
    let ii = inv.h1_3p1 == 0 && (inv.h1_3p2 == 0 || inv.max_e <= 4);
    let iii = inv.h1_2p1 == 0 && inv.max_e <= 5;
    InvariantVerdict { ii: Stability::from(ii), iii: Stability::from(iii) }
}

/// Catalog-level Z-stability. Descriptions that fail validation are reported
/// as not Z-stable.
pub fn is_z_stable(d: &CurveDescription) -> bool {
    if !validate(d) {
        return false;
    }
    match d {
        CurveDescription::Irreducible { .. } => true,
        CurveDescription::TwoComponents { xi_length, xi_support, .. } => {
            if xi_support.len() == 1 && *xi_length >= 2 {
                return false;
            }
            !(*xi_length == 1 && xi_support.iter().any(|p| p.on_c1 == Branch::Cusp || p.on_c2 == Branch::Cusp))
        }
    }
}

/// Every description in the finite catalog.
pub fn catalog() -> Vec<CurveDescription> {
    use Branch::*;
    let mut out = Vec::new();
    for w in [false, true] {
        out.push(CurveDescription::irreducible(w, None));
        for t in IRREDUCIBLE_TAGS {
            out.push(CurveDescription::irreducible(w, Some(t)));
        }
    }
    for a in [Smooth, Node, Cusp] {
        for b in [Smooth, Node, Cusp] {
            out.push(CurveDescription::two(1, 1, 1, &[(a, b)]));
        }
    }
    // g1 = 1, g2 = 0, two distinct points
    for flag in [false, true] {
        out.push(CurveDescription::two(1, 0, 2, &[(Smooth, Smooth), (Smooth, Smooth)]).with_divisor_flag(flag));
    }
    for b in [Node, Cusp] {
        out.push(CurveDescription::two(1, 0, 2, &[(b, Smooth), (Smooth, Smooth)]));
    }
    // g1 = 1, g2 = 0, one point
    for flag in [false, true] {
        out.push(CurveDescription::two(1, 0, 2, &[(Smooth, Smooth)]).with_divisor_flag(flag));
        out.push(CurveDescription::two(1, 0, 2, &[(Node, Smooth)]).with_restriction_constant(flag));
    }
    for s in [SpecialIso::Ccusp11, SpecialIso::Ccusp01, SpecialIso::Ccusp10] {
        out.push(CurveDescription::cusp_special(s));
    }
    // g1 = 0, g2 = 1
    out.push(CurveDescription::two(0, 1, 2, &[(Smooth, Smooth), (Smooth, Smooth)]));
    for b in [Node, Cusp] {
        out.push(CurveDescription::two(0, 1, 2, &[(Smooth, b), (Smooth, Smooth)]));
    }
    out.push(CurveDescription::two(0, 1, 2, &[(Smooth, Smooth)]));
    out.push(CurveDescription::two(0, 1, 2, &[(Smooth, Node)]));
    for s in [SpecialIso::Ccusp11, SpecialIso::Ccusp01, SpecialIso::Ccusp10] {
        out.push(CurveDescription::two(0, 1, 2, &[(Smooth, Cusp)]).with_special(s));
    }
    // two rational components
    out.push(CurveDescription::two(0, 0, 3, &[(Smooth, Smooth); 3]));
    out.push(CurveDescription::two(0, 0, 3, &[(Smooth, Smooth); 2]));
    out.push(CurveDescription::c0());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Branch::*;

    #[test]
    fn validation_examples() {
        assert!(validate(&CurveDescription::irreducible(false, None)));
        assert!(!validate(&CurveDescription::two(0, 0, 2, &[(Smooth, Smooth)])));
        assert!(validate(&CurveDescription::two(1, 1, 1, &[(Node, Node)])));
        assert!(!validate(&CurveDescription::two(0, 0, 3, &[(Node, Smooth)])));
        assert!(!validate(&CurveDescription::two(1, 0, 2, &[(Cusp, Smooth)])));
        assert!(!validate(&CurveDescription::irreducible(false, Some("osculating_P1s"))));
    }

    #[test]
    fn geometric_examples() {
        let v = classify_geometric(&CurveDescription::irreducible(true, None)).unwrap();
        assert_eq!((v.i, v.ii, v.iii), (Stability::Stable, Stability::Stable, Stability::Unstable));
        let v = classify_geometric(&CurveDescription::two(1, 1, 1, &[(Node, Node)])).unwrap();
        assert_eq!((v.i, v.ii, v.iii), (Stability::Stable, Stability::Unstable, Stability::Unstable));
        let v = classify_geometric(&CurveDescription::cusp_special(SpecialIso::Ccusp10)).unwrap();
        assert_eq!((v.i, v.ii, v.iii), (Stability::Unstable, Stability::Unstable, Stability::Unstable));
    }

    #[test]
    fn invariant_examples() {
        let i = invariants_of(&CurveDescription::two(1, 1, 1, &[(Node, Node)])).unwrap();
        assert_eq!((i.h1_3p1, i.h1_3p2, i.h1_p1p2, i.max_e), (1, 1, 0, 5));
        let i = invariants_of(&CurveDescription::c0()).unwrap();
        assert_eq!((i.h1_3p1, i.h1_3p2, i.max_e), (0, 0, 5));
        let i = invariants_of(&CurveDescription::cusp_special(SpecialIso::Ccusp10)).unwrap();
        assert_eq!((i.h1_2p1, i.max_e), (0, 6));
    }

    #[test]
    fn invariant_classifier_examples() {
        let base = CohomInvariants { h1_2p1: 0, h1_3p1: 0, h1_3p2: 0, h1_p1p2: 0, max_e: 0 };
        assert!(classify_invariant(&base).ii.is_stable());
        assert!(!classify_invariant(&CohomInvariants { max_e: 6, ..base }).iii.is_stable());
        let b = CohomInvariants { h1_3p1: 1, h1_2p1: 1, ..base };
        assert!(!classify_invariant(&b).ii.is_stable());
    }

    #[test]
    fn z_stability_examples() {
        assert!(is_z_stable(&CurveDescription::two(1, 1, 1, &[(Node, Node)])));
        assert!(!is_z_stable(&CurveDescription::c0()));
        assert!(!is_z_stable(&CurveDescription::cusp_special(SpecialIso::Ccusp10)));
    }

    #[test]
    fn classifiers_agree_on_catalog() {
        for d in catalog() {
            let g = classify_geometric(&d).unwrap();
            let inv = classify_invariant(&invariants_of(&d).unwrap());
            assert_eq!((g.ii, g.iii), (inv.ii, inv.iii), "{d:?}");
            if g.i.is_stable() && !d.is_c0() {
                assert!(is_z_stable(&d), "{d:?}");
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        for d in catalog() {
            let back = CurveDescription::from_json(&d.to_json()).unwrap();
            assert_eq!(back, d);
        }
        let d = CurveDescription::from_json(
            r#"{"kind":"two_components","g1":1,"g2":1,"xi_length":1,"xi_support":[{"on_c1":"node","on_c2":"node"}]}"#,
        )
        .unwrap();
        assert!(validate(&d));
    }
}
