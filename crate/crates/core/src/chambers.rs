//! Characters of the two-dimensional torus, weight cones, the five chambers
//! and the explicit unstable loci.
//!
//! Only semistability is exposed. At the interior representative characters
//! used here it coincides with stability.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::{Coord, ModuliPoint, COORDS};
use crate::rational::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character(pub i64, pub i64);

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl From<(i64, i64)> for Character {
    fn from(v: (i64, i64)) -> Self {
        Character(v.0, v.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Openness {
    Open,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cone2D {
    v1: (i64, i64),
    v2: (i64, i64),
    openness: Openness,
}

impl Cone2D {
    pub fn new(v1: (i64, i64), v2: (i64, i64), openness: Openness) -> Result<Cone2D> {
        if v1.0 * v2.1 - v1.1 * v2.0 == 0 {
            return Err(Error::Invalid(format!("cone generators {v1:?} and {v2:?} are dependent")));
        }
        Ok(Cone2D { v1, v2, openness })
    }

    pub fn open(v1: (i64, i64), v2: (i64, i64)) -> Result<Cone2D> {
        Self::new(v1, v2, Openness::Open)
    }

    pub fn closed(v1: (i64, i64), v2: (i64, i64)) -> Result<Cone2D> {
        Self::new(v1, v2, Openness::Closed)
    }

    pub fn generators(&self) -> ((i64, i64), (i64, i64)) {
        (self.v1, self.v2)
    }

    /// Coefficients `(a, b)` with `χ = a·v1 + b·v2`.
    pub fn coordinates(&self, chi: Character) -> (Rational, Rational) {
        let d = self.v1.0 * self.v2.1 - self.v1.1 * self.v2.0;
        let a = q(chi.0 * self.v2.1 - chi.1 * self.v2.0, d);
        let b = q(self.v1.0 * chi.1 - self.v1.1 * chi.0, d);
        (a, b)
    }
}

pub fn cone_contains(c: &Cone2D, chi: Character) -> bool {
    let (a, b) = c.coordinates(chi);
    match c.openness {
        Openness::Open => a.is_positive() && b.is_positive(),
        Openness::Closed => !a.is_negative() && !b.is_negative(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chamber {
    /// `C0(−e1+2e2, −e1+3e2)`, the transpose of (iii).
    C0a,
    /// `C0(−e1+3e2, e2)`, the transpose of (ii).
    C0b,
    /// `C0(e2, e1)`, stability (i).
    I,
    /// `C(e1, 3e1−e2)`, stability (ii).
    II,
    /// `C(3e1−e2, 2e1−e2)`, stability (iii).
    III,
}

impl Chamber {
    pub const ALL: [Chamber; 5] = [Chamber::C0a, Chamber::C0b, Chamber::I, Chamber::II, Chamber::III];
    pub const PRIMARY: [Chamber; 3] = [Chamber::I, Chamber::II, Chamber::III];

    pub fn name(self) -> &'static str {
        match self {
            Chamber::C0a => "c0a",
            Chamber::C0b => "c0b",
            Chamber::I => "i",
            Chamber::II => "ii",
            Chamber::III => "iii",
        }
    }

    pub fn from_name(s: &str) -> Result<Chamber> {
        Chamber::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown chamber `{s}`")))
    }

    pub fn cone(self) -> Cone2D {
        let (v1, v2) = match self {
            Chamber::C0a => ((-1, 2), (-1, 3)),
            Chamber::C0b => ((-1, 3), (0, 1)),
            Chamber::I => ((0, 1), (1, 0)),
            Chamber::II => ((1, 0), (3, -1)),
            Chamber::III => ((3, -1), (2, -1)),
        };
        Cone2D::open(v1, v2).expect("independent generators")
    }

    /// Sum of the two generators.
    pub fn representative(self) -> Character {
        let ((a, b), (c, d)) = self.cone().generators();
        Character(a + c, b + d)
    }

    /// The chamber obtained by exchanging the marked points.
    pub fn transposed(self) -> Chamber {
        match self {
            Chamber::C0a => Chamber::III,
            Chamber::III => Chamber::C0a,
            Chamber::C0b => Chamber::II,
            Chamber::II => Chamber::C0b,
            Chamber::I => Chamber::I,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LocusName {
    Z1,
    Z2,
    P1,
    P2,
    R,
    W,
    WPrime,
    S,
}

impl fmt::Display for LocusName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl LocusName {
    pub fn name(self) -> &'static str {
        match self {
            LocusName::Z1 => "Z1",
            LocusName::Z2 => "Z2",
            LocusName::P1 => "P1",
            LocusName::P2 => "P2",
            LocusName::R => "R",
            LocusName::W => "W",
            LocusName::WPrime => "W'",
            LocusName::S => "S",
        }
    }

    /// Coordinates whose vanishing defines the locus.
    pub fn equations(self) -> Vec<Coord> {
        use Coord::*;
        match self {
            LocusName::Z1 => vec![Alpha12, Beta12, Gamma12, Epsilon12, PiTilde1],
            LocusName::Z2 => vec![Alpha21, Beta21, Gamma21, Epsilon21, PiTilde2],
            LocusName::P1 => vec![Alpha12, Beta12, Alpha21, Beta21],
            LocusName::P2 => vec![Alpha12, Beta12, Epsilon12, PiTilde1],
            LocusName::R => vec![Gamma12, Epsilon12, PiTilde1, Alpha21, Beta21, Gamma21, Epsilon21, PiTilde2],
            LocusName::W => vec![Alpha12],
            LocusName::WPrime => vec![Alpha12, Epsilon12],
            LocusName::S => COORDS.iter().copied().filter(|&c| c != Alpha12).collect(),
        }
    }

    pub fn contains(self, p: &ModuliPoint) -> bool {
        self.equations().iter().all(|&c| p.get(c).is_zero())
    }

    /// The loci listed for a chamber.
    pub fn for_chamber(ch: Chamber) -> Result<&'static [LocusName]> {
        match ch {
            Chamber::I => Ok(&[LocusName::Z1, LocusName::Z2]),
            Chamber::II => Ok(&[LocusName::P1, LocusName::P2, LocusName::R]),
            Chamber::III => Ok(&[LocusName::W, LocusName::WPrime, LocusName::S]),
            other => Err(Error::Invalid(format!(
                "chamber `{}` has no listed loci; use transposition symmetry (swap indices and use `{}`)",
                other.name(),
                other.transposed().name()
            ))),
        }
    }
}

fn dependent(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 * b.1 - a.1 * b.0 == 0
}

fn positive_multiple(chi: Character, w: (i64, i64)) -> bool {
    dependent((chi.0, chi.1), w) && chi.0 * w.0 + chi.1 * w.1 > 0
}

/// Whether `χ` lies in the cone spanned by the weights of the nonvanishing
/// coordinates of `p`.
pub fn is_semistable(p: &ModuliPoint, chi: Character) -> bool {
    if chi == Character(0, 0) {
        return true;
    }
    let ws: Vec<(i64, i64)> = p.support().iter().map(|c| c.weight()).collect();
    if ws.iter().any(|&w| positive_multiple(chi, w)) {
        return true;
    }
    for (i, &a) in ws.iter().enumerate() {
        for &b in &ws[i + 1..] {
            if !dependent(a, b) && cone_contains(&Cone2D::closed(a, b).expect("independent"), chi) {
                return true;
            }
        }
    }
    false
}

/// Named loci of `ch` containing `p`; empty iff `p` is `ch`-semistable.
pub fn unstable_loci(p: &ModuliPoint, ch: Chamber) -> Result<Vec<LocusName>> {
    Ok(LocusName::for_chamber(ch)?.iter().copied().filter(|l| l.contains(p)).collect())
}

/// Whether the cone criterion at the chamber's representative agrees with the locus equations.
pub fn cross_check(p: &ModuliPoint, ch: Chamber) -> Result<bool> {
    let loci = unstable_loci(p, ch)?;
    Ok(is_semistable(p, ch.representative()) == loci.is_empty())
}

/// Weights of the subgroup `t ↦ (t, t²)` fixing `α12` on the coordinates that
/// remain after normalising `α12 = 1` and solving the minors for the other
/// entries of the second matrix row.
pub fn subgroup_weights() -> Vec<(Coord, i64)> {
    let (a, b) = Coord::Alpha12.weight();
    // primitive kernel vector of the weight of α12, with positive first entry
    let g = num_integer::gcd(a, b);
    let (mut k1, mut k2) = (-b / g, a / g);
    if k1 < 0 {
        k1 = -k1;
        k2 = -k2;
    }
    // with α12 = 1 (column 0 of the top row) the minors solve for the
    // bottom-row entries of columns 1..4
    let bottom = [Coord::Epsilon12, Coord::Epsilon21, Coord::PiTilde1, Coord::PiTilde2];
    let eliminated = &bottom[1..];
    [Coord::Alpha21, Coord::Beta21, Coord::Beta12, Coord::Epsilon12, Coord::Gamma12, Coord::Gamma21, Coord::Epsilon21, Coord::PiTilde1, Coord::PiTilde2]
        .iter()
        .filter(|c| !eliminated.contains(c))
        .map(|&c| {
            let (w1, w2) = c.weight();
            (c, k1 * w1 + k2 * w2)
        })
        .collect()
}
