use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::order::MonomialOrder;
use crate::poly::ring::{Monomial, Ring};
use crate::rational::{format_rational, Rational};

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Polynomial {
        Self::monomial(ring, Monomial::one(ring.len()), c)
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Polynomial> {
        let i = ring.index(name)?;
        Ok(Self::monomial(ring, Monomial::var(ring.len(), i), Rational::one()))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Polynomial {
        assert_eq!(m.len(), ring.len(), "monomial does not belong to ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: &Ring, it: I) -> Result<Polynomial> {
        let mut p = Self::zero(ring);
        for (m, c) in it {
            if m.len() != ring.len() {
                return Err(Error::RingMismatch("monomial length differs from ring".into()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.len()))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn involves(&self, name: &str) -> bool {
        match self.ring.index(name) {
            Ok(i) => self.terms.keys().any(|m| m.0[i] > 0),
            Err(_) => false,
        }
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&o.ring)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&o.ring)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&o.ring)?;
        let mut r = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Self::one(&self.ring);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Exact value at a point covering every variable that occurs.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut vals = Vec::with_capacity(self.ring.len());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match point.get(v) {
                Some(x) => vals.push(Some(x.clone())),
                None => {
                    if self.terms.keys().any(|m| m.0[i] > 0) {
                        return Err(Error::MissingVariable(v.clone()));
                    }
                    vals.push(None)
                }
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(vals[i].clone().unwrap(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces variables by polynomials of `target`. Variables absent from
    /// `subst` map to the same-named variable of `target`.
    pub fn substitute(&self, subst: &BTreeMap<String, Polynomial>, target: &Ring) -> Result<Polynomial> {
        for p in subst.values() {
            target.check(&p.ring)?;
        }
        let mut images: Vec<Option<Polynomial>> = Vec::with_capacity(self.ring.len());
        for (i, v) in self.ring.vars().iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            if let Some(p) = subst.get(v) {
                images.push(Some(p.clone()));
            } else if used {
                images.push(Some(Polynomial::var(target, v)?));
            } else {
                images.push(None);
            }
        }
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ring.len()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = images[i].as_ref().unwrap();
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Polynomial::one(target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * base;
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitutes rational values for some variables and moves the result
    /// into `target` by variable name.
    pub fn specialize(&self, values: &BTreeMap<String, Rational>, target: &Ring) -> Result<Polynomial> {
        let mut map = Vec::with_capacity(self.ring.len());
        for v in self.ring.vars() {
            if let Some(x) = values.get(v) {
                map.push(Err(x.clone()));
            } else if target.has(v) {
                map.push(Ok(target.index(v)?));
            } else {
                map.push(Err(Rational::zero()));
                if self.involves(v) {
                    return Err(Error::MissingVariable(v.clone()));
                }
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            let mut coef = c.clone();
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match &map[i] {
                    Ok(j) => e[*j] += x,
                    Err(val) => coef *= num_traits::pow(val.clone(), x as usize),
                }
            }
            out.add_term(Monomial(e), coef);
        }
        Ok(out)
    }

    /// Moves the polynomial into another ring containing all of its variables.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        self.specialize(&BTreeMap::new(), target)
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.key(a.0).cmp(&order.key(b.0)))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Collects coefficients with respect to the variables `vars` (by index):
    /// returns map from monomial in those variables to the coefficient
    /// polynomial in the remaining ones (still in this ring).
    pub fn coefficients_in(&self, vars: &[usize]) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut outer = vec![0u32; self.ring.len()];
            let mut inner = m.0.clone();
            for &i in vars {
                outer[i] = m.0[i];
                inner[i] = 0;
            }
            out.entry(Monomial(outer))
                .or_insert_with(|| Polynomial::zero(&self.ring))
                .add_term(Monomial(inner), c.clone());
        }
        out
    }

    /// Divides all coefficients by the leading one under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        format!("{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ts: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        for (k, (m, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m.display(&self.ring))?;
            } else {
                write!(f, "{} * {}", format_rational(&a), m.display(&self.ring))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                self.$checked(o).expect("polynomials from different rings")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                (&self).$m(o)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Rational> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, c: &Rational) -> Polynomial {
        self.scale(c)
    }
}

impl Mul<Rational> for Polynomial {
    type Output = Polynomial;
    fn mul(self, c: Rational) -> Polynomial {
        self.scale(&c)
    }
}

impl Mul<Rational> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, c: Rational) -> Polynomial {
        self.scale(&c)
    }
}
