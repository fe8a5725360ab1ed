//! Buchberger's algorithm with the normal selection strategy, plus the usual
//! services built on top of it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::order::{Key, MonomialOrder};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::rational::Rational;

/// Default cap on elementary reduction steps.
pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct IdealPresentation {
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
}

impl IdealPresentation {
    pub fn new(generators: Vec<Polynomial>, order: MonomialOrder) -> Result<IdealPresentation> {
        if generators.is_empty() {
            return Err(Error::Invalid("ideal needs at least one generator".into()));
        }
        for g in &generators {
            order.ring().check(g.ring())?;
        }
        Ok(IdealPresentation { generators, order })
    }

    pub fn ring(&self) -> &Ring {
        self.order.ring()
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    leading: Vec<Monomial>,
    internal: Vec<SPoly>,
}

/// Step counter shared by one computation.
#[derive(Debug)]
pub struct Budget {
    limit: usize,
    used: usize,
}

impl Budget {
    pub fn new(limit: usize) -> Budget {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> usize {
        self.used
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExhausted(self.limit))
        } else {
            Ok(())
        }
    }
}

/// Polynomial as a list of terms sorted by descending order key.
#[derive(Clone, Debug)]
struct SPoly {
    terms: Vec<(Key, Monomial, Rational)>,
}

impl SPoly {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> SPoly {
        let mut terms: Vec<(Key, Monomial, Rational)> =
            p.terms().map(|(m, c)| (order.key(m), m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        SPoly { terms }
    }

    fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(_, m, c)| (m.clone(), c.clone())))
            .expect("terms belong to ring")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].1
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].2
    }

    fn monic(mut self) -> SPoly {
        if let Some(c) = self.terms.first().map(|t| t.2.clone()) {
            if !c.is_one() {
                let inv = c.recip();
                for t in self.terms.iter_mut() {
                    t.2 *= &inv;
                }
            }
        }
        self
    }

    fn from_map(map: BTreeMap<Key, (Monomial, Rational)>) -> SPoly {
        SPoly { terms: map.into_iter().rev().map(|(k, (m, c))| (k, m, c)).collect() }
    }
}

fn add_key(a: &Key, b: &Key) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn accumulate(map: &mut BTreeMap<Key, (Monomial, Rational)>, k: Key, m: Monomial, c: Rational) {
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert((m, c));
        }
        Entry::Occupied(mut e) => {
            e.get_mut().1 += c;
            if e.get().1.is_zero() {
                e.remove();
            }
        }
    }
}

/// Full reduction of `p` by `divisors` (leading coefficients need not be 1).
fn reduce_full(p: &SPoly, divisors: &[&SPoly], order: &MonomialOrder, budget: &mut Budget) -> Result<SPoly> {
    let mut work: BTreeMap<Key, (Monomial, Rational)> = BTreeMap::new();
    for (k, m, c) in &p.terms {
        work.insert(k.clone(), (m.clone(), c.clone()));
    }
    let mut rem: Vec<(Key, Monomial, Rational)> = Vec::new();
    while let Some((k, (m, c))) = work.pop_last() {
        match divisors.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                budget.tick()?;
                let q = g.lm().quotient_of(&m);
                let qk = order.key(&q);
                let f = &c / g.lc();
                for (gk, gm, gc) in g.terms.iter().skip(1) {
                    accumulate(&mut work, add_key(gk, &qk), gm.mul(&q), -(&f * gc));
                }
            }
            None => rem.push((k, m, c)),
        }
    }
    Ok(SPoly { terms: rem })
}

fn s_poly(f: &SPoly, g: &SPoly, order: &MonomialOrder) -> SPoly {
    let l = f.lm().lcm(g.lm());
    let qf = f.lm().quotient_of(&l);
    let qg = g.lm().quotient_of(&l);
    let kf = order.key(&qf);
    let kg = order.key(&qg);
    let cf = f.lc().recip();
    let cg = g.lc().recip();
    let mut map = BTreeMap::new();
    for (k, m, c) in f.terms.iter().skip(1) {
        accumulate(&mut map, add_key(k, &kf), m.mul(&qf), c * &cf);
    }
    for (k, m, c) in g.terms.iter().skip(1) {
        accumulate(&mut map, add_key(k, &kg), m.mul(&qg), -(c * &cg));
    }
    SPoly::from_map(map)
}

/// S-polynomial of two polynomials under `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    order.ring().check(f.ring())?;
    order.ring().check(g.ring())?;
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(order.ring()));
    }
    let r = s_poly(&SPoly::from_poly(f, order), &SPoly::from_poly(g, order), order);
    Ok(r.to_poly(order.ring()))
}

/// Remainder of `p` on division by `divisors` (a normal form when the divisors
/// form a Gröbner basis).
pub fn reduce(p: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    order.ring().check(p.ring())?;
    let ds: Vec<SPoly> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| {
            order.ring().check(d.ring())?;
            Ok(SPoly::from_poly(d, order))
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&SPoly> = ds.iter().collect();
    let mut b = Budget::new(DEFAULT_BUDGET);
    Ok(reduce_full(&SPoly::from_poly(p, order), &refs, order, &mut b)?.to_poly(order.ring()))
}

pub fn buchberger(ideal: &IdealPresentation) -> Result<GroebnerBasis> {
    buchberger_with_budget(ideal, DEFAULT_BUDGET)
}

pub fn buchberger_with_budget(ideal: &IdealPresentation, limit: usize) -> Result<GroebnerBasis> {
    let order = &ideal.order;
    let mut budget = Budget::new(limit);
    let mut basis: Vec<SPoly> = Vec::new();
    // pairs keyed by (lcm key, j, i) for the normal strategy with deterministic ties
    let mut pairs: BTreeSet<(Key, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |p: SPoly, basis: &mut Vec<SPoly>, pairs: &mut BTreeSet<(Key, usize, usize)>| {
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let l = b.lm().lcm(p.lm());
            pairs.insert((order.key(&l), j, i));
        }
        basis.push(p.monic());
    };

    let mut init: Vec<SPoly> = ideal
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SPoly::from_poly(g, order))
        .collect();
    init.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
    for g in init {
        let refs: Vec<&SPoly> = basis.iter().collect();
        let r = reduce_full(&g, &refs, order, &mut budget)?;
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs);
        }
    }

    while let Some((key, j, i)) = pairs.pop_first() {
        done.insert((i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().coprime(fj.lm()) {
            continue;
        }
        let l = fi.lm().lcm(fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let _ = key;
        budget.tick()?;
        let s = s_poly(fi, fj, order);
        let refs: Vec<&SPoly> = basis.iter().collect();
        let r = reduce_full(&s, &refs, order, &mut budget)?;
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs);
        }
    }

    interreduce(basis, order, &mut budget)
}

fn interreduce(basis: Vec<SPoly>, order: &MonomialOrder, budget: &mut Budget) -> Result<GroebnerBasis> {
    let mut min: Vec<SPoly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
    for p in sorted {
        if !min.iter().any(|q| q.lm().divides(p.lm())) {
            min.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<&SPoly> = min.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| p).collect();
        let head = SPoly { terms: vec![min[i].terms[0].clone()] };
        let tail = SPoly { terms: min[i].terms[1..].to_vec() };
        let t = reduce_full(&tail, &others, order, budget)?;
        let mut terms = head.terms;
        terms.extend(t.terms);
        reduced.push(SPoly { terms }.monic());
    }
    let ring = order.ring();
    Ok(GroebnerBasis {
        elements: reduced.iter().map(|p| p.to_poly(ring)).collect(),
        leading: reduced.iter().map(|p| p.lm().clone()).collect(),
        order: order.clone(),
        internal: reduced,
    })
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &Ring {
        self.order.ring()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The unit ideal.
    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ring().check(p.ring())?;
        let refs: Vec<&SPoly> = self.internal.iter().collect();
        let mut b = Budget::new(DEFAULT_BUDGET);
        Ok(reduce_full(&SPoly::from_poly(p, &self.order), &refs, &self.order, &mut b)?.to_poly(self.ring()))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Post hoc check that every S-polynomial reduces to zero.
    pub fn verify(&self) -> Result<bool> {
        let refs: Vec<&SPoly> = self.internal.iter().collect();
        let mut b = Budget::new(DEFAULT_BUDGET);
        for i in 0..self.internal.len() {
            for j in i + 1..self.internal.len() {
                let s = s_poly(&self.internal[i], &self.internal[j], &self.order);
                if !reduce_full(&s, &refs, &self.order, &mut b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Standard monomials whose weighted degree is at most `max`.
    pub fn standard_monomials_up_to(&self, weights: &[i64], max: i64) -> Vec<Monomial> {
        let n = self.ring().len();
        assert_eq!(weights.len(), n);
        assert!(weights.iter().all(|&w| w > 0));
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        self.enumerate(&mut e, 0, weights, max, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, e: &mut Vec<u32>, i: usize, w: &[i64], left: i64, out: &mut Vec<Monomial>) {
        if i == e.len() {
            let m = Monomial::from_exponents(e.clone());
            if !self.leading.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        let mut k = 0;
        while k as i64 * w[i] <= left {
            e[i] = k;
            // prune: once the partial monomial is divisible, larger exponents stay divisible
            let partial = Monomial::from_exponents(e.clone());
            let blocked = self.leading.iter().any(|l| l.divides(&partial));
            if blocked {
                break;
            }
            self.enumerate(e, i + 1, w, left - k as i64 * w[i], out);
            k += 1;
        }
        e[i] = 0;
    }

    /// All standard monomials, when there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.ring().len();
        let mut bound = vec![None; n];
        for l in &self.leading {
            let ex = l.exponents();
            let nz: Vec<usize> = (0..n).filter(|&i| ex[i] > 0).collect();
            if nz.len() == 1 {
                let i = nz[0];
                bound[i] = Some(bound[i].map_or(ex[i], |b: u32| b.min(ex[i])));
            } else if nz.is_empty() {
                return Some(vec![]);
            }
        }
        if bound.iter().any(Option::is_none) {
            return None;
        }
        let bound: Vec<u32> = bound.into_iter().map(Option::unwrap).collect();
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(e.clone());
            if !self.leading.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return Some(out);
                }
                e[i] += 1;
                if e[i] < bound[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }
}

pub fn normal_form(p: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    g.normal_form(p)
}

/// Whether two presentations generate the same ideal.
pub fn ideal_equal(a: &IdealPresentation, b: &IdealPresentation) -> Result<bool> {
    a.ring().check(b.ring())?;
    let ga = buchberger(a)?;
    let order_b = IdealPresentation::new(b.generators.clone(), a.order.clone())?;
    let gb = buchberger(&order_b)?;
    for g in &b.generators {
        if !ga.contains(g)? {
            return Ok(false);
        }
    }
    for g in &a.generators {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of the ideal intersected with the subring free of `drop`.
/// The result stays in the original ring.
pub fn eliminate(ideal: &IdealPresentation, drop: &[&str]) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let idx: Vec<usize> = drop.iter().map(|v| ring.index(v)).collect::<Result<_>>()?;
    if !ideal.order.is_elimination_for(&idx) {
        return Err(Error::NotEliminationOrder(drop.join(", ")));
    }
    let gb = buchberger(ideal)?;
    Ok(gb
        .elements()
        .iter()
        .filter(|p| p.support_vars().iter().all(|i| !idx.contains(i)))
        .cloned()
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

pub fn quotient_colength(ideal: &IdealPresentation) -> Result<Colength> {
    let gb = buchberger(ideal)?;
    Ok(match gb.standard_monomials() {
        Some(v) => Colength::Finite(v.len()),
        None => Colength::Infinite,
    })
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.has(&name) {
        k += 1;
        name = format!("{base}{k}");
    }
    name
}

/// `J1 ∩ J2` by eliminating `t` from `t·J1 + (1 − t)·J2`.
pub fn intersect(j1: &[Polynomial], j2: &[Polynomial], ring: &Ring) -> Result<Vec<Polynomial>> {
    let t = fresh_name(ring, "_t");
    let big = ring.extend(&[t.as_str()])?;
    let tv = Polynomial::var(&big, &t)?;
    let one_minus = &Polynomial::one(&big) - &tv;
    let mut gens = Vec::new();
    for g in j1 {
        gens.push(&tv * &g.embed(&big)?);
    }
    for g in j2 {
        gens.push(&one_minus * &g.embed(&big)?);
    }
    let order = MonomialOrder::elimination(&big, &[t.as_str()])?;
    let elim = eliminate(&IdealPresentation::new(gens, order)?, &[t.as_str()])?;
    elim.iter().map(|p| p.embed(ring)).collect()
}

/// Remainder of one S-pair in parametric mode, grouped by main-variable monomial.
#[derive(Clone, Debug)]
pub struct ParametricRemainder {
    pub pair: (usize, usize),
    /// `(main monomial, coefficient in the parameters)`, both in the full ring.
    pub coefficients: Vec<(Monomial, Polynomial)>,
}

impl ParametricRemainder {
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Reduces every S-pair of `gens` in a ring whose variables split into main
/// variables and parameters. The order must eliminate the main variables and
/// every generator must have leading coefficient exactly 1 as a polynomial
/// in the parameters, so reduction never divides by a parameter.
pub fn parametric_check(
    gens: &[Polynomial],
    order: &MonomialOrder,
    main_vars: &[&str],
    limit: usize,
) -> Result<Vec<ParametricRemainder>> {
    let ring = order.ring();
    let main: Vec<usize> = main_vars.iter().map(|v| ring.index(v)).collect::<Result<_>>()?;
    let params: Vec<usize> = (0..ring.len()).filter(|i| !main.contains(i)).collect();
    if !order.is_elimination_for(&main) {
        return Err(Error::NotEliminationOrder(main_vars.join(", ")));
    }
    let mut sp = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        ring.check(g.ring())?;
        let s = SPoly::from_poly(g, order);
        if s.is_zero() {
            return Err(Error::NonUnitLeading(format!("generator {k} is zero")));
        }
        let lm = s.lm();
        if lm.uses_any(&params) || !s.lc().is_one() {
            return Err(Error::NonUnitLeading(format!(
                "generator {k} has leading coefficient that is not the constant 1: {}",
                g
            )));
        }
        sp.push(s);
    }
    let mut budget = Budget::new(limit);
    let refs: Vec<&SPoly> = sp.iter().collect();
    let mut out = Vec::new();
    for i in 0..sp.len() {
        for j in i + 1..sp.len() {
            budget.tick()?;
            let s = s_poly(&sp[i], &sp[j], order);
            let r = reduce_full(&s, &refs, order, &mut budget)?.to_poly(ring);
            let coefficients = r.coefficients_in(&main).into_iter().collect();
            out.push(ParametricRemainder { pair: (i, j), coefficients });
        }
    }
    Ok(out)
}
