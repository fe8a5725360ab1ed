//! Monomial orders, compiled to integer weight matrices.
//!
//! Every order here is represented by a matrix `M` with one column per ring
//! variable; monomials compare by the lexicographic order of `M·e`. Because
//! the key is linear in the exponent vector, multiplying by a monomial shifts
//! all keys by the same vector, so sorted term lists stay sorted.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::ring::{Monomial, Ring};
use crate::rational::int;

pub type Key = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Grevlex,
    WeightedDeglex,
    Matrix,
    Block,
}

#[derive(Clone, Debug)]
pub struct MonomialOrder {
    ring: Ring,
    rows: Vec<Vec<i64>>,
    kind: OrderKind,
}

fn names_to_idx(ring: &Ring, names: &[&str]) -> Result<Vec<usize>> {
    names.iter().map(|n| ring.index(n)).collect()
}

fn check_permutation(ring: &Ring, idx: &[usize]) -> Result<()> {
    let mut s = idx.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != ring.len() || idx.len() != ring.len() {
        return Err(Error::InvalidOrder(
            "variable list must name every ring variable exactly once".into(),
        ));
    }
    Ok(())
}

impl MonomialOrder {
    fn build(ring: &Ring, rows: Vec<Vec<i64>>, kind: OrderKind) -> Result<MonomialOrder> {
        let n = ring.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidOrder("row length differs from ring size".into()));
        }
        for c in 0..n {
            match rows.iter().map(|r| r[c]).find(|&x| x != 0) {
                Some(x) if x > 0 => {}
                _ => {
                    return Err(Error::InvalidOrder(format!(
                        "variable `{}` is not positive in the first row that sees it",
                        ring.vars()[c]
                    )))
                }
            }
        }
        let m: linalg::Matrix = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        if linalg::rank(&m) != n {
            return Err(Error::InvalidOrder("weight matrix does not have full rank".into()));
        }
        Ok(MonomialOrder { ring: ring.clone(), rows, kind })
    }

    fn lex_rows(n: usize, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter()
            .map(|&i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect()
    }

    /// Pure lexicographic order with `vars[0]` largest.
    pub fn lex(ring: &Ring, vars: &[&str]) -> Result<MonomialOrder> {
        let idx = names_to_idx(ring, vars)?;
        check_permutation(ring, &idx)?;
        Self::build(ring, Self::lex_rows(ring.len(), &idx), OrderKind::Lex)
    }

    /// Lex using the ring's own variable order.
    pub fn lex_default(ring: &Ring) -> MonomialOrder {
        let names: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
        Self::lex(ring, &names).expect("lex on own variables")
    }

    /// Graded reverse lexicographic order with `vars[0]` largest.
    pub fn grevlex(ring: &Ring, vars: &[&str]) -> Result<MonomialOrder> {
        let idx = names_to_idx(ring, vars)?;
        check_permutation(ring, &idx)?;
        let n = ring.len();
        let mut rows = vec![vec![1; n]];
        for &i in idx.iter().rev().take(n.saturating_sub(1)) {
            let mut r = vec![0; n];
            r[i] = -1;
            rows.push(r);
        }
        Self::build(ring, rows, OrderKind::Grevlex)
    }

    pub fn grevlex_default(ring: &Ring) -> MonomialOrder {
        let names: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
        Self::grevlex(ring, &names).expect("grevlex on own variables")
    }

    /// Weighted degree first, ties broken lexicographically in `tiebreak` order.
    pub fn weighted_deglex(ring: &Ring, weights: &[(&str, i64)], tiebreak: &[&str]) -> Result<MonomialOrder> {
        let n = ring.len();
        let mut w = vec![0i64; n];
        for (v, x) in weights {
            w[ring.index(v)?] = *x;
        }
        if w.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidOrder("weights must be positive for every variable".into()));
        }
        let idx = names_to_idx(ring, tiebreak)?;
        check_permutation(ring, &idx)?;
        let mut rows = vec![w];
        rows.extend(Self::lex_rows(n, &idx));
        Self::build(ring, rows, OrderKind::WeightedDeglex)
    }

    /// Weight rows over the named columns `vars`, then lex over `lex`.
    pub fn matrix(ring: &Ring, vars: &[&str], rows: &[Vec<i64>], lex: &[&str]) -> Result<MonomialOrder> {
        let n = ring.len();
        let cols = names_to_idx(ring, vars)?;
        let mut full = Vec::new();
        for r in rows {
            if r.len() != cols.len() {
                return Err(Error::InvalidOrder("row length differs from column list".into()));
            }
            let mut row = vec![0; n];
            for (&c, &x) in cols.iter().zip(r) {
                row[c] = x;
            }
            full.push(row);
        }
        let idx = names_to_idx(ring, lex)?;
        check_permutation(ring, &idx)?;
        full.extend(Self::lex_rows(n, &idx));
        Self::build(ring, full, OrderKind::Matrix)
    }

    /// Block order: monomials compare first by `inner` on the block variables,
    /// then by `outer` on the remaining ones. `inner` and `outer` live on their
    /// own rings whose variables must partition `ring`.
    pub fn block(ring: &Ring, inner: &MonomialOrder, outer: &MonomialOrder) -> Result<MonomialOrder> {
        let n = ring.len();
        let mut seen = vec![false; n];
        let mut rows = Vec::new();
        for sub in [inner, outer] {
            let map: Vec<usize> = sub.ring.vars().iter().map(|v| ring.index(v)).collect::<Result<_>>()?;
            for &i in &map {
                if seen[i] {
                    return Err(Error::InvalidOrder(format!("variable `{}` in both blocks", ring.vars()[i])));
                }
                seen[i] = true;
            }
            for r in sub.rows.iter().filter(|r| r.iter().any(|&x| x != 0)) {
                let mut row = vec![0; n];
                for (j, &x) in r.iter().enumerate() {
                    row[map[j]] = x;
                }
                rows.push(row);
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidOrder("blocks do not cover the ring".into()));
        }
        Self::build(ring, rows, OrderKind::Block)
    }

    /// Block order with grevlex inside each block; `block` is dominant.
    pub fn elimination(ring: &Ring, block: &[&str]) -> Result<MonomialOrder> {
        let rest: Vec<&str> = ring
            .vars()
            .iter()
            .map(String::as_str)
            .filter(|v| !block.contains(v))
            .collect();
        let r1 = Ring::new(block)?;
        let inner = Self::grevlex(&r1, block)?;
        if rest.is_empty() {
            return Self::block(ring, &inner, &Self::grevlex(&Ring::new::<&str>(&[])?, &[])?);
        }
        let r2 = Ring::new(&rest)?;
        let outer = Self::grevlex(&r2, &rest)?;
        Self::block(ring, &inner, &outer)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn key(&self, m: &Monomial) -> Key {
        self.rows
            .iter()
            .map(|r| r.iter().zip(&m.0).map(|(a, &b)| a * b as i64).sum())
            .collect()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != self.ring.len() || b.len() != self.ring.len() {
            return Err(Error::RingMismatch("monomial length differs from the order's ring".into()));
        }
        Ok(self.key(a).cmp(&self.key(b)))
    }

    /// Whether every monomial involving a variable of `drop` exceeds every
    /// monomial free of them.
    pub fn is_elimination_for(&self, drop: &[usize]) -> bool {
        let others: Vec<usize> = (0..self.ring.len()).filter(|i| !drop.contains(i)).collect();
        let lead: Vec<&Vec<i64>> = self
            .rows
            .iter()
            .take_while(|r| others.iter().all(|&o| r[o] == 0))
            .collect();
        let sub: linalg::Matrix = lead
            .iter()
            .map(|r| drop.iter().map(|&d| int(r[d])).collect())
            .collect();
        drop.is_empty() || (!sub.is_empty() && linalg::rank(&sub) == drop.len())
    }
}
