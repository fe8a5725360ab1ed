//! Truncated Laurent series in one variable.
//!
//! A series carries a precision `N`: every exponent `>= N` is unknown. Results
//! of arithmetic carry the precision that the inputs actually justify, and
//! reading a coefficient at or beyond it is an error.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    var: String,
    coeffs: BTreeMap<i64, Rational>,
    prec: i64,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mon = match k {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, k),
            };
            if mon.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mon)?;
            } else {
                write!(f, "{}*{}", format_rational(&a), mon)?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O({}^{})", self.var, self.prec)
    }
}

impl TruncatedSeries {
    /// Builds a series from `(exponent, coefficient)` pairs; pairs at or above
    /// `prec` are discarded.
    pub fn new<I: IntoIterator<Item = (i64, Rational)>>(var: &str, terms: I, prec: i64) -> TruncatedSeries {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if k < prec {
                *coeffs.entry(k).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        TruncatedSeries { var: var.to_string(), coeffs, prec }
    }

    pub fn zero(var: &str, prec: i64) -> TruncatedSeries {
        Self::new(var, [], prec)
    }

    pub fn constant(var: &str, c: Rational, prec: i64) -> TruncatedSeries {
        Self::new(var, [(0, c)], prec)
    }

    /// `t^k` known to precision `prec`.
    pub fn monomial(var: &str, k: i64, prec: i64) -> TruncatedSeries {
        Self::new(var, [(k, Rational::one())], prec)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Lowest exponent with a known nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Valuation, or the precision when nothing nonzero is known.
    fn val_or_prec(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn coeff(&self, k: i64) -> Result<Rational> {
        if k >= self.prec {
            return Err(Error::Precision { exponent: k, precision: self.prec });
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    /// Same series with the precision lowered to `prec`.
    pub fn truncate(&self, prec: i64) -> TruncatedSeries {
        let p = prec.min(self.prec);
        Self::new(&self.var, self.coeffs.iter().map(|(k, c)| (*k, c.clone())), p)
    }

    fn check_var(&self, o: &TruncatedSeries) -> Result<()> {
        if self.var != o.var {
            return Err(Error::RingMismatch(format!("series in `{}` vs `{}`", self.var, o.var)));
        }
        Ok(())
    }

    pub fn add(&self, o: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_var(o)?;
        let p = self.prec.min(o.prec);
        Ok(Self::new(
            &self.var,
            self.coeffs.iter().chain(o.coeffs.iter()).map(|(k, c)| (*k, c.clone())),
            p,
        ))
    }

    pub fn sub(&self, o: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        Self::new(&self.var, self.coeffs.iter().map(|(k, x)| (*k, x * c)), self.prec)
    }

    pub fn add_constant(&self, c: &Rational) -> TruncatedSeries {
        let mut terms: Vec<(i64, Rational)> = self.coeffs.iter().map(|(k, x)| (*k, x.clone())).collect();
        terms.push((0, c.clone()));
        Self::new(&self.var, terms, self.prec)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> TruncatedSeries {
        Self::new(&self.var, self.coeffs.iter().map(|(e, x)| (e + k, x.clone())), self.prec + k)
    }

    pub fn mul(&self, o: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_var(o)?;
        let p = (self.prec + o.val_or_prec()).min(o.prec + self.val_or_prec());
        let mut terms = Vec::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                if a + b < p {
                    terms.push((a + b, x * y));
                }
            }
        }
        Ok(Self::new(&self.var, terms, p))
    }

    /// Multiplicative inverse; needs a known nonzero leading term.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Invalid("cannot invert a series with no known nonzero term".into()))?;
        // self = c t^v (1 + r), r of positive valuation known below prec - v
        let c = self.coeffs[&v].clone();
        let rel = self.prec - v;
        let r = self.shift(-v).scale(&c.recip()).add_constant(&-Rational::one());
        // 1/(1+r) = sum (-r)^k, k < rel suffices since val(r) >= 1
        let one = Self::constant(&self.var, Rational::one(), rel);
        let mut acc = one.clone();
        let mut pw = one;
        let mr = r.neg();
        for _ in 1..rel.max(1) {
            pw = pw.mul(&mr)?.truncate(rel);
            if pw.coeffs.is_empty() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        let acc = acc.truncate(rel);
        Ok(acc.scale(&c.recip()).shift(-v))
    }

    pub fn pow(&self, n: i64) -> Result<TruncatedSeries> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = Self::constant(&self.var, Rational::one(), i64::MAX / 4);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self(inner)`: substitutes a series of positive valuation for the variable.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        let w = match inner.valuation() {
            Some(w) if w > 0 => w,
            Some(w) => {
                return Err(Error::Composition(format!("inner series has valuation {w}, must be positive")))
            }
            None => return Err(Error::Composition("inner series has no known nonzero term".into())),
        };
        let va = self.val_or_prec();
        let p = (w * self.prec).min(w * va + inner.prec - w);
        let mut acc = Self::zero(&inner.var, p);
        let Some((&k0, _)) = self.coeffs.iter().next() else {
            return Ok(acc);
        };
        // successive powers inner^k0, inner^(k0+1), ...
        let mut pw = inner.pow(k0)?.truncate(p);
        let mut k = k0;
        for (e, c) in &self.coeffs {
            while k < *e {
                pw = pw.mul(inner)?.truncate(p);
                k += 1;
            }
            acc = acc.add(&pw.scale(c))?;
        }
        Ok(acc.truncate(p))
    }

    /// Compositional inverse of a series `a1 t + a2 t^2 + ...` with `a1 != 0`,
    /// by Newton iteration.
    pub fn reversion(&self) -> Result<TruncatedSeries> {
        if self.valuation() != Some(1) {
            return Err(Error::Composition("reversion needs valuation exactly 1".into()));
        }
        let a1 = self.coeffs[&1].clone();
        let p = self.prec;
        let s = Self::monomial(&self.var, 1, p);
        let d = self.derivative();
        let mut h = s.scale(&a1.recip());
        for _ in 0..64 {
            let err = self.compose(&h)?.sub(&s)?;
            if err.coeffs.is_empty() {
                break;
            }
            let step = err.mul(&d.compose(&h)?.inverse()?)?;
            h = h.sub(&step)?.truncate(p);
        }
        Ok(h.truncate(p))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> TruncatedSeries {
        Self::new(
            &self.var,
            self.coeffs.iter().map(|(k, c)| (k - 1, c * Rational::from_integer((*k).into()))),
            self.prec - 1,
        )
    }

    /// Re-expands in the parameter `s` where `t = sub(s)`: same as `compose`.
    pub fn recenter(&self, sub: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compose(sub)
    }

    /// Renames the variable.
    pub fn with_var(&self, var: &str) -> TruncatedSeries {
        TruncatedSeries { var: var.to_string(), coeffs: self.coeffs.clone(), prec: self.prec }
    }
}
