//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are ordered graded-lexicographically: higher total degree
//! first, ties broken by comparing exponents variable by variable, with
//! variables taken in ascending name order. Terms print from the largest
//! monomial down, so equal polynomials always print identically.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Coeff, Scalar};

/// Product of variables with positive exponents, sorted by variable name.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: impl Into<String>) -> Self {
        Monomial(vec![(name.into(), 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order;
    /// repeated variables add up and zero exponents vanish.
    pub fn from_powers<S: Into<String>>(powers: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v.into()).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0
            .binary_search_by(|(v, _)| v.as_str().cmp(var))
            .map_or(0, |i| self.0[i].1)
    }

    /// Every exponent is at most one.
    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&(_, e)| e <= 1)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `va` is absent from `b`, where its exponent is zero
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn var(name: impl Into<String>) -> Self {
        Self::term(Scalar::one(), Monomial::var(name))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = Polynomial::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Variables that occur, in ascending name order.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::default();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn evaluate(&self, assignment: &HashMap<String, Scalar>) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.0 {
                let x = assignment
                    .get(v)
                    .ok_or_else(|| Error::UnassignedVariable(v.clone()))?;
                term *= &x.pow(*e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Product that fails once the result would exceed `budget` terms.
    pub fn checked_mul(&self, other: &Polynomial, budget: u64) -> Result<Polynomial> {
        let bound = self.len() as u64 * other.len() as u64;
        let mut out = Polynomial::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
            if out.len() as u64 > budget {
                return Err(Error::budget("polynomial product", bound, budget));
            }
        }
        Ok(out)
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs, u64::MAX).expect("unbounded budget")
    }
}

impl Coeff for Polynomial {
    fn from_scalar(s: Scalar) -> Self {
        Polynomial::constant(s)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = *c < Scalar::zero();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var("x")
    }
    fn y() -> Polynomial {
        Polynomial::var("y")
    }
    fn c(v: i64) -> Polynomial {
        Polynomial::constant(Scalar::from(v))
    }

    #[test]
    fn graded_lex_order() {
        let xy = Monomial::from_powers([("x", 1), ("y", 1)]);
        let x2 = Monomial::from_powers([("x", 2)]);
        let y2 = Monomial::from_powers([("y", 2)]);
        let x = Monomial::var("x");
        let z3 = Monomial::from_powers([("z", 3)]);
        assert!(x2 > xy && xy > y2);
        assert!(y2 > x);
        assert!(z3 > x2);
        assert!(x > Monomial::one());
        assert_eq!(Monomial::from_powers([("y", 1), ("x", 1), ("x", 0)]), xy);
    }

    #[test]
    fn prints_canonically() {
        let p = x() * c(2) + y() * y() - c(3) + x() * x();
        assert_eq!(p.to_string(), "x^2 + y^2 + 2*x - 3");
        let q = (x() + c(1)) * (y() + c(1)) + x() * Polynomial::var("z");
        assert_eq!(q.to_string(), "x*y + x*z + x + y + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(
            (-x() * Polynomial::constant(Scalar::new(1, 2))).to_string(),
            "-1/2*x"
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = (x() + y()) * (x() - y());
        assert_eq!(p, x() * x() - y() * y());
        assert_eq!(p.len(), 2);
        assert!((x() - x()).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = x() * x() + c(2) * x() * y();
        let a: HashMap<String, Scalar> =
            [("x".into(), Scalar::from(3)), ("y".into(), Scalar::new(1, 2))].into();
        assert_eq!(p.evaluate(&a).unwrap(), Scalar::from(12));
        let partial: HashMap<String, Scalar> = [("x".into(), Scalar::from(3))].into();
        assert_eq!(p.evaluate(&partial), Err(Error::UnassignedVariable("y".into())));
    }

    #[test]
    fn product_budget() {
        let s = x() + y() + c(1);
        assert!(s.checked_mul(&s, 6).is_ok());
        assert!(matches!(s.checked_mul(&s, 5), Err(Error::Budget { .. })));
    }
}
