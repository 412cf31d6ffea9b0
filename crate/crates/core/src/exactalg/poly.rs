use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A power product of variables, stored sparsely with variables ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial<V> {
    factors: Vec<(V, u32)>,
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: V, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial { factors: vec![(v, exp)] }
        }
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.factors
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (&self.factors[i], &other.factors[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    factors.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial { factors }
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Self) -> Option<Self> {
        let mut factors = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (v, e) in &self.factors {
            let mut e = *e;
            if j < other.factors.len() && other.factors[j].0 == *v {
                if other.factors[j].1 > e {
                    return None;
                }
                e -= other.factors[j].1;
                j += 1;
            } else if j < other.factors.len() && other.factors[j].0 < *v {
                return None;
            }
            if e > 0 {
                factors.push((v.clone(), e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors })
    }

    fn without(&self, v: &V) -> Self {
        Monomial {
            factors: self.factors.iter().filter(|(w, _)| w != v).cloned().collect(),
        }
    }
}

impl<V: Ord> Monomial<V> {
    /// Lexicographic comparison of exponent vectors, earliest variable most significant.
    fn lex_cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if a.1 != b.1 {
                            return a.1.cmp(&b.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl<V: Ord> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.factors.iter().map(|(_, e)| e).sum();
        let db: u32 = other.factors.iter().map(|(_, e)| e).sum();
        da.cmp(&db).then_with(|| self.lex_cmp(other))
    }
}

impl<V: Ord> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals in graded lexicographic order.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<V> {
    terms: BTreeMap<Monomial<V>, Rational>,
}

impl<V: Ord> Ord for Polynomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl<V: Ord> PartialOrd for Polynomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Ord + Clone> Default for Polynomial<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Ord + Clone> Polynomial<V> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: V) -> Self {
        Self::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn term(m: Monomial<V>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> BTreeSet<V> {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Largest exponent of any single variable.
    pub fn max_var_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(_, e)| *e))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial<V>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial<V>, c: Rational) {
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

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients with respect to `v`, indexed by degree.
    pub fn coefficients_in(&self, v: &V) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.degree_in(v) as usize;
            out[e].add_term(m.without(v), c.clone());
        }
        out
    }

    /// Replaces `v` by `value` exactly.
    pub fn substitute(&self, v: &V, value: &Self) -> Self {
        if self.degree_in(v) == 0 {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        // Horner in `value`
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Like [`substitute`](Self::substitute), refusing results whose per-variable degree exceeds `cap`.
    pub fn substitute_capped(&self, v: &V, value: &Self, cap: u32) -> Result<Self> {
        let result = self.substitute(v, value);
        if result.max_var_degree() > cap {
            return Err(Error::Deferred(cap));
        }
        Ok(result)
    }

    pub fn substitute_value(&self, v: &V, value: &Rational) -> Self {
        self.substitute(v, &Self::constant(value.clone()))
    }

    /// Substitutes every variable for which `lookup` yields a value.
    pub fn evaluate_partial(&self, lookup: impl Fn(&V) -> Option<Rational>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in &m.factors {
                match lookup(v) {
                    Some(val) => coeff *= num_traits::pow(val, *e as usize),
                    None => rest.push((v.clone(), *e)),
                }
            }
            out.add_term(Monomial { factors: rest }, coeff);
        }
        out
    }

    /// Full evaluation; `None` if some variable has no value.
    pub fn evaluate(&self, lookup: impl Fn(&V) -> Option<Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.factors {
                t *= num_traits::pow(lookup(v)?, *e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&lm)?;
            let c = rc / &lc;
            let t = Self::term(m, c);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Multiplies through by the lcm of denominators and divides by the content,
    /// with a positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut factor = Rational::new(lcm, content);
        if self.leading_term().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl<V: Ord + Clone> Add for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn add(self, rhs: Self) -> Polynomial<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<V: Ord + Clone> Sub for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn sub(self, rhs: Self) -> Polynomial<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<V: Ord + Clone> Mul for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn mul(self, rhs: Self) -> Polynomial<V> {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl<V: Ord + Clone> Neg for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn neg(self) -> Polynomial<V> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<V: Ord + Clone> $tr for Polynomial<V> {
            type Output = Polynomial<V>;
            fn $f(self, rhs: Self) -> Polynomial<V> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<V: Ord + Clone> Neg for Polynomial<V> {
    type Output = Polynomial<V>;
    fn neg(self) -> Polynomial<V> {
        -&self
    }
}

impl<V: Ord + Clone> From<BigInt> for Polynomial<V> {
    fn from(c: BigInt) -> Self {
        Self::from_int(c)
    }
}

impl<V: Ord + Clone> From<Rational> for Polynomial<V> {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Renders leading term first, e.g. `f(2)^2 + f(2)*f(5) + f(5)^2 - 39`.
impl<V: Ord + Clone + fmt::Display> fmt::Display for Polynomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
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
