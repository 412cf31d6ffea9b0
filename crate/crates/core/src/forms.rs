//! Binary quadratic forms `a·x² + b·x·y + c·y²` and enumeration of their
//! representations over positive integers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The form `a·x² + b·x·y + c·y²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BinaryQuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// `x² + xy + y²`
    pub fn plus() -> Self {
        Self::new(1, 1, 1)
    }

    /// `x² − xy + y²`
    pub fn minus() -> Self {
        Self::new(1, -1, 1)
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Evaluates the form over any commutative ring containing the integers.
    pub fn apply<T>(&self, x: &T, y: &T) -> T
    where
        T: Clone
            + std::ops::Add<Output = T>
            + std::ops::Mul<Output = T>
            + From<BigInt>,
    {
        let xx = x.clone() * x.clone();
        let xy = x.clone() * y.clone();
        let yy = y.clone() * y.clone();
        T::from(self.a.clone()) * xx + T::from(self.b.clone()) * xy + T::from(self.c.clone()) * yy
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite(self.to_string()))
        }
    }

    /// Largest coordinate any representation of `n` can have.
    ///
    /// Completing the square gives `Q(x,y) ≥ (4ac−b²)/(4c)·x²` and the same
    /// with `a` for `y`, so `max(x,y)² ≤ 4·max(a,c)·n / (4ac−b²)`.
    fn coordinate_bound(&self, n: &BigInt) -> BigInt {
        let det = -self.discriminant();
        let m = if self.a > self.c { &self.a } else { &self.c };
        let radicand = BigInt::from(4) * m * n / det;
        radicand.sqrt()
    }

    /// All `(x, y)` with `x, y ≥ 1` and `Q(x, y) = n`, in lexicographic order.
    pub fn representations(&self, n: u64) -> Result<Vec<Representation>> {
        self.require_positive_definite()?;
        if n == 0 {
            return Err(Error::NonPositive(n.to_string()));
        }
        let target = BigInt::from(n);
        let bound = self
            .coordinate_bound(&target)
            .to_u64()
            .expect("coordinate bound fits in u64 when n does");
        let mut out = Vec::new();
        for x in 1..=bound {
            let bx = BigInt::from(x);
            for y in 1..=bound {
                if self.evaluate(&bx, &BigInt::from(y)) == target {
                    out.push(Representation { n, x, y });
                }
            }
        }
        Ok(out)
    }

    /// Representations of every `n ≤ limit`; entries without representations are omitted.
    pub fn representation_table(&self, limit: u64) -> Result<RepresentationTable> {
        self.require_positive_definite()?;
        if limit == 0 {
            return Err(Error::NonPositive(limit.to_string()));
        }
        let bound = self
            .coordinate_bound(&BigInt::from(limit))
            .to_u64()
            .expect("coordinate bound fits in u64 when the limit does");
        let big_limit = BigInt::from(limit);
        let mut entries: BTreeMap<u64, Vec<Representation>> = BTreeMap::new();
        for x in 1..=bound {
            let bx = BigInt::from(x);
            for y in 1..=bound {
                let value = self.evaluate(&bx, &BigInt::from(y));
                if value.is_positive() && value <= big_limit {
                    let n = value.to_u64().unwrap();
                    entries.entry(n).or_default().push(Representation { n, x, y });
                }
            }
        }
        Ok(RepresentationTable {
            form: self.clone(),
            limit,
            entries,
        })
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for BinaryQuadraticForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::MalformedForm(s.to_string()));
        }
        let parse = |p: &str| p.parse::<BigInt>().map_err(|_| Error::MalformedForm(s.to_string()));
        Ok(BinaryQuadraticForm {
            a: parse(parts[0])?,
            b: parse(parts[1])?,
            c: parse(parts[2])?,
        })
    }
}

impl Serialize for BinaryQuadraticForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryQuadraticForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A solution `Q(x, y) = n` with positive coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Representation {
    pub n: u64,
    pub x: u64,
    pub y: u64,
}

/// Immutable map `n → representations of n` for all `n` up to a limit.
#[derive(Debug, Clone)]
pub struct RepresentationTable {
    form: BinaryQuadraticForm,
    limit: u64,
    entries: BTreeMap<u64, Vec<Representation>>,
}

impl RepresentationTable {
    pub fn form(&self) -> &BinaryQuadraticForm {
        &self.form
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Representations of `n`; empty when `n` is not represented (or out of range).
    pub fn get(&self, n: u64) -> &[Representation] {
        self.entries.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Represented `n` in ascending order, with their representations.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &[Representation])> {
        self.entries.iter().map(|(n, r)| (*n, r.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Representation {
    pub fn is_valid_for(&self, form: &BinaryQuadraticForm) -> bool {
        let value = form.evaluate(&BigInt::from(self.x), &BigInt::from(self.y));
        !value.is_zero() && value == BigInt::from(self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(reps: &[Representation]) -> Vec<(u64, u64)> {
        reps.iter().map(|r| (r.x, r.y)).collect()
    }

    #[test]
    fn evaluates_known_instances() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(BinaryQuadraticForm::plus().evaluate(&b(1), &b(1)), b(3));
        assert_eq!(BinaryQuadraticForm::plus().evaluate(&b(1), &b(2)), b(7));
        assert_eq!(BinaryQuadraticForm::minus().evaluate(&b(2), &b(3)), b(7));
        for n in [1i64, 5, 17, 1_000_003] {
            assert_eq!(BinaryQuadraticForm::minus().evaluate(&b(n), &b(n)), b(n * n));
        }
    }

    #[test]
    fn discriminants_and_definiteness() {
        assert_eq!(BinaryQuadraticForm::plus().discriminant(), BigInt::from(-3));
        assert_eq!(BinaryQuadraticForm::minus().discriminant(), BigInt::from(-3));
        assert_eq!(BinaryQuadraticForm::new(1, 0, 1).discriminant(), BigInt::from(-4));
        assert!(BinaryQuadraticForm::plus().is_positive_definite());
        assert!(BinaryQuadraticForm::minus().is_positive_definite());
        assert!(!BinaryQuadraticForm::new(1, 3, 1).is_positive_definite());
        assert!(!BinaryQuadraticForm::new(-1, 0, -1).is_positive_definite());
    }

    #[test]
    fn small_representations() {
        let plus = BinaryQuadraticForm::plus();
        let minus = BinaryQuadraticForm::minus();
        assert_eq!(pairs(&plus.representations(7).unwrap()), vec![(1, 2), (2, 1)]);
        assert_eq!(
            pairs(&minus.representations(7).unwrap()),
            vec![(1, 3), (2, 3), (3, 1), (3, 2)]
        );
        assert!(plus.representations(2).unwrap().is_empty());
        assert_eq!(pairs(&minus.representations(1).unwrap()), vec![(1, 1)]);
    }

    #[test]
    fn rejects_indefinite_and_zero() {
        let indefinite = BinaryQuadraticForm::new(1, 3, 1);
        assert!(matches!(indefinite.representations(5), Err(Error::NotPositiveDefinite(_))));
        assert!(matches!(indefinite.representation_table(5), Err(Error::NotPositiveDefinite(_))));
        assert!(matches!(BinaryQuadraticForm::plus().representation_table(0), Err(Error::NonPositive(_))));
        assert!(BinaryQuadraticForm::plus().representations(0).is_err());
    }

    #[test]
    fn small_tables() {
        let t = BinaryQuadraticForm::plus().representation_table(3).unwrap();
        assert_eq!(t.iter().map(|(n, r)| (n, pairs(r))).collect::<Vec<_>>(), vec![(3, vec![(1, 1)])]);
        let t = BinaryQuadraticForm::minus().representation_table(3).unwrap();
        assert_eq!(
            t.iter().map(|(n, r)| (n, pairs(r))).collect::<Vec<_>>(),
            vec![(1, vec![(1, 1)]), (3, vec![(1, 2), (2, 1)])]
        );
    }

    #[test]
    fn parses_form_strings() {
        let f: BinaryQuadraticForm = "1,-1,1".parse().unwrap();
        assert_eq!(f, BinaryQuadraticForm::minus());
        assert_eq!(f.to_string(), "1,-1,1");
        assert!("1,2".parse::<BinaryQuadraticForm>().is_err());
        assert!("1,x,1".parse::<BinaryQuadraticForm>().is_err());
    }
}
