//! Arithmetic in `ℤ[ω]`, `ω² + ω + 1 = 0`: norms, splitting of rational primes,
//! representability by `x² − xy + y²`, and the inert-divisibility lemma.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::is_probable_prime;
use crate::forms::BinaryQuadraticForm;

/// `u + vω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisensteinInteger {
    pub u: i64,
    pub v: i64,
}

impl EisensteinInteger {
    pub const ONE: EisensteinInteger = EisensteinInteger { u: 1, v: 0 };
    pub const OMEGA: EisensteinInteger = EisensteinInteger { u: 0, v: 1 };

    pub const fn new(u: i64, v: i64) -> Self {
        EisensteinInteger { u, v }
    }

    /// `u² − uv + v²`.
    pub fn norm(&self) -> u128 {
        let (u, v) = (self.u as i128, self.v as i128);
        (u * u - u * v + v * v) as u128
    }

    /// Complex conjugate: `ω̄ = ω² = −1 − ω`, so `u + vω̄ = (u − v) − vω`.
    pub fn conj(&self) -> Self {
        EisensteinInteger::new(self.u - self.v, -self.v)
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }
}

impl Mul for EisensteinInteger {
    type Output = EisensteinInteger;

    fn mul(self, rhs: Self) -> Self {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω², ω² = −1 − ω
        let (a, b, c, d) = (self.u, self.v, rhs.u, rhs.v);
        EisensteinInteger::new(a * c - b * d, a * d + b * c - b * d)
    }
}

impl fmt::Display for EisensteinInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.v {
            0 => write!(f, "{}", self.u),
            v if v < 0 => write!(f, "{} - {}ω", self.u, -v),
            v => write!(f, "{} + {}ω", self.u, v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Splitting {
    Inert,
    Split { witness: EisensteinInteger },
    Ramified { witness: EisensteinInteger },
}

impl Splitting {
    pub fn name(&self) -> &'static str {
        match self {
            Splitting::Inert => "inert",
            Splitting::Split { .. } => "split",
            Splitting::Ramified { .. } => "ramified",
        }
    }

    pub fn witness(&self) -> Option<EisensteinInteger> {
        match self {
            Splitting::Inert => None,
            Splitting::Split { witness } | Splitting::Ramified { witness } => Some(*witness),
        }
    }
}

fn norm_bound(n: u64) -> i64 {
    // u² − uv + v² ≥ 3v²/4, so |v| ≤ sqrt(4n/3); same for u
    ((4 * n as u128) / 3).isqrt() as i64
}

/// First `u + vω` with `v ≥ 1`, `u ≥ 0` (v outer) of norm `n`.
fn find_norm(n: u64) -> Option<EisensteinInteger> {
    let b = norm_bound(n);
    (1..=b)
        .flat_map(|v| (0..=b).map(move |u| EisensteinInteger::new(u, v)))
        .find(|z| z.norm() == n as u128)
}

fn is_prime(p: u64) -> bool {
    is_probable_prime(&BigUint::from(p))
}

/// Splitting type of the rational prime `p` in `ℤ[ω]`, decided by residue mod 3
/// and backed by a norm witness for the non-inert cases.
pub fn classify_prime(p: u64) -> Result<Splitting> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let splitting = match p % 3 {
        0 => Splitting::Ramified { witness: find_norm(p).expect("1 - ω has norm 3") },
        1 => match find_norm(p) {
            Some(witness) => Splitting::Split { witness },
            None => unreachable!("prime {p} ≡ 1 (mod 3) is a norm"),
        },
        _ => Splitting::Inert,
    };
    Ok(splitting)
}

/// A pair `(x, y)` with `x² − xy + y² = n`.
///
/// With `positive_domain` only `x, y ≥ 1` are allowed and the lexicographically
/// first representation is returned; otherwise all integers, with `x ≥ 0` first.
pub fn representable_as_norm(n: u64, positive_domain: bool) -> Result<Option<(i64, i64)>> {
    if n == 0 {
        return Err(Error::NonPositive("n".into()));
    }
    if positive_domain {
        let reps = BinaryQuadraticForm::minus().representations(n)?;
        return Ok(reps.first().map(|r| (r.x as i64, r.y as i64)));
    }
    let b = norm_bound(n);
    Ok((0..=b)
        .flat_map(|x| (-b..=b).map(move |y| (x, y)))
        .find(|&(x, y)| EisensteinInteger::new(x, y).norm() == n as u128))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum DivisibilityCheck {
    Pass,
    Fail { x: u64, y: u64 },
}

/// For all `1 ≤ x, y ≤ bound` with `p | x² − xy + y²`, checks `p | x` and `p | y`.
pub fn inert_divisibility_check(p: u64, bound: u64) -> DivisibilityCheck {
    for x in 1..=bound {
        for y in 1..=bound {
            let n = EisensteinInteger::new(x as i64, y as i64).norm();
            if n.is_multiple_of(p as u128) && (x % p != 0 || y % p != 0) {
                return DivisibilityCheck::Fail { x, y };
            }
        }
    }
    DivisibilityCheck::Pass
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeRow {
    pub p: u64,
    pub residue: u64,
    pub splitting: Splitting,
}

/// One row per prime `p < bound`.
pub fn prime_table(bound: u64) -> Vec<PrimeRow> {
    (2..bound)
        .filter(|&p| is_prime(p))
        .map(|p| PrimeRow { p, residue: p % 3, splitting: classify_prime(p).expect("prime") })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        assert_eq!(EisensteinInteger::new(3, 1).norm(), 7);
        assert_eq!(EisensteinInteger::new(1, 1).norm(), 1);
        assert_eq!(EisensteinInteger::new(1, -1).norm(), 3);
        assert_eq!(EisensteinInteger::new(0, 0).norm(), 0);
    }

    #[test]
    fn multiplication() {
        let z = EisensteinInteger::new(1, 1);
        assert_eq!(z * z, EisensteinInteger::OMEGA);
        assert_eq!(EisensteinInteger::OMEGA * EisensteinInteger::OMEGA, EisensteinInteger::new(-1, -1));
        let w = EisensteinInteger::new(3, 1);
        assert_eq!((w * w.conj()), EisensteinInteger::new(7, 0));
    }

    #[test]
    fn units() {
        let units: Vec<_> = (-1..=1)
            .flat_map(|u| (-1..=1).map(move |v| EisensteinInteger::new(u, v)))
            .filter(EisensteinInteger::is_unit)
            .collect();
        assert_eq!(units.len(), 6);
    }

    #[test]
    fn splitting() {
        assert_eq!(classify_prime(5).unwrap(), Splitting::Inert);
        assert_eq!(classify_prime(7).unwrap(), Splitting::Split { witness: EisensteinInteger::new(3, 1) });
        assert_eq!(classify_prime(3).unwrap().name(), "ramified");
        assert_eq!(classify_prime(3).unwrap().witness().unwrap().norm(), 3);
        assert!(matches!(classify_prime(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn representability() {
        let w = representable_as_norm(7, true).unwrap().unwrap();
        assert_eq!(w, (1, 3));
        let all = BinaryQuadraticForm::minus().representations(7).unwrap();
        assert!(all.iter().any(|r| (r.x, r.y) == (2, 3)));
        assert_eq!(representable_as_norm(5, true).unwrap(), None);
        assert_eq!(representable_as_norm(5, false).unwrap(), None);
        assert_eq!(representable_as_norm(3, true).unwrap(), Some((1, 2)));
        // 1 = Q(1, 0) needs zero
        assert_eq!(representable_as_norm(1, true).unwrap(), Some((1, 1)));
        assert_eq!(representable_as_norm(4, true).unwrap(), Some((2, 2)));
        assert_eq!(representable_as_norm(4, false).unwrap(), Some((0, -2)));
    }

    #[test]
    fn inert_divisibility() {
        assert_eq!(inert_divisibility_check(2, 200), DivisibilityCheck::Pass);
        assert_eq!(inert_divisibility_check(5, 200), DivisibilityCheck::Pass);
        let DivisibilityCheck::Fail { x, y } = inert_divisibility_check(7, 10) else {
            panic!("7 splits");
        };
        assert_eq!(EisensteinInteger::new(x as i64, y as i64).norm() % 7, 0);
        assert_eq!((x, y), (1, 3));
    }

    #[test]
    fn table() {
        let rows = prime_table(20);
        let ps: Vec<u64> = rows.iter().map(|r| r.p).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(rows.iter().all(|r| (r.residue == 2) == (r.splitting == Splitting::Inert)));
    }
}
