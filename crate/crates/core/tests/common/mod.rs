#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use quadmult::engine::{LeafSummary, LeafValue};
use quadmult::families::Family;

/// Trial-division factorization, kept independent of the library's sieve.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == [(n, 1)]
}

/// A multiplicative function given by its prime-power values; powers without
/// an entry take `fallback(prime_power)`.
pub struct TableFunction<F: Fn(u64) -> BigRational> {
    pub values: BTreeMap<u64, BigRational>,
    pub fallback: F,
}

impl<F: Fn(u64) -> BigRational> TableFunction<F> {
    pub fn at(&self, n: u64) -> BigRational {
        factor(n).into_iter().fold(BigRational::one(), |acc, (p, e)| {
            let q = p.pow(e);
            acc * self.values.get(&q).cloned().unwrap_or_else(|| (self.fallback)(q))
        })
    }
}

/// Leaf values as a table; `None` when some value is only known symbolically.
pub fn leaf_table(leaf: &LeafSummary) -> Option<BTreeMap<u64, BigRational>> {
    let mut out = BTreeMap::new();
    for (n, v) in &leaf.values.0 {
        match v {
            LeafValue::Determined(r) => {
                out.insert(*n, r.clone());
            }
            LeafValue::Free => {}
            LeafValue::Derived(_) => return None,
        }
    }
    Some(out)
}

/// First `(x, y)` with `Q(x, y) ≤ limit` where the functional equation fails.
pub fn first_violation(
    f: impl Fn(u64) -> BigRational,
    (a, b, c): (i64, i64, i64),
    limit: u64,
) -> Option<(u64, u64)> {
    for x in 1..=limit {
        for y in 1..=limit {
            let (xi, yi) = (x as i128, y as i128);
            let n = a as i128 * xi * xi + b as i128 * xi * yi + c as i128 * yi * yi;
            if n > limit as i128 {
                continue;
            }
            let (fx, fy) = (f(x), f(y));
            let rhs = BigRational::from_integer(BigInt::from(a)) * &fx * &fx
                + BigRational::from_integer(BigInt::from(b)) * &fx * &fy
                + BigRational::from_integer(BigInt::from(c)) * &fy * &fy;
            if f(n as u64) != rhs {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn family_value(family: &Family, n: u64) -> BigRational {
    let v = match family {
        Family::Identity => n,
        Family::ConstantOne => 1,
        Family::PrimeIndicator(p) => u64::from(!n.is_multiple_of(*p)),
    };
    BigRational::from_integer(BigInt::from(v))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn zero() -> BigRational {
    BigRational::zero()
}
