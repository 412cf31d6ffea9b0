//! The four polynomial identities `Q(u, v) = Q(s, t)` in `ℤ[k]` driving the
//! induction for `x² + xy + y²`, their root pairs, and uniqueness of the
//! common root.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational, Sym};
use crate::forms::BinaryQuadraticForm;

const K: Sym = Sym("k");

/// `slope·k + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Linear {
    pub slope: i64,
    pub offset: i64,
}

impl Linear {
    pub const fn new(slope: i64, offset: i64) -> Self {
        Linear { slope, offset }
    }

    pub fn at(&self, k: i64) -> i64 {
        self.slope * k + self.offset
    }

    pub fn to_poly(self) -> Polynomial<Sym> {
        &Polynomial::var(K).scale(&Rational::from_integer(self.slope.into()))
            + &Polynomial::from_int(self.offset)
    }

    fn from_poly(p: &Polynomial<Sym>) -> Option<Linear> {
        let c = p.coefficients_in(&K);
        if c.len() > 2 {
            return None;
        }
        let int = |r: Option<Rational>| -> Option<i64> {
            let r = r?;
            r.is_integer().then(|| r.to_integer().to_i64()).flatten()
        };
        let offset = int(c[0].constant_value())?;
        let slope = match c.get(1) {
            Some(s) => int(s.constant_value())?,
            None => 0,
        };
        Some(Linear { slope, offset })
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// `Q(u, v) = Q(s, t)` for `k > threshold`; `u` is the argument `n(k)` being determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityPair {
    pub name: &'static str,
    pub left: (Linear, Linear),
    pub right: (Linear, Linear),
    pub threshold: i64,
}

impl IdentityPair {
    pub fn target(&self) -> Linear {
        self.left.0
    }
}

pub const ODD_SHIFT_3: IdentityPair = IdentityPair {
    name: "odd/shift-3",
    left: (Linear::new(2, 1), Linear::new(1, -3)),
    right: (Linear::new(2, -3), Linear::new(1, 2)),
    threshold: 3,
};

pub const ODD_SHIFT_10: IdentityPair = IdentityPair {
    name: "odd/shift-10",
    left: (Linear::new(2, 1), Linear::new(1, -10)),
    right: (Linear::new(2, -11), Linear::new(1, 5)),
    threshold: 10,
};

pub const EVEN_SHIFT_7: IdentityPair = IdentityPair {
    name: "even/shift-7",
    left: (Linear::new(2, 0), Linear::new(1, -7)),
    right: (Linear::new(2, -8), Linear::new(1, 3)),
    threshold: 7,
};

pub const EVEN_SHIFT_14: IdentityPair = IdentityPair {
    name: "even/shift-14",
    left: (Linear::new(2, 0), Linear::new(1, -14)),
    right: (Linear::new(2, -16), Linear::new(1, 6)),
    threshold: 14,
};

pub const ALL: [IdentityPair; 4] = [ODD_SHIFT_3, ODD_SHIFT_10, EVEN_SHIFT_7, EVEN_SHIFT_14];

fn q(x: &Polynomial<Sym>, y: &Polynomial<Sym>) -> Polynomial<Sym> {
    BinaryQuadraticForm::plus().apply(x, y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Pass { expansion: Polynomial<Sym> },
    Fail { difference: Polynomial<Sym> },
}

/// Expands both sides over `ℤ[k]` and compares them exactly.
pub fn check_identity(pair: &IdentityPair) -> IdentityCheck {
    let lhs = q(&pair.left.0.to_poly(), &pair.left.1.to_poly());
    let rhs = q(&pair.right.0.to_poly(), &pair.right.1.to_poly());
    let difference = &lhs - &rhs;
    if difference.is_zero() {
        IdentityCheck::Pass { expansion: lhs }
    } else {
        IdentityCheck::Fail { difference }
    }
}

/// Square root of a polynomial in `k` that is the square of an integer-linear one.
fn linear_sqrt(p: &Polynomial<Sym>) -> Option<Linear> {
    let c = p.coefficients_in(&K);
    let get = |i: usize| -> Option<BigInt> {
        let r = c.get(i).map(|x| x.constant_value()).unwrap_or(Some(Rational::zero()))?;
        r.is_integer().then(|| r.to_integer())
    };
    if c.len() > 3 {
        return None;
    }
    let (c0, c1, c2) = (get(0)?, get(1)?, get(2)?);
    let isqrt = |n: &BigInt| -> Option<BigInt> {
        if n.is_negative() {
            return None;
        }
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    let a = isqrt(&c2)?;
    let b0 = isqrt(&c0)?;
    for b in [b0.clone(), -b0] {
        let cand = Linear::new(a.to_i64()?, b.to_i64()?);
        if BigInt::from(2) * &a * BigInt::from(cand.offset) == c1 {
            return Some(cand);
        }
    }
    None
}

/// Roots `(r₁, r₂)` of `t² + v(k)·t + (v(k)² − Q(s, t)) = 0` with `r₁ = n(k)`.
pub fn vieta_roots(pair: &IdentityPair) -> Result<(Linear, Linear)> {
    let v = pair.left.1.to_poly();
    let rhs = q(&pair.right.0.to_poly(), &pair.right.1.to_poly());
    let constant = &(&v * &v) - &rhs;
    let disc = &(&v * &v) - &constant.scale(&Rational::from_integer(4.into()));
    let sqrt = linear_sqrt(&disc).ok_or_else(|| Error::NoLinearRoots(format!("discriminant {disc}")))?;
    let half = Rational::new(1.into(), 2.into());
    let plus = (&-&v + &sqrt.to_poly()).scale(&half);
    let minus = (&-&v - &sqrt.to_poly()).scale(&half);
    let (a, b) = match (Linear::from_poly(&plus), Linear::from_poly(&minus)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::NoLinearRoots(format!("{plus}, {minus}"))),
    };
    let (r1, r2) = if a == pair.target() { (a, b) } else { (b, a) };
    // Vieta, symbolically
    let sum = &r1.to_poly() + &r2.to_poly();
    let product = &r1.to_poly() * &r2.to_poly();
    if sum != -&v || product != constant || r1 != pair.target() {
        return Err(Error::NoLinearRoots(format!("{r1}, {r2}")));
    }
    Ok((r1, r2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessCheck {
    Pass,
    Fail { k: i64 },
}

/// For every `k` in `[k_min, k_max]` the two root sets meet exactly in `{n(k)}`.
pub fn common_root_unique(a: &IdentityPair, b: &IdentityPair, k_min: i64, k_max: i64) -> Result<UniquenessCheck> {
    let (na, ra) = vieta_roots(a)?;
    let (nb, rb) = vieta_roots(b)?;
    if na != nb || ra == rb {
        return Ok(UniquenessCheck::Fail { k: k_min });
    }
    // Where the spurious root meets n(k): slope·k + offset = target, solved over ℤ.
    for spurious in [ra, rb] {
        let ds = spurious.slope - na.slope;
        let doff = na.offset - spurious.offset;
        if ds == 0 {
            if doff == 0 {
                return Ok(UniquenessCheck::Fail { k: k_min });
            }
        } else if doff % ds == 0 {
            let k = doff / ds;
            if (k_min..=k_max).contains(&k) {
                return Ok(UniquenessCheck::Fail { k });
            }
        }
    }
    for k in k_min..=k_max {
        let sa = [na.at(k), ra.at(k)];
        let sb = [nb.at(k), rb.at(k)];
        let mut common: Vec<i64> = sa.iter().copied().filter(|x| sb.contains(x)).collect();
        common.sort_unstable();
        common.dedup();
        if common != [na.at(k)] {
            return Ok(UniquenessCheck::Fail { k });
        }
    }
    Ok(UniquenessCheck::Pass)
}

/// One verification row per identity pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRow {
    pub pair: IdentityPair,
    pub expansion: Option<Polynomial<Sym>>,
    pub roots: Option<(Linear, Linear)>,
    pub unique_from_threshold: bool,
    pub unique_from_induction_start: bool,
}

/// Runs every check for the four pairs, pairing odd with odd and even with even.
pub fn verification_table(k_max: i64) -> Vec<IdentityRow> {
    let partner = |p: &IdentityPair| -> IdentityPair {
        match p.name {
            "odd/shift-3" => ODD_SHIFT_10,
            "odd/shift-10" => ODD_SHIFT_3,
            "even/shift-7" => EVEN_SHIFT_14,
            _ => EVEN_SHIFT_7,
        }
    };
    ALL.iter()
        .map(|pair| {
            let other = partner(pair);
            let from = pair.threshold.max(other.threshold) + 1;
            // the induction runs from n = 29 (odd) or n = 30 (even)
            let induction = if pair.target().offset == 1 { 14 } else { 15 };
            let unique = |start: i64| {
                matches!(common_root_unique(pair, &other, start, k_max), Ok(UniquenessCheck::Pass))
            };
            IdentityRow {
                pair: *pair,
                expansion: match check_identity(pair) {
                    IdentityCheck::Pass { expansion } => Some(expansion),
                    IdentityCheck::Fail { .. } => None,
                },
                roots: vieta_roots(pair).ok(),
                unique_from_threshold: unique(from),
                unique_from_induction_start: unique(induction.max(from)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expansion_777() -> Polynomial<Sym> {
        let k = Polynomial::var(K);
        &(&k.pow(2).scale(&Rational::from_integer(7.into())) - &k.scale(&Rational::from_integer(7.into())))
            + &Polynomial::from_int(7)
    }

    #[test]
    fn identities_hold() {
        assert_eq!(check_identity(&ODD_SHIFT_3), IdentityCheck::Pass { expansion: expansion_777() });
        for pair in ALL {
            assert!(matches!(check_identity(&pair), IdentityCheck::Pass { .. }), "{}", pair.name);
        }
    }

    #[test]
    fn corrupted_identity_fails() {
        let mut bad = ODD_SHIFT_3;
        bad.right.1 = Linear::new(1, 3);
        match check_identity(&bad) {
            IdentityCheck::Fail { difference } => assert!(!difference.is_zero()),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn root_pairs() {
        assert_eq!(vieta_roots(&ODD_SHIFT_3).unwrap(), (Linear::new(2, 1), Linear::new(-3, 2)));
        assert_eq!(vieta_roots(&ODD_SHIFT_10).unwrap(), (Linear::new(2, 1), Linear::new(-3, 9)));
        assert_eq!(vieta_roots(&EVEN_SHIFT_7).unwrap(), (Linear::new(2, 0), Linear::new(-3, 7)));
        assert_eq!(vieta_roots(&EVEN_SHIFT_14).unwrap(), (Linear::new(2, 0), Linear::new(-3, 14)));
        assert_eq!(Linear::new(-3, 2).to_string(), "-3*k + 2");
    }

    #[test]
    fn unique_common_root() {
        assert_eq!(common_root_unique(&ODD_SHIFT_3, &ODD_SHIFT_10, 11, 10_000).unwrap(), UniquenessCheck::Pass);
        assert_eq!(common_root_unique(&EVEN_SHIFT_7, &EVEN_SHIFT_14, 15, 10_000).unwrap(), UniquenessCheck::Pass);
        // pairing a family with itself never isolates n(k)
        assert!(matches!(
            common_root_unique(&ODD_SHIFT_3, &ODD_SHIFT_3, 11, 20).unwrap(),
            UniquenessCheck::Fail { .. }
        ));
    }

    #[test]
    fn table_rows() {
        let rows = verification_table(1000);
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.expansion.is_some() && r.roots.is_some()));
        assert!(rows.iter().all(|r| r.unique_from_threshold && r.unique_from_induction_start));
    }
}
