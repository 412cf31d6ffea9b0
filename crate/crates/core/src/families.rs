//! The known solution families and exhaustive checks of the functional
//! equation `f(Q(x,y)) = Q(f(x), f(y))` on a finite box.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{is_probable_prime, Rational};
use crate::forms::BinaryQuadraticForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Identity,
    ConstantOne,
    /// `f_p(n) = 0` if `p | n`, else `1`.
    PrimeIndicator(u64),
}

impl Family {
    pub fn value(&self, n: u64) -> Rational {
        self.value_big(&BigInt::from(n))
    }

    pub fn value_big(&self, n: &BigInt) -> Rational {
        match self {
            Family::Identity => Rational::from_integer(n.clone()),
            Family::ConstantOne => Rational::one(),
            Family::PrimeIndicator(p) => {
                if n.is_multiple_of(&BigInt::from(*p)) {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Identity => f.write_str("identity"),
            Family::ConstantOne => f.write_str("const1"),
            Family::PrimeIndicator(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Family::Identity),
            "const1" => Ok(Family::ConstantOne),
            _ => {
                let p: u64 = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::MalformedFamily(s.to_string()))?;
                if is_probable_prime(&p.into()) {
                    Ok(Family::PrimeIndicator(p))
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { x: u64, y: u64 },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Checks the functional equation for every `1 ≤ x, y ≤ bound`; the first
/// failure in lexicographic order is returned.
pub fn verify_function(
    f: impl Fn(&BigInt) -> Rational,
    form: &BinaryQuadraticForm,
    bound: u64,
) -> Verdict {
    let values: Vec<Rational> = (0..=bound).map(|x| f(&BigInt::from(x))).collect();
    for x in 1..=bound {
        let bx = BigInt::from(x);
        for y in 1..=bound {
            let n = form.evaluate(&bx, &BigInt::from(y));
            let lhs = f(&n);
            let rhs = form.apply(&values[x as usize], &values[y as usize]);
            if lhs != rhs {
                return Verdict::Fail { x, y };
            }
        }
    }
    Verdict::Pass
}

pub fn verify_family(family: &Family, form: &BinaryQuadraticForm, bound: u64) -> Verdict {
    verify_function(|n| family.value_big(n), form, bound)
}

/// Checks `f(mn) = f(m)·f(n)` for all coprime `2 ≤ m, n ≤ bound`; pairs involving 1
/// only restate `f(1) = 1` and are left out.
pub fn multiplicativity_check(f: impl Fn(u64) -> Rational, bound: u64) -> Verdict {
    for m in 2..=bound {
        for n in 2..=bound {
            if m.gcd(&n) == 1 && f(m * n) != f(m) * f(n) {
                return Verdict::Fail { x: m, y: n };
            }
        }
    }
    Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational;

    #[test]
    fn family_values() {
        assert_eq!(Family::Identity.value(13), rational(13));
        assert_eq!(Family::PrimeIndicator(5).value(10), rational(0));
        assert_eq!(Family::PrimeIndicator(5).value(21), rational(1));
        assert_eq!(Family::ConstantOne.value(1000), rational(1));
    }

    #[test]
    fn verification_examples() {
        let plus = BinaryQuadraticForm::plus();
        let minus = BinaryQuadraticForm::minus();
        assert_eq!(verify_family(&Family::Identity, &plus, 100), Verdict::Pass);
        assert_eq!(verify_family(&Family::ConstantOne, &plus, 2), Verdict::Fail { x: 1, y: 1 });
        assert_eq!(verify_family(&Family::PrimeIndicator(5), &minus, 100), Verdict::Pass);
        // (2, 3) also fails, but (1, 3) comes first lexicographically
        assert_eq!(verify_family(&Family::PrimeIndicator(7), &minus, 3), Verdict::Fail { x: 1, y: 3 });
        assert_eq!(verify_family(&Family::PrimeIndicator(3), &minus, 2), Verdict::Fail { x: 1, y: 2 });
    }

    #[test]
    fn multiplicativity_examples() {
        assert_eq!(multiplicativity_check(|n| Family::PrimeIndicator(2).value(n), 50), Verdict::Pass);
        assert_eq!(multiplicativity_check(|n| Family::Identity.value(n), 50), Verdict::Pass);
        assert_eq!(
            multiplicativity_check(|n| rational(n as i64 + 1), 3),
            Verdict::Fail { x: 2, y: 3 }
        );
    }

    #[test]
    fn parses_family_strings() {
        assert_eq!("identity".parse::<Family>(), Ok(Family::Identity));
        assert_eq!("const1".parse::<Family>(), Ok(Family::ConstantOne));
        assert_eq!("fp:11".parse::<Family>(), Ok(Family::PrimeIndicator(11)));
        assert_eq!("fp:9".parse::<Family>(), Err(Error::NotPrime(9)));
        assert!(matches!("fp:x".parse::<Family>(), Err(Error::MalformedFamily(_))));
        assert!(matches!("zero".parse::<Family>(), Err(Error::MalformedFamily(_))));
        assert_eq!(Family::PrimeIndicator(5).to_string(), "fp:5");
    }
}
