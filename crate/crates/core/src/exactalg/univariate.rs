//! Dense univariate arithmetic over the rationals: division, gcd, rational roots.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::factor::divisors;
use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Coefficients low to high, trailing zeros trimmed (zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(BigInt::from(*c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(lc) => {
                let inv = lc.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead().unwrap().clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out `(t − root)` once; the caller guarantees `root` is a root.
    pub fn deflate(&self, root: &Rational) -> Self {
        let linear = UniPoly(vec![-root.clone(), Rational::one()]);
        let (q, r) = self.div_rem(&linear);
        debug_assert!(r.is_zero());
        q
    }

    /// Integer coefficients of a primitive scalar multiple.
    fn primitive_ints(&self) -> Vec<BigInt> {
        use num_integer::Integer;
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Distinct rational roots in ascending order, by testing every p/q with p | a₀ and q | aₙ.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let lowest = self.0.iter().position(|c| !c.is_zero()).unwrap();
        if lowest > 0 {
            roots.push(Rational::zero());
        }
        let reduced = UniPoly(self.0[lowest..].to_vec());
        if reduced.degree().unwrap() > 0 {
            let ints = reduced.primitive_ints();
            let a0 = ints[0].magnitude().clone();
            let an = ints.last().unwrap().magnitude().clone();
            let dens = divisors(&an);
            let nums = divisors(&a0);
            let mut found = Vec::new();
            for q in &dens {
                for p in &nums {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let num = BigInt::from_biguint(sign, p.clone());
                        let den = BigInt::from_biguint(Sign::Plus, q.clone());
                        if integer_root_check(&ints, &num, &den) {
                            found.push(Rational::new(num, den));
                        }
                    }
                }
            }
            roots.extend(found);
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// `den^n · P(num/den) == 0` evaluated in integers.
fn integer_root_check(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> bool {
    use num_integer::Integer;
    if !num.gcd(den).is_one() {
        return false;
    }
    let n = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    // Horner on homogenized form: sum a_i num^i den^(n-i)
    let mut num_pows = Vec::with_capacity(n + 1);
    let mut np = BigInt::one();
    for _ in 0..=n {
        num_pows.push(np.clone());
        np *= num;
    }
    for i in (0..=n).rev() {
        acc += &coeffs[i] * &num_pows[i] * &den_pow;
        den_pow *= den;
    }
    acc.is_zero() && !den.is_negative()
}

impl<V: Ord + Clone> Polynomial<V> {
    /// Dense coefficients with respect to `v`; fails if another variable occurs.
    pub fn to_unipoly(&self, v: &V) -> Result<UniPoly> {
        let coeffs = self
            .coefficients_in(v)
            .into_iter()
            .map(|c| c.constant_value().ok_or(Error::NotUnivariate))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_unipoly(v: &V, p: &UniPoly) -> Self {
        let mut acc = Polynomial::zero();
        for (i, c) in p.0.iter().enumerate() {
            acc = &acc
                + &Polynomial::term(super::poly::Monomial::var(v.clone(), i as u32), c.clone());
        }
        acc
    }
}

/// The single variable of `p` (if any); error if `p` has several.
fn sole_variable<V: Ord + Clone>(p: &Polynomial<V>) -> Result<Option<V>> {
    let vars = p.variables();
    match vars.len() {
        0 => Ok(None),
        1 => Ok(vars.into_iter().next()),
        _ => Err(Error::NotUnivariate),
    }
}

/// Monic gcd of two univariate polynomials in the same variable.
pub fn univariate_gcd<V: Ord + Clone>(p: &Polynomial<V>, q: &Polynomial<V>) -> Result<Polynomial<V>> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let v = match (sole_variable(p)?, sole_variable(q)?) {
        (Some(a), Some(b)) if a != b => return Err(Error::NotUnivariate),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            // gcd of nonzero constants is 1; gcd(c, 0) = 1 as well
            return Ok(Polynomial::one());
        }
    };
    let g = p.to_unipoly(&v)?.gcd(&q.to_unipoly(&v)?);
    Ok(Polynomial::from_unipoly(&v, &g))
}

/// Distinct rational roots of a nonzero univariate polynomial, ascending.
pub fn rational_roots<V: Ord + Clone>(p: &Polynomial<V>) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match sole_variable(p)? {
        None => Ok(Vec::new()),
        Some(v) => Ok(p.to_unipoly(&v)?.rational_roots()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Sym;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn t() -> Polynomial<Sym> {
        Polynomial::var(Sym("t"))
    }

    fn upoly(coeffs: &[i64]) -> Polynomial<Sym> {
        Polynomial::from_unipoly(&Sym("t"), &UniPoly::from_ints(coeffs))
    }

    #[test]
    fn gcd_examples() {
        // t² − t − 38 and t² − 3t − 4 share no root
        let g = univariate_gcd(&upoly(&[-38, -1, 1]), &upoly(&[-4, -3, 1])).unwrap();
        assert_eq!(g, Polynomial::one());
        // the f(84)/f(129) pair for f(8)
        let g = univariate_gcd(&upoly(&[-80, 2, 1]), &upoly(&[-104, 5, 1])).unwrap();
        assert_eq!(g, &t() - &Polynomial::from_int(8));
        let p = upoly(&[6, -4, 2]);
        assert_eq!(univariate_gcd(&p, &p).unwrap(), p.monic());
    }

    #[test]
    fn gcd_rejects_mixed_variables() {
        let u = Polynomial::var(Sym("u"));
        assert_eq!(univariate_gcd(&t(), &u), Err(Error::NotUnivariate));
        assert_eq!(univariate_gcd(&Polynomial::<Sym>::zero(), &Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn root_examples() {
        assert_eq!(rational_roots(&upoly(&[-2, -3, -2, 0, 1])).unwrap(), vec![r(-1), r(2)]);
        assert_eq!(rational_roots(&upoly(&[0, -2, 1])).unwrap(), vec![r(0), r(2)]);
        assert!(rational_roots(&upoly(&[1, 0, 1])).unwrap().is_empty());
        // 6t² − 5t + 1 = (2t − 1)(3t − 1)
        assert_eq!(
            rational_roots(&upoly(&[1, -5, 6])).unwrap(),
            vec![Rational::new(1.into(), 3.into()), Rational::new(1.into(), 2.into())]
        );
        // repeated roots are listed once
        assert_eq!(rational_roots(&upoly(&[1, -2, 1])).unwrap(), vec![r(1)]);
        assert_eq!(rational_roots(&Polynomial::<Sym>::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn deflation_leaves_cofactor() {
        let p = UniPoly::from_ints(&[-2, -3, -2, 0, 1]);
        let q = p.deflate(&r(2)).deflate(&r(-1));
        assert_eq!(q, UniPoly::from_ints(&[1, 1, 1]));
    }
}
