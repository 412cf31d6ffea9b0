//! Exact rational arithmetic and polynomial algebra: canonical sparse
//! polynomials, univariate gcd and rational roots, and resultants.

mod factor;
mod poly;
mod resultant;
mod univariate;

use std::fmt;

pub use factor::{divisors, factorize_big, is_probable_prime};
pub use poly::{Monomial, Polynomial};
pub use resultant::resultant_eliminate;
pub use univariate::{rational_roots, univariate_gcd, UniPoly};

use crate::error::Result;

pub type Rational = num_rational::BigRational;

/// A named indeterminate for standalone algebra (`t`, `u`, `k`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub &'static str);

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `p op q`, deferred if any variable's degree would exceed `degree_cap`.
pub fn poly_arith<V: Ord + Clone>(
    p: &Polynomial<V>,
    q: &Polynomial<V>,
    op: ArithOp,
    degree_cap: u32,
) -> Result<Polynomial<V>> {
    let out = match op {
        ArithOp::Add => p + q,
        ArithOp::Sub => p - q,
        ArithOp::Mul => p * q,
    };
    if out.max_var_degree() > degree_cap {
        return Err(crate::error::Error::Deferred(degree_cap));
    }
    Ok(out)
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
