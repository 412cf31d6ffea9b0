use super::Polynomial;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination over the polynomial ring.
fn bareiss_det<V: Ord + Clone>(mut m: Vec<Vec<Polynomial<V>>>) -> Polynomial<V> {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss quotients are exact");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of `p` and `q` with respect to `var`, from the Sylvester matrix.
///
/// Vanishes exactly when `p` and `q` share a factor of positive degree in `var`.
pub fn resultant_eliminate<V: Ord + Clone>(
    p: &Polynomial<V>,
    q: &Polynomial<V>,
    var: &V,
) -> Result<Polynomial<V>> {
    let (dp, dq) = (p.degree_in(var) as usize, q.degree_in(var) as usize);
    if dp == 0 || dq == 0 {
        return Err(Error::MissingVariable);
    }
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for i in 0..dq {
        let mut row = vec![Polynomial::zero(); size];
        for (j, c) in pc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..dp {
        let mut row = vec![Polynomial::zero(); size];
        for (j, c) in qc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(bareiss_det(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Rational, Sym};
    use num_traits::Zero;
    use num_bigint::BigInt;

    fn t() -> Polynomial<Sym> {
        Polynomial::var(Sym("t"))
    }
    fn u() -> Polynomial<Sym> {
        Polynomial::var(Sym("u"))
    }
    fn c(n: i64) -> Polynomial<Sym> {
        Polynomial::from_int(n)
    }

    #[test]
    fn linear_factor_evaluates() {
        let res = resultant_eliminate(&(&t() - &u()), &(&t().pow(2) + &c(1)), &Sym("t")).unwrap();
        assert_eq!(res, &u().pow(2) + &c(1));
    }

    #[test]
    fn shared_root_gives_zero() {
        let p = &t() - &c(1);
        assert!(resultant_eliminate(&p, &p, &Sym("t")).unwrap().is_zero());
    }

    #[test]
    fn eliminates_f5_from_the_39_91_pair() {
        // t = f(5), u = f(2); f(7) = 1 + u + u², f(13) = 13
        let p = &(&(&t().pow(2) + &(&u() * &t())) + &u().pow(2)) - &c(39);
        let f7 = &(&c(1) + &u()) + &u().pow(2);
        let q = &(&(&t().pow(2) + &(&(&c(3) * &u()) * &t())) + &(&c(9) * &u().pow(2))) - &(&c(13) * &f7);
        let res = resultant_eliminate(&p, &q, &Sym("t")).unwrap();
        assert_eq!(res.variables().into_iter().collect::<Vec<_>>(), vec![Sym("u")]);
        let at2 = res.evaluate(|_| Some(Rational::from_integer(BigInt::from(2)))).unwrap();
        assert!(at2.is_zero());
        let val = |v: &Sym| Some(Rational::from_integer(BigInt::from(if v.0 == "u" { 2 } else { 5 })));
        assert!(p.evaluate(val).unwrap().is_zero());
        assert!(q.evaluate(val).unwrap().is_zero());
        assert!(crate::exactalg::rational_roots(&res).unwrap().contains(&Rational::from_integer(BigInt::from(2))));
    }

    #[test]
    fn requires_positive_degree() {
        assert_eq!(resultant_eliminate(&u(), &t(), &Sym("t")), Err(Error::MissingVariable));
    }
}
