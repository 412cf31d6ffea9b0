//! Partial multiplicative functions on `{1, …, N}`.
//!
//! Only prime-power values are stored; every other value is the product of
//! its prime-power parts, so multiplicativity holds by construction.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};

/// The prime power `prime^exp`; as a polynomial variable it stands for `f(prime^exp)`.
///
/// Ordered by `(prime, exp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: u64,
    pub exp: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exp)
    }

    /// Decomposes `n` if it is `p^k` with `k ≥ 1`.
    pub fn from_value(n: u64) -> Option<PrimePower> {
        match factorize(n).as_slice() {
            [(p, k)] => Some(PrimePower { prime: *p, exp: *k }),
            _ => None,
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({})", self.value())
    }
}

/// Canonical factorization, primes ascending; `1 → []`.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize expects a positive integer");
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Smallest-prime-factor sieve on `[0, limit]`.
#[derive(Debug)]
pub struct Sieve {
    spf: Vec<u64>,
}

impl Sieve {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut spf = vec![0u64; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u64;
                    }
                    j += i;
                }
            }
        }
        Sieve { spf }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] == n
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit()).filter(|&n| self.is_prime(n))
    }

    /// Prime-power parts of `n ≤ limit`, ascending by prime.
    pub fn prime_powers_of(&self, mut n: u64) -> Vec<PrimePower> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize];
            let mut exp = 0;
            while n.is_multiple_of(p) {
                n /= p;
                exp += 1;
            }
            out.push(PrimePower { prime: p, exp });
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueState {
    Determined(Rational),
    Variable(PrimePower),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignOutcome {
    Ok,
    Contradiction,
}

#[derive(Debug, Clone)]
pub struct PartialMultiplicativeFunction {
    limit: u64,
    sieve: Arc<Sieve>,
    entries: BTreeMap<PrimePower, ValueState>,
}

impl PartialMultiplicativeFunction {
    /// Every prime power `≤ limit` starts out as a free variable.
    pub fn new(limit: u64) -> Self {
        Self::with_sieve(Arc::new(Sieve::new(limit)))
    }

    pub fn with_sieve(sieve: Arc<Sieve>) -> Self {
        let limit = sieve.limit();
        let mut entries = BTreeMap::new();
        for p in sieve.primes() {
            let mut exp = 1;
            let mut q = p;
            loop {
                let pp = PrimePower { prime: p, exp };
                entries.insert(pp, ValueState::Variable(pp));
                match q.checked_mul(p) {
                    Some(next) if next <= limit => {
                        q = next;
                        exp += 1;
                    }
                    _ => break,
                }
            }
        }
        PartialMultiplicativeFunction { limit, sieve, entries }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn sieve(&self) -> &Arc<Sieve> {
        &self.sieve
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PrimePower, &ValueState)> {
        self.entries.iter()
    }

    pub fn state(&self, pp: &PrimePower) -> Option<&ValueState> {
        self.entries.get(pp)
    }

    pub fn determined(&self, pp: &PrimePower) -> Option<&Rational> {
        match self.entries.get(pp) {
            Some(ValueState::Determined(v)) => Some(v),
            _ => None,
        }
    }

    pub fn prime_powers_of(&self, n: u64) -> Result<Vec<PrimePower>> {
        self.check_range(n)?;
        Ok(self.sieve.prime_powers_of(n))
    }

    fn check_range(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::NonPositive(n.to_string()));
        }
        if n > self.limit {
            return Err(Error::OutOfRange { arg: n, limit: self.limit });
        }
        Ok(())
    }

    /// `f(n)` as a monomial: determined factors fold into the coefficient.
    pub fn value_at(&self, n: u64) -> Result<Polynomial<PrimePower>> {
        let mut coeff = Rational::one();
        let mut value = Polynomial::one();
        for pp in self.prime_powers_of(n)? {
            match &self.entries[&pp] {
                ValueState::Determined(v) => coeff *= v,
                ValueState::Variable(var) => value = &value * &Polynomial::var(*var),
            }
        }
        Ok(value.scale(&coeff))
    }

    /// Sets `f(prime_power) := value`.
    pub fn assign(&mut self, prime_power: u64, value: Rational) -> Result<AssignOutcome> {
        self.check_range(prime_power)?;
        let pp = PrimePower::from_value(prime_power).ok_or(Error::NotPrimePower(prime_power))?;
        Ok(self.assign_var(pp, value))
    }

    pub fn assign_var(&mut self, pp: PrimePower, value: Rational) -> AssignOutcome {
        let entry = self
            .entries
            .get_mut(&pp)
            .expect("prime power within the function's limit");
        match entry {
            ValueState::Determined(old) if *old != value => AssignOutcome::Contradiction,
            ValueState::Determined(_) => AssignOutcome::Ok,
            ValueState::Variable(_) => {
                *entry = ValueState::Determined(value);
                AssignOutcome::Ok
            }
        }
    }
}
