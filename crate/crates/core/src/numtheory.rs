//! Elementary arithmetic for the Möbius-inversion formulas.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("argument must be a positive integer")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A positive integer with its prime factorization, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// Trial division; inputs here are filtration degrees, so this is plenty.
    pub fn new(n: u64) -> Result<Self, NumError> {
        if n == 0 {
            return Err(NumError::Zero);
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut q = 2;
        while q * q <= rest {
            if rest.is_multiple_of(q) {
                let mut k = 0;
                while rest.is_multiple_of(q) {
                    rest /= q;
                    k += 1;
                }
                factors.push((q, k));
            }
            q += 1;
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self { n, factors })
    }

    pub fn value(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn moebius(&self) -> i32 {
        if self.factors.iter().any(|&(_, k)| k > 1) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && FactoredInteger::new(n).is_ok_and(|f| f.factors == [(n, 1)])
}

/// Returns `p` back if it is prime.
pub fn require_prime(p: u64) -> Result<u64, NumError> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(NumError::NotPrime(p))
    }
}

pub fn moebius(n: u64) -> Result<i32, NumError> {
    Ok(FactoredInteger::new(n)?.moebius())
}

/// Splits `n = m * p^v` with `m` coprime to `p`; returns `(v, m)`.
pub fn p_valuation(n: u64, p: u64) -> (u32, u64) {
    assert!(n >= 1 && p >= 2);
    let mut m = n;
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    (v, m)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut q = 1;
    while q * q <= n {
        if n.is_multiple_of(q) {
            small.push(q);
            if q * q != n {
                large.push(n / q);
            }
        }
        q += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
