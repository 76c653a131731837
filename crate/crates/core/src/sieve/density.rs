use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::SieveError;
use crate::arith::{squarefree_factors, Rational};

/// Multiplicative local density `p -> g(p)`, extended to squarefree `d` by
/// `g(d) = prod_{p | d} g(p)`.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityFunction {
    /// `g(p) = c` for every prime.
    Constant(Rational),
    /// `g(p) = k / p` (e.g. `k` forbidden residues per prime); `k = 1` is
    /// the classical `1/p`.
    ScaledReciprocal(u64),
    /// Explicit values; primes missing from the table are an error.
    Table(BTreeMap<u64, Rational>),
}

impl DensityFunction {
    pub fn reciprocal() -> Self {
        DensityFunction::ScaledReciprocal(1)
    }

    pub fn from_fn(primes: &[u64], f: impl Fn(u64) -> Rational) -> Self {
        DensityFunction::Table(primes.iter().map(|&p| (p, f(p))).collect())
    }

    fn raw(&self, p: u64) -> Result<Rational, SieveError> {
        match self {
            DensityFunction::Constant(c) => Ok(c.clone()),
            DensityFunction::ScaledReciprocal(k) => Ok(Rational::new((*k).into(), p.into())),
            DensityFunction::Table(t) => t.get(&p).cloned().ok_or(SieveError::MissingDensity(p)),
        }
    }

    /// `g(p)`, checked to lie in `[0, 1)`.
    pub fn at_prime(&self, p: u64) -> Result<Rational, SieveError> {
        let g = self.raw(p)?;
        if g >= Rational::one() {
            return Err(SieveError::SingularDensity(p));
        }
        if g < Rational::zero() {
            return Err(SieveError::DensityOutOfRange { p, value: g });
        }
        Ok(g)
    }

    /// `g(d)` for squarefree `d`.
    pub fn at(&self, d: u64) -> Result<Rational, SieveError> {
        let primes = squarefree_factors(d).ok_or(SieveError::NotSquarefree(d))?;
        let mut acc = Rational::one();
        for p in primes {
            acc *= self.at_prime(p)?;
        }
        Ok(acc)
    }

    /// `h(p) = g(p) / (1 - g(p))`.
    pub fn h_at_prime(&self, p: u64) -> Result<Rational, SieveError> {
        let g = self.at_prime(p)?;
        let denom = Rational::one() - &g;
        Ok(g / denom)
    }
}

/// `h(d) = prod_{p | d} g(p) / (1 - g(p))`; `h(1) = 1`.
pub fn h_of(g: &DensityFunction, d: u64) -> Result<Rational, SieveError> {
    let primes = squarefree_factors(d).ok_or(SieveError::NotSquarefree(d))?;
    let mut acc = Rational::one();
    for p in primes {
        acc *= g.h_at_prime(p)?;
    }
    Ok(acc)
}

/// `tau_3(d) = 3^omega(d)` for squarefree `d`.
pub fn tau3(d: u64) -> Result<u64, SieveError> {
    let primes = squarefree_factors(d).ok_or(SieveError::NotSquarefree(d))?;
    Ok(3u64.pow(primes.len() as u32))
}
