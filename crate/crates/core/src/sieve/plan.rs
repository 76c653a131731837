use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DensityFunction, SieveError};
use crate::arith::{primes_below, Rational};

/// Default cap on the number of support elements.
pub const DEFAULT_SUPPORT_LIMIT: usize = 1_000_000;

/// Sifting limit `z`, level `D`, the sifting primes `p < z` and the weight
/// support `{d squarefree : d | P(z), d^2 < D}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SievePlan {
    z: u64,
    level: Rational,
    primes: Vec<u64>,
    support: Vec<u64>,
}

impl SievePlan {
    pub fn new(z: u64, level: Rational) -> Result<Self, SieveError> {
        Self::with_limit(z, level, DEFAULT_SUPPORT_LIMIT)
    }

    pub fn with_limit(z: u64, level: Rational, limit: usize) -> Result<Self, SieveError> {
        if z < 2 {
            return Err(SieveError::InvalidSiftingLimit(z));
        }
        Self::from_primes(z, level, primes_below(z), limit)
    }

    fn from_primes(
        z: u64,
        level: Rational,
        primes: Vec<u64>,
        limit: usize,
    ) -> Result<Self, SieveError> {
        if level <= Rational::one() {
            return Err(SieveError::EmptySupport);
        }
        let support = enumerate_support(&primes, &level, limit)?;
        Ok(SievePlan {
            z,
            level,
            primes,
            support,
        })
    }

    /// Same plan with every prime of zero density removed from `P(z)`.
    pub fn restricted_to(&self, g: &DensityFunction) -> Result<Self, SieveError> {
        let mut kept = Vec::with_capacity(self.primes.len());
        for &p in &self.primes {
            if !g.at_prime(p)?.is_zero() {
                kept.push(p);
            }
        }
        if kept.len() == self.primes.len() {
            return Ok(self.clone());
        }
        Self::from_primes(self.z, self.level.clone(), kept, usize::MAX)
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Sorted ascending; always starts with 1.
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    /// `d^2 < D`, compared exactly.
    pub fn below_root_level(&self, d: u64) -> bool {
        below_root(d, &self.level)
    }
}

fn below_root(d: u64, level: &Rational) -> bool {
    let d = BigInt::from(d);
    &d * &d * level.denom() < *level.numer()
}

fn enumerate_support(
    primes: &[u64],
    level: &Rational,
    limit: usize,
) -> Result<Vec<u64>, SieveError> {
    let mut out = vec![1u64];
    // depth-first over increasing prime indices
    let mut stack: Vec<(u64, usize)> = vec![(1, 0)];
    while let Some((d, start)) = stack.pop() {
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let Some(next) = d.checked_mul(p) else { break };
            if !below_root(next, level) {
                break;
            }
            out.push(next);
            if out.len() > limit {
                return Err(SieveError::SupportTooLarge { limit });
            }
            stack.push((next, i + 1));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Squarefree `m < D` composed of the plan primes (the range of the
/// remainder sum).
pub(crate) fn squarefree_below_level(
    primes: &[u64],
    level: &Rational,
    limit: usize,
) -> Result<Vec<u64>, SieveError> {
    let below = |m: u64| BigInt::from(m) * level.denom() < *level.numer();
    let mut out = vec![1u64];
    let mut stack: Vec<(u64, usize)> = vec![(1, 0)];
    while let Some((d, start)) = stack.pop() {
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let Some(next) = d.checked_mul(p) else { break };
            if !below(next) {
                break;
            }
            out.push(next);
            if out.len() > limit {
                return Err(SieveError::SupportTooLarge { limit });
            }
            stack.push((next, i + 1));
        }
    }
    out.sort_unstable();
    Ok(out)
}
