use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::{squarefree_factors, Rational};
use crate::sieve::{DensityFunction, RemainderModel, SieveError, SiftedInstance};

/// Forbidden residue classes `Omega_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForbiddenResidues {
    /// The same integer residues, reduced mod every prime.
    Uniform(Vec<i64>),
    /// Explicit classes; primes not listed have `Omega_p` empty.
    PerPrime(BTreeMap<u64, Vec<u64>>),
}

/// `a_n = 1` for `1 <= n <= N`, sifted by `n mod p in Omega_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueAvoidanceInstance {
    n: u64,
    forbidden: ForbiddenResidues,
    /// Upper limit on residue classes / enumerated integers.
    budget: u64,
}

impl ResidueAvoidanceInstance {
    pub fn new(n: u64, forbidden: ForbiddenResidues) -> Self {
        ResidueAvoidanceInstance {
            n,
            forbidden,
            budget: 100_000_000,
        }
    }

    /// `Omega_p = {0}` for every prime: the sifted set is the integers
    /// coprime to `P(z)`.
    pub fn multiples(n: u64) -> Self {
        Self::new(n, ForbiddenResidues::Uniform(vec![0]))
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Sorted, deduplicated `Omega_p`.
    pub fn omega(&self, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = match &self.forbidden {
            ForbiddenResidues::Uniform(rs) => {
                rs.iter().map(|&r| r.rem_euclid(p as i64) as u64).collect()
            }
            ForbiddenResidues::PerPrime(t) => t
                .get(&p)
                .map(|v| v.iter().map(|r| r % p).collect())
                .unwrap_or_default(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Residues `r mod d` with `r mod p in Omega_p` for every `p | d`.
    fn admissible_classes(&self, d: u64) -> Result<Vec<u64>, SieveError> {
        let primes = squarefree_factors(d).ok_or(SieveError::NotSquarefree(d))?;
        let mut classes: Vec<u64> = vec![0];
        let mut modulus: u64 = 1;
        for p in primes {
            let om = self.omega(p);
            let size = (classes.len() as u64).saturating_mul(om.len() as u64);
            if size > self.budget {
                return Err(SieveError::BudgetExceeded {
                    needed: size,
                    budget: self.budget,
                });
            }
            // CRT: x = r (mod modulus), x = s (mod p)
            let inv = mod_inverse(modulus % p, p);
            let mut next = Vec::with_capacity(size as usize);
            for &r in &classes {
                for &s in &om {
                    let t = ((s + p - r % p) % p) as u128 * inv as u128 % p as u128;
                    next.push(r + modulus * t as u64);
                }
            }
            classes = next;
            modulus *= p;
        }
        Ok(classes)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

/// `#{1 <= n <= big_n : n = r (mod d)}` for `0 <= r < d`.
fn count_in_class(big_n: u64, r: u64, d: u64) -> u64 {
    if r == 0 {
        big_n / d
    } else if r > big_n {
        0
    } else {
        (big_n - r) / d + 1
    }
}

impl SiftedInstance for ResidueAvoidanceInstance {
    fn size(&self) -> Rational {
        Rational::from_integer(self.n.into())
    }

    fn count_divisible(&self, d: u64) -> Result<BigInt, SieveError> {
        let classes = self.admissible_classes(d)?;
        Ok(classes
            .into_iter()
            .map(|r| BigInt::from(count_in_class(self.n, r, d)))
            .sum())
    }

    fn density(&self) -> DensityFunction {
        match &self.forbidden {
            ForbiddenResidues::Uniform(rs) if rs.len() == 1 => DensityFunction::ScaledReciprocal(1),
            ForbiddenResidues::Uniform(_) => {
                // |Omega_p| shrinks for small p when residues collide
                DensityFunction::Table(
                    crate::arith::primes_below(self.density_table_bound())
                        .into_iter()
                        .map(|p| (p, Rational::new(self.omega(p).len().into(), p.into())))
                        .collect(),
                )
            }
            ForbiddenResidues::PerPrime(t) => DensityFunction::Table(
                crate::arith::primes_below(self.density_table_bound())
                    .into_iter()
                    .map(|p| {
                        let k = t.get(&p).map_or(0, |_| self.omega(p).len());
                        (p, Rational::new(k.into(), p.into()))
                    })
                    .collect(),
            ),
        }
    }

    /// `A(d) = N g(d) + r_d` with `|r_d| <= prod_{p | d} |Omega_p| = d g(d)`.
    fn model(&self) -> Option<RemainderModel> {
        Some(RemainderModel {
            main_coefficient: Rational::from_integer(1.into()),
            density: self.density(),
            kappa: Rational::from_integer(1.into()),
            theta: Rational::from_integer(0.into()),
            constant: Rational::from_integer(1.into()),
        })
    }

    fn sifted_count(&self, primes: &[u64]) -> Result<BigInt, SieveError> {
        let work = self.n.saturating_mul(primes.len().max(1) as u64);
        if work > self.budget.saturating_mul(100) {
            return Err(SieveError::BudgetExceeded {
                needed: work,
                budget: self.budget * 100,
            });
        }
        let omegas: Vec<(u64, Vec<u64>)> = primes.iter().map(|&p| (p, self.omega(p))).collect();
        let count = (1..=self.n)
            .filter(|&n| {
                omegas
                    .iter()
                    .all(|(p, om)| om.binary_search(&(n % p)).is_err())
            })
            .count();
        Ok(BigInt::from(count))
    }
}

impl ResidueAvoidanceInstance {
    // Densities are tabulated for primes below this bound; sieving beyond it
    // reports a missing density.
    fn density_table_bound(&self) -> u64 {
        self.n.clamp(1 << 16, 1 << 20) + 1
    }
}
