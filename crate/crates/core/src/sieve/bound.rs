use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::plan::squarefree_below_level;
use super::{big_h, selberg_weights, tau3, DensityFunction, SieveError, SievePlan, SieveWeights};
use crate::arith::{primes_below, rat_to_f64, Rational};

/// Main term and remainder model `A(d) = c g(d) X + r_d` with
/// `|r_d| <= C d^kappa X^theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderModel {
    pub main_coefficient: Rational,
    pub density: DensityFunction,
    pub kappa: Rational,
    pub theta: Rational,
    pub constant: Rational,
}

/// A nonnegative sequence `a_n` whose divisibility sums
/// `A(d) = sum_{d | n} a_n` can be computed exactly.
pub trait SiftedInstance: Sync {
    /// The size parameter `X`.
    fn size(&self) -> Rational;

    /// `A(d)` for squarefree `d` composed of sifting primes.
    fn count_divisible(&self, d: u64) -> Result<BigInt, SieveError>;

    /// Density used to build the weights.
    fn density(&self) -> DensityFunction;

    fn model(&self) -> Option<RemainderModel> {
        None
    }

    /// `sum_{(n, P) = 1} a_n` over the given primes, computed independently
    /// of `count_divisible` (enumeration).
    fn sifted_count(&self, primes: &[u64]) -> Result<BigInt, SieveError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// Full quadratic form against exact `A(lcm(d, e))`.
    Exact,
    /// `c X / H + C sum tau_3(m) m^kappa g(m) X^theta`.
    Model,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundOptions {
    /// Maximum number of `(d, e)` pairs in exact mode.
    pub pair_budget: u64,
    /// Maximum number of remainder-sum terms in model mode.
    pub term_budget: usize,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            pair_budget: 1 << 34,
            term_budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightDiagnostic {
    pub d: u64,
    pub lambda: Rational,
    pub h: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SieveReport {
    pub mode: BoundMode,
    /// `H`, exact.
    pub h_total: Rational,
    pub main_bound: f64,
    pub remainder_bound: f64,
    pub total_bound: f64,
    /// Exact mode: the quadratic form value. Model mode: `c X / H`.
    pub exact_main: Rational,
    /// Model mode only: the power of `D` the remainder sum is modelled by
    /// (`kappa + 1`, up to `D^epsilon`).
    pub remainder_level_exponent: Option<Rational>,
    pub diagnostics: Vec<WeightDiagnostic>,
}

/// Selberg upper bound for `sum_{(n, P(z)) = 1} a_n`.
pub fn sieve_upper_bound(
    instance: &dyn SiftedInstance,
    plan: &SievePlan,
    mode: BoundMode,
    opts: BoundOptions,
) -> Result<SieveReport, SieveError> {
    match mode {
        BoundMode::Exact => exact_bound(instance, plan, opts),
        BoundMode::Model => {
            let model = instance.model().ok_or(SieveError::MissingModel)?;
            model_bound(&model, &instance.size(), plan, opts)
        }
    }
}

fn diagnostics(g: &DensityFunction, w: &SieveWeights) -> Result<Vec<WeightDiagnostic>, SieveError> {
    w.entries()
        .iter()
        .map(|(d, l)| {
            Ok(WeightDiagnostic {
                d: *d,
                lambda: l.clone(),
                h: super::h_of(g, *d)?,
            })
        })
        .collect()
}

fn exact_bound(
    instance: &dyn SiftedInstance,
    plan: &SievePlan,
    opts: BoundOptions,
) -> Result<SieveReport, SieveError> {
    let g = instance.density();
    let weights = selberg_weights(&g, plan)?;
    let h_total = big_h(&g, plan)?;
    let entries = weights.entries();
    let n = entries.len() as u64;
    let pairs = n.saturating_mul(n);
    if pairs > opts.pair_budget {
        return Err(SieveError::BudgetExceeded {
            needed: pairs,
            budget: opts.pair_budget,
        });
    }

    let lcms: BTreeSet<u64> = entries
        .par_iter()
        .flat_map_iter(|(d, _)| entries.iter().map(move |(e, _)| d.lcm(e)))
        .collect();
    let lcms: Vec<u64> = lcms.into_iter().collect();
    let counts: Vec<BigInt> = lcms
        .par_iter()
        .map(|&m| instance.count_divisible(m))
        .collect::<Result<_, _>>()?;
    let table: HashMap<u64, BigInt> = lcms.into_iter().zip(counts).collect();

    let rows: Vec<Rational> = entries
        .par_iter()
        .map(|(d, ld)| {
            let mut row = Rational::zero();
            for (e, le) in entries {
                let a = &table[&d.lcm(e)];
                if !a.is_zero() {
                    row += le * Rational::from_integer(a.clone());
                }
            }
            ld * row
        })
        .collect();
    let value: Rational = rows.into_iter().sum();
    debug_assert!(!value.is_negative());

    let main = rat_to_f64(&value);
    Ok(SieveReport {
        mode: BoundMode::Exact,
        h_total,
        main_bound: main,
        remainder_bound: 0.0,
        total_bound: main,
        exact_main: value,
        remainder_level_exponent: None,
        diagnostics: diagnostics(&g, &weights)?,
    })
}

/// Model-mode bound; never touches an instance.
pub fn model_bound(
    model: &RemainderModel,
    size: &Rational,
    plan: &SievePlan,
    opts: BoundOptions,
) -> Result<SieveReport, SieveError> {
    let g = &model.density;
    let h_total = big_h(g, plan)?;
    let exact_main = &model.main_coefficient * size / &h_total;

    let restricted = plan.restricted_to(g)?;
    let terms = squarefree_below_level(restricted.primes(), plan.level(), opts.term_budget)
        .map_err(|_| SieveError::BudgetExceeded {
            needed: opts.term_budget as u64 + 1,
            budget: opts.term_budget as u64,
        })?;
    let kappa = rat_to_f64(&model.kappa);
    let mut sum = 0.0f64;
    for m in terms {
        let t = tau3(m)? as f64;
        sum += t * (m as f64).powf(kappa) * rat_to_f64(&g.at(m)?);
    }
    let x = rat_to_f64(size);
    let remainder = rat_to_f64(&model.constant) * sum * x.powf(rat_to_f64(&model.theta));
    let main = rat_to_f64(&exact_main);

    let weights = selberg_weights(g, plan)?;
    Ok(SieveReport {
        mode: BoundMode::Model,
        h_total,
        main_bound: main,
        remainder_bound: remainder,
        total_bound: main + remainder,
        exact_main,
        remainder_level_exponent: Some(&model.kappa + Rational::one()),
        diagnostics: diagnostics(g, &weights)?,
    })
}

/// Enumeration oracle for the sifted sum `sum_{(n, P(z)) = 1} a_n`.
pub fn sifted_count_exact(instance: &dyn SiftedInstance, z: u64) -> Result<BigInt, SieveError> {
    if z < 2 {
        return Err(SieveError::InvalidSiftingLimit(z));
    }
    instance.sifted_count(&primes_below(z))
}
