use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::MaximalError;
use crate::arith::{mobius_table, Rational};

/// Uniform tail model `W(d, X) <= C X / d^(2 - ε)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailModel {
    pub constant: Rational,
    pub eps: Rational,
}

/// A family of objects with exact counts `W(d, X)` of those that are
/// non-maximal at every prime dividing a squarefree `d`.
pub trait IEFamily: Sync {
    /// `X`.
    fn size(&self) -> Rational;
    /// `W(d, X)`.
    fn count(&self, d: u64) -> BigInt;
    /// Local density `c_p`.
    fn local_density(&self, p: u64) -> Rational;
    fn tail_model(&self) -> TailModel;
}

/// Integers `n <= X`; `W(d, X) = #{n <= X : d^2 | n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarefreeFamily {
    x: u64,
}

pub fn squarefree_family(x: u64) -> SquarefreeFamily {
    SquarefreeFamily { x }
}

impl IEFamily for SquarefreeFamily {
    fn size(&self) -> Rational {
        Rational::from_integer(self.x.into())
    }

    fn count(&self, d: u64) -> BigInt {
        match d.checked_mul(d) {
            Some(sq) => BigInt::from(self.x / sq),
            None => BigInt::zero(),
        }
    }

    fn local_density(&self, p: u64) -> Rational {
        Rational::new(1.into(), BigInt::from(p) * BigInt::from(p))
    }

    fn tail_model(&self) -> TailModel {
        TailModel {
            constant: Rational::from_integer(1.into()),
            eps: Rational::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedEstimate {
    /// `sum_{d < T} mu(d) W(d, X)`.
    pub estimate: BigInt,
    /// Bound on `|sum_{d >= T} mu(d) W(d, X)|`.
    pub tail_bound: Rational,
}

/// Largest truncation accepted without an explicit budget.
pub const DEFAULT_IE_BUDGET: u64 = 100_000_000;

/// Inclusion–exclusion truncated at `d < T`, with the tail bounded by
/// `C X sum_{d >= T} d^(ε - 2) <= C X (T - 1)^(ε - 1) / (1 - ε)`.
pub fn truncated_ie(
    fam: &dyn IEFamily,
    t: u64,
    budget: u64,
) -> Result<TruncatedEstimate, MaximalError> {
    if t < 2 {
        return Err(MaximalError::Truncation(t));
    }
    if t > budget {
        return Err(MaximalError::BudgetExceeded { needed: t, budget });
    }
    let model = fam.tail_model();
    if model.eps < Rational::zero() || model.eps >= Rational::from_integer(1.into()) {
        return Err(MaximalError::TailExponent(crate::arith::rat_string(
            &model.eps,
        )));
    }
    let mu = mobius_table((t - 1) as usize);
    let estimate: BigInt = (1..t as usize)
        .into_par_iter()
        .with_min_len(4096)
        .filter(|&d| mu[d] != 0)
        .map(|d| {
            let w = fam.count(d as u64);
            if mu[d] > 0 {
                w
            } else {
                -w
            }
        })
        .sum();
    let scale = &model.constant * fam.size();
    let tail_bound = if model.eps.is_zero() {
        scale / Rational::from_integer((t - 1).into())
    } else {
        let eps = model.eps.to_f64().unwrap_or(0.0);
        let factor = ((t - 1) as f64).powf(eps - 1.0) / (1.0 - eps);
        // generous upward rounding for powf
        let factor = factor * (1.0 + 1e-12);
        scale * BigRational::from_float(factor).expect("finite factor")
    };
    Ok(TruncatedEstimate {
        estimate,
        tail_bound,
    })
}

/// `Q(X)`, the number of squarefree `n <= X`, by marking multiples of
/// squares.
pub fn squarefree_count_exact(x: u64, budget: u64) -> Result<u64, MaximalError> {
    if x > budget {
        return Err(MaximalError::BudgetExceeded { needed: x, budget });
    }
    let n = x as usize;
    let mut square_free = vec![true; n + 1];
    let mut k = 2usize;
    while k * k <= n {
        for m in (k * k..=n).step_by(k * k) {
            square_free[m] = false;
        }
        k += 1;
    }
    Ok(square_free.iter().skip(1).filter(|&&b| b).count() as u64)
}
