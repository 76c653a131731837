//! Selberg's Λ² upper-bound sieve in exact rational arithmetic.
//!
//! A sifted instance supplies the divisibility sums `A(d)`; the plan fixes
//! the sifting primes `p < z` and the level `D`; [`selberg_weights`] builds
//! the optimal `λ_d` on squarefree `d | P(z)` with `d² < D`; and
//! [`sieve_upper_bound`] assembles either the exact quadratic form
//! `Σ λ_d λ_e A([d, e])` or the modelled `cX/H + Σ τ₃(m) |r_m|`.

mod bound;
mod density;
mod plan;
mod weights;

pub use bound::{
    model_bound, sieve_upper_bound, sifted_count_exact, BoundMode, BoundOptions, RemainderModel,
    SieveReport, SiftedInstance, WeightDiagnostic,
};
pub use density::{h_of, tau3, DensityFunction};
pub use plan::{SievePlan, DEFAULT_SUPPORT_LIMIT};
pub use weights::{big_h, quadratic_form, selberg_weights, SieveWeights};

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SieveError {
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("density g({0}) = 1 is singular")]
    SingularDensity(u64),
    #[error("density g({p}) = {value} is outside [0, 1)")]
    DensityOutOfRange { p: u64, value: Rational },
    #[error("no density value for prime {0}")]
    MissingDensity(u64),
    #[error("empty support: the level must exceed 1")]
    EmptySupport,
    #[error("sifting limit z = {0} must be at least 2")]
    InvalidSiftingLimit(u64),
    #[error("support exceeds {limit} elements")]
    SupportTooLarge { limit: usize },
    #[error("model mode requires main coefficient, density and remainder constants")]
    MissingModel,
    #[error("budget exceeded: {needed} units needed, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}

impl SieveError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            SieveError::BudgetExceeded { .. } | SieveError::SupportTooLarge { .. }
        )
    }
}
