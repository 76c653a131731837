//! Sieving to maximal objects: truncated inclusion–exclusion with explicit
//! tails, rigorous Euler products and zeta values, and the constants of
//! the field-count asymptotic.

mod constants;
mod euler;
mod ie;
mod interval;

pub use constants::{
    field_count_prediction, overring_budget, overring_exponent, overring_local_factor,
    overring_term_exact, signature_coefficient, Prediction, DEFAULT_OVERRING_TERMS,
    SIGNATURE_COEFFICIENTS,
};
pub use euler::{euler_product, zeta, zeta_constant_c, EulerEnclosure, EulerProductSpec};
pub use ie::{
    squarefree_count_exact, squarefree_family, truncated_ie, IEFamily, SquarefreeFamily, TailModel,
    TruncatedEstimate, DEFAULT_IE_BUDGET,
};
pub use interval::Interval;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MaximalError {
    #[error("truncation T = {0} must be at least 2")]
    Truncation(u64),
    #[error("budget exceeded: {needed} units needed, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("tail exponent must exceed 1 (got {0})")]
    TailExponent(String),
    #[error("local factor must have constant term 1")]
    LeadingCoefficient,
    #[error("local factor is not positive at p = {0}")]
    NonPositiveFactor(u64),
    #[error("product truncation P = {0} must be at least 2")]
    ProductTruncation(u64),
    #[error("tail of the product is not controlled up to P = {0}; increase P")]
    TailNotControlled(u64),
    #[error("zeta({0}) needs an integer argument >= 2")]
    ZetaArgument(u32),
    #[error("normalisation n = {0} must be positive")]
    Normalization(String),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("at least one term is required")]
    OverringTerms,
    #[error("signature index {0} must be 0, 1 or 2")]
    SignatureIndex(usize),
    #[error("X must be nonnegative")]
    NegativeSize,
}

impl MaximalError {
    pub fn is_budget(&self) -> bool {
        matches!(self, MaximalError::BudgetExceeded { .. })
    }
}
