use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::euler::{euler_product, zeta, EulerEnclosure, EulerProductSpec};
use super::{Interval, MaximalError};
use crate::arith::{rat, squarefree_factors, Rational};

/// Exponent `min(2k - 2, 20k/11) - 2k` of the `k`-th over-ring term.
pub fn overring_exponent(k: u64) -> Rational {
    let k = Rational::from_integer(BigInt::from(k));
    let a = &k * rat(2, 1) - rat(2, 1);
    let b = &k * rat(20, 11);
    a.min(b) - k * rat(2, 1)
}

/// `p^exponent(k)` when the exponent is an integer.
pub fn overring_term_exact(p: u64, k: u64) -> Option<Rational> {
    let e = overring_exponent(k);
    if !e.is_integer() {
        return None;
    }
    let e = i32::try_from(e.to_integer()).ok()?;
    Some(Rational::from_integer(BigInt::from(p)).pow(e))
}

/// Terms from `k = 11` on are `r^k` with `r = p^(-2/11)`; below that each
/// is `p^-2`.
const GEOMETRIC_FROM: u64 = 11;

fn ratio(p: u64) -> Interval {
    Interval::point(p as f64).powf(-2.0 / 11.0)
}

fn term(p: u64, k: u64) -> Interval {
    match overring_term_exact(p, k) {
        Some(t) => Interval::from_rational(&t),
        None => ratio(p).powi(k as i32),
    }
}

/// Encloses `sum_{k >= 1} p^(min(2k-2, 20k/11) - 2k)` from the partial
/// sum to `k = K` and the exact geometric tail. Like [`euler_product`],
/// the enclosure is intersected over all smaller truncations, so larger
/// `K` never loosens it.
pub fn overring_local_factor(p: u64, terms: u64) -> Result<Interval, MaximalError> {
    if terms == 0 {
        return Err(MaximalError::OverringTerms);
    }
    if p < 2 {
        return Err(MaximalError::NotPrime(p));
    }
    let r = ratio(p);
    let one = Interval::point(1.0);
    let inv_sq = Interval::from_rational(&Rational::new(
        BigInt::one(),
        BigInt::from(p) * BigInt::from(p),
    ));
    let mut partial = Interval::point(0.0);
    let mut best: Option<Interval> = None;
    for k in 1..=terms {
        partial = partial + term(p, k);
        // sum_{j > k} terms
        let tail = if k + 1 >= GEOMETRIC_FROM {
            r.powi(k as i32 + 1) / (one - r)
        } else {
            Interval::point((GEOMETRIC_FROM - 1 - k) as f64) * inv_sq
                + r.powi(GEOMETRIC_FROM as i32) / (one - r)
        };
        let e = Interval::new(partial.lo(), (partial + tail).hi());
        best = Some(match best {
            None => e,
            Some(b) => b.intersect(&e).expect("valid enclosures overlap"),
        });
    }
    Ok(best.expect("at least one term"))
}

/// Terms used by [`overring_budget`].
pub const DEFAULT_OVERRING_TERMS: u64 = 400;

/// `zeta(2) prod_{p | d} factor(p)`.
pub fn overring_budget(d: u64) -> Result<Interval, MaximalError> {
    let primes = squarefree_factors(d).ok_or(MaximalError::NotSquarefree(d))?;
    let mut acc = zeta(2)?;
    for p in primes {
        acc = acc * overring_local_factor(p, DEFAULT_OVERRING_TERMS)?;
    }
    Ok(acc)
}

/// `d_0, d_1, d_2`.
pub const SIGNATURE_COEFFICIENTS: [(i64, i64); 3] = [(1, 240), (1, 24), (1, 16)];

pub fn signature_coefficient(i: usize) -> Result<Rational, MaximalError> {
    SIGNATURE_COEFFICIENTS
        .get(i)
        .map(|&(n, d)| rat(n, d))
        .ok_or(MaximalError::SignatureIndex(i))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    /// `d_i * (midpoint of the product enclosure) * X`.
    pub value: f64,
    pub enclosure: Interval,
    pub product: EulerEnclosure,
}

/// `d_i prod_p (1 + p^-2 - p^-4 - p^-5) X` with the product truncated at
/// `p <= truncation`.
pub fn field_count_prediction(
    i: usize,
    x: &Rational,
    truncation: u64,
) -> Result<Prediction, MaximalError> {
    let d = signature_coefficient(i)?;
    if x.is_negative() {
        return Err(MaximalError::NegativeSize);
    }
    let product = euler_product(&EulerProductSpec::field_density(), truncation)?;
    let scale = Interval::from_rational(&(d * x));
    let enclosure = scale * product.value;
    let value = crate::arith::rat_to_f64(&(signature_coefficient(i)? * x)) * product.value.mid();
    Ok(Prediction {
        value,
        enclosure,
        product,
    })
}
