use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Interval, MaximalError};
use crate::arith::{primes_up_to, rat, rat_string, Rational};

/// Euler product `prod_p f(p)` for a local factor that is a polynomial in
/// `u = 1/p` with constant term 1, possibly rewritten as
/// `prod_k zeta(k)^(m_k) * prod_p g(p)` so that `g - 1` starts at a
/// higher power of `u` (faster convergence, smaller tail).
#[derive(Debug, Clone, PartialEq)]
pub struct EulerProductSpec {
    /// Coefficients of `g(u)`, ascending.
    coeffs: Vec<Rational>,
    /// `(k, m)`: the product carries a factor `zeta(k)^m`.
    zeta_powers: Vec<(u32, i32)>,
}

/// Powers of `u` below this are factored out as zeta values when possible.
const ACCELERATION_TARGET: usize = 4;

impl EulerProductSpec {
    pub fn from_polynomial(mut coeffs: Vec<Rational>) -> Result<Self, MaximalError> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(MaximalError::LeadingCoefficient);
        }
        if coeffs.get(1).is_some_and(|c| !c.is_zero()) {
            return Err(MaximalError::TailExponent("1".into()));
        }
        Ok(EulerProductSpec {
            coeffs,
            zeta_powers: Vec::new(),
        })
    }

    /// Factor `1 + p^-2 - p^-4 - p^-5`.
    pub fn field_density() -> Self {
        Self::from_polynomial(vec![
            rat(1, 1),
            rat(0, 1),
            rat(1, 1),
            rat(0, 1),
            rat(-1, 1),
            rat(-1, 1),
        ])
        .expect("valid factor")
        .accelerated()
    }

    /// Factor `1 - p^-2`, product `1 / zeta(2)`, left unaccelerated.
    pub fn zeta_reciprocal() -> Self {
        Self::from_polynomial(vec![rat(1, 1), rat(0, 1), rat(-1, 1)]).expect("valid factor")
    }

    /// `f = 1`.
    pub fn trivial() -> Self {
        Self::from_polynomial(vec![rat(1, 1)]).expect("valid factor")
    }

    /// Repeatedly writes `g = (1 - u^k)^(-m) g'` for the lowest term
    /// `m u^k` of `g - 1` with integer `m`, as long as `g'` stays a
    /// polynomial.
    pub fn accelerated(mut self) -> Self {
        loop {
            let Some(k) = self.tail_exponent() else { break };
            let k = k as usize;
            if k >= ACCELERATION_TARGET {
                break;
            }
            let c = self.coeffs[k].clone();
            if !c.is_integer() {
                break;
            }
            let m: i32 = match i32::try_from(c.to_integer()) {
                Ok(m) => m,
                Err(_) => break,
            };
            let next = if m > 0 {
                let mut g = self.coeffs.clone();
                for _ in 0..m {
                    g = poly_mul(&g, &one_minus_power(k));
                }
                Some(g)
            } else {
                let mut g = Some(self.coeffs.clone());
                for _ in 0..-m {
                    g = g.and_then(|g| poly_div_exact(&g, &one_minus_power(k)));
                }
                g
            };
            let Some(mut g) = next else { break };
            while g.len() > 1 && g.last().is_some_and(Zero::is_zero) {
                g.pop();
            }
            self.coeffs = g;
            self.zeta_powers.push((k as u32, m));
        }
        self
    }

    /// Coefficients of the accelerated factor `g(u)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn zeta_powers(&self) -> &[(u32, i32)] {
        &self.zeta_powers
    }

    /// Lowest power `s` of `u` in `g - 1`; `None` when `g = 1`.
    pub fn tail_exponent(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .map(|(j, _)| j as u32)
    }

    /// `g(p)`, exact.
    pub fn accelerated_factor(&self, p: u64) -> Rational {
        let u = Rational::new(BigInt::one(), BigInt::from(p));
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &u + c)
    }

    /// The original local factor `f(p) = g(p) prod_k (1 - p^-k)^(-m_k)`.
    pub fn local_factor(&self, p: u64) -> Rational {
        let mut f = self.accelerated_factor(p);
        for &(k, m) in &self.zeta_powers {
            let e = Rational::one() - Rational::new(BigInt::one(), BigInt::from(p).pow(k));
            f /= e.pow(m);
        }
        f
    }

    /// `kappa` with `|log g(p)| <= kappa p^-s` for every `p > bound`:
    /// `|g(p) - 1| <= a p^-s <= x0 < 1` with `a = sum |c_j| bound^(s-j)`,
    /// and `|log(1 + x)| <= |x| / (1 - x0)`.
    fn tail_constant(&self, s: u32, bound: u64) -> Option<Interval> {
        let b = Interval::point(bound as f64);
        let mut a = Interval::point(0.0);
        let mut total = Interval::point(0.0);
        for (j, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let abs = Interval::from_rational(&c.abs());
            a = a + abs * b.powi(s as i32 - j as i32);
            total = total + abs * b.powi(-(j as i32));
        }
        (total.hi() < 0.5).then(|| a / (Interval::point(1.0) - total))
    }
}

fn one_minus_power(k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); k + 1];
    v[0] = Rational::one();
    v[k] = -Rational::one();
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a / b` for `b` with constant term 1, if the division is exact.
fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Option<Vec<Rational>> {
    if a.len() < b.len() {
        return None;
    }
    // power-series division, then check the remainder vanishes
    let n = a.len() - b.len() + 1;
    let mut rem = a.to_vec();
    let mut q = vec![Rational::zero(); n];
    for i in 0..n {
        let c = rem[i].clone();
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(q)
}

/// Enclosure of an Euler product truncated at `p <= truncation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerEnclosure {
    pub value: Interval,
    pub truncation: u64,
}

/// `prod_p f(p)`: exact partial product over `p <= P` times the zeta
/// factors, times `exp([-t, t])` with `t = kappa P^(1-s) / (s - 1)`
/// bounding `sum_{p > P} |log g(p)|`. The result is intersected with the
/// same enclosure at every smaller prime, so enclosures nest as `P`
/// grows.
pub fn euler_product(
    spec: &EulerProductSpec,
    truncation: u64,
) -> Result<EulerEnclosure, MaximalError> {
    if truncation < 2 {
        return Err(MaximalError::ProductTruncation(truncation));
    }
    let mut zeta_factor = Interval::point(1.0);
    for &(k, m) in &spec.zeta_powers {
        zeta_factor = zeta_factor * zeta(k)?.powi(m);
    }
    let s = spec.tail_exponent();
    let mut partial = Interval::point(1.0);
    let mut best: Option<Interval> = None;
    for p in primes_up_to(truncation) {
        let g = spec.accelerated_factor(p);
        if !g.is_positive() {
            return Err(MaximalError::NonPositiveFactor(p));
        }
        partial = partial * Interval::from_rational(&g);
        let tail = match s {
            None => Some(Interval::point(1.0)),
            Some(s) => spec.tail_constant(s, p).map(|kappa| {
                let t = kappa * Interval::point(p as f64).powi(1 - s as i32)
                    / Interval::point((s - 1) as f64);
                Interval::new(-t.hi(), t.hi()).exp()
            }),
        };
        if let Some(tail) = tail {
            let e = partial * zeta_factor * tail;
            best = Some(match best {
                None => e,
                Some(b) => b.intersect(&e).expect("valid enclosures overlap"),
            });
        }
    }
    let value = best.ok_or(MaximalError::TailNotControlled(truncation))?;
    Ok(EulerEnclosure { value, truncation })
}

/// Bernoulli numbers `B_2, B_4, .., B_16`.
const BERNOULLI: [(i64, i64); 8] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
];
const EM_CUTOFF: u64 = 20;

/// `zeta(s)` for integer `s >= 2` by Euler–Maclaurin summation in exact
/// rationals: `sum_{n < N} n^-s + N^(1-s)/(s-1) + N^-s/2 +
/// sum_{k=1}^{7} B_2k/(2k)! s(s+1)..(s+2k-2) N^(-s-2k+1)`, with the
/// remainder bounded by twice the first omitted term.
pub fn zeta(s: u32) -> Result<Interval, MaximalError> {
    if s < 2 {
        return Err(MaximalError::ZetaArgument(s));
    }
    let n = BigInt::from(EM_CUTOFF);
    let inv_pow = |base: &BigInt, e: u32| Rational::new(BigInt::one(), base.pow(e));
    let mut sum = Rational::zero();
    for k in 1..EM_CUTOFF {
        sum += inv_pow(&BigInt::from(k), s);
    }
    sum += Rational::new(BigInt::one(), n.pow(s - 1) * BigInt::from(s - 1));
    sum += inv_pow(&n, s) / Rational::from_integer(2.into());
    let mut terms = Vec::new();
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let k = k as u32 + 1;
        let mut rising = BigInt::one();
        for j in 0..(2 * k - 1) {
            rising *= BigInt::from(s + j);
        }
        let fact: BigInt = (1..=2 * k).map(BigInt::from).product();
        terms.push(rat(num, den) * Rational::new(rising, fact) * inv_pow(&n, s + 2 * k - 1));
    }
    let omitted = terms.pop().expect("nonempty").abs();
    for t in terms {
        sum += t;
    }
    let radius = Interval::from_rational(&(omitted * Rational::from_integer(2.into())));
    let centre = Interval::from_rational(&sum);
    Ok(centre + Interval::new(-radius.hi(), radius.hi()))
}

/// `zeta(2)^2 zeta(3)^2 zeta(4)^2 zeta(5) / (2 n)`.
pub fn zeta_constant_c(n: &Rational) -> Result<Interval, MaximalError> {
    if !n.is_positive() {
        return Err(MaximalError::Normalization(rat_string(n)));
    }
    let z = zeta(2)?.powi(2) * zeta(3)?.powi(2) * zeta(4)?.powi(2) * zeta(5)?;
    Ok(z / Interval::from_rational(&(n * Rational::from_integer(2.into()))))
}
