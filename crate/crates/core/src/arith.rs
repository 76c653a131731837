//! Small-integer arithmetic helpers shared by the sieve modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact rational used throughout the crate.
pub type Rational = BigRational;

/// All primes `p < bound`, by the sieve of Eratosthenes.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound <= 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// All primes `p <= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    primes_below(bound.saturating_add(1))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factors of `n` if `n` is squarefree, `None` otherwise.
pub fn squarefree_factors(n: u64) -> Option<Vec<u64>> {
    if n == 0 {
        return None;
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        None
    } else {
        Some(f.into_iter().map(|(p, _)| p).collect())
    }
}

pub fn is_squarefree(n: u64) -> bool {
    squarefree_factors(n).is_some()
}

/// Möbius function on `0..=bound` from a linear factor sieve. Entry 0 is 0.
pub fn mobius_table(bound: usize) -> Vec<i8> {
    let mut mu = vec![1i8; bound + 1];
    if bound == 0 {
        mu[0] = 0;
        return mu;
    }
    mu[0] = 0;
    let mut is_composite = vec![false; bound + 1];
    for p in 2..=bound {
        if is_composite[p] {
            continue;
        }
        let mut m = p;
        while m <= bound {
            if m != p {
                is_composite[m] = true;
            }
            mu[m] = -mu[m];
            m += p;
        }
        if let Some(sq) = p.checked_mul(p) {
            let mut m = sq;
            while m <= bound {
                mu[m] = 0;
                m += sq;
            }
        }
    }
    mu
}

/// Number of ordered triples `(a, b, c)` with `abc = n`, for any `n >= 1`.
pub fn tau3_general(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(_, e)| {
            let e = e as u64;
            (e + 1) * (e + 2) / 2
        })
        .product()
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Error returned when a string is not a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"a"`, `"a/b"` or a plain decimal such as `"0.25"` / `"1e6"`-free
/// decimals into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        let whole = if ip_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(ip_digits).map_err(|_| err())?
        };
        let frac = BigInt::from_str(fp).map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| err())
}

/// `"num/den"`, or just `"num"` for integers.
pub struct RatDisplay<'a>(pub &'a Rational);

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Always `"num/den"`, including integers.
pub fn rat_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest `f64`; stays finite for rationals with huge numerators and
/// denominators by scaling through the bit lengths.
pub fn rat_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let scaled = if shift > 0 {
        Rational::new(n.clone(), d << (shift as usize))
    } else {
        Rational::new(n << ((-shift) as usize), d.clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_small() {
        assert_eq!(primes_below(2), Vec::<u64>::new());
        assert_eq!(primes_below(12), vec![2, 3, 5, 7, 11]);
        assert_eq!(primes_up_to(11), vec![2, 3, 5, 7, 11]);
        assert_eq!(primes_below(100_001).len(), 9592);
        assert_eq!(primes_below(317).len(), 65);
    }

    #[test]
    fn mobius_matches_factorization() {
        let mu = mobius_table(2000);
        for n in 1..=2000u64 {
            let f = factorize(n);
            let expected = if f.iter().any(|&(_, e)| e > 1) {
                0
            } else if f.len() % 2 == 0 {
                1
            } else {
                -1
            };
            assert_eq!(mu[n as usize], expected, "n = {n}");
        }
    }

    #[test]
    fn tau3_by_enumeration() {
        for n in 1..300u64 {
            let mut count = 0;
            for a in 1..=n {
                if n % a != 0 {
                    continue;
                }
                for b in 1..=n / a {
                    if (n / a) % b == 0 {
                        count += 1;
                    }
                }
            }
            assert_eq!(tau3_general(n), count, "n = {n}");
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("39/40").unwrap(), rat(39, 40));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(RatDisplay(&rat(6, 3)).to_string(), "2");
        assert_eq!(RatDisplay(&rat(199, 200)).to_string(), "199/200");
        assert_eq!(rat_string(&rat(2, 1)), "2/1");
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = Rational::new(big.clone() * 3, big);
        assert!((rat_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
