//! Polynomials over a prime field and the splitting type of a monic
//! quintic modulo an unramified prime.

use std::fmt;

use super::QuinticPoly;

/// Ascending coefficients in `0..p`, trimmed (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = FpPoly {
            p,
            c: coeffs.into_iter().map(|x| x % p).collect(),
        };
        out.trim();
        out
    }

    pub fn from_quintic(f: &QuinticPoly, p: u64) -> Self {
        let c = f
            .ascending()
            .iter()
            .map(|&x| x.rem_euclid(p as i64) as u64)
            .collect();
        FpPoly::new(p, c)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow_scalar(a, self.p - 2)
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulmod(r, a);
            }
            a = self.mulmod(a, a);
            e >>= 1;
        }
        r
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.c.len().max(other.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = other.c.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        FpPoly::new(p, c)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    /// `(quotient, remainder)`; panics on division by zero.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = self.inv(d.c[dd]);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (FpPoly::new(self.p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = self.mulmod(r[k + dd], lead_inv);
            q[k] = coef;
            if coef != 0 {
                for (j, &dj) in d.c.iter().enumerate() {
                    let t = self.mulmod(coef, dj);
                    r[k + j] = (r[k + j] + self.p - t) % self.p;
                }
            }
        }
        r.truncate(dd);
        (FpPoly::new(self.p, q), FpPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.inv(lc);
                FpPoly::new(
                    self.p,
                    self.c.iter().map(|&x| self.mulmod(x, inv)).collect(),
                )
            }
        }
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| self.mulmod(a, i as u64 % self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| (self.mulmod(acc, x) + a) % self.p)
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial,
    /// sorted ascending, by distinct-degree splitting.
    pub fn distinct_degree_type(&self) -> Vec<u8> {
        let x = FpPoly::new(self.p, vec![0, 1]);
        let mut f = self.monic();
        let mut h = x.clone();
        let mut degrees = Vec::new();
        let mut k = 1usize;
        while let Some(df) = f.degree() {
            if df < 2 * k {
                if df > 0 {
                    degrees.push(df as u8);
                }
                break;
            }
            h = h.pow_mod(self.p, &f);
            let g = f.gcd(&h.sub(&x));
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                degrees.extend(std::iter::repeat(k as u8).take(dg / k));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            k += 1;
        }
        degrees.sort_unstable();
        degrees
    }
}

/// Splitting type of a monic quintic modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorizationType {
    /// `p` divides the discriminant.
    Ramified,
    /// Degrees of the irreducible factors, ascending; sums to 5.
    Unramified(Vec<u8>),
}

impl FactorizationType {
    pub fn is(&self, degrees: &[u8]) -> bool {
        matches!(self, FactorizationType::Unramified(d) if d == degrees)
    }
}

impl fmt::Display for FactorizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorizationType::Ramified => write!(f, "R"),
            FactorizationType::Unramified(d) => {
                for x in d {
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Factorization type of `f mod p`. Since `f` is monic, `p | disc(f)`
/// exactly when `f mod p` has a repeated factor, i.e. `gcd(f, f') != 1`.
pub fn factorization_type(f: &QuinticPoly, p: u64) -> FactorizationType {
    let fp = FpPoly::from_quintic(f, p);
    factorization_type_fp(&fp)
}

pub(crate) fn factorization_type_fp(fp: &FpPoly) -> FactorizationType {
    let g = fp.gcd(&fp.derivative());
    if g.degree() != Some(0) {
        return FactorizationType::Ramified;
    }
    FactorizationType::Unramified(fp.distinct_degree_type())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn t(d: &[u8]) -> FactorizationType {
        FactorizationType::Unramified(d.to_vec())
    }

    #[test]
    fn x5_minus_x() {
        let f = QuinticPoly::new([0, 0, 0, -1, 0]);
        assert_eq!(factorization_type(&f, 3), t(&[1, 1, 1, 2]));
        assert_eq!(factorization_type(&f, 2), FactorizationType::Ramified);
        assert_eq!(factorization_type(&f, 5), t(&[1, 1, 1, 1, 1]));
        assert_eq!(factorization_type(&f, 7), t(&[1, 1, 1, 2]));
    }

    #[test]
    fn ramified_iff_discriminant_vanishes() {
        let polys = [
            [0, 0, 0, -1, -1],
            [1, -2, 3, 0, 5],
            [3, 3, -3, 1, 2],
            [0, 0, 0, 0, -2],
        ];
        for c in polys {
            let f = QuinticPoly::new(c);
            let disc = f.discriminant();
            for p in primes_up_to(60) {
                let ram = (&disc % BigInt::from(p)).is_zero();
                assert_eq!(
                    factorization_type(&f, p) == FactorizationType::Ramified,
                    ram,
                    "{f} p={p}"
                );
            }
        }
    }

    /// Degrees of irreducible factors by repeated root/trial division over
    /// all monic polynomials of degree <= 2.
    fn brute_type(fp: &FpPoly) -> Vec<u8> {
        let p = fp.p;
        let mut f = fp.clone();
        let mut out = Vec::new();
        for r in 0..p {
            let lin = FpPoly::new(p, vec![(p - r) % p, 1]);
            while f.degree().unwrap() >= 1 && f.rem(&lin).is_zero() {
                f = f.div_rem(&lin).0;
                out.push(1);
            }
        }
        for a in 0..p {
            for b in 0..p {
                let q = FpPoly::new(p, vec![b, a, 1]);
                while f.degree().unwrap() >= 2 && f.rem(&q).is_zero() {
                    f = f.div_rem(&q).0;
                    out.push(2);
                }
            }
        }
        if let Some(d) = f.degree() {
            if d > 0 {
                out.push(d as u8);
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn ddf_matches_trial_division() {
        for p in [2u64, 3, 5] {
            for code in 0..p.pow(5) {
                let mut c = vec![0u64; 6];
                let mut k = code;
                for slot in c.iter_mut().take(5) {
                    *slot = k % p;
                    k /= p;
                }
                c[5] = 1;
                let fp = FpPoly::new(p, c);
                if let FactorizationType::Unramified(d) = factorization_type_fp(&fp) {
                    assert_eq!(d, brute_type(&fp), "p={p} {:?}", fp.coeffs());
                }
            }
        }
    }

    #[test]
    fn display_codes() {
        assert_eq!(t(&[1, 1, 1, 2]).to_string(), "1112");
        assert_eq!(t(&[5]).to_string(), "5");
        assert_eq!(FactorizationType::Ramified.to_string(), "R");
    }
}
