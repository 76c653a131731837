use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Monic quintic `x^5 + c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0`, stored as
/// `[c4, c3, c2, c1, c0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuinticPoly {
    pub coeffs: [i64; 5],
}

impl QuinticPoly {
    pub const fn new(coeffs: [i64; 5]) -> Self {
        QuinticPoly { coeffs }
    }

    /// Coefficients in ascending degree, `[c0, c1, c2, c3, c4, 1]`.
    pub fn ascending(&self) -> [i64; 6] {
        let [c4, c3, c2, c1, c0] = self.coeffs;
        [c0, c1, c2, c3, c4, 1]
    }

    pub fn ascending_big(&self) -> Vec<BigInt> {
        self.ascending().iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.ascending_big())
    }

    /// `f(x)` at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        eval(&self.ascending_big(), x)
    }
}

impl fmt::Display for QuinticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^5")?;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let deg = 4 - i;
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { '-' } else { '+' };
            let mag = c.unsigned_abs();
            match (deg, mag) {
                (0, _) => write!(f, " {sign} {mag}")?,
                (1, 1) => write!(f, " {sign} x")?,
                (1, _) => write!(f, " {sign} {mag}x")?,
                (_, 1) => write!(f, " {sign} x^{deg}")?,
                _ => write!(f, " {sign} {mag}x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Horner evaluation of an ascending coefficient list.
pub fn eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester resultant of two ascending coefficient lists with nonzero
/// leading coefficients.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)` for `deg f = n >= 1`.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    if n <= 1 {
        return BigInt::one();
    }
    let df = derivative(f);
    let res = resultant(f, &df);
    let lc = f.last().expect("nonempty");
    let d = res / lc;
    if (n * (n - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Exact division of ascending integer polynomials; `None` if `g` does not
/// divide `f` over the integers (or `g` is not monic up to sign).
pub fn exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let lc = g.last()?;
    if !lc.abs().is_one() {
        return None;
    }
    if f.len() < g.len() {
        return if f.iter().all(Zero::is_zero) {
            Some(vec![])
        } else {
            None
        };
    }
    let mut rem = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - g.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &rem[k + g.len() - 1] * lc;
        if !c.is_zero() {
            for (j, gj) in g.iter().enumerate() {
                rem[k + j] -= &c * gj;
            }
        }
        q[k] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}
