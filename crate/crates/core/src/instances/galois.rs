//! Galois classification of monic integer quintics.
//!
//! A quintic is *degenerate* unless it is irreducible with Galois group
//! `S5`. The classification runs:
//!
//! 1. zero discriminant;
//! 2. reducibility: integer roots, then monic quadratic factors whose
//!    coefficients lie inside the Mignotte bound;
//! 3. group inside `A5` iff the discriminant is a nonzero square;
//! 4. group solvable (inside `F20`) iff the sextic resolvent of the
//!    `F20`-invariant
//!    `θ = Σ x_i² (x_{i+1} x_{i+4} + x_{i+2} x_{i+3})` has an integer root.
//!
//! The resolvent is computed exactly: the six conjugates of `θ` are built in
//! the universal splitting algebra `Z[x1..x4]` modulo the divided-difference
//! relations of `f` (rank 120), and the elementary symmetric functions of
//! the conjugates collapse to integers there.
//!
//! Step 4 is short-circuited when a Frobenius cycle type absent from `F20`
//! (a transposition, a 3-cycle or a `(2,3)` element) turns up at some small
//! unramified prime; such a type certifies `S5` directly.

use std::collections::HashMap;
use std::num::Wrapping;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::finite_field::{factorization_type, FactorizationType};
use super::quintic::{discriminant, eval, exact_div, is_perfect_square, QuinticPoly};
use crate::arith::primes_up_to;

/// Coarse Galois classification of a monic quintic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaloisClass {
    ZeroDiscriminant,
    Reducible,
    /// Irreducible, group `S5`.
    Symmetric,
    /// Irreducible, group `A5`.
    Alternating,
    /// Irreducible, group `F20` (odd and solvable).
    Frobenius20,
    /// Irreducible, group `D5` or `C5`.
    SolvableEven,
}

impl GaloisClass {
    pub fn is_degenerate(self) -> bool {
        self != GaloisClass::Symmetric
    }
}

/// Primes scanned for a cycle-type certificate before the resolvent is
/// computed.
const CENSUS_BOUND: u64 = 200;

pub fn galois_class(f: &QuinticPoly) -> GaloisClass {
    classify(f, true)
}

/// Classification that always decides solvability through the resolvent.
pub fn galois_class_by_resolvent(f: &QuinticPoly) -> GaloisClass {
    classify(f, false)
}

pub fn is_degenerate(f: &QuinticPoly) -> bool {
    let disc = f.discriminant();
    if disc.is_zero() || is_reducible(f) || is_perfect_square(&disc) {
        return true;
    }
    galois_class(f).is_degenerate()
}

fn classify(f: &QuinticPoly, use_census: bool) -> GaloisClass {
    let disc = f.discriminant();
    if disc.is_zero() {
        return GaloisClass::ZeroDiscriminant;
    }
    if is_reducible(f) {
        return GaloisClass::Reducible;
    }
    let even = is_perfect_square(&disc);
    if use_census {
        for p in primes_up_to(CENSUS_BOUND) {
            let t = factorization_type(f, p);
            if even && t.is(&[1, 1, 3]) {
                return GaloisClass::Alternating;
            }
            if !even && (t.is(&[1, 1, 1, 2]) || t.is(&[1, 1, 3]) || t.is(&[2, 3])) {
                return GaloisClass::Symmetric;
            }
        }
    }
    let solvable = resolvent_has_integer_root(&f.ascending_big());
    match (even, solvable) {
        (true, true) => GaloisClass::SolvableEven,
        (true, false) => GaloisClass::Alternating,
        (false, true) => GaloisClass::Frobenius20,
        (false, false) => GaloisClass::Symmetric,
    }
}

/// Census classification from Frobenius cycle types alone. Returns `None`
/// when the types seen do not pin down the group among the transitive
/// subgroups of `S5` (the caller must then fall back to the resolvent).
pub fn galois_class_by_census(f: &QuinticPoly, prime_bound: u64) -> Option<GaloisClass> {
    let disc = f.discriminant();
    if disc.is_zero() {
        return Some(GaloisClass::ZeroDiscriminant);
    }
    if is_reducible(f) {
        return Some(GaloisClass::Reducible);
    }
    let even = is_perfect_square(&disc);
    let mut seen = std::collections::HashSet::new();
    for p in primes_up_to(prime_bound) {
        if let FactorizationType::Unramified(t) = factorization_type(f, p) {
            seen.insert(t);
        }
    }
    let has = |t: &[u8]| seen.contains(t);
    if even {
        // A5 contains 3-cycles; D5 and C5 do not.
        if has(&[1, 1, 3]) {
            return Some(GaloisClass::Alternating);
        }
        None
    } else if has(&[1, 1, 1, 2]) || has(&[1, 1, 3]) || has(&[2, 3]) {
        Some(GaloisClass::Symmetric)
    } else {
        None
    }
}

/// Integer polynomial factor search for a monic quintic.
pub fn is_reducible(f: &QuinticPoly) -> bool {
    let [_, _, _, _, c0] = f.coeffs;
    if c0 == 0 {
        return true;
    }
    let coeffs = f.ascending_big();
    let divisors = signed_divisors(c0.unsigned_abs());
    if divisors
        .iter()
        .any(|r| eval(&coeffs, &BigInt::from(*r)).is_zero())
    {
        return true;
    }
    has_quadratic_factor(f, &divisors)
}

/// Any monic factor `x^2 + a x + b` of `f` satisfies the Mignotte bound
/// `|a| <= 2 ||f||_2`, `|b| <= ||f||_2`, and `b | c0`.
fn has_quadratic_factor(f: &QuinticPoly, divisors: &[i64]) -> bool {
    let norm_sq: i128 = 1 + f
        .coeffs
        .iter()
        .map(|&c| (c as i128) * (c as i128))
        .sum::<i128>();
    let norm = norm_sq.sqrt() + 1;
    let coeffs = f.ascending_big();
    let f1 = eval(&coeffs, &BigInt::one());
    let fm1 = eval(&coeffs, &BigInt::from(-1));
    for &b in divisors {
        if (b as i128).abs() > norm {
            continue;
        }
        let a_max = (2 * norm) as i64;
        for a in -a_max..=a_max {
            // g(t) | f(t) at t = +-1
            let g1 = BigInt::from(1 + a + b);
            let gm1 = BigInt::from(1 - a + b);
            if g1.is_zero() || gm1.is_zero() {
                continue; // would give a root at +-1, already excluded
            }
            if !(&f1 % &g1).is_zero() || !(&fm1 % &gm1).is_zero() {
                continue;
            }
            let g = [BigInt::from(b), BigInt::from(a), BigInt::one()];
            if exact_div(&coeffs, &g).is_some() {
                return true;
            }
        }
    }
    false
}

fn signed_divisors(n: u64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            for v in [d, n / d] {
                out.push(v as i64);
                out.push(-(v as i64));
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Splitting algebra

/// Coefficient ring for the splitting algebra: `BigInt`, or `i128` modulo
/// `2^128` when the results are known to fit.
trait Coef:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_big(v: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coef for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

impl Coef for Wrapping<i128> {
    fn from_big(v: &BigInt) -> Self {
        let m = BigInt::one() << 128u32;
        let r = ((v % &m) + &m) % &m;
        Wrapping(r.to_u128().expect("reduced mod 2^128") as i128)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(self.0)
    }
}

type Exps = [u8; 4];
/// Exponent bounds of the basis monomials `x1^a1 x2^a2 x3^a3 x4^a4`.
const BOUNDS: [u8; 4] = [5, 4, 3, 2];
const RANK: usize = 120;
/// Products of two basis monomials have exponents below these.
const PROD_BOUNDS: [usize; 4] = [9, 7, 5, 3];
const PROD_SIZE: usize = 9 * 7 * 5 * 3;

fn basis_index(e: &Exps) -> usize {
    e[0] as usize + 5 * (e[1] as usize + 4 * (e[2] as usize + 3 * e[3] as usize))
}

fn basis_exps(i: usize) -> Exps {
    [
        (i % 5) as u8,
        (i / 5 % 4) as u8,
        (i / 20 % 3) as u8,
        (i / 60) as u8,
    ]
}

fn prod_index(e: &Exps) -> usize {
    e[0] as usize
        + PROD_BOUNDS[0]
            * (e[1] as usize + PROD_BOUNDS[1] * (e[2] as usize + PROD_BOUNDS[2] * e[3] as usize))
}

/// `Z[x1, .., x5] / (symmetric relations of f)` with `x5` eliminated.
struct SplittingAlgebra<T: Coef> {
    /// Reduced form of every monomial with exponents inside `PROD_BOUNDS`.
    reduce: Vec<Vec<(usize, T)>>,
    roots: [Vec<T>; 5],
}

impl<T: Coef> SplittingAlgebra<T> {
    /// `f` ascending, monic of degree 5.
    fn new(f: &[BigInt]) -> Self {
        let a: Vec<T> = f.iter().map(T::from_big).collect();
        // tails[k] = x_{k+1}^{5-k} - f_{k+1}, i.e. the replacement for the
        // leading power of x_{k+1}
        let tails: Vec<Vec<(Exps, T)>> = (1..=4).map(|k| relation_tail(&a, k)).collect();
        let mut memo: HashMap<Exps, Vec<T>> = HashMap::new();
        let mut reduce = vec![Vec::new(); PROD_SIZE];
        for e0 in 0..PROD_BOUNDS[0] {
            for e1 in 0..PROD_BOUNDS[1] {
                for e2 in 0..PROD_BOUNDS[2] {
                    for e3 in 0..PROD_BOUNDS[3] {
                        let e = [e0 as u8, e1 as u8, e2 as u8, e3 as u8];
                        let dense = reduce_monomial(e, &tails, &mut memo);
                        reduce[prod_index(&e)] = dense
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect();
                    }
                }
            }
        }
        let mut roots: [Vec<T>; 5] = Default::default();
        for (k, root) in roots.iter_mut().enumerate().take(4) {
            let mut e = [0u8; 4];
            e[k] = 1;
            let mut v = vec![T::zero(); RANK];
            v[basis_index(&e)] = T::one();
            *root = v;
        }
        // x5 = -c4 - x1 - x2 - x3 - x4
        let mut x5 = vec![T::zero(); RANK];
        x5[0] = -a[4].clone();
        for k in 0..4 {
            let mut e = [0u8; 4];
            e[k] = 1;
            x5[basis_index(&e)] = -T::one();
        }
        roots[4] = x5;
        SplittingAlgebra { reduce, roots }
    }

    fn mul(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut acc = vec![T::zero(); PROD_SIZE];
        let xs: Vec<(usize, &T)> = x.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let ys: Vec<(usize, &T)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for &(i, ci) in &xs {
            let ei = basis_exps(i);
            for &(j, cj) in &ys {
                let ej = basis_exps(j);
                let e = [ei[0] + ej[0], ei[1] + ej[1], ei[2] + ej[2], ei[3] + ej[3]];
                let k = prod_index(&e);
                acc[k] = acc[k].clone() + ci.clone() * cj.clone();
            }
        }
        let mut out = vec![T::zero(); RANK];
        for (k, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (b, r) in &self.reduce[k] {
                out[*b] = out[*b].clone() + c.clone() * r.clone();
            }
        }
        out
    }

    fn add(x: &[T], y: &[T]) -> Vec<T> {
        x.iter()
            .zip(y)
            .map(|(a, b)| a.clone() + b.clone())
            .collect()
    }

    fn scalar(c: T) -> Vec<T> {
        let mut v = vec![T::zero(); RANK];
        v[0] = c;
        v
    }

    /// `θ(x_{σ(0)}, .., x_{σ(4)})`.
    fn theta(&self, perm: &[usize; 5]) -> Vec<T> {
        let x = |i: usize| &self.roots[perm[i % 5]];
        let mut total = vec![T::zero(); RANK];
        for i in 0..5 {
            let sq = self.mul(x(i), x(i));
            let pair = Self::add(&self.mul(x(i + 1), x(i + 4)), &self.mul(x(i + 2), x(i + 3)));
            total = Self::add(&total, &self.mul(&sq, &pair));
        }
        total
    }

    /// Coefficients (ascending) of `prod_j (X - elems_j)`, which must be
    /// scalars; `None` if some coefficient is not.
    fn symmetric_product(&self, elems: &[Vec<T>]) -> Option<Vec<T>> {
        let mut poly: Vec<Vec<T>> = vec![Self::scalar(T::one())];
        for el in elems {
            let mut next = vec![vec![T::zero(); RANK]; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = Self::add(&next[i + 1], c);
                let prod = self.mul(c, el);
                next[i] = next[i]
                    .iter()
                    .zip(&prod)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect();
            }
            poly = next;
        }
        poly.into_iter()
            .map(|c| c[1..].iter().all(Zero::is_zero).then(|| c[0].clone()))
            .collect()
    }
}

/// Complete homogeneous monomials of total degree `deg` in the first `k`
/// variables.
fn complete_homogeneous(k: usize, deg: usize) -> Vec<Exps> {
    fn rec(k: usize, idx: usize, left: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
        if idx + 1 == k {
            cur[idx] = left as u8;
            out.push(*cur);
            cur[idx] = 0;
            return;
        }
        for e in 0..=left {
            cur[idx] = e as u8;
            rec(k, idx + 1, left - e, cur, out);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    rec(k, 0, deg, &mut [0u8; 4], &mut out);
    out
}

/// `x_k^{6-k} - f_k(x_1, .., x_k)` where
/// `f_k = sum_j a_j h_{j-k+1}(x_1, .., x_k)` is the `(k-1)`-th divided
/// difference of `f`.
fn relation_tail<T: Coef>(a: &[T], k: usize) -> Vec<(Exps, T)> {
    let lead_deg = 6 - k;
    let mut out: HashMap<Exps, T> = HashMap::new();
    for (j, aj) in a.iter().enumerate() {
        if j + 1 < k || aj.is_zero() {
            continue;
        }
        for e in complete_homogeneous(k, j + 1 - k) {
            if e[k - 1] as usize == lead_deg {
                continue; // leading monomial, coefficient a_5 = 1
            }
            let entry = out.entry(e).or_insert_with(T::zero);
            *entry = entry.clone() - aj.clone();
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn reduce_monomial<T: Coef>(
    e: Exps,
    tails: &[Vec<(Exps, T)>],
    memo: &mut HashMap<Exps, Vec<T>>,
) -> Vec<T> {
    if let Some(v) = memo.get(&e) {
        return v.clone();
    }
    let over = (0..4).rev().find(|&k| e[k] >= BOUNDS[k]);
    let result = match over {
        None => {
            let mut v = vec![T::zero(); RANK];
            v[basis_index(&e)] = T::one();
            v
        }
        Some(k) => {
            let mut rest = e;
            rest[k] -= BOUNDS[k];
            let mut v = vec![T::zero(); RANK];
            for (te, tc) in &tails[k] {
                let m = [
                    rest[0] + te[0],
                    rest[1] + te[1],
                    rest[2] + te[2],
                    rest[3] + te[3],
                ];
                let r = reduce_monomial(m, tails, memo);
                for (slot, x) in v.iter_mut().zip(r) {
                    if !x.is_zero() {
                        *slot = slot.clone() + tc.clone() * x;
                    }
                }
            }
            v
        }
    };
    memo.insert(e, result.clone());
    result
}

// ---------------------------------------------------------------------------
// Resolvent

fn theta_numeric(x: &[Complex64; 5], perm: &[usize; 5]) -> Complex64 {
    let v = |i: usize| x[perm[i % 5]];
    (0..5)
        .map(|i| v(i) * v(i) * (v(i + 1) * v(i + 4) + v(i + 2) * v(i + 3)))
        .sum()
}

/// Six permutations whose `θ` values represent the six cosets of the
/// stabiliser of `θ` (a copy of `F20`).
pub(crate) fn coset_representatives() -> &'static [[usize; 5]] {
    static REPS: OnceLock<Vec<[usize; 5]>> = OnceLock::new();
    REPS.get_or_init(|| {
        let x = generic_point();
        let mut reps: Vec<([usize; 5], Complex64)> = Vec::new();
        for perm in all_permutations() {
            let t = theta_numeric(&x, &perm);
            if reps
                .iter()
                .all(|(_, u)| (t - u).norm() > 1e-6 * t.norm().max(1.0))
            {
                reps.push((perm, t));
            }
        }
        reps.into_iter().map(|(p, _)| p).collect()
    })
}

pub(crate) fn generic_point() -> [Complex64; 5] {
    [
        2f64.sqrt(),
        3f64.sqrt(),
        5f64.sqrt(),
        7f64.sqrt(),
        std::f64::consts::PI,
    ]
    .map(|v| Complex64::new(v, 0.0))
}

pub(crate) fn all_permutations() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut p = [0, 1, 2, 3, 4];
    fn heap(k: usize, p: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if k == 1 {
            out.push(*p);
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            if k % 2 == 0 {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
        }
    }
    heap(5, &mut p, &mut out);
    out.sort_unstable();
    out
}

/// Largest `|c_i|` for which `i128` arithmetic mod `2^128` recovers every
/// resolvent coefficient: roots satisfy `|x| <= M = 1 + max |c_i|`, so
/// `|θ| <= 10 M^4` and `|e_k(θ)| <= C(6, k) (10 M^4)^k < 2^127` for
/// `M <= 19`.
const WRAPPING_COEF_LIMIT: u64 = 18;

/// Monic sextic resolvent `prod_{cosets} (X - θ_σ)` of a monic quintic
/// (ascending coefficients), as ascending integer coefficients.
pub fn sextic_resolvent(f: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(f.len(), 6, "monic quintic expected");
    let small = f[..5]
        .iter()
        .all(|c| c.abs() <= BigInt::from(WRAPPING_COEF_LIMIT));
    if small {
        resolvent_in::<Wrapping<i128>>(f)
    } else {
        resolvent_in::<BigInt>(f)
    }
}

fn resolvent_in<T: Coef>(f: &[BigInt]) -> Vec<BigInt> {
    let alg = SplittingAlgebra::<T>::new(f);
    let thetas: Vec<Vec<T>> = coset_representatives()
        .iter()
        .map(|p| alg.theta(p))
        .collect();
    let coeffs = alg
        .symmetric_product(&thetas)
        .expect("symmetric functions of the resolvent roots are scalars");
    coeffs.iter().map(Coef::to_big).collect()
}

/// Monic quintic whose roots are `x_i^2 + shift * x_i`.
fn tschirnhaus(f: &[BigInt], shift: i64) -> Vec<BigInt> {
    let alg = SplittingAlgebra::<BigInt>::new(f);
    let ys: Vec<Vec<BigInt>> = (0..5)
        .map(|i| {
            let x = &alg.roots[i];
            let sq = alg.mul(x, x);
            let lin: Vec<BigInt> = x.iter().map(|c| c * shift).collect();
            SplittingAlgebra::<BigInt>::add(&sq, &lin)
        })
        .collect();
    alg.symmetric_product(&ys)
        .expect("power sums collapse to integers")
}

/// Whether the resolvent of `f` (ascending, monic quintic, irreducible) has
/// an integer root. When the resolvent has a repeated root the quintic is
/// first replaced by a Tschirnhaus transform with a squarefree resolvent.
pub fn resolvent_has_integer_root(f: &[BigInt]) -> bool {
    let mut g = f.to_vec();
    let mut shift = 0i64;
    loop {
        let r = sextic_resolvent(&g);
        if !discriminant(&r).is_zero() {
            return integer_roots(&r).next().is_some();
        }
        shift += 1;
        loop {
            g = tschirnhaus(f, shift);
            if !discriminant(&g).is_zero() {
                break;
            }
            shift += 1;
        }
    }
}

/// Integer roots of a squarefree integer polynomial: numerical roots give
/// candidates, each confirmed by exact evaluation.
pub fn integer_roots(r: &[BigInt]) -> impl Iterator<Item = BigInt> + '_ {
    let approx = numeric_roots(r);
    let mut candidates: Vec<BigInt> = vec![BigInt::zero()];
    for z in approx {
        if z.im.abs() < 0.5 && z.re.is_finite() {
            let c = z.re.round();
            for d in [-1.0, 0.0, 1.0] {
                if let Some(b) = num_traits::FromPrimitive::from_f64(c + d) {
                    candidates.push(b);
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates.into_iter().filter(move |c| eval(r, c).is_zero())
}

/// Aberth iteration on an ascending integer polynomial.
pub fn numeric_roots(r: &[BigInt]) -> Vec<Complex64> {
    let n = r.len() - 1;
    let lc = r[n].to_f64().unwrap_or(1.0);
    let c: Vec<f64> = r
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::MAX) / lc)
        .collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    let horner = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}
