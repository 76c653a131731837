use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::finite_field::{factorization_type, FactorizationType};
use super::galois::is_degenerate;
use super::QuinticPoly;
use crate::arith::{primes_below, squarefree_factors, Rational};
use crate::sieve::{DensityFunction, SieveError, SiftedInstance};

/// Per-coordinate inclusive ranges for `(c4, c3, c2, c1, c0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoefficientBox {
    ranges: [(i64, i64); 5],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("empty coefficient range [{lo}, {hi}] for c{index}")]
pub struct EmptyRange {
    pub index: usize,
    pub lo: i64,
    pub hi: i64,
}

impl CoefficientBox {
    pub fn new(ranges: [(i64, i64); 5]) -> Result<Self, EmptyRange> {
        for (i, &(lo, hi)) in ranges.iter().enumerate() {
            if lo > hi {
                return Err(EmptyRange {
                    index: 4 - i,
                    lo,
                    hi,
                });
            }
        }
        Ok(CoefficientBox { ranges })
    }

    /// Every coefficient in `[lo, hi]`.
    pub fn cube(lo: i64, hi: i64) -> Result<Self, EmptyRange> {
        Self::new([(lo, hi); 5])
    }

    pub fn single(f: QuinticPoly) -> Self {
        CoefficientBox {
            ranges: f.coeffs.map(|c| (c, c)),
        }
    }

    pub fn ranges(&self) -> [(i64, i64); 5] {
        self.ranges
    }

    /// Number of polynomials, saturating at `u64::MAX`.
    pub fn len(&self) -> u64 {
        self.ranges
            .iter()
            .map(|&(lo, hi)| (hi as i128 - lo as i128 + 1) as u128)
            .try_fold(1u128, |acc, w| acc.checked_mul(w))
            .map_or(u64::MAX, |n| n.min(u64::MAX as u128) as u64)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lexicographic order on `(c4, .., c0)`.
    pub fn iter(&self) -> impl Iterator<Item = QuinticPoly> + '_ {
        let [r4, r3, r2, r1, r0] = self.ranges;
        (r4.0..=r4.1).flat_map(move |c4| {
            (r3.0..=r3.1).flat_map(move |c3| {
                (r2.0..=r2.1).flat_map(move |c2| {
                    (r1.0..=r1.1).flat_map(move |c1| {
                        (r0.0..=r0.1).map(move |c0| QuinticPoly::new([c4, c3, c2, c1, c0]))
                    })
                })
            })
        })
    }

    /// Sub-boxes with a fixed `c4`, in order.
    pub fn slices(&self) -> Vec<CoefficientBox> {
        let (lo, hi) = self.ranges[0];
        (lo..=hi)
            .map(|c| {
                let mut r = self.ranges;
                r[0] = (c, c);
                CoefficientBox { ranges: r }
            })
            .collect()
    }

    /// Fails when the box has more than `budget` polynomials.
    pub fn check_budget(&self, budget: u64) -> Result<(), SieveError> {
        let n = self.len();
        if n > budget {
            return Err(SieveError::BudgetExceeded { needed: n, budget });
        }
        Ok(())
    }
}

/// Mod-`p` event families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventFamily {
    /// `f mod p` irreducible.
    Five,
    /// `f mod p` has three linear factors and one irreducible quadratic.
    Type1112,
}

impl EventFamily {
    pub const ALL: [EventFamily; 2] = [EventFamily::Five, EventFamily::Type1112];

    pub fn degrees(self) -> &'static [u8] {
        match self {
            EventFamily::Five => &[5],
            EventFamily::Type1112 => &[1, 1, 1, 2],
        }
    }

    pub fn contains(self, t: &FactorizationType) -> bool {
        t.is(self.degrees())
    }
}

impl fmt::Display for EventFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventFamily::Five => "five",
            EventFamily::Type1112 => "1112",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown event family {0:?} (expected five or 1112)")]
pub struct UnknownFamily(pub String);

impl FromStr for EventFamily {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "five" | "5" => Ok(EventFamily::Five),
            "1112" | "type1112" => Ok(EventFamily::Type1112),
            _ => Err(UnknownFamily(s.to_string())),
        }
    }
}

/// `f ∈ T_p(e)`; ramified primes belong to no event.
pub fn event_membership(f: &QuinticPoly, p: u64, e: EventFamily) -> bool {
    e.contains(&factorization_type(f, p))
}

/// Proportion of monic quintics over `F_p` lying in `T_p(e)`:
/// `(p^5 - p) / 5` irreducibles, and `C(p, 3) (p^2 - p) / 2` of type 1112.
pub fn local_density(p: u64, e: EventFamily) -> Rational {
    let pb = BigInt::from(p);
    let p5 = pb.pow(5);
    let count = match e {
        EventFamily::Five => (&p5 - &pb) / 5,
        EventFamily::Type1112 => {
            let q = &pb - 1;
            &pb * &pb * &q * &q * (&pb - 2) / 12
        }
    };
    Rational::new(count, p5)
}

/// Polynomials of a coefficient box, sifted by `T_p(family)` for `p < z`.
///
/// Event membership is tabulated once as one bitmask over the sifting
/// primes per polynomial; `A(d)` is then a superset sum over the mask
/// histogram.
#[derive(Debug, Clone)]
pub struct QuinticBoxInstance {
    bx: CoefficientBox,
    family: EventFamily,
    primes: Vec<u64>,
    histogram: HashMap<u64, u64>,
    /// `superset[m] = #{f : mask(f) ⊇ m}` when there are few primes.
    superset: Option<Vec<u64>>,
    budget: u64,
}

pub const DEFAULT_BOX_BUDGET: u64 = 50_000_000;
const MAX_MASK_PRIMES: usize = 64;
const MAX_SUPERSET_PRIMES: usize = 22;

impl QuinticBoxInstance {
    /// Tabulates events for the primes below `z`.
    pub fn new(bx: CoefficientBox, family: EventFamily, z: u64) -> Result<Self, SieveError> {
        Self::with_budget(bx, family, z, DEFAULT_BOX_BUDGET)
    }

    pub fn with_budget(
        bx: CoefficientBox,
        family: EventFamily,
        z: u64,
        budget: u64,
    ) -> Result<Self, SieveError> {
        let primes = primes_below(z);
        let work = bx.len().saturating_mul(primes.len().max(1) as u64);
        if bx.len() > budget || work > budget.saturating_mul(64) {
            return Err(SieveError::BudgetExceeded {
                needed: work,
                budget,
            });
        }
        if primes.len() > MAX_MASK_PRIMES {
            return Err(SieveError::BudgetExceeded {
                needed: primes.len() as u64,
                budget: MAX_MASK_PRIMES as u64,
            });
        }
        let histogram = bx
            .slices()
            .into_par_iter()
            .map(|slice| {
                let mut h: HashMap<u64, u64> = HashMap::new();
                for f in slice.iter() {
                    *h.entry(event_mask(&f, &primes, family)).or_default() += 1;
                }
                h
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        let superset = (primes.len() <= MAX_SUPERSET_PRIMES).then(|| {
            let k = primes.len();
            let mut table = vec![0u64; 1 << k];
            for (&m, &c) in &histogram {
                table[m as usize] += c;
            }
            for bit in 0..k {
                for m in 0..table.len() {
                    if m & (1 << bit) == 0 {
                        table[m] += table[m | (1 << bit)];
                    }
                }
            }
            table
        });
        Ok(QuinticBoxInstance {
            bx,
            family,
            primes,
            histogram,
            superset,
            budget,
        })
    }

    pub fn coefficient_box(&self) -> CoefficientBox {
        self.bx
    }

    pub fn family(&self) -> EventFamily {
        self.family
    }

    /// Sifting primes covered by the event table.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn mask_of(&self, primes: &[u64]) -> Option<u64> {
        let mut m = 0u64;
        for p in primes {
            let i = self.primes.binary_search(p).ok()?;
            m |= 1 << i;
        }
        Some(m)
    }

    fn count_superset(&self, m: u64) -> u64 {
        match &self.superset {
            Some(t) => t[m as usize],
            None => self
                .histogram
                .iter()
                .filter(|(&k, _)| k & m == m)
                .map(|(_, &c)| c)
                .sum(),
        }
    }

    fn enumerate_count(
        &self,
        pred: impl Fn(&QuinticPoly) -> bool + Sync,
    ) -> Result<u64, SieveError> {
        self.bx.check_budget(self.budget)?;
        Ok(self
            .bx
            .slices()
            .into_par_iter()
            .map(|s| s.iter().filter(|f| pred(f)).count() as u64)
            .sum())
    }
}

fn event_mask(f: &QuinticPoly, primes: &[u64], family: EventFamily) -> u64 {
    primes
        .iter()
        .enumerate()
        .filter(|(_, &p)| event_membership(f, p, family))
        .fold(0u64, |m, (i, _)| m | (1 << i))
}

impl SiftedInstance for QuinticBoxInstance {
    fn size(&self) -> Rational {
        Rational::from_integer(self.bx.len().into())
    }

    fn count_divisible(&self, d: u64) -> Result<BigInt, SieveError> {
        let ps = squarefree_factors(d).ok_or(SieveError::NotSquarefree(d))?;
        let n = match self.mask_of(&ps) {
            Some(m) => self.count_superset(m),
            None => {
                let fam = self.family;
                self.enumerate_count(|f| ps.iter().all(|&p| event_membership(f, p, fam)))?
            }
        };
        Ok(BigInt::from(n))
    }

    fn density(&self) -> DensityFunction {
        DensityFunction::from_fn(&self.primes, |p| local_density(p, self.family))
    }

    fn sifted_count(&self, primes: &[u64]) -> Result<BigInt, SieveError> {
        let fam = self.family;
        let n = self.enumerate_count(|f| !primes.iter().any(|&p| event_membership(f, p, fam)))?;
        Ok(BigInt::from(n))
    }
}

/// Number of degenerate polynomials in the box.
pub fn degenerate_count_exact(bx: &CoefficientBox, budget: u64) -> Result<u64, SieveError> {
    bx.check_budget(budget)?;
    Ok(bx
        .slices()
        .into_par_iter()
        .map(|s| s.iter().filter(is_degenerate).count() as u64)
        .sum())
}

/// Degenerate polynomials having a `T_p(1112)` event and a `T_q(FIVE)`
/// event at primes `p, q` below `z`.
pub fn disjointness_violations(
    bx: &CoefficientBox,
    z: u64,
    budget: u64,
) -> Result<Vec<QuinticPoly>, SieveError> {
    bx.check_budget(budget)?;
    let primes = primes_below(z);
    let mut out: Vec<QuinticPoly> = bx
        .slices()
        .into_par_iter()
        .flat_map_iter(|s| {
            let primes = &primes;
            s.iter()
                .filter(move |f| {
                    let types: Vec<FactorizationType> =
                        primes.iter().map(|&p| factorization_type(f, p)).collect();
                    let both = EventFamily::ALL
                        .iter()
                        .all(|e| types.iter().any(|t| e.contains(t)));
                    both && is_degenerate(f)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// One polynomial of a box scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub poly: QuinticPoly,
    pub disc: BigInt,
    pub degenerate: bool,
    pub types: Vec<FactorizationType>,
}

impl ScanRow {
    pub fn new(poly: QuinticPoly, primes: &[u64]) -> Self {
        ScanRow {
            poly,
            disc: poly.discriminant(),
            degenerate: is_degenerate(&poly),
            types: primes
                .iter()
                .map(|&p| factorization_type(&poly, p))
                .collect(),
        }
    }

    pub fn csv_header(primes: &[u64]) -> String {
        let mut cols = vec!["c4", "c3", "c2", "c1", "c0", "disc", "degenerate"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        cols.extend(primes.iter().map(|p| format!("p{p}")));
        cols.join(",")
    }

    pub fn csv_record(&self) -> String {
        let mut cols: Vec<String> = self.poly.coeffs.iter().map(i64::to_string).collect();
        cols.push(self.disc.to_string());
        cols.push(u8::from(self.degenerate).to_string());
        cols.extend(self.types.iter().map(ToString::to_string));
        cols.join(",")
    }

    /// Both an 1112 event and a FIVE event occur among the scanned primes.
    pub fn has_both_events(&self) -> bool {
        EventFamily::ALL
            .iter()
            .all(|e| self.types.iter().any(|t| e.contains(t)))
    }
}

/// Rows in lexicographic order.
pub fn scan(bx: &CoefficientBox, primes: &[u64], budget: u64) -> Result<Vec<ScanRow>, SieveError> {
    bx.check_budget(budget)?;
    let chunks: Vec<Vec<ScanRow>> = bx
        .slices()
        .into_par_iter()
        .map(|s| s.iter().map(|f| ScanRow::new(f, primes)).collect())
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}
