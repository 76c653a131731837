use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;

use super::{h_of, DensityFunction, SieveError, SievePlan};
use crate::arith::{squarefree_factors, Rational};

/// Selberg's optimal `lambda_d` on a plan support.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveWeights {
    entries: Vec<(u64, Rational)>,
}

impl SieveWeights {
    /// Arbitrary weights, sorted by `d`. Used for perturbation checks.
    pub fn from_entries(mut entries: Vec<(u64, Rational)>) -> Self {
        entries.sort_by_key(|(d, _)| *d);
        SieveWeights { entries }
    }

    pub fn entries(&self) -> &[(u64, Rational)] {
        &self.entries
    }

    pub fn get(&self, d: u64) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&d, |(k, _)| *k)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<(u64, Rational)> {
        self.entries
    }
}

/// `H = sum_{d in support} h(d)`. Primes with `g(p) = 0` contribute only
/// `h = 0` terms, so this equals the sum over the restricted support.
pub fn big_h(g: &DensityFunction, plan: &SievePlan) -> Result<Rational, SieveError> {
    let mut total = Rational::zero();
    for &d in plan.support() {
        total += h_of(g, d)?;
    }
    Ok(total)
}

/// Optimal weights
///
/// `lambda_d = mu(d) / (g(d) H) * sum_{e in support, d | e} h(e)`,
///
/// which minimises `sum lambda_d lambda_e g([d, e])` subject to
/// `lambda_1 = 1`, with minimum `1 / H`. Primes of zero density are removed
/// from the plan first.
pub fn selberg_weights(g: &DensityFunction, plan: &SievePlan) -> Result<SieveWeights, SieveError> {
    let plan = plan.restricted_to(g)?;
    let support = plan.support();
    if support.is_empty() {
        return Err(SieveError::EmptySupport);
    }

    let index: HashMap<u64, usize> = support.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let factors: Vec<Vec<u64>> = support
        .iter()
        .map(|&d| squarefree_factors(d).ok_or(SieveError::NotSquarefree(d)))
        .collect::<Result<_, _>>()?;

    let mut h = Vec::with_capacity(support.len());
    for &d in support {
        h.push(h_of(g, d)?);
    }
    let h_total: Rational = h.iter().sum();

    // divisor-closed support: push each h(e) down to every divisor of e
    let mut upper = vec![Rational::zero(); support.len()];
    for (i, ps) in factors.iter().enumerate() {
        let k = ps.len();
        for mask in 0u32..(1u32 << k) {
            let d: u64 = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| ps[b])
                .product();
            upper[index[&d]] += &h[i];
        }
    }

    let mut entries = Vec::with_capacity(support.len());
    for (i, &d) in support.iter().enumerate() {
        let g_d = g.at(d)?;
        let mut lambda = &upper[i] / (g_d * &h_total);
        if factors[i].len() % 2 == 1 {
            lambda = -lambda;
        }
        entries.push((d, lambda));
    }
    Ok(SieveWeights { entries })
}

/// `sum_{d, e} lambda_d lambda_e g(lcm(d, e))`, exact.
pub fn quadratic_form(g: &DensityFunction, w: &SieveWeights) -> Result<Rational, SieveError> {
    let mut cache: HashMap<u64, Rational> = HashMap::new();
    let mut total = Rational::zero();
    for (d, ld) in w.entries() {
        let mut row = Rational::zero();
        for (e, le) in w.entries() {
            let m = d.lcm(e);
            let gm = match cache.get(&m) {
                Some(v) => v.clone(),
                None => {
                    let v = g.at(m)?;
                    cache.insert(m, v.clone());
                    v
                }
            };
            row += le * gm;
        }
        total += ld * row;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use num_traits::{One, Signed};

    #[test]
    fn big_h_examples() {
        let half = DensityFunction::Constant(rat(1, 2));
        let plan = SievePlan::new(4, rat_int(16)).unwrap();
        assert_eq!(big_h(&half, &plan).unwrap(), rat(3, 1));

        let plan = SievePlan::new(2, rat_int(4)).unwrap();
        assert_eq!(big_h(&half, &plan).unwrap(), rat(1, 1));

        let recip = DensityFunction::reciprocal();
        let plan = SievePlan::new(5, rat_int(25)).unwrap();
        assert_eq!(big_h(&recip, &plan).unwrap(), rat(5, 2));
    }

    #[test]
    fn trivial_support() {
        let g = DensityFunction::Constant(rat(1, 5));
        let plan = SievePlan::new(2, rat_int(4)).unwrap();
        let w = selberg_weights(&g, &plan).unwrap();
        assert_eq!(w.entries(), &[(1, rat(1, 1))]);
        assert_eq!(quadratic_form(&g, &w).unwrap(), rat(1, 1));
    }

    /// Brute-force oracle: minimise the form over (lambda_2, lambda_3) with
    /// lambda_1 = 1 by solving the 2x2 stationarity system.
    #[test]
    fn three_element_support_matches_linear_algebra() {
        let g = DensityFunction::Constant(rat(1, 2));
        let plan = SievePlan::new(4, rat_int(16)).unwrap();
        // Q(l2, l3) = 1 + g(2)(2 l2 + l2^2) + g(3)(2 l3 + l3^2) + 2 g(6) l2 l3
        // dQ/dl2 = 2 g2 + 2 g2 l2 + 2 g6 l3 = 0, dQ/dl3 = 2 g3 + 2 g3 l3 + 2 g6 l2 = 0
        let (g2, g3, g6) = (rat(1, 2), rat(1, 2), rat(1, 4));
        // [g2 g6; g6 g3] [l2; l3] = [-g2; -g3]
        let det = &g2 * &g3 - &g6 * &g6;
        let l2 = (-&g2 * &g3 + &g6 * &g3) / &det;
        let l3 = (-&g3 * &g2 + &g6 * &g2) / &det;
        let w = selberg_weights(&g, &plan).unwrap();
        assert_eq!(w.get(2).unwrap(), &l2);
        assert_eq!(w.get(3).unwrap(), &l3);
        assert_eq!(quadratic_form(&g, &w).unwrap(), rat(1, 3));
    }

    #[test]
    fn hand_expanded_form() {
        let g = DensityFunction::Table([(2, rat(1, 2))].into_iter().collect());
        let w = SieveWeights::from_entries(vec![(1, rat(1, 1)), (2, rat(-1, 1))]);
        // g(1) - 2 g(2) + g(2)
        assert_eq!(quadratic_form(&g, &w).unwrap(), rat(1, 2));
    }

    #[test]
    fn normalized_and_bounded() {
        let g = DensityFunction::reciprocal();
        let plan = SievePlan::new(30, rat_int(2_000)).unwrap();
        let w = selberg_weights(&g, &plan).unwrap();
        assert!(w.get(1).is_some_and(|l| l.is_one()));
        for (_, l) in w.entries() {
            assert!(l.abs() <= rat(1, 1));
        }
        let h = big_h(&g, &plan).unwrap();
        assert_eq!(quadratic_form(&g, &w).unwrap(), h.recip());
    }

    #[test]
    fn singular_density_rejected() {
        let g = DensityFunction::Constant(rat(1, 1));
        let plan = SievePlan::new(10, rat_int(100)).unwrap();
        assert_eq!(
            selberg_weights(&g, &plan),
            Err(SieveError::SingularDensity(2))
        );
    }
}
