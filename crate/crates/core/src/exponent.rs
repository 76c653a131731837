//! Power-term bookkeeping and minimax exponent balancing.
//!
//! A term `X^a P^b` under the substitution `P = X^θ` has X-exponent
//! `a + bθ`; balancing minimises the largest of these affine functions over
//! an interval of `θ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{parse_rational, RatDisplay, Rational};

/// Name of the size parameter every term is measured against.
pub const BASE: &str = "X";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExponentError {
    #[error("term {term} references parameter {name}, expected only X and {free}")]
    StrayParameter {
        term: String,
        name: String,
        free: String,
    },
    #[error("balance problem has no terms")]
    NoTerms,
    #[error("empty interval for theta: [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },
    #[error("cannot parse term {0:?}")]
    Parse(String),
    #[error("saving must be positive, got {0}")]
    NonPositiveSaving(String),
    #[error("remainder exponent must be nonnegative, got {0}")]
    NegativeRemainderExponent(String),
}

/// `prod_name name^exponent`, with annotations that do not take part in
/// balancing: an ε-padding flag and a power of `log X`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PowerTerm {
    exponents: BTreeMap<String, Rational>,
    pub eps_padded: bool,
    pub log_power: u32,
}

impl PowerTerm {
    pub fn constant() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, exponent: Rational) -> Self {
        if exponent.is_zero() {
            self.exponents.remove(name);
        } else {
            self.exponents.insert(name.to_string(), exponent);
        }
        self
    }

    /// `X^a P^b`.
    pub fn monomial(a: Rational, free: &str, b: Rational) -> Self {
        Self::constant().with(BASE, a).with(free, b)
    }

    pub fn exponent(&self, name: &str) -> Rational {
        self.exponents
            .get(name)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.exponents.keys().map(String::as_str)
    }

    /// `(a, b)` with the term equal to `X^a P^b` in the free parameter `P`.
    pub fn affine(&self, free: &str) -> Result<(Rational, Rational), ExponentError> {
        if let Some(name) = self.names().find(|&n| n != BASE && n != free) {
            return Err(ExponentError::StrayParameter {
                term: self.to_string(),
                name: name.to_string(),
                free: free.to_string(),
            });
        }
        Ok((self.exponent(BASE), self.exponent(free)))
    }

    /// X-exponent after `P = X^θ`.
    pub fn substitute(&self, free: &str, theta: &Rational) -> Result<Rational, ExponentError> {
        let (a, b) = self.affine(free)?;
        Ok(a + b * theta)
    }
}

impl fmt::Display for PowerTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(n, e)| {
                if e.is_one() {
                    n.clone()
                } else {
                    format!("{n}^{}", RatDisplay(e))
                }
            })
            .collect();
        if self.log_power > 0 {
            parts.push(if self.log_power == 1 {
                "log".into()
            } else {
                format!("log^{}", self.log_power)
            });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("*"))?;
        if self.eps_padded {
            write!(f, "+eps")?;
        }
        Ok(())
    }
}

/// Parses `"X^39/40*T^3"`, `"X*D^-1/2"`, `"X^(199/200)*T"`, `"1"`.
/// A factor `log` or `log^k` sets the log annotation; a trailing `+eps`
/// sets the ε annotation.
impl FromStr for PowerTerm {
    type Err = ExponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExponentError::Parse(s.to_string());
        let mut body = s.trim();
        let mut term = PowerTerm::constant();
        if let Some(rest) = body.strip_suffix("+eps") {
            term.eps_padded = true;
            body = rest.trim_end();
        }
        if body.is_empty() {
            return Err(err());
        }
        for factor in body.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                    (n.trim(), parse_rational(e).map_err(|_| err())?)
                }
                None => (factor, Rational::one()),
            };
            if name == "1" && exp.is_one() {
                continue;
            }
            if name == "log" {
                if !exp.is_integer() || exp.is_negative() {
                    return Err(err());
                }
                term.log_power += u32::try_from(exp.to_integer()).map_err(|_| err())?;
                continue;
            }
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(err());
            }
            let total = term.exponent(name) + exp;
            term = term.with(name, total);
        }
        Ok(term)
    }
}

/// Minimise `max_i (a_i + b_i θ)` over `lower <= θ <= upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct BalanceProblem {
    terms: Vec<PowerTerm>,
    free: String,
    lower: Rational,
    upper: Option<Rational>,
}

impl BalanceProblem {
    /// Interval defaults to `[0, ∞)`.
    pub fn new(terms: Vec<PowerTerm>, free: &str) -> Result<Self, ExponentError> {
        if terms.is_empty() {
            return Err(ExponentError::NoTerms);
        }
        for t in &terms {
            t.affine(free)?;
        }
        Ok(BalanceProblem {
            terms,
            free: free.to_string(),
            lower: Rational::zero(),
            upper: None,
        })
    }

    /// Terms given as strings; the free parameter is the unique non-`X`
    /// name (or `T` if there is none).
    pub fn parse(terms: &[&str]) -> Result<Self, ExponentError> {
        let parsed: Vec<PowerTerm> = terms.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
        let mut names: Vec<&str> = parsed
            .iter()
            .flat_map(|t| t.names())
            .filter(|&n| n != BASE)
            .collect();
        names.sort_unstable();
        names.dedup();
        let free = names.first().copied().unwrap_or("T").to_string();
        Self::new(parsed, &free)
    }

    pub fn with_interval(
        mut self,
        lower: Rational,
        upper: Option<Rational>,
    ) -> Result<Self, ExponentError> {
        if let Some(hi) = &upper {
            if *hi < lower {
                return Err(ExponentError::EmptyInterval {
                    lo: RatDisplay(&lower).to_string(),
                    hi: RatDisplay(hi).to_string(),
                });
            }
        }
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn free(&self) -> &str {
        &self.free
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.upper.as_ref()
    }

    fn lines(&self) -> Vec<(Rational, Rational)> {
        self.terms
            .iter()
            .map(|t| t.affine(&self.free).expect("validated"))
            .collect()
    }

    /// `max_i (a_i + b_i θ)`.
    pub fn value_at(&self, theta: &Rational) -> Rational {
        self.lines()
            .into_iter()
            .map(|(a, b)| a + b * theta)
            .max()
            .expect("at least one term")
    }

    fn contains(&self, theta: &Rational) -> bool {
        *theta >= self.lower && self.upper.as_ref().is_none_or(|hi| theta <= hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceResult {
    pub theta: Rational,
    pub exponent: Rational,
    /// Indices of the terms attaining the maximum at `theta`.
    pub active: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceOutcome {
    Optimal(BalanceResult),
    /// Every term decreases without bound as `θ → ∞`.
    Unbounded,
}

impl BalanceOutcome {
    pub fn optimal(self) -> Option<BalanceResult> {
        match self {
            BalanceOutcome::Optimal(r) => Some(r),
            BalanceOutcome::Unbounded => None,
        }
    }
}

/// Exact minimax over the endpoints and the pairwise intersections; ties
/// go to the smallest `θ`.
pub fn balance(problem: &BalanceProblem) -> BalanceOutcome {
    let lines = problem.lines();
    if problem.upper.is_none() && lines.iter().all(|(_, b)| b.is_negative()) {
        return BalanceOutcome::Unbounded;
    }
    let mut candidates = vec![problem.lower.clone()];
    candidates.extend(problem.upper.clone());
    for (i, (a1, b1)) in lines.iter().enumerate() {
        for (a2, b2) in &lines[i + 1..] {
            if b1 != b2 {
                let t = (a2 - a1) / (b1 - b2);
                if problem.contains(&t) {
                    candidates.push(t);
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut best: Option<(Rational, Rational)> = None;
    for t in candidates {
        let v = problem.value_at(&t);
        if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            best = Some((t, v));
        }
    }
    let (theta, exponent) = best.expect("interval has a lower endpoint");
    let active = lines
        .iter()
        .enumerate()
        .filter(|(_, (a, b))| a + b * &theta == exponent)
        .map(|(i, _)| i)
        .collect();
    BalanceOutcome::Optimal(BalanceResult {
        theta,
        exponent,
        active,
    })
}

/// Exponent of `sum_{d < D} tau_3(d) d^A` as a power of `D` (up to
/// `D^ε`).
pub fn remainder_sum_exponent(a: &Rational) -> Rational {
    a + Rational::one()
}

/// The two-term problem `{X^a D^(-1/2), X^(a-δ) D^(A+1)}` behind a
/// power-saving error term.
pub fn power_saving_problem(
    a: &Rational,
    delta: &Rational,
    big_a: &Rational,
) -> Result<BalanceProblem, ExponentError> {
    if !delta.is_positive() {
        return Err(ExponentError::NonPositiveSaving(
            RatDisplay(delta).to_string(),
        ));
    }
    if big_a.is_negative() {
        return Err(ExponentError::NegativeRemainderExponent(
            RatDisplay(big_a).to_string(),
        ));
    }
    let half = Rational::new(1.into(), 2.into());
    let main = PowerTerm::monomial(a.clone(), "D", -half);
    let mut rem = PowerTerm::monomial(a - delta, "D", remainder_sum_exponent(big_a));
    rem.eps_padded = true;
    BalanceProblem::new(vec![main, rem], "D")
}

/// `a - δ / (2A + 3)`.
pub fn power_saving_exponent(
    a: &Rational,
    delta: &Rational,
    big_a: &Rational,
) -> Result<Rational, ExponentError> {
    power_saving_problem(a, delta, big_a)?;
    let three = Rational::from_integer(3.into());
    Ok(a - delta / (Rational::from_integer(2.into()) * big_a + three))
}

/// Balances the degenerate bound `X^deg T`, the cutoff error summed to
/// `X^cutoff T^3`, and the tail `X / T^uniform` in `T = X^θ`.
pub fn field_count_problem(
    deg_exponent: &Rational,
    cutoff_exponent: &Rational,
    uniform_exponent: &Rational,
) -> BalanceProblem {
    let one = Rational::one();
    let mut degenerate = PowerTerm::monomial(deg_exponent.clone(), "T", one.clone());
    degenerate.eps_padded = true;
    let mut cutoff = PowerTerm::monomial(
        cutoff_exponent.clone(),
        "T",
        Rational::from_integer(3.into()),
    );
    cutoff.eps_padded = true;
    let mut tail = PowerTerm::monomial(one, "T", -uniform_exponent.clone());
    tail.eps_padded = true;
    BalanceProblem::new(vec![tail, cutoff, degenerate], "T").expect("terms use X and T only")
}

pub fn field_count_budget(
    deg_exponent: &Rational,
    cutoff_exponent: &Rational,
    uniform_exponent: &Rational,
) -> BalanceOutcome {
    balance(&field_count_problem(
        deg_exponent,
        cutoff_exponent,
        uniform_exponent,
    ))
}
