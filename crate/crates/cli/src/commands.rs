use std::collections::BTreeMap;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use sievekit::arith::{parse_rational, primes_below, rat_to_f64};
use sievekit::exponent::{balance, BalanceOutcome, BalanceProblem};
use sievekit::instances::{
    degenerate_count_exact, disjointness_violations, local_density, scan, CoefficientBox,
    EventFamily, ForbiddenResidues, QuinticBoxInstance, QuinticPoly, ResidueAvoidanceInstance,
    ScanRow, DEFAULT_BOX_BUDGET,
};
use sievekit::maximal::{
    euler_product, field_count_prediction, squarefree_count_exact, squarefree_family, truncated_ie,
    zeta, EulerProductSpec, Interval, DEFAULT_IE_BUDGET,
};
use sievekit::sieve::{
    model_bound, selberg_weights, sieve_upper_bound, sifted_count_exact, BoundMode, BoundOptions,
    DensityFunction, RemainderModel, SievePlan, SieveReport, SiftedInstance, DEFAULT_SUPPORT_LIMIT,
};
use sievekit::Rational;

use crate::render::{rat_cells, rat_json, Rendered};
use crate::Failure;

/// Nonnegative integer, also written as an integral rational such as `"12/4"`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if !r.is_integer() {
        return Err(format!("{s:?} is not an integer"));
    }
    r.to_integer()
        .to_u64()
        .ok_or_else(|| format!("{s:?} is not a nonnegative 64-bit integer"))
}

pub fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// `const:a/b`, `inverse-p`, `scaled:k` (`k/p`) or `table:2=1/3,3=1/5`.
pub fn parse_density(s: &str) -> Result<DensityFunction, String> {
    let s = s.trim();
    if s == "inverse-p" {
        return Ok(DensityFunction::reciprocal());
    }
    let (kind, rest) = s.split_once(':').ok_or_else(|| {
        format!("unknown density {s:?} (expected const:a/b, inverse-p, scaled:k or table:p=g,...)")
    })?;
    match kind {
        "const" => Ok(DensityFunction::Constant(parse_rat(rest)?)),
        "scaled" => Ok(DensityFunction::ScaledReciprocal(parse_count(rest)?)),
        "table" => {
            let mut t = BTreeMap::new();
            for entry in rest.split(',').filter(|e| !e.trim().is_empty()) {
                let (p, g) = entry
                    .split_once('=')
                    .ok_or_else(|| format!("bad table entry {entry:?}"))?;
                t.insert(parse_count(p)?, parse_rat(g)?);
            }
            Ok(DensityFunction::Table(t))
        }
        _ => Err(format!("unknown density kind {kind:?}")),
    }
}

/// `lo:hi` for every coefficient, or five comma-separated ranges for
/// `c4, ..., c0`.
pub fn parse_box(s: &str) -> Result<CoefficientBox, String> {
    let range = |r: &str| -> Result<(i64, i64), String> {
        let (a, b) = r
            .split_once(':')
            .ok_or_else(|| format!("bad range {r:?} (expected lo:hi)"))?;
        let a = a
            .trim()
            .parse::<i64>()
            .map_err(|_| format!("bad bound {a:?}"))?;
        let b = b
            .trim()
            .parse::<i64>()
            .map_err(|_| format!("bad bound {b:?}"))?;
        Ok((a, b))
    };
    let parts: Vec<&str> = s.split(',').collect();
    let bx = match parts.len() {
        1 => {
            let (a, b) = range(parts[0])?;
            CoefficientBox::cube(a, b)
        }
        5 => {
            let mut ranges = [(0, 0); 5];
            for (slot, p) in ranges.iter_mut().zip(&parts) {
                *slot = range(p)?;
            }
            CoefficientBox::new(ranges)
        }
        _ => return Err(format!("box {s:?} needs one range or five")),
    };
    bx.map_err(|e| e.to_string())
}

/// Five integers `c4,...,c0` of `x^5 + c4 x^4 + ... + c0`.
pub fn parse_poly(s: &str) -> Result<QuinticPoly, String> {
    let c: Vec<i64> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad coefficient {x:?}"))
        })
        .collect::<Result<_, _>>()?;
    let c: [i64; 5] = c
        .try_into()
        .map_err(|_| "a quintic needs five coefficients c4,...,c0".to_string())?;
    Ok(QuinticPoly::new(c))
}

fn parse_family(s: &str) -> Result<EventFamily, String> {
    s.parse()
        .map_err(|e: sievekit::instances::UnknownFamily| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residues(pub Vec<i64>);

fn parse_residues(s: &str) -> Result<Residues, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad residue {x:?}"))
        })
        .collect::<Result<_, _>>()
        .map(Residues)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts(pub Vec<u64>);

fn parse_counts(s: &str) -> Result<Counts, String> {
    s.split(',')
        .map(parse_count)
        .collect::<Result<_, _>>()
        .map(Counts)
}

#[derive(Args, Debug)]
pub struct WeightsArgs {
    /// Local density: const:a/b, inverse-p, scaled:k or table:p=g,...
    #[arg(long, value_parser = parse_density)]
    pub g: DensityFunction,
    /// Sifting limit; primes below z are sifted.
    #[arg(long, value_parser = parse_count)]
    pub z: u64,
    /// Level D; the support is d with d^2 < D.
    #[arg(long, value_parser = parse_rat)]
    pub level: Rational,
}

pub fn weights(a: &WeightsArgs, budget: Option<u64>) -> Result<Rendered, Failure> {
    let limit = budget.map_or(DEFAULT_SUPPORT_LIMIT, |b| b as usize);
    let plan = SievePlan::with_limit(a.z, a.level.clone(), limit)?;
    let w = selberg_weights(&a.g, &plan)?;
    let h = sievekit::sieve::big_h(&a.g, &plan)?;
    let mut csv = String::from("d,lambda_num,lambda_den\n");
    for (d, l) in w.entries() {
        csv.push_str(&format!("{d},{}\n", rat_cells(l)));
    }
    let rows: Vec<Value> = w
        .entries()
        .iter()
        .map(|(d, l)| json!({"d": d, "lambda": rat_json(l)}))
        .collect();
    let json = json!({
        "z": a.z,
        "level": rat_json(&a.level),
        "h_total": rat_json(&h),
        "weights": rows,
    });
    Ok(Rendered { csv, json })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceKind {
    Residue,
    Quintic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Model,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, value_enum, default_value = "residue")]
    pub instance: InstanceKind,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, value_parser = parse_count)]
    pub z: u64,
    #[arg(long, value_parser = parse_rat)]
    pub level: Rational,
    /// Residue instance: integers 1..=n.
    #[arg(long, value_parser = parse_count)]
    pub n: Option<u64>,
    /// Residue instance: forbidden residues, reduced mod every prime.
    #[arg(long, value_parser = parse_residues, default_value = "0", allow_hyphen_values = true)]
    pub omega: Residues,
    /// Quintic instance: coefficient box.
    #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
    pub bx: Option<CoefficientBox>,
    /// Quintic instance: event family (five or 1112).
    #[arg(long, value_parser = parse_family)]
    pub family: Option<EventFamily>,
    /// Model mode: size X.
    #[arg(long, value_parser = parse_rat)]
    pub x: Option<Rational>,
    /// Model mode: density (defaults to the family's local densities).
    #[arg(long, value_parser = parse_density)]
    pub g: Option<DensityFunction>,
    #[arg(long, value_parser = parse_rat, default_value = "1")]
    pub main_coefficient: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "0")]
    pub kappa: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "0")]
    pub theta: Rational,
    /// Remainder constant C (a convention; no default beyond 1).
    #[arg(long, value_parser = parse_rat, default_value = "1")]
    pub constant: Rational,
}

fn report_json(r: &SieveReport) -> Value {
    json!({
        "mode": match r.mode { BoundMode::Exact => "exact", BoundMode::Model => "model" },
        "h_total": rat_json(&r.h_total),
        "exact_main": rat_json(&r.exact_main),
        "main": r.main_bound,
        "remainder": r.remainder_bound,
        "total": r.total_bound,
        "remainder_level_exponent": r.remainder_level_exponent.as_ref().map(rat_json),
    })
}

fn residue_instance(
    a: &BoundArgs,
    budget: Option<u64>,
) -> Result<ResidueAvoidanceInstance, Failure> {
    let n =
        a.n.ok_or_else(|| Failure::Usage("--instance residue needs --n".into()))?;
    let inst = ResidueAvoidanceInstance::new(n, ForbiddenResidues::Uniform(a.omega.0.clone()));
    Ok(match budget {
        Some(b) => inst.with_budget(b),
        None => inst,
    })
}

fn quintic_instance(a: &BoundArgs, budget: Option<u64>) -> Result<QuinticBoxInstance, Failure> {
    let bx =
        a.bx.ok_or_else(|| Failure::Usage("--instance quintic needs --box".into()))?;
    let family = a
        .family
        .ok_or_else(|| Failure::Usage("--instance quintic needs --family".into()))?;
    Ok(QuinticBoxInstance::with_budget(
        bx,
        family,
        a.z,
        budget.unwrap_or(DEFAULT_BOX_BUDGET),
    )?)
}

pub fn bound(a: &BoundArgs, budget: Option<u64>) -> Result<Rendered, Failure> {
    let plan = SievePlan::new(a.z, a.level.clone())?;
    let mut opts = BoundOptions::default();
    match a.mode {
        ModeArg::Model => {
            if let Some(b) = budget {
                opts.term_budget = b as usize;
            }
            let x =
                a.x.clone()
                    .ok_or_else(|| Failure::Usage("--mode model needs --x".into()))?;
            let density = match (&a.g, a.family) {
                (Some(g), _) => g.clone(),
                (None, Some(e)) => {
                    DensityFunction::from_fn(&primes_below(a.z), |p| local_density(p, e))
                }
                (None, None) => {
                    return Err(Failure::Usage("--mode model needs --g or --family".into()))
                }
            };
            let model = RemainderModel {
                main_coefficient: a.main_coefficient.clone(),
                density,
                kappa: a.kappa.clone(),
                theta: a.theta.clone(),
                constant: a.constant.clone(),
            };
            let r = model_bound(&model, &x, &plan, opts)?;
            let csv = format!(
                "mode,h_num,h_den,main,remainder,total,level_exponent_num,level_exponent_den\nmodel,{},{},{},{},{}\n",
                rat_cells(&r.h_total),
                r.main_bound,
                r.remainder_bound,
                r.total_bound,
                rat_cells(r.remainder_level_exponent.as_ref().expect("model mode sets the exponent")),
            );
            Ok(Rendered {
                csv,
                json: report_json(&r),
            })
        }
        ModeArg::Exact => {
            if let Some(b) = budget {
                opts.pair_budget = b;
            }
            let inst: Box<dyn SiftedInstance> = match a.instance {
                InstanceKind::Residue => Box::new(residue_instance(a, budget)?),
                InstanceKind::Quintic => Box::new(quintic_instance(a, budget)?),
            };
            let r = sieve_upper_bound(inst.as_ref(), &plan, BoundMode::Exact, opts)?;
            let oracle = sifted_count_exact(inst.as_ref(), a.z)?;
            let ratio = if oracle.is_zero() {
                None
            } else {
                Some(rat_to_f64(
                    &(&r.exact_main / Rational::from_integer(oracle.clone())),
                ))
            };
            let csv = format!(
                "mode,h_num,h_den,bound_num,bound_den,total,oracle,ratio\nexact,{},{},{},{},{}\n",
                rat_cells(&r.h_total),
                rat_cells(&r.exact_main),
                r.total_bound,
                oracle,
                ratio.map_or(String::new(), |v| v.to_string()),
            );
            let mut json = report_json(&r);
            json["oracle"] = json!(oracle.to_string());
            json["ratio"] = json!(ratio);
            Ok(Rendered { csv, json })
        }
    }
}

#[derive(Args, Debug)]
pub struct BalanceArgs {
    /// Comma-separated terms such as "X^1*T^-1,X^39/40*T^3".
    #[arg(long, allow_hyphen_values = true)]
    pub terms: String,
    #[arg(long, value_parser = parse_rat, default_value = "0", allow_hyphen_values = true)]
    pub lower: Rational,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    pub upper: Option<Rational>,
}

pub fn balance_cmd(a: &BalanceArgs) -> Result<Rendered, Failure> {
    let terms: Vec<&str> = a
        .terms
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    let problem = BalanceProblem::parse(&terms)?.with_interval(a.lower.clone(), a.upper.clone())?;
    match balance(&problem) {
        BalanceOutcome::Optimal(r) => {
            let active: Vec<String> = r.active.iter().map(|i| terms[*i].to_string()).collect();
            let csv = format!(
                "theta_num,theta_den,exponent_num,exponent_den,active_terms\n{},{},\"{}\"\n",
                rat_cells(&r.theta),
                rat_cells(&r.exponent),
                active.join(";"),
            );
            let json = json!({
                "free": problem.free(),
                "theta": rat_json(&r.theta),
                "exponent": rat_json(&r.exponent),
                "active_terms": active,
            });
            Ok(Rendered { csv, json })
        }
        BalanceOutcome::Unbounded => Err(Failure::Usage(format!(
            "every term decreases in {}; the maximum is unbounded below",
            problem.free()
        ))),
    }
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Coefficient box: lo:hi, or five ranges for c4,...,c0.
    #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true, conflicts_with = "poly")]
    pub bx: Option<CoefficientBox>,
    /// A single polynomial c4,...,c0.
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: Option<QuinticPoly>,
    /// Primes below z are scanned and sifted.
    #[arg(long, value_parser = parse_count, default_value = "32")]
    pub z: u64,
    /// Level of the two Selberg bounds.
    #[arg(long, value_parser = parse_rat, default_value = "10000")]
    pub level: Rational,
    /// Emit only the summary.
    #[arg(long)]
    pub summary_only: bool,
}

pub fn quintic_scan(a: &ScanArgs, budget: Option<u64>) -> Result<Rendered, Failure> {
    let bx = match (a.bx, a.poly) {
        (Some(b), None) => b,
        (None, Some(f)) => CoefficientBox::single(f),
        _ => return Err(Failure::Usage("quintic-scan needs --box or --poly".into())),
    };
    let budget = budget.unwrap_or(DEFAULT_BOX_BUDGET);
    bx.check_budget(budget)?;
    let plan = SievePlan::new(a.z, a.level.clone())?;
    let primes = primes_below(a.z);
    let degenerate = degenerate_count_exact(&bx, budget)?;
    let violations = disjointness_violations(&bx, a.z, budget)?;
    let mut bounds = Vec::new();
    for family in EventFamily::ALL {
        let inst = QuinticBoxInstance::with_budget(bx, family, a.z, budget)?;
        let r = sieve_upper_bound(&inst, &plan, BoundMode::Exact, BoundOptions::default())?;
        bounds.push((family, r.exact_main));
    }
    let bound_sum = bounds.iter().map(|(_, b)| b.clone()).sum::<Rational>();
    let summary = json!({
        "polynomials": bx.len(),
        "degenerate": degenerate,
        "selberg_bound_five": rat_json(&bounds[0].1),
        "selberg_bound_1112": rat_json(&bounds[1].1),
        "bound_sum": rat_json(&bound_sum),
        "dominated": Rational::from_integer(BigInt::from(degenerate)) <= bound_sum,
        "violations": violations.len(),
    });
    let rows = if a.summary_only {
        Vec::new()
    } else {
        scan(&bx, &primes, budget)?
    };
    let mut csv = String::new();
    if !a.summary_only {
        csv.push_str(&ScanRow::csv_header(&primes));
        csv.push('\n');
        for r in &rows {
            csv.push_str(&r.csv_record());
            csv.push('\n');
        }
    }
    // the summary follows the rows as commented key,value lines
    csv.push_str(&format!("# polynomials,{}\n", bx.len()));
    csv.push_str(&format!("# degenerate,{degenerate}\n"));
    for (family, b) in &bounds {
        csv.push_str(&format!("# selberg_bound_{family},{}\n", rat_cells(b)));
    }
    csv.push_str(&format!("# violations,{}\n", violations.len()));
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "coefficients": r.poly.coeffs,
                "disc": r.disc.to_string(),
                "degenerate": r.degenerate,
                "types": r.types.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    let json = json!({ "primes": primes, "summary": summary, "rows": json_rows });
    Ok(Rendered { csv, json })
}

#[derive(Args, Debug)]
pub struct SquarefreeArgs {
    /// One or more sizes X.
    #[arg(long, value_parser = parse_counts)]
    pub x: Counts,
    /// One or more truncations T.
    #[arg(long, value_parser = parse_counts)]
    pub t: Counts,
}

pub fn squarefree(a: &SquarefreeArgs, budget: Option<u64>) -> Result<Rendered, Failure> {
    let budget = budget.unwrap_or(DEFAULT_IE_BUDGET);
    let mut csv = String::from("X,T,estimate,exact,tail_bound_num,tail_bound_den\n");
    let mut rows = Vec::new();
    for &x in &a.x.0 {
        let exact = squarefree_count_exact(x, budget)?;
        for &t in &a.t.0 {
            let r = truncated_ie(&squarefree_family(x), t, budget)?;
            csv.push_str(&format!(
                "{x},{t},{},{exact},{}\n",
                r.estimate,
                rat_cells(&r.tail_bound)
            ));
            rows.push(json!({
                "X": x,
                "T": t,
                "estimate": r.estimate.to_string(),
                "exact": exact,
                "tail_bound": rat_json(&r.tail_bound),
            }));
        }
    }
    Ok(Rendered {
        csv,
        json: Value::Array(rows),
    })
}

#[derive(Args, Debug)]
pub struct EulerArgs {
    /// field-density, zeta-reciprocal, trivial, or poly:c0,c1,... (factor as a
    /// polynomial in 1/p).
    #[arg(long, default_value = "field-density", conflicts_with = "zeta")]
    pub product: String,
    /// Factor out zeta values before multiplying (poly products).
    #[arg(long)]
    pub accelerate: bool,
    #[arg(long, value_parser = parse_count, default_value = "100000")]
    pub truncation: u64,
    /// Enclose zeta(s) instead of a product.
    #[arg(long, value_parser = parse_count)]
    pub zeta: Option<u64>,
}

fn enclosure(value: Interval, truncation: Option<u64>) -> Rendered {
    let csv = format!(
        "value_lo,value_hi,truncation_P\n{:e},{:e},{}\n",
        value.lo(),
        value.hi(),
        truncation.map_or(String::new(), |p| p.to_string())
    );
    let json =
        json!({ "value_lo": value.lo(), "value_hi": value.hi(), "truncation_P": truncation });
    Rendered { csv, json }
}

fn product_spec(name: &str, accelerate: bool) -> Result<EulerProductSpec, Failure> {
    let spec = match name {
        "field-density" => EulerProductSpec::field_density(),
        "zeta-reciprocal" => EulerProductSpec::zeta_reciprocal(),
        "trivial" => EulerProductSpec::trivial(),
        other => {
            let coeffs = other
                .strip_prefix("poly:")
                .ok_or_else(|| Failure::Usage(format!("unknown product {other:?}")))?;
            let coeffs: Vec<Rational> = coeffs
                .split(',')
                .map(parse_rat)
                .collect::<Result<_, _>>()
                .map_err(Failure::Usage)?;
            EulerProductSpec::from_polynomial(coeffs)?
        }
    };
    Ok(if accelerate { spec.accelerated() } else { spec })
}

pub fn euler(a: &EulerArgs) -> Result<Rendered, Failure> {
    if let Some(s) = a.zeta {
        let s = u32::try_from(s)
            .map_err(|_| Failure::Usage(format!("zeta argument {s} is too large")))?;
        return Ok(enclosure(zeta(s)?, None));
    }
    let spec = product_spec(&a.product, a.accelerate)?;
    let e = euler_product(&spec, a.truncation)?;
    Ok(enclosure(e.value, Some(e.truncation)))
}

#[derive(Args, Debug)]
pub struct PredictArgs {
    /// Signature index i in {0, 1, 2}.
    #[arg(long, value_parser = parse_count)]
    pub index: u64,
    #[arg(long, value_parser = parse_rat)]
    pub x: Rational,
    #[arg(long, value_parser = parse_count, default_value = "100000")]
    pub truncation: u64,
}

pub fn predict(a: &PredictArgs) -> Result<Rendered, Failure> {
    let p = field_count_prediction(a.index as usize, &a.x, a.truncation)?;
    let mut r = enclosure(p.enclosure, Some(p.product.truncation));
    r.json["value"] = json!(p.value);
    r.json["index"] = json!(a.index);
    r.json["x"] = rat_json(&a.x);
    Ok(r)
}
