//! The ten acceptance criteria, each at its stated tolerance and time
//! limit. Prints one PASS/FAIL line per criterion and exits nonzero if any
//! fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sievekit::arith::{primes_up_to, rat, rat_to_f64};
use sievekit::exponent::{balance, power_saving_exponent, power_saving_problem, BalanceProblem};
use sievekit::instances::{
    degenerate_count_exact, disjointness_violations, event_membership, local_density,
    CoefficientBox, EventFamily, QuinticBoxInstance, ResidueAvoidanceInstance,
};
use sievekit::maximal::{
    euler_product, field_count_prediction, overring_local_factor, overring_term_exact,
    squarefree_family, truncated_ie, zeta, EulerProductSpec, SIGNATURE_COEFFICIENTS,
};
use sievekit::sieve::{
    big_h, quadratic_form, selberg_weights, sieve_upper_bound, BoundMode, BoundOptions,
    DensityFunction, SievePlan, SieveWeights,
};
use sievekit::Rational;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn optimum(terms: &[&str]) -> (Rational, Rational) {
    let r = balance(&BalanceProblem::parse(terms).unwrap())
        .optimal()
        .expect("bounded problem");
    (r.theta, r.exponent)
}

fn exponent_reproduction() -> Outcome {
    let first = optimum(&["X^1*D^-1/2", "X^39/40*D^2"]);
    check(
        first == (rat(1, 100), rat(199, 200)),
        format!("level optimum {first:?}"),
    )?;
    let second = optimum(&["X^1*T^-1", "X^39/40*T^3", "X^199/200*T^1"]);
    check(
        second == (rat(1, 400), rat(399, 400)),
        format!("truncation optimum {second:?}"),
    )?;
    Ok("theta 1/100 -> 199/200, theta 1/400 -> 399/400".into())
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    let d = rng.gen_range(1..=den);
    rat(rng.gen_range(lo * d..=hi * d), d)
}

fn general_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let a = random_rational(&mut rng, 0, 2, 50);
        let d = rng.gen_range(2..=200i64);
        let delta = rat(rng.gen_range(1..d), d);
        let big_a = random_rational(&mut rng, 0, 5, 30);
        let law = power_saving_exponent(&a, &delta, &big_a).unwrap();
        let via_balance = balance(&power_saving_problem(&a, &delta, &big_a).unwrap())
            .optimal()
            .unwrap()
            .exponent;
        let closed = &a - &delta / (rat(2, 1) * &big_a + rat(3, 1));
        check(
            law == via_balance && law == closed,
            format!("({a}, {delta}, {big_a}): {law} vs {via_balance}"),
        )?;
    }
    let e = power_saving_exponent(&rat(1, 1), &rat(1, 40), &rat(1, 1)).unwrap();
    check(e == rat(199, 200), format!("(1, 1/40, 1) -> {e}"))?;
    Ok("100 random triples agree; (1, 1/40, 1) -> 199/200".into())
}

fn sieve_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut perturbations = 0;
    for _ in 0..50 {
        let z = rng.gen_range(2..=20u64);
        let level = Rational::from_integer(BigInt::from(rng.gen_range(2..=400u64)));
        let g = DensityFunction::Table(
            primes_up_to(z)
                .into_iter()
                .map(|p| {
                    let den = rng.gen_range(2..=12i64);
                    (p, rat(rng.gen_range(0..den), den))
                })
                .collect(),
        );
        let plan = SievePlan::new(z, level).unwrap();
        let w = selberg_weights(&g, &plan).unwrap();
        let h = big_h(&g, &plan).unwrap();
        let min = Rational::one() / &h;
        check(
            quadratic_form(&g, &w).unwrap() == min,
            "form at optimum differs from 1/H",
        )?;
        check(w.get(1) == Some(&Rational::one()), "lambda_1 != 1")?;
        check(
            w.entries().iter().all(|(_, l)| l.abs() <= Rational::one()),
            "|lambda_d| > 1",
        )?;
        for _ in 0..20 {
            let entries: Vec<(u64, Rational)> = w
                .entries()
                .iter()
                .map(|(d, l)| {
                    if *d == 1 || rng.gen_bool(0.5) {
                        (*d, l.clone())
                    } else {
                        (*d, l + random_rational(&mut rng, -1, 1, 8))
                    }
                })
                .collect();
            let q = quadratic_form(&g, &SieveWeights::from_entries(entries)).unwrap();
            check(q >= min, "a perturbation beat 1/H")?;
            perturbations += 1;
        }
    }
    Ok(format!("50 configurations, {perturbations} perturbations"))
}

/// `#{n <= n_max : n has no prime factor below z}` by direct sieving.
fn rough_count(n_max: u64, z: u64) -> u64 {
    let mut keep = vec![true; n_max as usize + 1];
    keep[0] = false;
    for p in primes_up_to(z - 1) {
        for m in (p..=n_max).step_by(p as usize) {
            keep[m as usize] = false;
        }
    }
    keep.iter().filter(|&&k| k).count() as u64
}

fn sieve_soundness() -> Outcome {
    let oracle = rough_count(100_000, 317);
    check(oracle == 9528, format!("oracle {oracle}"))?;
    let inst = ResidueAvoidanceInstance::multiples(100_000);
    let plan = SievePlan::new(317, rat(100_000, 1)).unwrap();
    let r = sieve_upper_bound(&inst, &plan, BoundMode::Exact, BoundOptions::default()).unwrap();
    let ratio = rat_to_f64(&(&r.exact_main / rat(9528, 1)));
    check(
        r.exact_main >= rat(9528, 1),
        format!("bound {} below 9528", r.total_bound),
    )?;
    check(ratio <= 4.0, format!("ratio {ratio}"))?;
    Ok(format!("bound {:.1}, ratio {ratio:.3}", r.total_bound))
}

fn disjointness() -> Outcome {
    let bx = CoefficientBox::cube(-3, 3).unwrap();
    let v = disjointness_violations(&bx, 32, bx.len()).unwrap();
    check(
        v.is_empty(),
        format!("{} violations, first {:?}", v.len(), v.first()),
    )?;
    Ok(format!("{} polynomials, 0 violations", bx.len()))
}

// Test-side arithmetic over F_p on descending coefficient vectors.

fn horner_div(f: &[u64], a: u64, p: u64) -> (Vec<u64>, u64) {
    let mut q = Vec::with_capacity(f.len() - 1);
    let mut acc = 0;
    for &c in f {
        acc = (acc * a + c) % p;
        q.push(acc);
    }
    let rem = q.pop().unwrap();
    (q, rem)
}

fn divides_quadratic(f: &[u64], b: u64, c: u64, p: u64) -> bool {
    let mut r = f.to_vec();
    for i in 0..r.len() - 2 {
        let lead = r[i];
        r[i + 1] = (r[i + 1] + (p - lead) * b) % p;
        r[i + 2] = (r[i + 2] + (p - lead) * c) % p;
    }
    r[r.len() - 2..].iter().all(|&x| x == 0)
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|a| horner_div(f, a, p).1 == 0)
}

fn oracle_five(f: &[u64], p: u64) -> bool {
    !has_root(f, p)
        && !(0..p)
            .any(|b| (0..p).any(|c| !has_root(&[1, b, c], p) && divides_quadratic(f, b, c, p)))
}

fn oracle_1112(f: &[u64], p: u64) -> bool {
    let mut g = f.to_vec();
    let mut roots = 0;
    for a in 0..p {
        let (q, r) = horner_div(&g, a, p);
        if r == 0 {
            if horner_div(&q, a, p).1 == 0 {
                return false;
            }
            g = q;
            roots += 1;
        }
    }
    roots == 3 && !has_root(&g, p)
}

fn density_limits() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        let bx = CoefficientBox::cube(0, p as i64 - 1).unwrap();
        let total = Rational::from_integer(BigInt::from(p.pow(5)));
        for (e, oracle) in [
            (EventFamily::Five, oracle_five as fn(&[u64], u64) -> bool),
            (EventFamily::Type1112, oracle_1112),
        ] {
            let by_module = bx.iter().filter(|f| event_membership(f, p, e)).count() as u64;
            let by_oracle = bx
                .iter()
                .filter(|f| {
                    let mut d = vec![1u64];
                    d.extend(f.coeffs.iter().map(|&c| c as u64));
                    oracle(&d, p)
                })
                .count() as u64;
            let closed = local_density(p, e);
            check(
                by_module == by_oracle
                    && Rational::from_integer(BigInt::from(by_module)) / &total == closed,
                format!(
                    "p = {p}, {e}: module {by_module}, oracle {by_oracle}, closed form {closed}"
                ),
            )?;
        }
    }
    let five = rat_to_f64(&(local_density(101, EventFamily::Five) - rat(1, 5))).abs();
    let t1112 = rat_to_f64(&(local_density(101, EventFamily::Type1112) - rat(1, 12))).abs();
    check(five < 1e-4, format!("|FIVE - 1/5| = {five}"))?;
    check(t1112 < 0.004, format!("|1112 - 1/12| = {t1112}"))?;
    Ok(format!("p <= 7 exact; at 101: {five:.2e}, {t1112:.2e}"))
}

fn degenerate_decomposition() -> Outcome {
    let bx = CoefficientBox::cube(-3, 3).unwrap();
    let degenerate = degenerate_count_exact(&bx, bx.len()).unwrap();
    check(degenerate == 5483, format!("degenerate count {degenerate}"))?;
    let plan = SievePlan::new(31, rat(10_000, 1)).unwrap();
    let mut total = Rational::zero();
    let mut parts = Vec::new();
    for e in EventFamily::ALL {
        let inst = QuinticBoxInstance::new(bx, e, 31).unwrap();
        let r = sieve_upper_bound(&inst, &plan, BoundMode::Exact, BoundOptions::default()).unwrap();
        parts.push(format!("{e}: {:.1}", r.total_bound));
        total += r.exact_main;
    }
    check(
        Rational::from_integer(BigInt::from(degenerate)) <= total,
        format!("{degenerate} > {}", rat_to_f64(&total)),
    )?;
    Ok(format!(
        "{degenerate} <= {:.1} ({})",
        rat_to_f64(&total),
        parts.join(", ")
    ))
}

fn squarefree_oracle(x: u64) -> u64 {
    (1..=x)
        .filter(|&n| (2..).take_while(|k| k * k <= n).all(|k| n % (k * k) != 0))
        .count() as u64
}

fn tail_soundness() -> Outcome {
    let frozen = [
        (1_000u64, 608u64),
        (10_000, 6_083),
        (100_000, 60_794),
        (1_000_000, 607_926),
    ];
    for (x, q) in frozen {
        if x <= 100_000 {
            check(squarefree_oracle(x) == q, format!("oracle at {x}"))?;
        }
        for t in [3u64, 10, 30] {
            let r = truncated_ie(&squarefree_family(x), t, u64::MAX).unwrap();
            let err = Rational::from_integer(r.estimate.clone() - BigInt::from(q)).abs();
            check(
                err <= r.tail_bound,
                format!("X = {x}, T = {t}: error {err} > tail {}", r.tail_bound),
            )?;
        }
    }
    let r = truncated_ie(&squarefree_family(100), 11, u64::MAX).unwrap();
    check(
        r.estimate == BigInt::from(61),
        format!("X = 100, T = 11 gives {}", r.estimate),
    )?;
    Ok("12 tail checks, estimate(100, 11) = 61".into())
}

fn constants() -> Outcome {
    let spec = EulerProductSpec::field_density();
    let coarse = euler_product(&spec, 1_000).unwrap().value;
    let fine = euler_product(&spec, 100_000).unwrap().value;
    check(
        coarse.contains_interval(&fine),
        format!("{fine} not inside {coarse}"),
    )?;
    check(fine.width() <= 1e-8, format!("width {:e}", fine.width()))?;
    check(
        fine.contains(1.381_608_558_823_223_3),
        format!("{fine} misses the reference value"),
    )?;
    let expected = [(1, 240), (1, 24), (1, 16)];
    check(SIGNATURE_COEFFICIENTS == expected, "coefficients changed")?;
    let x = rat(1_000_000, 1);
    let p: Vec<f64> = (0..3)
        .map(|i| field_count_prediction(i, &x, 1_000).unwrap().value)
        .collect();
    check(
        (p[1] / p[0] - 10.0).abs() < 1e-12 && (p[2] / p[0] - 15.0).abs() < 1e-12,
        format!("ratios {p:?}"),
    )?;
    let pi = std::f64::consts::PI;
    for (s, v) in [(2u32, pi * pi / 6.0), (4, pi.powi(4) / 90.0)] {
        let z = zeta(s).unwrap();
        check(
            z.width() <= 1e-10 && z.lo() - 1e-10 <= v && v <= z.hi() + 1e-10,
            format!("zeta({s}) = {z}"),
        )?;
    }
    Ok(format!("product in {fine}, width {:.1e}", fine.width()))
}

fn overring_factor() -> Outcome {
    for k in 1..=10 {
        check(
            overring_term_exact(2, k) == Some(rat(1, 4)),
            format!("term {k} at p = 2"),
        )?;
    }
    let k100 = overring_local_factor(2, 100).unwrap();
    let k500 = overring_local_factor(2, 500).unwrap();
    check(
        k100.contains_interval(&k500),
        format!("{k500} not inside {k100}"),
    )?;
    let scaled: Vec<(u64, f64)> = primes_up_to(100)
        .into_iter()
        .map(|p| {
            (
                p,
                overring_local_factor(p, 500).unwrap().lo() * (p * p) as f64,
            )
        })
        .collect();
    let at_two = overring_local_factor(2, 500).unwrap().lo() * 4.0;
    let rest_max = scaled
        .iter()
        .skip(1)
        .map(|&(p, _)| overring_local_factor(p, 500).unwrap().hi() * (p * p) as f64)
        .fold(0.0, f64::max);
    check(
        at_two > rest_max,
        format!("p = 2 gives {at_two}, others up to {rest_max}"),
    )?;
    Ok(format!(
        "factor(2) in {k500}; scaled max {at_two:.4} at p = 2"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "exponent reproduction",
            limit: Duration::from_secs(1),
            run: exponent_reproduction,
        },
        Criterion {
            id: 2,
            name: "general power-saving law",
            limit: Duration::from_secs(1),
            run: general_law,
        },
        Criterion {
            id: 3,
            name: "sieve optimality identity",
            limit: Duration::from_secs(10),
            run: sieve_optimality,
        },
        Criterion {
            id: 4,
            name: "sieve soundness and quality",
            limit: Duration::from_secs(60),
            run: sieve_soundness,
        },
        Criterion {
            id: 5,
            name: "event disjointness",
            limit: Duration::from_secs(300),
            run: disjointness,
        },
        Criterion {
            id: 6,
            name: "local density limits",
            limit: Duration::from_secs(10),
            run: density_limits,
        },
        Criterion {
            id: 7,
            name: "degenerate-bound decomposition",
            limit: Duration::from_secs(600),
            run: degenerate_decomposition,
        },
        Criterion {
            id: 8,
            name: "truncated IE tail soundness",
            limit: Duration::from_secs(30),
            run: tail_soundness,
        },
        Criterion {
            id: 9,
            name: "Euler product and zeta constants",
            limit: Duration::from_secs(30),
            run: constants,
        },
        Criterion {
            id: 10,
            name: "over-ring local factor",
            limit: Duration::from_secs(5),
            run: overring_factor,
        },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS  criterion {:>2}  {:<34} {:>9.2?}  {detail}",
                c.id, c.name, elapsed
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL  criterion {:>2}  {:<34} {:>9.2?}  {why}",
                    c.id, c.name, elapsed
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
