//! End-to-end acceptance gate. Prints one PASS/FAIL line per item and exits
//! nonzero if any item fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use meanlab_core::harness::{replay, SuiteReport};
use meanlab_core::{
    approx_sandwich, check_convexity, embed, expand_rational, norm_from_mean, p_norm, power_mean,
    power_mean_oracle, recover_exponent, run_full_suite, uniform, CheckConfig, Exponent, IndexMap,
    PowerMeanSystem, Rational, SignedVector, ValueVector, Weighting,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn exp(p: f64) -> Exponent {
    Exponent::new(p).unwrap()
}

fn builtin(p: f64) -> PowerMeanSystem {
    PowerMeanSystem::new(exp(p))
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn suite_config() -> CheckConfig {
    CheckConfig {
        seed: 42,
        trials: 1000,
        rel_tol: 1e-9,
        ..CheckConfig::default()
    }
}

fn axiom_suite_positive_family() -> Outcome {
    let start = Instant::now();
    for p in [1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY] {
        for r in run_full_suite(&builtin(p), &suite_config()) {
            if !r.passed || r.trials_run != 1000 {
                return Err(format!("p = {p}: {} failed: {:?}", r.property_name, r.counterexample));
            }
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(30) {
        return Err(format!("took {took:?}, budget is 30 s"));
    }
    Ok(format!("6 exponents x 10 checks x 1000 trials in {took:.2?}"))
}

fn non_convexity_detection() -> Outcome {
    let mut notes = Vec::new();
    for p in [0.0, 0.25, 0.5, 0.75] {
        // w = (1/2, 1/2), x = (1, 0), y = (0, 1): the midpoint is (1/2, 1/2)
        // so lhs = 1/2, while M_p(w, x) = M_p(w, y) = 2^{-1/p} (0 when p = 0)
        let lhs = 0.5;
        let rhs = if p == 0.0 { 0.0 } else { 0.5f64.powf(1.0 / p) };
        let m = builtin(p);
        let r = check_convexity(&m, &suite_config());
        let c = r
            .counterexample
            .as_ref()
            .ok_or(format!("p = {p}: convexity passed"))?;
        let witness = c.trial == 0
            && c.w == [0.5, 0.5]
            && c.x == [1.0, 0.0]
            && c.aux["y"] == serde_json::json!([0.0, 1.0]);
        if !witness {
            return Err(format!("p = {p}: unexpected witness {c:?}"));
        }
        let (l, rr) = (c.lhs.unwrap(), c.rhs.unwrap());
        if rel(l, lhs) > 1e-15 || (rhs == 0.0 && rr != 0.0) || (rhs > 0.0 && rel(rr, rhs) > 1e-15) {
            return Err(format!("p = {p}: lhs/rhs {l}/{rr}, expected {lhs}/{rhs}"));
        }
        for other in run_full_suite(&m, &suite_config()) {
            if other.property_name != "convexity" && !other.passed {
                return Err(format!("p = {p}: {} failed too", other.property_name));
            }
        }
        notes.push(format!("p={p}: {l} vs {rr}"));
    }
    Ok(notes.join(", "))
}

fn exponent_recovery() -> Outcome {
    let start = Instant::now();
    let mut worst_fit: f64 = 0.0;
    for p in [1.0, 1.25, 2.0, 3.0, 7.0, 64.0] {
        let r = recover_exponent(&builtin(p), 31, 42).map_err(|e| e.to_string())?;
        let Some(Exponent::Finite(ph)) = r.p_hat else {
            return Err(format!("p = {p}: recovered {:?}", r.p_hat));
        };
        if (ph - p).abs() > 1e-9 || r.fit_residual > 1e-9 {
            return Err(format!("p = {p}: p_hat {ph}, fit residual {}", r.fit_residual));
        }
        worst_fit = worst_fit.max(r.fit_residual);
    }
    let r = recover_exponent(&builtin(f64::INFINITY), 31, 42).map_err(|e| e.to_string())?;
    if r.p_hat != Some(Exponent::PosInf) || r.alpha_hat != 0.0 || r.fit_residual > 1e-9 {
        return Err(format!("p = inf: recovered {:?}, alpha {}", r.p_hat, r.alpha_hat));
    }
    let took = start.elapsed();
    if took > Duration::from_secs(1) {
        return Err(format!("took {took:?}, budget is 1 s"));
    }
    Ok(format!("worst fit residual {worst_fit:e}, {took:.2?}"))
}

fn prefactor_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [1.0, 2.0, 5.0, f64::INFINITY] {
        for n in 1..=64usize {
            let mut e1 = vec![0.0; n];
            e1[0] = 1.0;
            let got = power_mean(exp(p), &uniform(n).unwrap(), &ValueVector::new(e1).unwrap())
                .map_err(|e| e.to_string())?;
            let want = if p.is_infinite() { 1.0 } else { (n as f64).powf(-1.0 / p) };
            let err = (got - want).abs();
            if err > 1e-12 {
                return Err(format!("p = {p}, n = {n}: {got} vs {want}"));
            }
            worst = worst.max(err);
        }
    }
    Ok(format!("max abs error {worst:e}"))
}

fn random_signed(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            if rng.random::<f64>() < 0.1 {
                0.0
            } else {
                let mag = 10f64.powf(rng.random_range(-3.0..3.0));
                if rng.random() { mag } else { -mag }
            }
        })
        .collect()
}

fn norm_correspondence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for q in [1.0, 2.0, 3.0, f64::INFINITY] {
        let m = builtin(q);
        for _ in 0..1000 {
            let n = rng.random_range(0..=16);
            let x = SignedVector::new(random_signed(&mut rng, n)).unwrap();
            let y = SignedVector::new(random_signed(&mut rng, n)).unwrap();
            let a = norm_from_mean(&m, exp(q), &x).map_err(|e| e.to_string())?;
            let b = p_norm(exp(q), &x).map_err(|e| e.to_string())?;
            let err = rel(a, b);
            if err > 1e-11 {
                return Err(format!("q = {q}: {a} vs {b} on {x:?}"));
            }
            worst = worst.max(err);

            let sum: Vec<f64> = x.entries().iter().zip(y.entries()).map(|(a, b)| a + b).collect();
            let lhs = p_norm(exp(q), &SignedVector::new(sum).unwrap()).unwrap();
            let rhs = p_norm(exp(q), &x).unwrap() + p_norm(exp(q), &y).unwrap();
            if lhs > rhs * (1.0 + 1e-12) {
                return Err(format!("q = {q}: triangle inequality {lhs} > {rhs}"));
            }

            let extra = rng.random_range(0..=4);
            let mut slots: Vec<usize> = (0..n + extra).collect();
            slots.shuffle(&mut rng);
            slots.truncate(n);
            let f = IndexMap::new(slots, n + extra).unwrap();
            let padded = embed(&f, &x).unwrap();
            if p_norm(exp(q), &padded).unwrap() != p_norm(exp(q), &x).unwrap() {
                return Err(format!("q = {q}: norm changed under embedding of {x:?}"));
            }
        }
    }
    Ok(format!("4000 vectors, max rel error {worst:e}; triangle and embedding suites hold"))
}

fn rational_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let exps = [1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY, 0.0, 0.5, -1.0, f64::NEG_INFINITY];
    let mut worst: f64 = 0.0;
    let mut with_zero = 0;
    for t in 0..500 {
        let n = rng.random_range(1..=8usize);
        let d = rng.random_range(1..=100i64);
        let mut counts = vec![0i64; n];
        for _ in 0..d {
            counts[rng.random_range(0..n)] += 1;
        }
        if counts.contains(&0) {
            with_zero += 1;
        }
        let w = Weighting::from_rationals(counts.iter().map(|&k| Rational::new(k, d)).collect())
            .unwrap();
        let x: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random::<f64>() < 0.1 {
                    0.0
                } else {
                    10f64.powf(rng.random_range(-6.0..6.0))
                }
            })
            .collect();
        let x = ValueVector::new(x).unwrap();
        let p = exp(exps[t % exps.len()]);
        let (u, xs) = expand_rational(&w, &x).map_err(|e| e.to_string())?;
        let a = power_mean(p, &w, &x).unwrap();
        let b = power_mean(p, &u, &xs).unwrap();
        let err = rel(a, b);
        if err > 1e-12 {
            return Err(format!("p = {p}: {a} vs {b} for w = {counts:?}/{d}"));
        }
        worst = worst.max(err);
    }
    Ok(format!("500 weightings ({with_zero} with zero weights), max rel error {worst:e}"))
}

/// Spread of the weight gradient of `M_p(·, x)`: for finite p,
/// `∂M/∂w_i = M^{1-p} x_i^p / p`; for `p = ∞` the mean is locally constant
/// in `w` on positive weightings.
fn gradient_spread(p: f64, w: &Weighting, x: &ValueVector) -> f64 {
    if p.is_infinite() {
        return 0.0;
    }
    let m = power_mean(exp(p), w, x).unwrap();
    let g: Vec<f64> = x.entries().iter().map(|&xi| m.powf(1.0 - p) * xi.powf(p) / p).collect();
    g.iter().copied().fold(f64::NEG_INFINITY, f64::max) - g.iter().copied().fold(f64::INFINITY, f64::min)
}

fn sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_ratio: f64 = 0.0;
    for p in [1.0, 2.0, f64::INFINITY] {
        let m = builtin(p);
        for _ in 0..200 {
            let n = rng.random_range(2..=8usize);
            // bounded away from 0 so every grid weighting stays positive
            let raw: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..2.0)).collect();
            let w = Weighting::normalize(raw).unwrap();
            let x = ValueVector::new((0..n).map(|_| 10f64.powf(rng.random_range(-3.0..3.0))).collect())
                .unwrap();
            let spread = gradient_spread(p, &w, &x);
            for delta in [1e-2, 1e-3, 1e-4] {
                let s = approx_sandwich(&m, &w, &x, delta).map_err(|e| e.to_string())?;
                let v = s.values;
                if !v.is_ordered(1e-12) {
                    return Err(format!("p = {p}, delta = {delta}: {v:?} out of order"));
                }
                for (name, g) in [("w'", &s.w_upper), ("w''", &s.w_lower)] {
                    let dev = w
                        .entries()
                        .iter()
                        .zip(g.entries())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    if dev >= delta {
                        return Err(format!("p = {p}: |w - {name}| = {dev} >= {delta}"));
                    }
                }
                let allowance = 4.0 * spread * delta + 1e-12 * v.upper.abs().max(1.0);
                if v.gap() > allowance {
                    return Err(format!("p = {p}, delta = {delta}: gap {} > {allowance}", v.gap()));
                }
                if spread > 0.0 {
                    worst_ratio = worst_ratio.max(v.gap() / (spread * delta));
                }
            }
        }
    }
    Ok(format!("600 instances x 3 deltas; worst gap / (L delta) = {worst_ratio:.3}"))
}

fn adversarial_exponent(rng: &mut ChaCha8Rng) -> f64 {
    let sign = if rng.random() { 1.0 } else { -1.0 };
    match rng.random_range(0..10) {
        0 => 0.0,
        1 => sign * f64::INFINITY,
        2 => sign * rng.random_range(1e-3..1.0),
        3 => sign * rng.random_range(1..=500) as f64,
        4 => sign * rng.random_range(400.0..=500.0),
        _ => sign * rng.random_range(0.0..=500.0),
    }
}

fn adversarial_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    match rng.random_range(0..10) {
        0 => {
            let mut w = vec![0.0; n];
            w[rng.random_range(0..n)] = 1.0;
            w
        }
        1 if n > 1 => {
            let mut raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
            raw[rng.random_range(0..n)] = 0.0;
            let s: f64 = raw.iter().sum();
            raw.iter().map(|v| v / s).collect()
        }
        _ => {
            let raw: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.random_range(-8.0..0.0))).collect();
            let s: f64 = raw.iter().sum();
            raw.iter().map(|v| v / s).collect()
        }
    }
}

fn numerical_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    let mut worst_case = String::new();
    for _ in 0..1000 {
        let n = rng.random_range(1..=8usize);
        let w = loop {
            if let Ok(w) = Weighting::new(adversarial_weights(&mut rng, n)) {
                break w;
            }
        };
        let x: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random::<f64>() < 0.1 {
                    0.0
                } else {
                    10f64.powf(rng.random_range(-300.0..300.0))
                }
            })
            .collect();
        let x = ValueVector::new(x).unwrap();
        let p = exp(adversarial_exponent(&mut rng));
        let got = power_mean(p, &w, &x).map_err(|e| e.to_string())?;
        let want = power_mean_oracle(p, &w, &x, 256).map_err(|e| e.to_string())?;
        let err = rel(got, want);
        if err > worst {
            worst = err;
            worst_case = format!("p = {p}, w = {:?}, x = {:?}: {got} vs {want}", w.entries(), x.entries());
        }
    }
    if worst > 1e-13 {
        return Err(format!("max rel error {worst:e} at {worst_case}"));
    }
    Ok(format!("1000 inputs, max rel error {worst:e}"))
}

fn negative_controls() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_meanlab");
    let cases = [
        ("sum(w*x^2)", "consistency"),
        ("sum(w^2*x)", "functoriality"),
        ("sum(w*x)+max(x*w^0)*0.01", "multiplicativity"),
    ];
    let mut notes = Vec::new();
    for (src, property) in cases {
        let out = Command::new(bin)
            .args(["axioms", "--dsl", src, "--seed", "42"])
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(1) {
            return Err(format!("{src}: exit status {:?}", out.status.code()));
        }
        let report: SuiteReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let check = report.check(property).ok_or(format!("{src}: no {property} check"))?;
        let cex = check
            .counterexample
            .as_ref()
            .ok_or(format!("{src}: {property} has no counterexample"))?;
        let m = meanlab_core::DslSystem::parse(src).unwrap();
        let again = replay(property, &m, &report.config, cex).map_err(|e| e.to_string())?;
        if again.to_bits() != check.worst_residual.to_bits() {
            return Err(format!("{src}: replayed residual {again} != reported {}", check.worst_residual));
        }
        notes.push(format!("{src} -> {property} (residual {again:.3e})"));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let items: [Criterion; 9] = [
        ("axiom suite passes for M_p, p in {1, 1.5, 2, 3, 10, inf}", axiom_suite_positive_family),
        ("convexity fails on the fixed witness for p in {0, 0.25, 0.5, 0.75}", non_convexity_detection),
        ("exponent recovery round trip", exponent_recovery),
        ("M_p(u_n, e_1) = n^(-1/p) for n <= 64", prefactor_identity),
        ("norm from mean agrees with p_norm", norm_correspondence),
        ("rational weightings reduce to uniform ones", rational_reduction),
        ("rational sandwich ordering, distance and gap", sandwich),
        ("power_mean agrees with the 256-bit oracle", numerical_robustness),
        ("non-means are rejected with replayable witnesses", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in items.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{}/9] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}/9] {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance item(s) failed");
        ExitCode::FAILURE
    }
}
