use meanlab_core::harness::{is_locally_minimal, replay, run_check, suite_report, PROPERTY_NAMES};
use meanlab_core::{
    check_consistency, check_functoriality, check_monotonicity, check_multiplicativity,
    check_transfer, run_full_suite, CheckConfig, CheckStatus, DslSystem, Exponent, MeanSystem,
    PowerMeanSystem,
};

fn cfg(trials: u64) -> CheckConfig {
    CheckConfig {
        trials,
        ..CheckConfig::default()
    }
}

fn dsl(src: &str) -> DslSystem {
    DslSystem::parse(src).unwrap()
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let m = dsl("sum(w^2*x)");
    let a = serde_json::to_string(&suite_report(&m, &cfg(300))).unwrap();
    let b = serde_json::to_string(&suite_report(&m, &cfg(300))).unwrap();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| serde_json::to_string(&suite_report(&m, &cfg(300))).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, serial);
}

#[test]
fn different_seeds_draw_different_trials() {
    let m = PowerMeanSystem::new(Exponent::Finite(2.0));
    let a = run_check("multiplicativity", &m, &CheckConfig::with_seed(1)).unwrap();
    let b = run_check("multiplicativity", &m, &CheckConfig::with_seed(2)).unwrap();
    assert!(a.passed && b.passed);
    assert_ne!(a.worst_residual, b.worst_residual);
}

/// Every failing check of every control system must replay bit-for-bit and
/// be locally minimal.
#[test]
fn failures_replay_and_are_locally_minimal() {
    let systems: Vec<Box<dyn MeanSystem>> = vec![
        Box::new(dsl("sum(w*x^2)")),
        Box::new(dsl("sum(w^2*x)")),
        Box::new(dsl("sum(w*x)+max(x*w^0)*0.01")),
        Box::new(dsl("sum(w*(x-5)^2)^0.5")),
        Box::new(dsl("(sum(w*x)+sum(w*x^2)^0.5)/2")),
        Box::new(PowerMeanSystem::new(Exponent::Finite(0.5))),
    ];
    let c = cfg(500);
    let mut failures = 0;
    for m in &systems {
        for r in run_full_suite(m.as_ref(), &c) {
            assert_eq!(r.passed, r.counterexample.is_none());
            let Some(cex) = &r.counterexample else { continue };
            failures += 1;
            let again = replay(&r.property_name, m.as_ref(), &c, cex).unwrap();
            assert_eq!(again.to_bits(), r.worst_residual.to_bits(), "{} {}", m.label(), r.property_name);
            assert_eq!(cex.residual.to_bits(), r.worst_residual.to_bits());
            assert!(
                is_locally_minimal(&r.property_name, m.as_ref(), &c, cex).unwrap(),
                "{} {} {cex:?}",
                m.label(),
                r.property_name
            );
        }
    }
    assert!(failures >= 6);
}

#[test]
fn squared_sum_fails_consistency_with_c_squared() {
    let r = check_consistency(&dsl("sum(w*x^2)"), &cfg(100));
    let c = r.counterexample.unwrap();
    let x = c.x[0];
    assert_eq!(c.lhs, Some(x * x));
    assert_eq!(c.rhs, Some(x));
}

#[test]
fn squared_weights_fail_functoriality_on_a_surjection() {
    let r = check_functoriality(&dsl("sum(w^2*x)"), &cfg(200));
    let c = r.counterexample.unwrap();
    let images: Vec<u64> = serde_json::from_value(c.aux["images"].clone()).unwrap();
    let m = c.aux["codomain_size"].as_u64().unwrap();
    assert!((0..m).all(|j| images.contains(&j)), "{images:?} onto {m}");
    // direct evaluation of both sides on the witness
    let mut pushed = vec![0.0; m as usize];
    for (&j, &wi) in images.iter().zip(&c.w) {
        pushed[j as usize] += wi;
    }
    let lhs: f64 = pushed.iter().zip(&c.x).map(|(w, x)| w * w * x).sum();
    let rhs: f64 = images.iter().zip(&c.w).map(|(&j, w)| w * w * c.x[j as usize]).sum();
    assert_eq!(c.lhs, Some(lhs));
    assert_eq!(c.rhs, Some(rhs));
}

#[test]
fn distance_from_five_is_not_monotone() {
    let r = check_monotonicity(&dsl("sum(w*(x-5)^2)^0.5"), &cfg(300));
    let c = r.counterexample.unwrap();
    let y: Vec<f64> = serde_json::from_value(c.aux["y"].clone()).unwrap();
    assert!(c.x.iter().zip(&c.w).any(|(x, w)| *w > 0.0 && *x < 5.0));
    assert!(c.x.iter().zip(&y).all(|(a, b)| a <= b));
}

#[test]
fn perturbed_arithmetic_mean_is_not_multiplicative() {
    let r = check_multiplicativity(&dsl("sum(w*x)+max(x*w^0)*0.01"), &cfg(300));
    assert!(!r.passed);
}

#[test]
fn power_means_satisfy_transfer() {
    for p in [1.0, 2.0, 0.5, 0.0, -3.0, f64::INFINITY] {
        let r = check_transfer(&PowerMeanSystem::new(Exponent::new(p).unwrap()), &cfg(500));
        assert!(r.passed, "p = {p}: {:?}", r.counterexample);
    }
}

#[test]
fn positive_mode() {
    let m = PowerMeanSystem::positively_weighted(Exponent::Finite(2.0));
    let r = suite_report(&m, &cfg(300));
    assert!(r.config.positive_weights_only);
    assert!(r.passed);
    let zw = r.check("zero_weight").unwrap();
    assert_eq!(zw.status, CheckStatus::NotApplicable);
    assert_eq!(r.checks.len(), PROPERTY_NAMES.len());
}

#[test]
fn homogeneity_failure_flags_the_harness_only_with_multiplicativity() {
    // not multiplicative, not homogeneous, but a valid system of means
    let m = dsl("(sum(w*x)+sum(w*x^2)^0.5)/2");
    let r = suite_report(&m, &cfg(300));
    assert!(!r.check("multiplicativity").unwrap().passed);
    assert!(!r.harness_suspect);
}

#[test]
fn report_schema() {
    let r = check_consistency(&dsl("sum(w*x^2)"), &cfg(50));
    let v = serde_json::to_value(&r).unwrap();
    for key in ["property_name", "passed", "trials", "counterexample", "seed", "worst_residual"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["w", "x", "aux", "lhs", "rhs", "residual"] {
        assert!(v["counterexample"].get(key).is_some(), "missing counterexample.{key}");
    }
}
