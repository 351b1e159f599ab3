//! Acceptance run: every criterion at its tolerance (exact equality) and time
//! budget, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use qgap::arith::frac;
use qgap::congruence::coefficients::{delta_pn_from, j_and_inverse_delta, lehner_from};
use qgap::congruence::{reciprocal_compare, run_survey};
use qgap::defaults::DESK;
use qgap::forms::identities::identity_suite;
use qgap::forms::{basis_m1, basis_m2, e_inf4};
use qgap::quadratic::{d4, quadratic_suite, theta};
use qgap::series::{neg_power_einf4, neg_power_einf4_coeffs};
use qgap::siegel::{gap_suite, satz_suite, theorem4_checks, DELTA_IN_C2, EINF4_POWER_OF_TWO, T2_MOD16, T2_MOD32, T_LEVEL1_MOD32};
use qgap::{QSeries, SurveyConfig, Verdict};

type Outcome = Result<String, String>;

/// Name, budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identities() -> Outcome {
    let checks = identity_suite(200).map_err(|e| e.to_string())?;
    ensure(checks.len() == 6, || format!("{} identities", checks.len()))?;
    for c in &checks {
        ensure(c.pass && c.terms == 200, || format!("{} failed at {:?}", c.name, c.first_mismatch))?;
    }
    Ok("6 identities to 200 coefficients".into())
}

fn satz() -> Outcome {
    let r = satz_suite(&DESK).map_err(|e| e.to_string())?;
    for c in &r.checks {
        ensure(c.verdict == Verdict::Pass, || format!("c0[T f] = {} at level {} h={} {}", c.c0, c.level, c.h, c.form))?;
    }
    // every basis element at every weight was checked
    let expected: usize = (2..=40).step_by(2).map(|h| basis_m2(h, 1).unwrap().len()).sum::<usize>()
        + (4..=36).step_by(2).map(|h| basis_m1(h, 1).unwrap().len()).sum::<usize>();
    ensure(r.checks.len() == expected, || format!("{} checks, expected {expected}", r.checks.len()))?;
    let hs: Vec<i64> = r.t2_constant_terms.iter().map(|c| c.h).collect();
    ensure(hs == (4..=40).step_by(4).collect::<Vec<_>>(), || format!("sign law weights {hs:?}"))?;
    for c in &r.t2_constant_terms {
        ensure(c.verdict == Verdict::Pass, || format!("c0[T2({})] = {} has the wrong sign", c.h, c.c0))?;
    }
    Ok(format!("{} vanishing checks, {} signs", r.checks.len(), r.t2_constant_terms.len()))
}

fn gap() -> Outcome {
    let r = gap_suite(&DESK).map_err(|e| e.to_string())?;
    for x in &r.results {
        ensure(x.verdict == Verdict::Pass, || format!("h={} {}: first index {:?} > {}", x.h, x.form, x.first_nonzero_index, x.bound))?;
    }
    for h in (2..=40).step_by(2) {
        let random = r.results.iter().filter(|x| x.h == h && x.form.starts_with("random")).count();
        ensure(random == 20, || format!("h={h}: {random} random combinations"))?;
    }
    let sharper: Vec<bool> = r.results.iter().filter_map(|x| x.within_r_plus_one).collect();
    let held = sharper.iter().filter(|&&b| b).count();
    Ok(format!("{} forms, seed {:#x}; EXPERIMENTAL r+1 bound held for {held}/{}", r.results.len(), r.seed, sharper.len()))
}

fn theorems() -> Outcome {
    let checks = theorem4_checks(&DESK).map_err(|e| e.to_string())?;
    for c in &checks {
        ensure(c.verdict == Verdict::Pass, || format!("{} {}: c0 = {} [{}]", c.statement, c.form, c.c0, c.predicted))?;
    }
    let params = |st: &str| checks.iter().filter(|c| c.statement == st).map(|c| c.parameter).collect::<BTreeSet<i64>>();
    let need = |st: &str, want: &[i64]| {
        let have = params(st);
        ensure(want.iter().all(|x| have.contains(x)), || format!("{st} is missing some of {want:?}: {have:?}"))
    };
    need(EINF4_POWER_OF_TWO, &[1, 2, 4, 8, 16, 32, 64])?;
    let delta_s: Vec<i64> =
        (1..=80).filter(|&s: &i64| [1, 3, 5].contains(&(s >> s.trailing_zeros()))).collect();
    need(DELTA_IN_C2, &delta_s)?;
    // h <= 200 with r(1,h) in {2, 4, 8} in both classes
    need(T_LEVEL1_MOD32, &[20, 26, 44, 50, 92, 98])?;
    need(T2_MOD16, &[10, 26, 58])?;
    need(T2_MOD32, &[12, 28, 60])?;
    Ok(format!("{} instances", checks.len()))
}

fn surveys() -> Outcome {
    let mut total = 0;
    let mut families = BTreeSet::new();
    for name in ["rules1", "rules2", "rules3", "deviations"] {
        let config = SurveyConfig::builtin(name).ok_or_else(|| format!("missing config {name}"))?;
        let report = run_survey(&config, false).map_err(|e| e.to_string())?;
        if let Some(f) = report.failures().next() {
            return Err(format!("{name}: {} c0 = {} {:?}", f.expr, f.c0, f.verdicts));
        }
        for r in &report.records {
            if r.verdict == Verdict::Pass {
                families.insert(r.family.clone());
            }
        }
        total += report.records.len();
    }
    for fam in [
        "Delta^-a",
        "j^a",
        "j^a Delta^-b",
        "G6^a Delta^-b",
        "phi3^-a",
        "Phi3^-a",
        "Einf4^-a",
        "j2^a",
        "phi2^-a",
        "Delta2^-a",
        "E(2,inf,k)^-a, a odd",
        "E(3,inf,k)^-a, a = 1 mod 3, k = 0 mod 6",
        "E(3,inf,k)^-a, a = 2 mod 3, k = 0 mod 6",
        "E(3,inf,k)^-a, a = 1 mod 3, L(a) = 1, k = 2 mod 6",
    ] {
        ensure(families.contains(fam), || format!("family {fam} not covered"))?;
    }
    Ok(format!("{total} forms, no failures"))
}

fn coefficients() -> Outcome {
    let n_max = 512;
    let (j, inv) = j_and_inverse_delta(n_max).map_err(|e| e.to_string())?;
    let mut asserted = 0;
    for p in [2, 3] {
        let rows = delta_pn_from(&j, &inv, p, n_max).map_err(|e| e.to_string())?;
        ensure(rows.iter().any(|r| r.n == -1 && r.delta.is_some()), || format!("n = -1 not recorded for p={p}"))?;
        for r in &rows {
            ensure(!r.failed(), || format!("delta_{{{p},{}}} = {:?}, predicted {:?}", r.n, r.delta, r.predicted))?;
        }
        asserted += rows.iter().filter(|r| r.asserted).count();
    }
    let rec = reciprocal_compare(n_max).map_err(|e| e.to_string())?;
    for r in rec.iter().filter(|r| r.p != 5) {
        ensure(r.asserted && r.holds, || format!("ord{}(c_{}[1/j]) != ord{}(tau)", r.p, r.n, r.p))?;
    }
    let lehner = lehner_from(&j, n_max).map_err(|e| e.to_string())?;
    for r in &lehner {
        ensure(r.pass, || format!("Lehner mod {} at m={}: ord {} < {}", r.p, r.m, r.observed, r.required))?;
    }
    Ok(format!("{asserted} delta predictions, {} reciprocal rows, {} Lehner rows", rec.len(), lehner.len()))
}

fn quadratic() -> Outcome {
    let checks = quadratic_suite(50).map_err(|e| e.to_string())?;
    for c in &checks {
        ensure(c.pass, || format!("{} ({})", c.name, c.detail))?;
    }
    for k in 1..=4 {
        ensure(checks.iter().any(|c| c.name == format!("minimum bound D4^{k}")), || format!("D4^{k} missing"))?;
    }
    ensure(theta(&d4(), 0).coefficients == [1], || "theta(D4)[0] != 1".into())?;
    Ok(format!("{} checks", checks.len()))
}

fn arb_series(max_len: usize) -> impl Strategy<Value = QSeries> {
    (-3i64..3, prop::collection::vec(-20i64..20, 1..max_len), 1i64..4).prop_map(|(v, mut c, d)| {
        if c[0] == 0 {
            c[0] = 1;
        }
        QSeries::new(v, c.into_iter().map(|x| frac(x, d)).collect())
    })
}

fn fail<T: std::fmt::Debug>(name: &'static str) -> impl Fn(proptest::test_runner::TestError<T>) -> String {
    move |e| format!("{name}: {e}")
}

fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config { cases: 256, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() })
}

fn properties() -> Outcome {
    runner(1)
        .run(&(arb_series(12), arb_series(12), arb_series(12)), |(a, b, c)| {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            let (l, r) = (a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            let reach = l.reach().min(r.reach());
            prop_assert_eq!(l.truncate(reach), r.truncate(reach));
            Ok(())
        })
        .map_err(fail("ring laws"))?;
    runner(2)
        .run(&arb_series(16), |a| {
            prop_assert_eq!(a.mul(&a.invert().unwrap()), QSeries::one(a.len()));
            Ok(())
        })
        .map_err(fail("invert round trip"))?;
    let unit = (-3i64..3, prop::collection::vec(-20i64..20, 1..14), 1u32..5)
        .prop_map(|(v, c, m)| (QSeries::from_ints(v, &[&[1], &c[..]].concat()), m));
    runner(3)
        .run(&unit, |(a, m)| {
            let p = a.pow_int(m as i64).unwrap();
            prop_assert_eq!(p.root(m).unwrap(), a);
            Ok(())
        })
        .map_err(fail("root round trip"))?;
    runner(4)
        .run(&(arb_series(12), arb_series(12)), |(a, b)| {
            let l = a.mul(&b).derivative_d();
            let r = a.derivative_d().mul(&b).add(&a.mul(&b.derivative_d()));
            let reach = l.reach().min(r.reach());
            prop_assert_eq!(l.truncate(reach), r.truncate(reach));
            Ok(())
        })
        .map_err(fail("Leibniz rule"))?;
    runner(5)
        .run(&(1u64..=8, 1usize..=60), |(s, prec)| {
            let generic = e_inf4(prec).unwrap().pow_int(-(s as i64)).unwrap();
            prop_assert_eq!(neg_power_einf4(s, prec).unwrap(), generic);
            Ok(())
        })
        .map_err(fail("neg_power_einf4 vs generic power"))?;
    runner(6)
        .run(&(1u64..=64, 1usize..=200), |(s, prec)| {
            let r = neg_power_einf4_coeffs(s, prec);
            for (n, x) in r.iter().enumerate() {
                let want = if n % 2 == 0 { num_bigint::Sign::Plus } else { num_bigint::Sign::Minus };
                prop_assert_eq!(x.sign(), want, "s={} n={}", s, n);
            }
            Ok(())
        })
        .map_err(fail("sign alternation of R(n)"))?;
    Ok("6 properties x 256 seeded cases".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("identity suite", 30, identities),
        ("Satz suite", 120, satz),
        ("gap suite", 120, gap),
        ("power-of-two congruences", 120, theorems),
        ("survey reproduction, desk scale", 600, surveys),
        ("coefficient comparisons to n = 512", 600, coefficients),
        ("quadratic suite", 60, quadratic),
        ("property suites", 600, properties),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (ok, detail) = match result {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {} {:<36} {} in {:.2}s (budget {}s): {}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget,
            detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
