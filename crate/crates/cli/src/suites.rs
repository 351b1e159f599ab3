//! The `verify` suites. Each prints one line per check (or one JSON object per
//! record) and reports whether every asserted verdict passed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qgap::congruence::coefficients::{j_and_inverse_delta, lehner_from, delta_pn_from};
use qgap::congruence::{reciprocal_compare, run_survey};
use qgap::forms::identities::identity_suite;
use qgap::quadratic::quadratic_suite;
use qgap::siegel::{gap_suite, satz_suite, theorem4_checks, GapReport};
use qgap::{Scale, SurveyConfig, Verdict};
use serde::Serialize;
use serde_json::Value;

use crate::{CmdResult, InputError, Outcome, Suite};

struct Sink {
    json: bool,
    ok: bool,
}

impl Sink {
    fn line(&mut self, suite: &str, verdict: Verdict, text: impl AsRef<str>) {
        if verdict.is_failure() {
            self.ok = false;
        }
        if !self.json {
            println!("{:<14} {:<12} {}", suite, verdict.to_string(), text.as_ref());
        }
    }

    fn record<T: Serialize>(&self, suite: &str, rec: &T) {
        if self.json {
            let mut v = serde_json::to_value(rec).expect("record serializes");
            if let Value::Object(m) = &mut v {
                m.insert("suite".into(), Value::String(suite.into()));
            }
            println!("{v}");
        }
    }
}

fn pass(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

pub fn verify(suite: Suite, sc: &Scale, json: bool) -> CmdResult {
    let mut sink = Sink { json, ok: true };
    let all = [
        Suite::Identities,
        Suite::Satz,
        Suite::Gap,
        Suite::Theorems,
        Suite::Rules,
        Suite::Coefficients,
        Suite::Quadratic,
    ];
    let chosen: Vec<Suite> = if suite == Suite::All { all.to_vec() } else { vec![suite] };
    for s in chosen {
        run_one(s, sc, &mut sink)?;
    }
    Ok(Outcome::from_pass(sink.ok))
}

fn run_one(suite: Suite, sc: &Scale, sink: &mut Sink) -> Result<(), InputError> {
    match suite {
        Suite::Identities => identities(sc, sink),
        Suite::Satz => satz(sc, sink),
        Suite::Gap => gap(sc, sink),
        Suite::Theorems => theorems(sc, sink),
        Suite::Rules => rules(sink),
        Suite::Coefficients => coefficients(sc, sink),
        Suite::Quadratic => quadratic(sc, sink),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn identities(sc: &Scale, sink: &mut Sink) -> Result<(), InputError> {
    for c in identity_suite(sc.identity_terms)? {
        sink.record("identities", &c);
        let at = c.first_mismatch.map(|n| format!(", first mismatch at q^{n}")).unwrap_or_default();
        sink.line("identities", pass(c.pass), format!("{} ({} terms{at})", c.name, c.terms));
    }
    Ok(())
}

fn satz(sc: &Scale, sink: &mut Sink) -> Result<(), InputError> {
    let report = satz_suite(sc)?;
    let mut by_weight: BTreeMap<(u32, i64), (usize, usize)> = BTreeMap::new();
    for c in &report.checks {
        sink.record("satz", c);
        let e = by_weight.entry((c.level, c.h)).or_default();
        e.0 += 1;
        e.1 += usize::from(c.verdict == Verdict::Pass);
    }
    for ((level, h), (n, ok)) in by_weight {
        sink.line("satz", pass(n == ok), format!("c0[T f] = 0, level {level} h={h}: {ok}/{n} basis elements"));
    }
    for c in &report.t2_constant_terms {
        sink.record("satz", c);
        sink.line("satz", c.verdict, format!("c0[T2({})] = {} has sign {:+} (r={})", c.h, c.c0, c.expected_sign, c.r));
    }
    for c in &report.t2_open_cases {
        sink.record("satz", c);
        sink.line("satz", c.verdict, format!("c0[T2({})] = {} (r={}, nonvanishing open)", c.h, c.c0, c.r));
    }
    Ok(())
}

/// One line per weight, then the recorded `r + 1` observations.
pub fn gap_table(report: &GapReport) -> String {
    let mut out = String::new();
    let mut weights: BTreeMap<i64, Vec<&qgap::GapCheckResult>> = BTreeMap::new();
    for r in &report.results {
        weights.entry(r.h).or_default().push(r);
    }
    let _ = writeln!(out, "{:>5} {:>4} {:>6} {:>6} {:>10}  verdict", "h", "r", "bound", "forms", "max first");
    for (h, rs) in &weights {
        let worst = rs.iter().map(|r| r.first_nonzero_index.unwrap_or(i64::MAX)).max().unwrap_or(0);
        let ok = rs.iter().all(|r| r.verdict == Verdict::Pass);
        let worst = if worst == i64::MAX { "none".to_string() } else { worst.to_string() };
        let _ = writeln!(out, "{:>5} {:>4} {:>6} {:>6} {:>10}  {}", h, rs[0].r, rs[0].bound, rs.len(), worst, pass(ok));
        if let Some(bad) = rs.iter().find(|r| r.verdict != Verdict::Pass) {
            let _ = writeln!(out, "      first failure: {} first index {:?}", bad.form, bad.first_nonzero_index);
        }
    }
    let sharper: Vec<_> = report.results.iter().filter_map(|r| r.within_r_plus_one).collect();
    if !sharper.is_empty() {
        let held = sharper.iter().filter(|&&b| b).count();
        let _ = writeln!(out, "{}: index <= r+1 for {held}/{} forms of weight 2 mod 4", Verdict::Experimental, sharper.len());
    }
    let _ = writeln!(
        out,
        "level {}, {} forms, seed {:#x}, {} random per weight: {}",
        report.level,
        report.results.len(),
        report.seed,
        report.random_per_weight,
        pass(report.passed())
    );
    out
}

fn gap(sc: &Scale, sink: &mut Sink) -> Result<(), InputError> {
    let report = gap_suite(sc)?;
    let mut weights: BTreeMap<i64, Vec<&qgap::GapCheckResult>> = BTreeMap::new();
    for r in &report.results {
        sink.record("gap", r);
        weights.entry(r.h).or_default().push(r);
    }
    for (h, rs) in &weights {
        let ok = rs.iter().filter(|r| r.verdict == Verdict::Pass).count();
        let text = format!("first index <= {} for h={h}: {ok}/{} forms (seed {:#x})", rs[0].bound, rs.len(), report.seed);
        sink.line("gap", pass(ok == rs.len()), text);
        if h % 4 == 2 {
            let held = rs.iter().filter(|r| r.within_r_plus_one == Some(true)).count();
            let text = format!("first index <= r+1 = {} for h={h}: {held}/{} forms", rs[0].r + 1, rs.len());
            sink.line("gap", Verdict::Experimental, text);
        }
    }
    Ok(())
}

fn theorems(sc: &Scale, sink: &mut Sink) -> Result<(), InputError> {
    for c in theorem4_checks(sc)? {
        sink.record("theorems", &c);
        sink.line("theorems", c.verdict, format!("{} {}: c0 = {} [{}]", c.statement, c.form, c.c0, c.predicted));
    }
    Ok(())
}

fn rules(sink: &mut Sink) -> Result<(), InputError> {
    for name in SurveyConfig::builtin_names() {
        let config = SurveyConfig::builtin(name).expect("listed");
        let report = run_survey(&config, false)?;
        let o = &report.summary.overall;
        for r in &report.records {
            sink.record("rules", r);
            if r.verdict.is_failure() {
                sink.line("rules", r.verdict, format!("{}: {} c0 = {}", name, r.expr, r.c0));
            }
        }
        let text = format!(
            "{name}: {} forms, {} pass, {} fail, {} zero, {} not applicable, {} experimental",
            report.summary.total, o.pass, o.fail, o.zero_constant_term, o.not_applicable, o.experimental
        );
        sink.line("rules", pass(report.passed()), text);
    }
    Ok(())
}

fn coefficients(sc: &Scale, sink: &mut Sink) -> Result<(), InputError> {
    let n_max = sc.coefficient_n_max;
    let (j, inv) = j_and_inverse_delta(n_max)?;
    for p in [2u64, 3, 5] {
        let rows = delta_pn_from(&j, &inv, p, n_max)?;
        let asserted = rows.iter().filter(|r| r.asserted).count();
        let failed: Vec<i64> = rows.iter().filter(|r| r.failed()).map(|r| r.n).collect();
        for r in &rows {
            sink.record("coefficients", r);
        }
        if asserted > 0 {
            let text = format!("delta_{{{p},n}} for n <= {n_max}: {}/{asserted} predictions hold{}", asserted - failed.len(), list(&failed));
            sink.line("coefficients", pass(failed.is_empty()), text);
        }
        let observed: Vec<_> = rows.iter().filter(|r| !r.asserted && r.predicted.is_some()).collect();
        if !observed.is_empty() {
            let held = observed.iter().filter(|r| r.holds == Some(true)).count();
            let text = format!("delta_{{{p},n}} = ord{p}(n) for {held}/{} multiples of {p}", observed.len());
            sink.line("coefficients", Verdict::Experimental, text);
        }
    }
    let n_rec = sc.reciprocal_n_max;
    let rows = reciprocal_compare(n_rec)?;
    for p in [2u64, 3, 5] {
        let mine: Vec<_> = rows.iter().filter(|r| r.p == p).collect();
        for r in &mine {
            sink.record("coefficients", *r);
        }
        let asserted = mine.iter().filter(|r| r.asserted).count();
        let failed: Vec<i64> = mine.iter().filter(|r| r.failed()).map(|r| r.n).collect();
        let text = format!(
            "ord{p}(c_n[1/j]) = ord{p}(tau(n)) for n <= {n_rec}: {}/{asserted} asserted rows hold{}",
            asserted - failed.len(),
            list(&failed)
        );
        sink.line("coefficients", pass(failed.is_empty()), text);
    }
    let rows = lehner_from(&j, n_max)?;
    for r in &rows {
        sink.record("coefficients", r);
    }
    for p in [2u64, 3, 5, 7] {
        let mine: Vec<_> = rows.iter().filter(|r| r.p == p).collect();
        let failed: Vec<i64> = mine.iter().filter(|r| !r.pass).map(|r| r.m).collect();
        let text = format!("Lehner congruence mod {p} for m <= {n_max}: {}/{} hold{}", mine.len() - failed.len(), mine.len(), list(&failed));
        sink.line("coefficients", pass(failed.is_empty()), text);
    }
    Ok(())
}

fn list(ns: &[i64]) -> String {
    if ns.is_empty() {
        return String::new();
    }
    let shown: Vec<String> = ns.iter().take(8).map(i64::to_string).collect();
    let more = if ns.len() > 8 { ", ..." } else { "" };
    format!(" (fails at n = {}{more})", shown.join(", "))
}

fn quadratic(sc: &Scale, sink: &mut Sink) -> Result<(), InputError> {
    for c in quadratic_suite(sc.theta_terms)? {
        sink.record("quadratic", &c);
        sink.line("quadratic", pass(c.pass), format!("{} ({})", c.name, c.detail));
    }
    Ok(())
}
