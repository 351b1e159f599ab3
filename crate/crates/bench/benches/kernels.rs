use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qgap::congruence::run_survey;
use qgap::forms::{delta, j_invariant};
use qgap::quadratic::{d4, e8, theta};
use qgap::SurveyConfig;

fn series(c: &mut Criterion) {
    let d = delta(512).unwrap();
    c.bench_function("mul delta*delta 512", |b| b.iter(|| black_box(&d).mul(&d)));
    c.bench_function("invert delta 512", |b| b.iter(|| black_box(&d).invert().unwrap()));
    c.bench_function("j to 512", |b| b.iter(|| j_invariant(black_box(512)).unwrap()));
}

fn lattices(c: &mut Criterion) {
    let (d4, e8) = (d4(), e8());
    let d4x2 = d4.direct_sum(&d4);
    c.bench_function("theta D4 50 terms", |b| b.iter(|| theta(black_box(&d4), 49)));
    c.bench_function("theta D4+D4 12 terms", |b| b.iter(|| theta(black_box(&d4x2), 11)));
    c.bench_function("theta E8 12 terms", |b| b.iter(|| theta(black_box(&e8), 11)));
}

fn survey(c: &mut Criterion) {
    let config = SurveyConfig::from_json(
        r#"{"name": "bench", "families": [
            {"name": "Delta^-a", "template": "Delta^-{a}", "ranges": {"a": [1, 16]}}
        ]}"#,
    )
    .unwrap();
    let mut g = c.benchmark_group("survey");
    g.sample_size(10);
    g.bench_function("Delta^-a, a <= 16", |b| b.iter(|| run_survey(black_box(&config), false).unwrap()));
    g.finish();
}

criterion_group!(benches, series, lattices, survey);
criterion_main!(benches);
