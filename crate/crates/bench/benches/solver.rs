use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ddecide_bench::{alternating_qbf, sentences};
use ddecide_core::{alpha_of_sentence, decide_strengthen, eval_closed, qbf_encode, Delta, EvalConfig, Rational};

fn delta(n: i64, d: i64) -> Delta {
    Delta::new(Rational::new(n.into(), d.into())).unwrap()
}

fn decide_sentences(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide");
    let d = delta(1, 10);
    for (name, s) in sentences() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| b.iter(|| decide_strengthen(black_box(s), &d)));
    }
    g.finish();
}

fn eval_precision(c: &mut Criterion) {
    let mut g = c.benchmark_group("eval_closed");
    let (_, s) = sentences().into_iter().find(|(n, _)| *n == "nested-example").unwrap();
    let t = alpha_of_sentence(&s);
    for k in [8u32, 16, 32] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| eval_closed(black_box(&t), k, &EvalConfig::default(), None))
        });
    }
    g.finish();
}

fn qbf_alternation(c: &mut Criterion) {
    let mut g = c.benchmark_group("qbf");
    g.sample_size(10);
    let d = delta(1, 4);
    for pairs in 1..=2u32 {
        let s = qbf_encode(&alternating_qbf(pairs));
        g.bench_with_input(BenchmarkId::from_parameter(2 * pairs), &s, |b, s| b.iter(|| decide_strengthen(black_box(s), &d)));
    }
    g.finish();
}

criterion_group!(benches, decide_sentences, eval_precision, qbf_alternation);
criterion_main!(benches);
