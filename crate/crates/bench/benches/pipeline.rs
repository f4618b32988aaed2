use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use mudt::synth::random_heads;
use mudt::validator::crossing_arcs;
use mudt::{apply_all, parse_treebank, score, validate_treebank, SchemaRegistry};
use mudt_bench::{conllu_text, treebank, ud_treebank};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn parse(c: &mut Criterion) {
    let text = conllu_text(1000, 20);
    let mut g = c.benchmark_group("parse");
    g.throughput(Throughput::Bytes(text.len() as u64));
    g.bench_function("1000 sentences", |b| b.iter(|| parse_treebank(black_box(&text))));
    g.finish();
}

fn validate(c: &mut Criterion) {
    let tb = treebank(1000, 20);
    let reg = SchemaRegistry::default();
    c.bench_function("validate/1000 sentences", |b| {
        b.iter(|| validate_treebank(black_box(&tb), &reg))
    });
}

fn convert(c: &mut Criterion) {
    let tb = ud_treebank(1000, 15);
    let reg = SchemaRegistry::default();
    c.bench_function("convert/1000 sentences", |b| {
        b.iter(|| {
            for s in &tb.sentences {
                black_box(apply_all(s, &reg).unwrap());
            }
        })
    });
}

fn evaluate(c: &mut Criterion) {
    let tb = treebank(1000, 20);
    let reg = SchemaRegistry::default();
    c.bench_function("eval/self 1000 sentences", |b| {
        b.iter(|| score(black_box(&tb), black_box(&tb), &reg).unwrap())
    });
}

fn projectivity(c: &mut Criterion) {
    let mut g = c.benchmark_group("crossing_arcs");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [10, 50, 200] {
        let heads = random_heads(&mut rng, n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &heads, |b, h| {
            b.iter(|| crossing_arcs(black_box(h)))
        });
    }
    g.finish();
}

criterion_group!(benches, parse, validate, convert, evaluate, projectivity);
criterion_main!(benches);
