use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fmzv_core::numeric::{primes_in, Evaluator};
use fmzv_core::operators::harmonic;
use fmzv_core::verify::z_words;
use fmzv_core::{Composition, NCPoly};

const MODES: [(&str, usize); 2] = [("sequential", 1), ("parallel", 0)];

fn zeta_table(c: &mut Criterion) {
    let comps = Composition::enumerate(6, 3);
    let mut group = c.benchmark_group("zeta_many");
    group.sample_size(10);
    for hi in [200u64, 1000] {
        let window = Arc::new(primes_in(2, hi).unwrap());
        for (name, jobs) in MODES {
            let ev = Evaluator::new().with_jobs(jobs);
            group.bench_with_input(BenchmarkId::new(name, hi), &window, |b, w| {
                b.iter(|| ev.zeta_many(&comps, w, 3).unwrap())
            });
        }
    }
    group.finish();
}

fn stuffle_products(c: &mut Criterion) {
    let words: Vec<NCPoly> = z_words(3).into_iter().map(NCPoly::word).collect();
    let polys: Vec<NCPoly> = words
        .iter()
        .flat_map(|a| words.iter().map(move |b| harmonic(a, b).unwrap()))
        .collect();
    let window = Arc::new(primes_in(2, 500).unwrap());
    let mut group = c.benchmark_group("eval_many");
    group.sample_size(10);
    for (name, jobs) in MODES {
        let ev = Evaluator::new().with_jobs(jobs);
        group.bench_function(name, |b| b.iter(|| ev.eval_many(&polys, &window, 2).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, zeta_table, stuffle_products);
criterion_main!(benches);
