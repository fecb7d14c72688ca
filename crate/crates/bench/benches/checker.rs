use apal::axioms::Fragment;
use apal::checker::truth_set_uncached;
use apal::{bisim_quotient, Evaluator};
use apal_bench::{formulas, models};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn bisimulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("bisim_quotient");
    for worlds in [4, 8, 16] {
        let ms = models(1, 32, worlds);
        group.bench_with_input(BenchmarkId::from_parameter(worlds), &ms, |b, ms| {
            b.iter(|| {
                ms.iter()
                    .map(|m| bisim_quotient(black_box(m)).len())
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn truth_sets(c: &mut Criterion) {
    let ms = models(2, 16, 6);
    let pal = formulas(3, 32, Fragment::Pal, 16);
    let apal = formulas(4, 32, Fragment::Apal, 10);
    let mut group = c.benchmark_group("truth_set");
    group.bench_function("pal/uncached", |b| {
        b.iter(|| {
            for m in &ms {
                for f in &pal {
                    black_box(truth_set_uncached(m, f));
                }
            }
        })
    });
    for (name, fs) in [("pal", &pal), ("apal", &apal)] {
        group.bench_function(format!("{name}/cached"), |b| {
            b.iter(|| {
                let mut ev = Evaluator::new();
                for m in &ms {
                    for f in fs {
                        black_box(ev.truth_set(m, f));
                    }
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bisimulation, truth_sets);
criterion_main!(benches);
