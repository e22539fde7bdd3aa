use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use lamkit_bench::{dynnikov_batch, triangle_batch};
use lamkit_core::{
    dynnikov_from_triangle, family_triangle, intersect_d3, intersect_relaxed, random_family,
    reconstruct, triangle_from_dynnikov, PunctureCount, RelaxedCurve,
};

const BATCH: usize = 256;

fn conversions(c: &mut Criterion) {
    let mut g = c.benchmark_group("convert");
    g.throughput(Throughput::Elements(BATCH as u64));
    for n in [4, 12, 48] {
        let ds = dynnikov_batch(n, BATCH, 1_000_000, 1);
        let ts = triangle_batch(n, BATCH, 1_000_000, 1);
        g.bench_with_input(BenchmarkId::new("triangle_from_dynnikov", n), &ds, |b, ds| {
            b.iter(|| ds.iter().map(|d| triangle_from_dynnikov(black_box(d)).unwrap()).collect::<Vec<_>>())
        });
        g.bench_with_input(BenchmarkId::new("dynnikov_from_triangle", n), &ts, |b, ts| {
            b.iter(|| ts.iter().map(|t| dynnikov_from_triangle(black_box(t)).unwrap()).collect::<Vec<_>>())
        });
    }
    g.finish();
}

fn intersections(c: &mut Criterion) {
    let mut g = c.benchmark_group("intersect");
    for n in [5, 12, 24] {
        let ts = triangle_batch(n, 32, 1_000, 2);
        let curves: Vec<RelaxedCurve> = RelaxedCurve::all(PunctureCount::new(n).unwrap()).collect();
        g.throughput(Throughput::Elements((ts.len() * curves.len()) as u64));
        g.bench_with_input(BenchmarkId::new("relaxed_all_curves", n), &ts, |b, ts| {
            b.iter(|| {
                let mut sum = 0i64;
                for t in ts {
                    for c in &curves {
                        sum += intersect_relaxed(black_box(t), c).unwrap();
                    }
                }
                sum
            })
        });
    }
    let ts = triangle_batch(3, BATCH, 1_000_000, 3);
    g.throughput(Throughput::Elements((BATCH * BATCH) as u64));
    g.bench_function("d3_pairs", |b| {
        b.iter(|| {
            let mut sum = 0i64;
            for x in &ts {
                for y in &ts {
                    sum = sum.wrapping_add(intersect_d3(black_box(x), y).unwrap());
                }
            }
            sum
        })
    });
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    for n in [5, 10] {
        let ts = triangle_batch(n, 16, 20, 4);
        g.bench_with_input(BenchmarkId::new("reconstruct", n), &ts, |b, ts| {
            b.iter(|| ts.iter().map(|t| reconstruct(black_box(t)).unwrap().component_count()).sum::<usize>())
        });
        let pc = PunctureCount::new(n).unwrap();
        g.bench_with_input(BenchmarkId::new("random_family_triangle", n), &pc, |b, &pc| {
            let mut seed = 0u64;
            b.iter(|| {
                seed += 1;
                family_triangle(&random_family(pc, 8, seed).unwrap()).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, conversions, intersections, oracle);
criterion_main!(benches);
