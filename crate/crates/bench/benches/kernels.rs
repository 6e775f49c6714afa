use std::hint::black_box;
use std::time::Duration;

use coha_core::ffcount::{
    count_iso_classes, count_moment_fiber, CountOptions, CountStrategy, FqField, FqMatrix, MomentOptions,
    MomentStrategy,
};
use coha_core::gseries::{exp_plethystic, free_lie_char, log_plethystic};
use coha_core::invariants::{kac_polynomials, KacOptions};
use coha_core::{AdamsMode, DimVector, GradedSeries, LaurentPoly, Quiver, Truncation};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_iso_classes");
    let quiver = Quiver::one_vertex(2);
    let d = DimVector::new(vec![2]);
    for strategy in [CountStrategy::Elementwise, CountStrategy::ClassBased, CountStrategy::TypeBased] {
        group.bench_with_input(BenchmarkId::new(format!("{strategy:?}"), "g2_d2_q3"), &strategy, |b, &s| {
            b.iter(|| count_iso_classes(&quiver, &d, black_box(3), CountOptions::with_strategy(s)).unwrap())
        });
    }
    let d3 = DimVector::new(vec![3]);
    group.bench_function("TypeBased/g2_d3_q5", |b| {
        b.iter(|| count_iso_classes(&quiver, &d3, black_box(5), CountOptions::with_strategy(CountStrategy::TypeBased)).unwrap())
    });
    group.finish();
}

fn moment(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_moment_fiber");
    group.measurement_time(Duration::from_secs(10));
    let quiver = Quiver::one_vertex(2);
    let d = DimVector::new(vec![2]);
    for q in [2u64, 3, 4] {
        group.bench_with_input(BenchmarkId::new("Convolution/g2_d2", q), &q, |b, &q| {
            b.iter(|| count_moment_fiber(&quiver, &d, q, MomentOptions::with_strategy(MomentStrategy::Convolution)).unwrap())
        });
    }
    let jordan = Quiver::one_vertex(1);
    group.bench_function("Naive/g1_d2_q2", |b| {
        b.iter(|| count_moment_fiber(&jordan, &d, black_box(2), MomentOptions::with_strategy(MomentStrategy::Naive)).unwrap())
    });
    group.finish();
}

fn random_like_series(trunc: &Truncation) -> GradedSeries {
    let terms = trunc.degrees().into_iter().skip(1).enumerate().map(|(k, d)| {
        let k = k as i64;
        (d, LaurentPoly::from_coeffs(&[k % 3 - 1, 1, (k * 7) % 5 - 2]))
    });
    GradedSeries::from_terms(trunc.clone(), terms)
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("plethystic");
    for n in [4u32, 6] {
        let trunc = Truncation::new(DimVector::new(vec![n, n]));
        let f = random_like_series(&trunc);
        group.bench_with_input(BenchmarkId::new("exp_log_qz", n), &f, |b, f| {
            b.iter(|| log_plethystic(&exp_plethystic(f, AdamsMode::QAndZ).unwrap(), AdamsMode::QAndZ).unwrap())
        });
    }
    let witt = GradedSeries::from_terms(
        Truncation::new(DimVector::new(vec![8, 8])),
        [(DimVector::new(vec![1, 0]), LaurentPoly::one()), (DimVector::new(vec![0, 1]), LaurentPoly::one())],
    );
    group.bench_function("free_lie_char/2gen_deg8", |b| b.iter(|| free_lie_char(black_box(&witt)).unwrap()));
    group.finish();
}

fn linear_algebra(c: &mut Criterion) {
    let field = FqField::new(4).unwrap();
    let n = 12;
    let data: Vec<u8> = (0..n * n).map(|k| ((k * 7 + 3) % 4) as u8).collect();
    let m = FqMatrix::from_vec(n, n, data);
    c.bench_function("fq_rank/12x12_q4", |b| b.iter(|| black_box(&m).rank(&field)));
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("kac_polynomials");
    group.sample_size(10);
    let quiver = Quiver::one_vertex(2);
    group.bench_function("g2_box3", |b| {
        b.iter(|| kac_polynomials(&quiver, &Truncation::single(3), KacOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, counting, moment, series, linear_algebra, pipeline);
criterion_main!(benches);
