use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use expmat::classify::{classify_batch, Family, FamilyForm};
use expmat::exec::Strategy;
use expmat::oracle::{brute_linear_equiv, enumerate_family, EnumSpec};
use expmat::ppoly::PPoly;
use expmat::Field;
use std::hint::black_box;

fn strategies() -> Vec<(&'static str, Strategy)> {
    let mut s = vec![("sequential", Strategy::Sequential)];
    if Strategy::parallel_available() {
        s.push(("parallel", Strategy::Parallel));
    }
    s
}

/// A pair with no conjugator, so the search runs over all of GL(3, GF(3)).
fn conjugacy_search(c: &mut Criterion) {
    let f = Field::prime(3).unwrap();
    let t = PPoly::t(&f).unwrap();
    let t3 = PPoly::from_ints(&f, &[0, 1]).unwrap();
    let t_plus_t3 = t.add(&t3).unwrap();
    let single = FamilyForm::new(Family::A11, vec![t_plus_t3]).unwrap().matrix();
    let row = FamilyForm::new(Family::A12, vec![t, t3]).unwrap().matrix();
    let mut group = c.benchmark_group("brute_linear_equiv_gf3_3x3");
    group.sample_size(10);
    for (name, strategy) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| brute_linear_equiv(black_box(&single), black_box(&row), strategy).unwrap())
        });
    }
    group.finish();
}

fn batch_classification(c: &mut Criterion) {
    let f = Field::prime(3).unwrap();
    let mats = enumerate_family(&EnumSpec::new(&f, 3, None, 1)).unwrap();
    let mut group = c.benchmark_group("classify_batch_gf3_deg1");
    group.sample_size(10);
    for (name, strategy) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| classify_batch(black_box(&mats), true, strategy)));
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let f = Field::gf(2, 2).unwrap();
    let spec = EnumSpec::new(&f, 3, None, 1);
    c.bench_function("enumerate_gf4_3x3_deg1", |b| b.iter(|| enumerate_family(black_box(&spec)).unwrap()));
}

criterion_group!(benches, conjugacy_search, batch_classification, enumeration);
criterion_main!(benches);
