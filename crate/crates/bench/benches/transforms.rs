use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qqpft_core::signals::{gaussian, quaternion_random};
use qqpft_core::{
    canonical_freq, lp_norm_4d, qqpft_direct, qqpft_fast, GridSpec, Method, ParamPair, ParamSet, TfKind, TfPlan,
};

fn pair() -> ParamPair {
    ParamPair::new(
        ParamSet::new(0.1, 1.2, 0.2, -0.3, 0.4).unwrap(),
        ParamSet::new(-0.1, -0.8, 0.1, 0.25, -0.35).unwrap(),
    )
}

fn transforms(c: &mut Criterion) {
    let p = pair();
    let mut group = c.benchmark_group("qqpft");
    for n in [16, 32, 64] {
        let sp = GridSpec::new(n, 10.0).unwrap();
        let f = quaternion_random(sp, 1).unwrap();
        let freq = canonical_freq(&sp, &p);
        group.bench_with_input(BenchmarkId::new("fast", n), &f, |b, f| b.iter(|| qqpft_fast(f, &p).unwrap()));
        group.bench_with_input(BenchmarkId::new("direct", n), &f, |b, f| b.iter(|| qqpft_direct(f, &p, &freq)));
    }
    group.finish();
}

fn fields(c: &mut Criterion) {
    let p = pair();
    let sp = GridSpec::new(16, 8.0).unwrap();
    let f = quaternion_random(sp, 2).unwrap();
    let g = gaussian(sp, 1.0, [0.0, 0.0]).unwrap();
    let mut group = c.benchmark_group("field-energy");
    group.sample_size(10);
    for kind in [TfKind::Stqqpft, TfKind::Qqpaf, TfKind::Qqpwvd] {
        for (label, method) in [("fast", Method::Fast), ("direct", Method::Direct)] {
            let plan = match kind {
                TfKind::Stqqpft => TfPlan::stqqpft(&qqpft_core::WindowedPair::new(f.clone(), g.clone(), p).unwrap(), method),
                TfKind::Qqpaf => TfPlan::qqpaf(&f, &g, &p, method),
                TfKind::Qqpwvd => TfPlan::qqpwvd(&f, &g, &p, method),
            }
            .unwrap();
            group.bench_function(BenchmarkId::new(kind.name(), label), |b| b.iter(|| lp_norm_4d(&plan, 2.0).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, transforms, fields);
criterion_main!(benches);
