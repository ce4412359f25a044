use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pfr_core::frame::enumerate_frames;
use pfr_core::realfn::{join_hausdorff, sample_fn, Codomain, Profile};
use pfr_core::registry;
use pfr_core::sublocale::all_sublocales;

fn frames(c: &mut Criterion) {
    c.bench_function("enumerate_frames(8)", |b| {
        b.iter(|| enumerate_frames(black_box(8)).unwrap())
    });
    let fs = enumerate_frames(6).unwrap();
    c.bench_function("all_sublocales(size <= 6)", |b| {
        b.iter(|| fs.iter().map(|f| all_sublocales(f).unwrap().len()).sum::<usize>())
    });
}

fn functions(c: &mut Criterion) {
    let m = registry::codomain("coS(W5)", &[]).unwrap();
    let d4 = Codomain::frame(registry::d4());
    let family: Vec<_> = (0..8).map(|s| sample_fn(&m, Profile::Hausdorff, s)).collect();
    c.bench_function("join_hausdorff(coS(W5), 8)", |b| {
        b.iter(|| join_hausdorff(&m, black_box(&family)).unwrap())
    });
    let samples: Vec<_> = (0..64).map(|s| sample_fn(&d4, Profile::ArbitraryIc, s)).collect();
    c.bench_function("is_hausdorff(D4, 64)", |b| {
        b.iter(|| samples.iter().filter(|f| black_box(f).is_hausdorff()).count())
    });
}

criterion_group!(benches, frames, functions);
criterion_main!(benches);
