//! Benchmarks for the data-parallel orbit scans and evaluators.
//!
//! With the default `parallel` feature on, each scan is also run inside a
//! one-thread rayon pool for a same-binary comparison; built with
//! `--no-default-features` the same benchmarks measure the compiled-out
//! sequential path.

use criterion::{criterion_group, criterion_main, Criterion};

use bernoullik_core::perm::orbits::{function_orbits, subset_orbits};
use bernoullik_core::perm::{realize, GSetSpec, PermGroup, SetAction};

fn scans(c: &mut Criterion) {
    let g = PermGroup::dihedral(6);
    let spec = GSetSpec::regular(&g).unwrap();
    let z = realize(&g, &spec, None).unwrap();
    let n = z.point_count();

    c.bench_function("subset_orbits/d6_regular", |b| {
        b.iter(|| subset_orbits(&g, &z, n).unwrap())
    });

    let s3 = PermGroup::symmetric(3);
    let whole = s3.as_subgroup().unwrap();
    let act = SetAction::regular(&s3).unwrap();
    c.bench_function("function_orbits/s3_alphabet3", |b| {
        b.iter(|| function_orbits(&whole, &act, 3).unwrap())
    });

    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        c.bench_function("subset_orbits/d6_regular/one_thread", |b| {
            b.iter(|| pool.install(|| subset_orbits(&g, &z, n).unwrap()))
        });
        c.bench_function("function_orbits/s3_alphabet3/one_thread", |b| {
            b.iter(|| pool.install(|| function_orbits(&whole, &act, 3).unwrap()))
        });
    }
}

criterion_group!(benches, scans);
criterion_main!(benches);
