use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cutcomplex::cuts::{diameter_two_sweep, CutGraph, Mode};
use cutcomplex::reconstruction::{automorphisms, induced_automorphism, reconstruct};
use cutcomplex::space::{w, ClopenSet, SpaceSpec};
use cutcomplex::spheres::recognize_sphere;

fn complexes(c: &mut Criterion) {
    let mut g = c.benchmark_group("complex");
    for n in [6, 8] {
        let spec = Arc::new(SpaceSpec::Finite(n));
        g.bench_with_input(BenchmarkId::new("finite", n), &spec, |b, s| {
            b.iter(|| CutGraph::complex(s, Mode::Finite).unwrap())
        });
    }
    let cantor = Arc::new(SpaceSpec::Cantor);
    g.bench_function("cantor/depth3", |b| {
        b.iter(|| CutGraph::complex(&cantor, Mode::Bounded(3)).unwrap())
    });
    g.finish();
}

fn automorphism_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("automorphisms");
    g.sample_size(20);
    for n in [6, 8] {
        let cg = CutGraph::complex(&Arc::new(SpaceSpec::Finite(n)), Mode::Finite).unwrap();
        g.bench_with_input(BenchmarkId::new("finite", n), &cg, |b, cg| {
            b.iter(|| automorphisms(cg.graph()).unwrap())
        });
    }
    g.finish();
}

fn reconstruction(c: &mut Criterion) {
    let cg = CutGraph::complex(&Arc::new(SpaceSpec::Finite(8)), Mode::Finite).unwrap();
    let phi = induced_automorphism(&[3, 1, 4, 0, 7, 5, 2, 6], &cg).unwrap();
    c.bench_function("reconstruct/finite8", |b| {
        b.iter(|| reconstruct(black_box(&phi), &cg, &cg).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let cantor = Arc::new(SpaceSpec::Cantor);
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    g.bench_function("diameter_two/cantor3", |b| {
        b.iter(|| diameter_two_sweep(&cantor, 3, 16).unwrap())
    });
    let sides: Vec<ClopenSet> = ["00", "01", "10", "110", "111"]
        .iter()
        .map(|s| ClopenSet::canonicalize(&cantor, &[w(s)]))
        .collect();
    g.bench_function("recognize/five_sides", |b| {
        b.iter(|| recognize_sphere(&cantor, &sides, 4).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    complexes,
    automorphism_search,
    reconstruction,
    sweeps
);
criterion_main!(benches);
