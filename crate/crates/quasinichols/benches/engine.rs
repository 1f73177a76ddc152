use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use quasinichols::classify::enumerate_minimal_nondiagonal;
use quasinichols::cohomology::{resolve_coboundary, CSeq, Cocycle3};
use quasinichols::group::FAGroup;
use quasinichols::nichols::TensorAlgebra;
use quasinichols::par;
use quasinichols::rootsys::Caps;
use quasinichols::ydmod::{make_simple_rank3, YDModule};
use quasinichols::Cyclo;

fn cube() -> (FAGroup, Arc<Cocycle3>, YDModule) {
    let g = FAGroup::new(vec![2, 2, 2]).unwrap();
    let phi = Arc::new(Cocycle3::from_flat(&g, &[0, 0, 0, 0, 0, 0, 1]).unwrap());
    let m1 = Cyclo::from_int(-1);
    let parts = [(0, 1, 2), (1, 0, 2), (2, 1, 0)]
        .iter()
        .map(|&r| make_simple_rank3(&g, phi.clone(), r, m1.clone(), Cyclo::one(), Cyclo::one()).unwrap())
        .collect();
    let v = YDModule::direct_sum(parts).unwrap();
    (g, phi, v)
}

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let n = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut out = vec![("1-thread".to_string(), rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap())];
    if n > 1 {
        out.push((format!("{n}-thread"), rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()));
    }
    out
}

fn nichols(c: &mut Criterion) {
    let (_, _, v) = cube();
    let t = TensorAlgebra::new(&v).unwrap();
    let mut group = c.benchmark_group(format!("graded_dims/{}", par::MODE));
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("cube_deg4", &name), &t, |b, t| {
            b.iter(|| pool.install(|| t.graded_dims(4)))
        });
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let g = FAGroup::new(vec![2, 2, 2]).unwrap();
    let all: Vec<Cocycle3> = CSeq::all(&g).into_iter().map(|s| Cocycle3::normal_form(&g, s)).collect();
    let k = FAGroup::new(vec![2, 4]).unwrap();
    let abelian = Cocycle3::from_flat(&k, &[1, 3, 1]).unwrap();
    let hat = k.hat_of();
    let mut group = c.benchmark_group(format!("cohomology/{}", par::MODE));
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("cocycle_identity_z2cube", &name), |b| {
            b.iter(|| pool.install(|| all.iter().all(|p| p.satisfies_cocycle_identity())))
        });
        group.bench_function(BenchmarkId::new("resolve_z2xz4", &name), |b| {
            b.iter(|| pool.install(|| resolve_coboundary(&abelian, &hat.hat, &hat.proj)))
        });
    }
    group.finish();
}

fn classify(c: &mut Criterion) {
    let (g, phi, _) = cube();
    let mut group = c.benchmark_group(format!("enumerate/{}", par::MODE));
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("z2cube_n2", &name), |b| {
            b.iter(|| pool.install(|| enumerate_minimal_nondiagonal(&g, phi.clone(), 2, Caps::default()).unwrap()))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().configure_from_args();
    targets = nichols, cohomology, classify
}
criterion_main!(benches);
