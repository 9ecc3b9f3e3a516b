use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tate_syzygy::algebra::BasisAlgebra;
use tate_syzygy::bundled;
use tate_syzygy::cohomology::ext_dims_from;
use tate_syzygy::module::shared;
use tate_syzygy::resolution::minimal_resolution_with;
use tate_syzygy::{Exec, FdModule, Field, Matrix, PrimeField};

fn strategies() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn random_matrix(f: &PrimeField, n: usize, seed: u64) -> Matrix<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
    Matrix::from_rows(f, n, rows)
}

fn rref(c: &mut Criterion) {
    let f = PrimeField::new(32003).unwrap();
    let mut group = c.benchmark_group("rref");
    for n in [64, 256] {
        let m = random_matrix(&f, n, n as u64);
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| b.iter(|| m.rref_with(exec)));
        }
    }
    group.finish();
}

fn resolution(c: &mut Criterion) {
    let f = PrimeField::new(32003).unwrap();
    let p = bundled::presentation("a", Some(f.spec())).unwrap();
    let a = BasisAlgebra::from_presentation(&p, &f, 30).unwrap();
    let env = shared(a.enveloping());
    let m = FdModule::regular_bimodule(&a, env).unwrap();
    let mut group = c.benchmark_group("bimodule");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::new("resolve", name), |b| b.iter(|| minimal_resolution_with(&m, 10, exec)));
        let res = minimal_resolution_with(&m, 11, exec);
        group.bench_function(BenchmarkId::new("hochschild", name), |b| {
            b.iter(|| ext_dims_from(&res, &m, 10, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, rref, resolution);
criterion_main!(benches);
