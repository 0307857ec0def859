use comideal::{
    component_basis, AlgebraSlice, EchelonBasis, FieldSpec, FreeAlgebra, Multidegree, SparseVector, VarietySpec,
};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rows(field: FieldSpec, n: usize, dim: usize) -> Vec<SparseVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..n)
        .map(|_| {
            let pairs = (0..6).map(|_| (rng.random_range(0..dim), field.from_i64(rng.random_range(-3..=3)))).collect();
            SparseVector::from_pairs(pairs)
        })
        .collect()
}

fn rref(c: &mut Criterion) {
    for field in [FieldSpec::Rationals, FieldSpec::Prime(5)] {
        let rows = random_rows(field, 150, 120);
        c.bench_function(&format!("rref 150x120 over {}", field.label()), |b| {
            b.iter_batched(|| rows.clone(), |r| EchelonBasis::rref(field, 120, r).unwrap(), BatchSize::SmallInput)
        });
    }
}

fn components(c: &mut Criterion) {
    let mut g = c.benchmark_group("multilinear component");
    g.sample_size(10);
    for (name, n) in [("novikov", 5), ("bicommutative", 5), ("assosymmetric", 4)] {
        let v = VarietySpec::builtin(name).unwrap();
        g.bench_function(format!("{name} degree {n}"), |b| {
            b.iter(|| FreeAlgebra::new(v.clone(), FieldSpec::Rationals, n).component(&Multidegree::multilinear(n)).unwrap())
        });
    }
    g.finish();
    let v = VarietySpec::builtin("associative").unwrap();
    c.bench_function("cached component lookup", |b| {
        b.iter(|| component_basis(&v, FieldSpec::Rationals, 4, &Multidegree::multilinear(4)).unwrap())
    });
}

fn chains(c: &mut Criterion) {
    let mut g = c.benchmark_group("chains k=2 D=5");
    g.sample_size(10);
    for name in ["novikov", "bicommutative", "assosymmetric"] {
        let s = AlgebraSlice::new(&VarietySpec::builtin(name).unwrap(), FieldSpec::Rationals, 2, 5).unwrap();
        g.bench_function(format!("{name} lower central"), |b| b.iter(|| s.lower_central_chain(5).unwrap()));
        g.bench_function(format!("{name} lie powers"), |b| b.iter(|| s.lie_power_series(5).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, rref, components, chains);
criterion_main!(benches);
