use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polystrata::admissible::{enumerate, stratum_poset, AdmissibleSet};
use polystrata::algebra_an::quotient_system;
use polystrata::random::random_nonzero_poly;
use polystrata::{build_an, verify_psi, KnMultiplier, NCElement, PoissonParams, QuantumParams};

fn bracket(c: &mut Criterion) {
    let p = PoissonParams::canonical_phi3();
    let s = build_an(&p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_nonzero_poly(&mut rng, p.vars(), 6, 5);
    let g = random_nonzero_poly(&mut rng, p.vars(), 6, 5);
    c.bench_function("bracket/n3_deg5", |b| b.iter(|| s.bracket(black_box(&f), black_box(&g)).unwrap()));
}

fn nc_multiply(c: &mut Criterion) {
    let q = QuantumParams::canonical_q3();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = NCElement::from_poly(&q, &random_nonzero_poly(&mut rng, q.vars(), 4, 4)).unwrap();
    let g = NCElement::from_poly(&q, &random_nonzero_poly(&mut rng, q.vars(), 4, 4)).unwrap();
    c.bench_function("nc_multiply/n3_deg4_cold", |b| {
        b.iter_batched(|| KnMultiplier::new(&q), |mut m| m.mul(&f, &g).unwrap(), BatchSize::SmallInput)
    });
    let mut warm = KnMultiplier::new(&q);
    c.bench_function("nc_multiply/n3_deg4_warm", |b| b.iter(|| warm.mul(&f, &g).unwrap()));
}

fn reduce(c: &mut Criterion) {
    let p = PoissonParams::canonical_phi3();
    let t = AdmissibleSet::parse(3, &["Omega1", "x1", "Omega2", "y2"]).unwrap();
    let sys = quotient_system(&p, &t).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_nonzero_poly(&mut rng, p.vars(), 20, 8);
    c.bench_function("reduce/n3_deg8", |b| b.iter(|| sys.reduce(black_box(&f)).unwrap()));
}

fn strata(c: &mut Criterion) {
    c.bench_function("enumerate/n6", |b| b.iter(|| enumerate(black_box(6))));
    c.bench_function("stratum_poset/n3", |b| b.iter(|| stratum_poset(black_box(3))));
    let p = PoissonParams::canonical_phi3();
    let t = AdmissibleSet::parse(3, &["Omega1", "x1", "Omega2", "y2"]).unwrap();
    c.bench_function("verify_psi/n3", |b| b.iter(|| verify_psi(&p, &t).unwrap()));
}

criterion_group!(benches, bracket, nc_multiply, reduce, strata);
criterion_main!(benches);
