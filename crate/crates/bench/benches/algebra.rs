use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qclifford::algebra::{enumerate_basis, AlgebraContext, Element, Involution, InvolutionKind};
use qclifford::repr::{rep_matrix, semisimple_certificate, RepLabel};
use qclifford::structure::{center_basis, takeuchi};
use qclifford::Scalar;

fn random_elements(ctx: &AlgebraContext, count: usize, terms: usize) -> Vec<Element> {
    let basis = enumerate_basis(ctx);
    let mut rng = StdRng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let picks = (0..terms).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), Scalar::from_int(rng.gen_range(1..5))));
            Element::from_terms(ctx, picks).unwrap()
        })
        .collect()
}

fn multiply(c: &mut Criterion) {
    let mut g = c.benchmark_group("multiply");
    for (n, k) in [(1, 1), (2, 2), (3, 2)] {
        let ctx = AlgebraContext::psi(n, k).unwrap();
        let xs = random_elements(&ctx, 16, 4);
        g.bench_with_input(BenchmarkId::new("4x4 terms", format!("n{n}k{k}")), &xs, |b, xs| {
            b.iter(|| {
                for w in xs.windows(2) {
                    black_box(w[0].checked_mul(&w[1]).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn representations(c: &mut Criterion) {
    let ctx = AlgebraContext::psi(2, 2).unwrap();
    let xs = random_elements(&ctx, 8, 6);
    let label = RepLabel::new(&ctx, &[1, 3]).unwrap();
    c.bench_function("rep_matrix n2k2", |b| {
        b.iter(|| {
            for x in &xs {
                black_box(rep_matrix(&label, x).unwrap());
            }
        })
    });
}

fn certificates(c: &mut Criterion) {
    let mut g = c.benchmark_group("certificates");
    g.sample_size(10);
    let ctx = AlgebraContext::psi(2, 2).unwrap();
    g.bench_function("center_basis n2k2", |b| b.iter(|| black_box(center_basis(&ctx).unwrap())));
    g.bench_function("semisimple n2k2", |b| b.iter(|| black_box(semisimple_certificate(&ctx).unwrap())));
    g.finish();
}

fn maps(c: &mut Criterion) {
    let ctx = AlgebraContext::psi(2, 2).unwrap();
    let xs = random_elements(&ctx, 8, 6);
    let t = Involution::new(InvolutionKind::Transpose, &ctx).unwrap();
    c.bench_function("transpose n2k2", |b| {
        b.iter(|| {
            for x in &xs {
                black_box(t.apply(x).unwrap());
            }
        })
    });
    c.bench_function("takeuchi n2k2", |b| b.iter(|| black_box(takeuchi(&xs[0]).unwrap())));
}

criterion_group!(benches, multiply, representations, certificates, maps);
criterion_main!(benches);
