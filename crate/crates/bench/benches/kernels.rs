use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gcomb_bench::{bx_group, kesten_element, reference_combing, reference_element};
use gcomb_core::algebra::GroupAlgebra;
use gcomb_core::combing::{triple_witness, Combing};
use gcomb_core::group::{GroupDescription, WordLength};
use gcomb_core::spectral::lower_bound_operator_norm;
use gcomb_core::GeneratingAlphabet;

fn convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolution_power");
    let algebra = GroupAlgebra::new(bx_group()).with_support_cap(1 << 22);
    let a = reference_element();
    for k in [8u32, 12, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| algebra.power(black_box(&a), k).expect("under cap"))
        });
    }
    let f2 = GroupDescription::free(2).expect("rank 2");
    let kesten = kesten_element(&f2);
    let algebra = GroupAlgebra::new(f2);
    group.bench_function("kesten_k6", |b| {
        b.iter(|| algebra.power(black_box(&kesten), 6).expect("under cap"))
    });
    group.finish();
}

fn combing(c: &mut Criterion) {
    let comb = reference_combing();
    let g = comb.group().clone();
    let words = [
        "b x b^-1 x",
        "b^3 x^2 b^-2 x^-1 b x",
        "x b x b x b x b x b x b",
    ];
    let mut group = c.benchmark_group("combing_eval");
    for w in words {
        let e = g.parse(w).expect("word");
        group.bench_with_input(BenchmarkId::from_parameter(w), &e, |b, e| {
            b.iter(|| comb.eval_from_identity(black_box(e)))
        });
    }
    group.finish();
    let s = g.parse("b x b x^-1 b x").expect("word");
    let h = g.parse("x^2 b^-1 x b^3").expect("word");
    c.bench_function("triple_witness", |b| {
        b.iter(|| triple_witness(&comb, black_box(&s), black_box(&h)))
    });
}

fn dhat(c: &mut Criterion) {
    let g = bx_group();
    let a = GeneratingAlphabet::relative_named(g.clone(), "b").expect("b is a factor");
    let h = g.parse("b^5").expect("word");
    c.bench_function("dhat_free_product_bound_30", |b| {
        b.iter(|| a.dhat(&g.identity(), black_box(&h), 30))
    });
    let z2 = GroupDescription::direct(vec![
        GroupDescription::free_named(["b"]).expect("rank 1"),
        GroupDescription::free_named(["x"]).expect("rank 1"),
    ])
    .expect("direct product");
    let a = GeneratingAlphabet::relative(z2.clone(), 0).expect("factor 0");
    let h = z2.parse("(b^17, 1)").expect("word");
    c.bench_function("dhat_z2_bfs", |b| {
        b.iter(|| a.dhat_bfs(&z2.identity(), black_box(&h), 5, 40))
    });
}

fn lower_bounds(c: &mut Criterion) {
    let f2 = GroupDescription::free(2).expect("rank 2");
    let a = kesten_element(&f2);
    let algebra = GroupAlgebra::new(f2.clone());
    let len = WordLength::new(f2);
    c.bench_function("kesten_radial_r40", |b| {
        b.iter(|| {
            lower_bound_operator_norm(&algebra, black_box(&a), &len, 40, 0, 0.0).expect("radial")
        })
    });
    let comb = reference_combing();
    let b_elem = reference_element();
    let algebra = GroupAlgebra::new(comb.group().clone());
    let len = WordLength::new(comb.group().clone());
    c.bench_function("ball_compression_r4", |b| {
        b.iter(|| {
            lower_bound_operator_norm(&algebra, black_box(&b_elem), &len, 4, 5000, 1e-10)
                .expect("ball")
        })
    });
}

criterion_group!(benches, convolution, combing, dhat, lower_bounds);
criterion_main!(benches);
