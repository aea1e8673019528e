use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kantor_core::admissibility::{all_sp_pairs, enumerate_ka, enumerate_sp};
use kantor_core::chevalley::{marking_pair, ChevalleyAlgebra, CheckMode, Omega, RootOrder};
use kantor_core::matrix_pairs::{table_row, verify_row};
use kantor_core::weyl_image::weyl_image;
use kantor_core::{Family, NodeSet, RootSystem, WeylElement};

fn rs(name: &str) -> RootSystem {
    RootSystem::new(name.parse().unwrap())
}

fn classification(c: &mut Criterion) {
    let e6 = rs("E6");
    c.bench_function("classify E6", |b| b.iter(|| enumerate_ka(black_box(&e6)).unwrap()));
    c.bench_function("classify E6 sp", |b| b.iter(|| enumerate_sp(black_box(&e6), true).unwrap()));
    let e8 = rs("E8");
    c.bench_function("classify E8 sp", |b| b.iter(|| enumerate_sp(black_box(&e8), false).unwrap()));
}

fn weyl_images(c: &mut Criterion) {
    let e7 = rs("E7");
    let pairs = all_sp_pairs(&e7).unwrap();
    c.bench_function("weyl images E7, all pairs and elements", |b| {
        b.iter(|| {
            for &(s, t) in &pairs {
                for u in WeylElement::ALL {
                    black_box(weyl_image(&e7, u, s, t).unwrap());
                }
            }
        })
    });
}

fn chevalley(c: &mut Criterion) {
    let e6 = rs("E6");
    c.bench_function("Chevalley basis E6", |b| b.iter(|| ChevalleyAlgebra::new(black_box(&e6), RootOrder::Lex).unwrap()));
    let alg = ChevalleyAlgebra::new(&e6, RootOrder::Lex).unwrap();
    let (s, t) = (NodeSet::singleton(5), NodeSet::singleton(0));
    c.bench_function("extract E6(20,1,10)", |b| b.iter(|| marking_pair(&alg, s, Some(t)).unwrap()));
    let pair = marking_pair(&alg, s, Some(t)).unwrap();
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("sampled identities E6(20,1,10)", |b| {
        b.iter(|| pair.check_kantor_identities(CheckMode::Sampled { samples: 200, seed: 1 }))
    });
    group.bench_function("omega E6", |b| b.iter(|| Omega::build(&alg).unwrap().matrix.len()));
    let row = table_row(Family::E, 6, false).unwrap();
    group.bench_function("reflection row E6", |b| b.iter(|| verify_row(&row, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, classification, weyl_images, chevalley);
criterion_main!(benches);
