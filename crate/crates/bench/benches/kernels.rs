use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use momentpoly_core::lie::{bruhat_interval, build_root_system, Weight, WeylGroup};
use momentpoly_core::polytope::Polytope;
use momentpoly_core::rational::{q, QVec};
use momentpoly_core::reps::{flag_moment, sample_borel, stream_rng, FlagPoint, ProjPoint, Rep};
use momentpoly_core::sections::{c_set_with, InvariantCatalog};
use momentpoly_core::theorems::{
    action_chambers, delzant_sequence, schubert_polytope, DelzantTarget, TargetCoord,
};

fn lie(c: &mut Criterion) {
    for (kind, rank) in [('A', 3), ('B', 3), ('D', 4)] {
        let rs = build_root_system(kind, rank).unwrap();
        c.bench_function(&format!("weyl_group/{kind}{rank}"), |b| {
            b.iter(|| WeylGroup::new(black_box(&rs)).unwrap())
        });
    }
    let rs = build_root_system('A', 3).unwrap();
    let w0 = WeylGroup::new(&rs).unwrap().longest().clone();
    c.bench_function("bruhat_interval/A3_w0", |b| {
        b.iter(|| bruhat_interval(&rs, black_box(&w0)).unwrap())
    });
    let mu = Weight::from_ints(&[1, 1, 1]);
    c.bench_function("schubert_polytope/A3_w0", |b| {
        b.iter(|| schubert_polytope(&rs, black_box(&w0), &mu).unwrap())
    });
}

fn polytope(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull");
    for dim in 2..=4usize {
        let mut rng = stream_rng(1, dim as u64);
        use rand::Rng;
        let pts: Vec<QVec> = (0..40)
            .map(|_| (0..dim).map(|_| q(rng.random_range(-10..=10))).collect())
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &pts, |b, pts| {
            b.iter(|| Polytope::hull(dim, pts).unwrap())
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mu = [1.0, 0.0, -1.0];
    c.bench_function("flag_moment/A2", |b| {
        let mut i = 0u64;
        b.iter(|| {
            i += 1;
            let g = sample_borel(3, &mut stream_rng(0, i), 1.0);
            let h = FlagPoint::new(g.matrix()).unwrap();
            flag_moment(&mu, &h).unwrap()
        })
    });
}

fn sections(c: &mut Criterion) {
    let rep = Rep::sym_power(2, 2).unwrap();
    c.bench_function("invariant_catalog/Sym2C2_r4", |b| {
        b.iter(|| InvariantCatalog::new(&rep, 4))
    });
    let cat = InvariantCatalog::new(&rep, 4);
    let x = ProjPoint::from_ints(&[2, 1, 3]).unwrap();
    c.bench_function("c_set/Sym2C2_r4", |b| {
        b.iter(|| c_set_with(&cat, black_box(&x)).unwrap())
    });
}

fn theorems(c: &mut Criterion) {
    let rs = build_root_system('A', 3).unwrap();
    let roots = rs.positive_roots();
    c.bench_function("action_chambers/A3_roots", |b| {
        b.iter(|| action_chambers(3, black_box(&roots)).unwrap())
    });
    let rs2 = build_root_system('A', 2).unwrap();
    let t = DelzantTarget(vec![TargetCoord::Sqrt(q(2)), TargetCoord::Rational(q(1))]);
    c.bench_function("delzant_sequence/A2_5", |b| {
        b.iter(|| delzant_sequence(&rs2, black_box(&t), 5).unwrap())
    });
}

criterion_group!(benches, lie, polytope, sampling, sections, theorems);
criterion_main!(benches);
