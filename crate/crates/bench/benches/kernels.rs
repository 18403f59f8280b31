//! Timings of the exact kernels: determinants over each ring, the
//! brute-force enumerator, and the closed forms.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use coredhex::exactnum::int;
use coredhex::formulas::{asymptotic_k, count_cored_formula, rhs_omega_det, OmegaCase};
use coredhex::lgv::{build_B, build_cored_matrix};
use coredhex::tilings::{count_tilings, CoredHexagon, DEFAULT_CELL_CAP};

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("determinant");
    for n in [4usize, 8, 12] {
        g.bench_with_input(BenchmarkId::new("cored", n), &n, |b, &n| {
            let k = n as u32 / 2;
            let m = build_cored_matrix(k, k + 2, k + 2, n as u32 - k, &int(0)).unwrap();
            b.iter(|| black_box(&m).det().unwrap())
        });
        for case in [OmegaCase::One, OmegaCase::Sixth] {
            let m = build_B(n, 6).add_scalar_identity(&case.omega()).unwrap();
            g.bench_with_input(BenchmarkId::new(format!("omega-{}", case.name()), n), &m, |b, m| {
                b.iter(|| black_box(m).det().unwrap())
            });
        }
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for (a, b, cc, m) in [(2, 2, 2, 0), (3, 3, 3, 1), (2, 3, 3, 2)] {
        let h = CoredHexagon::new(a, b, cc, m);
        g.bench_function(format!("C_{a},{b},{cc}({m})"), |bench| {
            bench.iter(|| count_tilings(black_box(&h), DEFAULT_CELL_CAP).unwrap())
        });
    }
    g.finish();
}

fn closed_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("formula");
    for n in [8u32, 32] {
        let h = CoredHexagon::new(n, n, n, n);
        g.bench_with_input(BenchmarkId::new("centered", n), &h, |b, h| {
            b.iter(|| count_cored_formula(black_box(h), false).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("om6", n), &n, |b, &n| {
            b.iter(|| rhs_omega_det(black_box(n), n, OmegaCase::Sixth).unwrap())
        });
    }
    g.bench_function("asymptotic-k/50-digits", |b| b.iter(|| asymptotic_k(1, 1, 1, 1, 50).unwrap()));
    g.finish();
}

criterion_group!(benches, determinants, enumeration, closed_forms);
criterion_main!(benches);
