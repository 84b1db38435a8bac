//! Sequential against data-parallel execution on the three hot kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use recur_core::kernel::{LaurentPoly, Rational};
use recur_core::par::Exec;
use recur_core::recurrence::{coprimality_probe, laurent_certificate, make_builtin, ParamValue};
use recur_core::surface::{invariant_j, sweep, SurfaceParams, Triple};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn symbolic_orbit(steps: usize) -> (Vec<LaurentPoly>, i64, LaurentPoly) {
    let d = make_builtin("jrec", &[("J", ParamValue::Symbolic)]).unwrap();
    let cert = laurent_certificate(&d, steps).unwrap();
    let j = LaurentPoly::parse("J", &cert.vars).unwrap();
    (cert.orbit.values, cert.orbit.offset, j)
}

fn laurent_multiply(c: &mut Criterion) {
    let (values, _, _) = symbolic_orbit(6);
    let (x, y) = (&values[values.len() - 1], &values[values.len() - 2]);
    let mut g = c.benchmark_group("laurent_mul");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| black_box(x.mul_with(y, exec))));
    }
    g.finish();
}

fn coprimality(c: &mut Criterion) {
    let (values, offset, j) = symbolic_orbit(4);
    let mut g = c.benchmark_group("coprimality_probe");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(coprimality_probe(&values, offset, 6, 16, 0, Some(&j), exec)))
        });
    }
    g.finish();
}

fn surface_sweep(c: &mut Criterion) {
    let seed = Triple::ones();
    let cells: Vec<SurfaceParams> = (-8i64..=24)
        .map(|n| {
            let n = Rational::from_integer(n.into());
            SurfaceParams::new(n.clone(), invariant_j(&seed, &n))
        })
        .collect();
    let mut g = c.benchmark_group("surface_sweep");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, cells.len()), &cells, |b, cells| {
            b.iter(|| black_box(sweep(cells, &seed, 20, exec)))
        });
    }
    g.finish();
}

criterion_group!(benches, laurent_multiply, coprimality, surface_sweep);
criterion_main!(benches);
