use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use timesep::bundle::{evaluate_section_with, transport_line_with, Grid, PartialSection};
use timesep::{load_spec, Execution, SpacetimeSpec};

const MODES: [(&str, Execution); 2] =
    [("seq", Execution::Sequential), ("par", Execution::Parallel)];

fn fixture(name: &str) -> SpacetimeSpec {
    load_spec(format!(
        "{}/../../fixtures/{name}.toml",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn bench_validate(c: &mut Criterion) {
    let spec = fixture("schwarzschild");
    let mut group = c.benchmark_group("validate");
    for n in [1_000usize, 10_000] {
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| black_box(spec.validate_with(n, 0, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_transport(c: &mut Criterion) {
    let spec = fixture("cone_cylinder");
    let lp = spec.find_loop("theta-loop").unwrap().clone();
    let mut group = c.benchmark_group("transport");
    for n in [256usize, 4096] {
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| black_box(transport_line_with(&spec, &lp, n, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_section(c: &mut Criterion) {
    let spec = fixture("schwarzschild");
    let section = PartialSection::parse(&spec, "cos(theta)*r").unwrap();
    let mut group = c.benchmark_group("section");
    for n in [16usize, 64] {
        let grid = Grid::parse(&spec, &format!("r=3:20:{n},theta=0.1:3:{n}")).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n * n), &grid, |b, grid| {
                b.iter(|| black_box(evaluate_section_with(&spec, &section, grid, exec).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_validate, bench_transport, bench_section);
criterion_main!(benches);
