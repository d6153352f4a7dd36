use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use telecanon_core::bases::build_basis_form2;
use telecanon_core::channels::{build_form2, CanonicalParams2};
use telecanon_core::extractor::{classify, extract_operators};
use telecanon_core::protocol::Teleporter;
use telecanon_core::sweep::{run_sweep, Family, SweepConfig};
use telecanon_core::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_form1_grid40");
    let cfg = SweepConfig {
        family: Family::Form1,
        grid: 40,
        random_phases: true,
        seed: 1,
        tol: 1e-10,
    };
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_sweep(&cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let p = CanonicalParams2::new(0.4, 0.3, 0.5, 1.0, 1.5);
    let (ch, basis) = (build_form2(&p).unwrap(), build_basis_form2(&p).unwrap());
    let verdict = classify(&extract_operators(&ch, &basis).unwrap(), 1e-10);
    let t = Teleporter::new(&ch, &basis, verdict).unwrap();

    let mut group = c.benchmark_group("batch_fidelity_20000");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| t.batch_fidelity(20_000, 7, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, batch);
criterion_main!(benches);
