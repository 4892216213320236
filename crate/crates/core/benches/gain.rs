use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use paramp::constants::{ghz_to_rad_s, PhysicalConstants};
use paramp::exec::Execution;
use paramp::model::ModelVariant;
use paramp::params::{derive_params, DeviceParams, PumpDrive};
use paramp::pump::{integrate_to_steady_state, PumpSystem, SteadyStateOptions};
use paramp::scattering::{profile_at_steady_state, signal_grid};
use paramp::sweep::{run_sweep, SweepSpec};

fn device() -> DeviceParams {
    DeviceParams {
        omega_j: ghz_to_rad_s(6.5),
        omega_t_eff: ghz_to_rad_s(6.218),
        l_j: 0.37e-9,
        l_t: 1.9e-9,
        m_junctions: 3,
        r_env: 50.0,
        omega_p: ghz_to_rad_s(5.347),
    }
}

const MODES: [(&str, Execution); 2] = [
    ("serial", Execution::Serial),
    ("parallel", Execution::Parallel),
];

fn gain_solves(c: &mut Criterion) {
    let consts = PhysicalConstants::CODATA;
    let dev = device();
    let derived = derive_params(&dev, &consts).unwrap();
    let drive = PumpDrive::from_dbm(-89.5, dev.omega_p, &consts).unwrap();
    let system = PumpSystem::new(&dev, &derived, &drive, ModelVariant::FullSineIEJPA);
    let report = integrate_to_steady_state(&system, &SteadyStateOptions::default()).unwrap();
    let mut group = c.benchmark_group("gain_profile");
    for points in [667, 10_000] {
        let grid = signal_grid(ghz_to_rad_s(1.0), points).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, points), &grid, |b, grid| {
                b.iter(|| profile_at_steady_state(&system, &report, black_box(grid), mode).unwrap())
            });
        }
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let consts = PhysicalConstants::CODATA;
    let spec = SweepSpec::from_ghz(
        (0..8).map(|k| -92.0 + 0.5 * k as f64).collect(),
        &[5.3, 5.347, 5.4],
        signal_grid(ghz_to_rad_s(1.0), 667).unwrap(),
        ModelVariant::FullSineIEJPA,
    );
    let mut group = c.benchmark_group("sweep_8x3");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                run_sweep(
                    &device(),
                    &consts,
                    &spec,
                    &SteadyStateOptions::default(),
                    mode,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, gain_solves, sweeps);
criterion_main!(benches);
