mod common;

use common::*;
use paramp::constants::ghz_to_rad_s;
use paramp::exec::Execution;
use paramp::model::ModelVariant;
use paramp::pump::SteadyStateOptions;
use paramp::scattering::{bandwidth_metrics, gain_profile, signal_grid};
use paramp::sweep::{run_sweep, SweepSpec};

fn grid() -> Vec<f64> {
    signal_grid(ghz_to_rad_s(1.0), 667).unwrap()
}

#[test]
fn low_power_sweep_is_flat() {
    let spec = SweepSpec::from_ghz(
        vec![-140.0, -130.0, -120.0],
        &[5.3, 5.347, 5.4],
        grid(),
        ModelVariant::FullSineIEJPA,
    );
    let r = run_sweep(
        &reference_device(),
        &CONSTS,
        &spec,
        &SteadyStateOptions::default(),
        Execution::Parallel,
    )
    .unwrap();
    assert_eq!(r.rows.len(), 9);
    for (k, row) in r.rows.iter().enumerate() {
        assert_eq!(row.power_dbm, spec.powers_dbm[k / 3]);
        assert_eq!(row.pump_freq, spec.pump_freqs[k % 3]);
        assert!(row.converged && !row.threshold_flag);
        assert!(row.metrics.unwrap().peak_gain_db.abs() < 0.5);
    }
}

#[test]
fn single_point_sweep_matches_gain_profile() {
    let dev = reference_device();
    let spec = SweepSpec::from_ghz(vec![-89.5], &[5.347], grid(), ModelVariant::FullSineIEJPA);
    let r = run_sweep(
        &dev,
        &CONSTS,
        &spec,
        &SteadyStateOptions::default(),
        Execution::Serial,
    )
    .unwrap();
    let p = gain_profile(
        &dev,
        &derived(&dev),
        &drive(&dev, -89.5),
        ModelVariant::FullSineIEJPA,
        &grid(),
    )
    .unwrap();
    assert_eq!(r.rows[0].metrics.unwrap(), bandwidth_metrics(&p).unwrap());
}

/// The bare JPA pumped below resonance is bistable; just below the fold
/// the fluctuation operator is nearly singular.
#[test]
fn flags_points_next_to_the_bifurcation() {
    let spec = SweepSpec::from_ghz(
        vec![-87.5, -87.3293125],
        &[5.1],
        grid(),
        ModelVariant::BareJpaFullSine,
    );
    let r = run_sweep(
        &bare_device(),
        &CONSTS,
        &spec,
        &SteadyStateOptions::default(),
        Execution::Parallel,
    )
    .unwrap();
    assert!(r.rows.iter().all(|row| row.converged));
    assert!(!r.rows[0].threshold_flag);
    assert!(r.rows[1].threshold_flag);
    assert!(r.rows[1].metrics.unwrap().peak_gain_db > 55.0);
}

#[test]
fn unconverged_points_stay_in_band() {
    let spec = SweepSpec::from_ghz(
        vec![-120.0, -89.5],
        &[5.347],
        grid(),
        ModelVariant::FullSineIEJPA,
    );
    let opts = SteadyStateOptions {
        max_time_linewidths: 2.0,
        ..Default::default()
    };
    let r = run_sweep(&reference_device(), &CONSTS, &spec, &opts, Execution::Parallel).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert!(r
        .rows
        .iter()
        .all(|row| !row.converged && row.metrics.is_none()));
}

#[test]
fn execution_mode_does_not_change_results() {
    let spec = SweepSpec::from_ghz(
        vec![-92.0, -90.0, -89.5],
        &[5.3, 5.347],
        grid(),
        ModelVariant::QuarticIEJPA,
    );
    let run = |e| {
        run_sweep(
            &reference_device(),
            &CONSTS,
            &spec,
            &SteadyStateOptions::default(),
            e,
        )
        .unwrap()
    };
    assert_eq!(run(Execution::Serial), run(Execution::Parallel));
}
