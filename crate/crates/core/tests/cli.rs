use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use paramp::config::Config;

const BIN: &str = env!("CARGO_BIN_EXE_paramp");

fn bundled(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn paramp(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// The bundled IEJPA config with some lines replaced.
fn variant(dir: &Path, name: &str, edits: &[(&str, &str)], extra: &str) -> PathBuf {
    let mut text = fs::read_to_string(bundled("paper_iejpa.toml")).unwrap();
    for (from, to) in edits {
        assert!(text.contains(from), "{from}");
        text = text.replace(from, to);
    }
    text.push_str(extra);
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gain_rows(path: &Path) -> Vec<Vec<f64>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn bundled_configs_validate() {
    for name in ["paper_iejpa.toml", "paper_bare_jpa.toml"] {
        Config::load(&bundled(name)).unwrap();
    }
    let o = paramp(&["derive", "--config", s(&bundled("paper_iejpa.toml"))]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("c2 = 8.57698766560199"));
}

#[test]
fn gain_csv_has_exact_columns_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = bundled("paper_iejpa.toml");
    let (a, b, c) = (
        dir.path().join("a.csv"),
        dir.path().join("b.csv"),
        dir.path().join("c.csv"),
    );
    assert_eq!(
        code(&paramp(&["gain", "--config", s(&cfg), "--out", s(&a)])),
        0
    );
    assert_eq!(
        code(&paramp(&["gain", "--config", s(&cfg), "--out", s(&b)])),
        0
    );
    assert_eq!(
        code(&paramp(&[
            "--serial",
            "gain",
            "--config",
            s(&cfg),
            "--out",
            s(&c)
        ])),
        0
    );
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    assert_eq!(first, fs::read(&c).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with(
        "delta_hz,signal_freq_hz,gain_db,s_ss_re,s_ss_im,s_si_re,s_si_im,symplectic_residual\n"
    ));
    assert_eq!(text.lines().count(), 668);
}

#[test]
fn peak_sits_at_the_pump_near_optimal_power() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = variant(
        dir.path(),
        "p.toml",
        &[("pump_power_dbm = -88.0", "pump_power_dbm = -89.5")],
        "",
    );
    let out = dir.path().join("g.csv");
    assert_eq!(
        code(&paramp(&["gain", "--config", s(&cfg), "--out", s(&out)])),
        0
    );
    let rows = gain_rows(&out);
    let peak = rows.iter().max_by(|x, y| x[2].total_cmp(&y[2])).unwrap();
    assert!((peak[1] - 5.347e9).abs() < 2e6, "{}", peak[1]);
    assert!(peak[2] > 20.0);
}

#[test]
fn negligible_pump_gives_flat_curve() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = variant(
        dir.path(),
        "p.toml",
        &[("pump_power_dbm = -88.0", "pump_power_dbm = -200.0")],
        "",
    );
    let out = dir.path().join("g.csv");
    assert_eq!(
        code(&paramp(&["gain", "--config", s(&cfg), "--out", s(&out)])),
        0
    );
    assert!(gain_rows(&out).iter().all(|r| r[2].abs() < 1e-8));
}

#[test]
fn several_models_with_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    let cfg = bundled("paper_iejpa.toml");
    let o = paramp(&[
        "gain",
        "--config",
        s(&cfg),
        "--model",
        "full",
        "--model",
        "quartic",
        "--out",
        s(&out),
        "--plot",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("fig_full.csv").exists());
    assert!(dir.path().join("fig_quartic.csv").exists());
    let svg = fs::read_to_string(dir.path().join("fig.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains(">fig_full<") && svg.contains(">fig_quartic<"));
    assert!(svg.contains("frequency (GHz)") && svg.contains("gain (dB)"));

    let inputs = [
        dir.path().join("fig_full.csv"),
        dir.path().join("fig_quartic.csv"),
    ];
    let plot = |name: &str| {
        let p = dir.path().join(name);
        let o = paramp(&["plot", s(&inputs[0]), s(&inputs[1]), "--out", s(&p)]);
        assert_eq!(code(&o), 0);
        fs::read(p).unwrap()
    };
    let replot = plot("re.svg");
    assert_eq!(replot, plot("re2.svg"));
    assert_eq!(replot, svg.into_bytes());

    let o = paramp(&[
        "gain",
        "--config",
        s(&cfg),
        "--model",
        "full",
        "--model",
        "bare",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&paramp(&["gain", "--config", "/nonexistent.toml"])), 2);
    let bad = variant(
        dir.path(),
        "bad.toml",
        &[("l_t_nh = 1.9", "l_t_nh = -1.9")],
        "",
    );
    let o = paramp(&["gain", "--config", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("l_t"));
    let o = paramp(&[
        "gain",
        "--config",
        s(&bundled("paper_iejpa.toml")),
        "--model",
        "cubic",
    ]);
    assert_eq!(code(&o), 2);

    let slow = variant(
        dir.path(),
        "slow.toml",
        &[],
        "\n[solver]\ntol_rel = 1e-6\nmax_time_kappa = 2.0\n",
    );
    assert_eq!(code(&paramp(&["gain", "--config", s(&slow)])), 3);
    assert_eq!(code(&paramp(&["pump", "--config", s(&slow)])), 3);
    // Sweeps report non-convergence in-band.
    let o = paramp(&["sweep", "--config", s(&slow)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout)
        .lines()
        .skip(1)
        .all(|l| l.contains(",false,,,")));

    let nosweep = bundled("paper_bare_jpa.toml");
    assert_eq!(code(&paramp(&["sweep", "--config", s(&nosweep)])), 2);
}

#[test]
fn sweep_is_deterministic_across_modes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = variant(
        dir.path(),
        "sw.toml",
        &[("power_step_db = 0.5", "power_step_db = 2.0")],
        "",
    );
    let a = paramp(&["sweep", "--config", s(&cfg)]);
    let b = paramp(&["--serial", "sweep", "--config", s(&cfg)]);
    let c = paramp(&["sweep", "--config", s(&cfg)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "pump_power_dbm,pump_freq_ghz,converged,peak_gain_db,bw_3db_mhz,threshold_flag"
    );
    assert_eq!(lines.count(), 3 * 3);
}

#[test]
fn pump_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("t.csv");
    let o = paramp(&[
        "pump",
        "--config",
        s(&bundled("paper_iejpa.toml")),
        "--trajectory",
        s(&traj),
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("converged = true"));
    let text = fs::read_to_string(traj).unwrap();
    assert!(text.starts_with("t_s,alpha_t_re,alpha_t_im,alpha_j_re,alpha_j_im\n"));
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0.0000000000000000e0,0.0"));
    assert!(text.lines().count() > 100);
}

#[test]
fn noise_command() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.csv");
    fs::write(
        &input,
        "freq_ghz,snr_on_db,snr_off_db,gain_db,loss_db,t_hemt_k\n5.347,10,0,18,1.8,3.6\n5.347,0,-16.2,18,1.8,3.6\n",
    )
    .unwrap();
    let o = paramp(&["noise", s(&input)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(
        text.lines().next().unwrap(),
        "freq_ghz,n_add_photons,below_sql"
    );
    let n: f64 = rows[0][1].parse().unwrap();
    assert!((n - 1.066).abs() < 1e-3);
    assert_eq!(rows[0][2], "false");
    let zero: f64 = rows[1][1].parse().unwrap();
    assert!(zero.abs() < 1e-9 && rows[1][2] == "true");

    fs::write(&input, "freq_ghz,snr_on_db,snr_off_db,gain_db,loss_db,t_hemt_k\n5.347,10,0,18,1.8,3.6\n5.3,-inf,0,18,1.8,3.6\n").unwrap();
    let o = paramp(&["noise", s(&input)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("snr_on_db"), "{err}");
    assert_eq!(code(&paramp(&["noise", "/nonexistent.csv"])), 2);
}
