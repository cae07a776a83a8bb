use std::path::PathBuf;
use std::process::{Command, Output};

fn magnonq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnonq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Header and data rows, comments dropped.
fn rows(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let body = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, body)
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let (header, body) = rows(csv);
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    body.into_iter().map(|r| r[i].clone()).collect()
}

fn floats(csv: &str, name: &str) -> Vec<f64> {
    column(csv, name).iter().map(|v| v.parse().unwrap()).collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const GAMMA: f64 = 176.08e9;
const B_C: f64 = 10.049_875_621_120_89;

#[test]
fn dispersion_starts_at_the_gap() {
    let csv = stdout(&magnonq(&["dispersion", "--count", "5"]));
    let plus = floats(&csv, "omega_plus_hz");
    let minus = floats(&csv, "omega_minus_hz");
    assert_eq!(plus[0], minus[0]);
    assert!(((plus[0] - GAMMA * B_C) / plus[0]).abs() < 1e-14);
    assert!(column(&csv, "frame").iter().all(|f| f == "lab"));
}

#[test]
fn rotating_frame_at_resonance_is_soft_at_zero_k() {
    // Drive at gamma (B_C - B) with B = 4 T.
    let drive_ghz = format!("{}", GAMMA * (B_C - 4.0) / 1e9);
    let csv = stdout(&magnonq(&[
        "dispersion",
        "--frame",
        "rotating",
        "--static-field",
        "4",
        "--microwave-freq",
        &drive_ghz,
        "--count",
        "3",
    ]));
    let minus = floats(&csv, "omega_minus_hz");
    assert!(minus[0].abs() < 1e-12 * GAMMA * B_C, "{}", minus[0]);
    assert!(minus[1] > 0.0);
}

#[test]
fn closed_form_and_quadrature_agree() {
    let a = stdout(&magnonq(&["coupling", "--n-max", "20", "--method", "closed-form", "--static-field", "7"]));
    let b = stdout(&magnonq(&["coupling", "--n-max", "20", "--method", "quadrature", "--static-field", "7"]));
    for (x, y) in floats(&a, "I_perp_hz").iter().zip(floats(&b, "I_perp_hz")) {
        assert!(((x - y) / x).abs() < 1e-6);
    }
    assert!(column(&b, "method").iter().all(|m| m == "quadrature"));
}

#[test]
fn single_row_profile() {
    let csv = stdout(&magnonq(&["coupling", "--n-max", "1"]));
    assert_eq!(rows(&csv).1.len(), 1);
    assert!(csv.contains("# rho_B: "));
}

#[test]
fn equal_effective_fields_give_identical_values() {
    // B = 3 T at rest versus B = 1 T driven at 2 gamma.
    let a = stdout(&magnonq(&["coupling", "--n-max", "15", "--static-field", "3"]));
    let b = stdout(&magnonq(&[
        "coupling",
        "--n-max",
        "15",
        "--static-field",
        "1",
        "--microwave-freq",
        "352.16",
    ]));
    assert_eq!(column(&a, "B_eff_tesla"), column(&b, "B_eff_tesla"));
    assert_eq!(column(&a, "I_perp_hz"), column(&b, "I_perp_hz"));
}

#[test]
fn sweep_reports_critical_points() {
    let csv = stdout(&magnonq(&[
        "sweep",
        "--parameter",
        "static-field",
        "--start",
        "0",
        "--stop",
        "12",
        "--count",
        "7",
        "--outputs",
        "correlation-length",
    ]));
    let status = column(&csv, "status");
    assert_eq!(status, ["ok", "ok", "ok", "ok", "ok", "ok", "critical"]);
    let rho: Vec<f64> = column(&csv, "result")[..6].iter().map(|v| v.parse().unwrap()).collect();
    assert_eq!(column(&csv, "result")[6], "");
    let values = floats(&csv, "value");
    for (r, b) in rho.iter().zip(&values) {
        let expected = rho[0] / (1.0 - b / B_C).sqrt();
        assert!(((r - expected) / expected).abs() < 1e-12);
    }
}

#[test]
fn two_point_sweep_matches_coupling_calls() {
    let csv = stdout(&magnonq(&[
        "sweep",
        "--parameter",
        "static-field",
        "--start",
        "2",
        "--stop",
        "6",
        "--count",
        "2",
        "--outputs",
        "coupling",
        "--separations",
        "4",
    ]));
    let results = column(&csv, "result");
    for (i, b) in ["2", "6"].iter().enumerate() {
        let direct = stdout(&magnonq(&["coupling", "--n-max", "4", "--static-field", b]));
        assert_eq!(results[i], column(&direct, "I_perp_hz")[3]);
    }
}

#[test]
fn frequency_sweep_traces_the_same_rho_curve() {
    let by_field = stdout(&magnonq(&[
        "sweep", "--parameter", "static-field", "--start", "0", "--stop", "8", "--count", "5",
    ]));
    let by_freq = stdout(&magnonq(&[
        "sweep",
        "--parameter",
        "microwave-freq",
        "--start",
        "0",
        "--stop",
        "1408.64",
        "--count",
        "5",
    ]));
    for (a, b) in floats(&by_field, "rho_B").iter().zip(floats(&by_freq, "rho_B")) {
        assert!(((a - b) / a).abs() < 1e-13);
    }
}

#[test]
fn two_site_chain_transfers_fully() {
    let coupling = floats(&stdout(&magnonq(&["coupling", "--n-max", "1", "--method", "closed-form"])), "I_perp_hz")[0];
    let t = 1.0 / (2.0 * coupling);
    let csv = stdout(&magnonq(&[
        "chain",
        "--n-sites",
        "2",
        "--method",
        "closed-form",
        "--t-stop",
        &format!("{}", 2.0 * t),
        "--t-count",
        "3",
    ]));
    let fidelity = floats(&csv, "fidelity");
    assert!((fidelity[1] - 1.0).abs() < 1e-6, "{fidelity:?}");
    assert_eq!(fidelity[0], 0.0);
}

#[test]
fn chain_starts_on_the_injected_site() {
    let csv = stdout(&magnonq(&["chain", "--n-sites", "4", "--from", "2", "--to", "2", "--t-count", "3"]));
    assert_eq!(column(&csv, "fidelity")[0], "1.0000000000000000e0");
    assert!(column(&csv, "concurrence").iter().all(String::is_empty));
    let (header, _) = rows(&csv);
    assert_eq!(header, ["time_s", "p_1", "p_2", "p_3", "p_4", "fidelity", "concurrence"]);
}

#[test]
fn single_and_full_sectors_agree() {
    let args = |sector| {
        vec![
            "chain", "--n-sites", "6", "--static-field", "9", "--t-count", "17", "--sector", sector,
        ]
    };
    let single = stdout(&magnonq(&args("single")));
    let full = stdout(&magnonq(&args("full")));
    for p in 1..=6 {
        let name = format!("p_{p}");
        for (a, b) in floats(&single, &name).iter().zip(floats(&full, &name)) {
            assert!((a - b).abs() < 1e-8);
        }
    }
}

#[test]
fn json_output_embeds_configuration() {
    let out = stdout(&magnonq(&["--format", "json", "coupling", "--n-max", "2"]));
    assert!(out.trim_start().starts_with('{'));
    assert!(out.contains("\"material\""));
    assert!(out.contains("\"exchange_field_t\": 50.0"));
    assert!(out.contains("\"I_perp_hz\""));
}

#[test]
fn csv_embeds_resolved_configuration() {
    let cfg = temp_file(
        "minimal.toml",
        "[material]\nexchange_field_t = 50.0\nanisotropy_field_t = 1.0\nlattice_perp_nm = 0.5\n\
         lattice_z_nm = 0.5\nplate_thickness_nm = 2.0\nhyperfine_mhz = 100.0\n",
    );
    let csv = stdout(&magnonq(&["--config", cfg.to_str().unwrap(), "coupling", "--n-max", "1"]));
    // Defaults are written out even though the file omits them.
    assert!(csv.contains("#   xi = 1.0"));
    assert!(csv.contains("#   gamma_n_mhz_per_t = 10.7084"));
    assert!(csv.contains("#   temperature_k = 0.0"));
}

#[test]
fn exit_codes() {
    let bad = temp_file("bad.toml", "[material]\nexchange_field_t = 50.0\nbogus = 1\n");
    let out = magnonq(&["--config", bad.to_str().unwrap(), "coupling"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let negative = temp_file(
        "negative.toml",
        "[material]\nexchange_field_t = 50.0\nanisotropy_field_t = 1.0\nlattice_perp_nm = 0.5\n\
         lattice_z_nm = 0.5\nplate_thickness_nm = -2.0\nhyperfine_mhz = 100.0\n",
    );
    let out = magnonq(&["--config", negative.to_str().unwrap(), "coupling"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("material.plate_thickness"));

    assert_eq!(magnonq(&["--static-field", "11", "coupling"]).status.code(), Some(3));
    assert_eq!(magnonq(&["--static-field", "11", "chain"]).status.code(), Some(3));
    assert_eq!(magnonq(&["chain", "--n-sites", "15", "--sector", "full"]).status.code(), Some(5));
    assert_eq!(magnonq(&["chain", "--n-sites", "3", "--to", "4"]).status.code(), Some(2));
    assert_eq!(magnonq(&["coupling", "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(
        magnonq(&["sweep", "--parameter", "time", "--start", "1", "--stop", "0", "--count", "3"])
            .status
            .code(),
        Some(2)
    );
    // A resonance width above the gap fails the 2D checks.
    assert_eq!(magnonq(&["validate", "--delta-omega-ghz", "5000"]).status.code(), Some(3));
}

#[test]
fn validate_reports_all_three_ratios() {
    let csv = stdout(&magnonq(&["validate", "--delta-omega-ghz", "1"]));
    assert_eq!(
        column(&csv, "check"),
        ["resonance_width_below_gap", "gap_well_below_exchange_scale", "thickness_below_max"]
    );
    assert!(column(&csv, "ok").iter().all(|v| v == "1"));
}

#[test]
fn warnings_go_to_stderr() {
    let out = magnonq(&["coupling", "--method", "lattice-sum", "--n-max", "2", "--grid-level", "0"]);
    let csv = stdout(&out);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning:"));
    assert!(!csv.contains("warning"));
}

#[test]
fn out_flag_writes_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join("profile.csv");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    let out = magnonq(&["--out", path.to_str().unwrap(), "coupling", "--n-max", "3"]);
    assert!(stdout(&out).is_empty());
    assert_eq!(rows(&std::fs::read_to_string(&path).unwrap()).1.len(), 3);
}

#[test]
fn shipped_presets_are_in_the_thin_plate_regime() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let out = magnonq(&["--config", path.to_str().unwrap(), "validate", "--delta-omega-ghz", "1"]);
            stdout(&out);
            seen += 1;
        }
    }
    assert_eq!(seen, 3);
}
