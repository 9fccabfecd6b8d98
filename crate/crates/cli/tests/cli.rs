//! End-to-end runs of the binary: exact printed normal forms, file
//! formats, the configuration precedence chain, and the exit-code split
//! between validation and numeric failures.

use std::process::{Command, Output};

fn bjq() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bjq"));
    c.env_remove("BJQ_DEFAULT_HBAR");
    c
}

fn run(args: &[&str]) -> Output {
    bjq().args(args).output().expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn quartic_normal_forms_are_printed_exactly() {
    let bj = stdout_ok(&["quantize", "--scheme", "bj", "--monomial", "2,2"]);
    assert_eq!(bj.trim(), "X^2 P^2 - 2iħ X P - (2/3)ħ^2");
    let weyl = stdout_ok(&["quantize", "--scheme", "weyl", "--monomial", "2,2"]);
    assert_eq!(weyl.trim(), "X^2 P^2 - 2iħ X P - (1/2)ħ^2");
    let comm = stdout_ok(&["commutator", "--m", "2", "--n", "2"]);
    assert_eq!(comm.trim(), "4iħ X P + 2ħ^2");

    let doc: serde_json::Value =
        serde_json::from_str(&stdout_ok(&["quantize", "--scheme", "tau:0", "--monomial", "1,1", "--format", "json"]))
            .expect("json wrapper");
    assert_eq!(doc["normal_form"], "X P - iħ");
}

#[test]
fn oscillator_levels_honor_the_hbar_precedence_chain() {
    let level = |cmd: &mut Command| {
        let out = cmd.args(["crehan", "--N", "0", "--lambda", "0", "--alpha", "0"]).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap().split('=').nth(1).unwrap().trim().split(' ').next().unwrap().to_string()
    };

    assert_eq!(level(&mut bjq()), "1/2");
    assert_eq!(level(bjq().env("BJQ_DEFAULT_HBAR", "2")), "1");

    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bjq.conf");
    std::fs::write(&conf, "hbar = 1/2 # window comment\n").unwrap();
    let conf = conf.to_str().unwrap().to_string();
    assert_eq!(level(bjq().env("BJQ_DEFAULT_HBAR", "2").args(["--config", &conf])), "1/4");
    assert_eq!(
        level(bjq().env("BJQ_DEFAULT_HBAR", "2").args(["--config", &conf, "--hbar", "3"])),
        "3/2"
    );

    let frozen = stdout_ok(&["crehan", "--N", "0", "--lambda", "1", "--alpha", "0"]);
    assert!(frozen.contains("-5/2"), "got {frozen:?}");
}

#[test]
fn wigner_csv_has_the_documented_shape_and_peak() {
    let body = stdout_ok(&[
        "--n-points", "64", "--half-length", "8",
        "wigner", "--signal", "gaussian:0,0,1",
    ]);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("x,p,re,im"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 64 * 64);

    let mut peak = f64::MIN;
    let mut at = (0.0, 0.0);
    for row in rows {
        let f: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(f.len(), 4);
        if f[2] > peak {
            peak = f[2];
            at = (f[0], f[1]);
        }
    }
    // ground-state peak value 1/π at the origin
    assert!((peak - std::f64::consts::FRAC_1_PI).abs() < 1e-6, "peak = {peak}");
    assert_eq!(at, (0.0, 0.0));
}

#[test]
fn ghost_report_shows_attenuation() {
    let body = stdout_ok(&["--n-points", "64", "--half-length", "8", "ghost"]);
    let doc: serde_json::Value = serde_json::from_str(&body).expect("json report");
    let wig = doc["wigner_energy"].as_f64().unwrap();
    let avg = doc["bjw_energy"].as_f64().unwrap();
    let ratio = doc["ratio"].as_f64().unwrap();
    assert!(wig > 0.0 && avg > 0.0);
    assert!(avg < wig, "averaging must attenuate the midband: {avg} vs {wig}");
    assert!(ratio < 1.0);
}

#[test]
fn pgm_peak_sits_at_the_grid_center() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("w.pgm");
    let img_str = img.to_str().unwrap();
    stdout_ok(&[
        "--n-points", "32", "--half-length", "6", "--format", "pgm", "--out", img_str,
        "wigner", "--signal", "gaussian:0,0,1",
    ]);

    let bytes = std::fs::read(&img).unwrap();
    let header = b"P5\n32 32\n65535\n";
    assert_eq!(&bytes[..header.len()], header);
    let body = &bytes[header.len()..];
    assert_eq!(body.len(), 2 * 32 * 32);

    let (mut best, mut best_at) = (0u16, 0usize);
    for (k, px) in body.chunks_exact(2).enumerate() {
        let v = u16::from_be_bytes([px[0], px[1]]);
        if v > best {
            best = v;
            best_at = k;
        }
    }
    assert_eq!(best, 65535);
    // row n/2 - 1 holds p = 0 when rows run from the top of the axis down
    assert_eq!((best_at / 32, best_at % 32), (15, 16));

    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("w.pgm.json")).unwrap())
            .unwrap();
    let max = sidecar["max"].as_f64().unwrap();
    // coarse 32-point grid, so the peak is a few 1e-6 under 1/π
    assert!((max - std::f64::consts::FRAC_1_PI).abs() < 1e-4);
    assert!(sidecar["min"].as_f64().unwrap() < max);
}

#[test]
fn uncertainty_report_saturates_on_the_coherent_state() {
    let body = stdout_ok(&[
        "--n-points", "64", "--half-length", "8",
        "uncertainty", "--state", "gaussian:0,0,1",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert!(doc["satisfied"].as_bool().unwrap());
    assert!(doc["matrix_passed"].as_bool().unwrap());
    assert!((doc["product_lhs"].as_f64().unwrap() - 0.25).abs() < 1e-6);
    assert!((doc["product_rhs"].as_f64().unwrap() - 0.25).abs() < 1e-6);
}

#[test]
fn signal_csv_round_trips_and_rejects_mismatched_grids() {
    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("sig.csv");
    let sig_str = sig.to_str().unwrap();
    stdout_ok(&[
        "--n-points", "32", "--half-length", "6", "--out", sig_str,
        "apply-op", "--symbol", "x", "--signal", "gaussian:1,0,1",
    ]);
    let from = format!("from_csv:{sig_str}");

    let ok = run(&[
        "--n-points", "32", "--half-length", "6", "--normalize",
        "wigner", "--signal", &from, "--out", dir.path().join("w.csv").to_str().unwrap(),
    ]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));

    let fewer = run(&["--n-points", "16", "--half-length", "6", "wigner", "--signal", &from]);
    assert_eq!(exit_code(&fewer), 2);
    let shifted = run(&["--n-points", "32", "--half-length", "3", "wigner", "--signal", &from]);
    assert_eq!(exit_code(&shifted), 2);
}

#[test]
fn validation_failures_exit_two_and_tolerance_breaches_exit_one() {
    let bad_sigma = run(&["wigner", "--signal", "gaussian:0,0,-1"]);
    assert_eq!(exit_code(&bad_sigma), 2);

    let unknown = run(&["wigner", "--signal", "nonsense:1"]);
    assert_eq!(exit_code(&unknown), 2);

    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    std::fs::write(&conf, "mystery = 1\n").unwrap();
    let bad_key = run(&["--config", conf.to_str().unwrap(), "commutator", "--m", "1", "--n", "1"]);
    assert_eq!(exit_code(&bad_key), 2);

    // the duality holds to machine precision, so an impossible tolerance
    // is the cheapest way to drive the numeric-failure path
    let breach = run(&[
        "--n-points", "32", "--half-length", "6", "--tolerance", "1e-20",
        "pairing-check", "--symbol", "gauss",
        "--psi", "gaussian:0.3,0.2,1", "--phi", "hermite:1",
    ]);
    assert_eq!(exit_code(&breach), 1);
    let fine = run(&[
        "--n-points", "32", "--half-length", "6", "--tolerance", "1e-6",
        "pairing-check", "--symbol", "gauss",
        "--psi", "gaussian:0.3,0.2,1", "--phi", "hermite:1",
    ]);
    assert_eq!(exit_code(&fine), 0);
}
