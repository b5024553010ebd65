use std::path::Path;
use std::process::{Command, Output};

use imcf_solitons::Regime;
use serde_json::Value;

fn imcf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imcf"))
        .args(args)
        .env("IMCF_OUT_DIR", dir)
        .output()
        .expect("failed to launch imcf")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> (Value, Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let config = lines.next().unwrap().strip_prefix("# config ").unwrap();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    (serde_json::from_str(config).unwrap(), header, rows)
}

#[test]
fn circle_curve_has_tiny_residual() {
    let dir = tempfile::tempdir().unwrap();
    let out = imcf(dir.path(), &["gen-curve", "--c", "1", "--mu1", "1", "--mu2", "0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (config, header, rows) = csv_rows(&dir.path().join("curve.csv"));
    assert_eq!(header, ["theta", "s", "x", "y", "kappa", "nu", "residual"]);
    assert_eq!(config["command"], "gen-curve");
    assert_eq!(config["params"]["samples"], 256);
    assert_eq!(rows.len(), 256);
    for row in &rows {
        assert!(row[6].abs() <= 1e-12, "residual {}", row[6]);
        assert!((row[2].hypot(row[3]) - 1.0).abs() <= 1e-12);
    }
    let svg = std::fs::read_to_string(dir.path().join("curve.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline") && svg.contains("<!-- config"));
}

#[test]
fn spiral_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = imcf(
        dir.path(),
        &["gen-curve", "--c", "2", "--mu1", "1", "--mu2", "1", "--format", "svg"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(dir.path().join("curve.svg").exists());
    assert!(!dir.path().join("curve.csv").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: &[(&[&str], i32, &str)] = &[
        (
            &["gen-curve", "--c", "1", "--mu1", "0", "--mu2", "1", "--theta-min", "-1", "--theta-max", "1"],
            3,
            "theta",
        ),
        (&["bottle", "--n", "2", "--r0", "1", "--h0", "-1", "--r0p", "0"], 2, "hypothesis"),
        (&["bottle", "--n", "2", "--r0", "1", "--h0", "-1", "--r0p", "1.5"], 2, "hypothesis"),
        (&["shoot", "--n", "2", "--C", "0.4", "--h0", "-1"], 2, "violated"),
        (&["classify", "--mode", "plane", "--n", "2", "--C", "0.7", "--h0", "-1", "--span", "10"], 5, "span"),
        (&["verify", "--check", "minkowski2", "--preset", "torus", "--n", "4"], 2, "mean curvature"),
        (&["flow", "--preset", "cycloid", "--T", "3"], 4, "cusp"),
        (&["gen-curve", "--samples", "1"], 2, ""),
    ];
    for (args, want, needle) in cases {
        let out = imcf(d, args);
        let err = stderr(&out);
        assert_eq!(code(&out), *want, "{args:?}: {err}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn io_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("plain-file");
    std::fs::write(&blocker, "").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_imcf"))
        .args(["--out-dir", blocker.to_str().unwrap(), "gen-curve"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    let out = imcf(dir.path(), &["--config", "missing.json", "gen-curve"]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"command":"gen-curve","params":{"c":2,"mu1":1,"mu2":1,"samples":16},"output":{"stem":"spiral","format":["csv"]}}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = imcf(dir.path(), &["--config", cfg, "gen-curve", "--samples", "32"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (config, _, rows) = csv_rows(&dir.path().join("spiral.csv"));
    assert_eq!(rows.len(), 32);
    assert_eq!(config["params"]["c"], 2.0);
    assert_eq!(config["params"]["samples"], 32);
    assert_eq!(config["output"]["stem"], "spiral");
    assert!(!dir.path().join("spiral.svg").exists());

    let out = imcf(dir.path(), &["--config", cfg, "gen-curve", "--stem", "other"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(dir.path().join("other.csv").exists());
}

#[test]
fn config_rejects_unknown_keys_and_wrong_command() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"params":{"bogus":1}}"#,
        r#"{"colour":"red"}"#,
        r#"{"output":{"stem":"x","path":"y"}}"#,
        r#"{"command":"bottle"}"#,
        r#"{"output":{"format":["png"]}}"#,
        "not json",
    ];
    for (i, text) in cases.iter().enumerate() {
        let cfg = dir.path().join(format!("c{i}.json"));
        std::fs::write(&cfg, text).unwrap();
        let out = imcf(dir.path(), &["--config", cfg.to_str().unwrap(), "gen-curve"]);
        assert_eq!(code(&out), 2, "{text}: {}", stderr(&out));
    }
}

#[test]
fn out_dir_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = imcf(env_dir.path(), &["gen-curve", "--samples", "8"]);
    assert_eq!(code(&out), 0);
    assert!(env_dir.path().join("curve.csv").exists());
    let out = imcf(
        env_dir.path(),
        &["--out-dir", flag_dir.path().to_str().unwrap(), "gen-curve", "--samples", "8"],
    );
    assert_eq!(code(&out), 0);
    assert!(flag_dir.path().join("curve.csv").exists());
}

#[test]
fn bottle_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = imcf(
        dir.path(),
        &["bottle", "--n", "2", "--r0", "1", "--h0", "-1", "--r0p", "0.5", "--format", "json,csv,svg"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_json(&dir.path().join("bottle.json"));
    assert_eq!(report["regime"], "BottleBetweenCylinders");
    let (r_bot, r_top) = (report["r_bot"].as_f64().unwrap(), report["r_top"].as_f64().unwrap());
    assert!(0.0 < r_bot && r_bot < 1.0 && 1.0 < r_top);
    let h1 = report["h1"].as_f64().unwrap();
    assert!(-1.0 < h1 && h1 < 0.0);
    assert!(report["residual_max"].as_f64().unwrap() <= 1e-9);
    let events = report["events"].as_array().unwrap();
    assert_eq!(events.iter().filter(|e| e["tag"] == "Inflection").count(), 1);

    let regime: Regime = serde_json::from_value(report["regime_detail"].clone()).unwrap();
    assert_eq!(regime.name(), "BottleBetweenCylinders");
    assert_eq!(serde_json::to_value(regime).unwrap(), report["regime_detail"]);

    let (_, header, rows) = csv_rows(&dir.path().join("bottle.csv"));
    assert_eq!(header, ["h", "r", "dr_dh", "d2r_dh2", "chart"]);
    assert!(rows.len() > 100);
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    let svg = std::fs::read_to_string(dir.path().join("bottle.svg")).unwrap();
    assert!(svg.contains("stroke-dasharray"));
}

#[test]
fn classify_and_shoot_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = imcf(d, &["classify", "--mode", "plane", "--n", "2", "--C", "0.7", "--h0", "-1", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_json(&d.join("classify.json"));
    assert_eq!(report["regime"], "ClosesToAxis");
    let regime: Regime = serde_json::from_value(report["regime_detail"].clone()).unwrap();
    assert!(matches!(regime, Regime::ClosesToAxis { .. }));

    let out = imcf(d, &["classify", "--mode", "cylinder", "--n", "2", "--C", "2", "--r0", "1", "--format", "json,svg"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read_json(&d.join("classify.json"))["regime"], "MinAtOriginUnbounded");

    let out = imcf(d, &["shoot", "--n", "2", "--C", "1", "--h0", "-1", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_json(&d.join("shoot.json"));
    let h2 = report["h2_numeric"].as_f64().unwrap();
    assert!((h2 - 0.5).abs() <= 1e-6, "h''(0) = {h2}");
    assert_eq!(report["h2_closed_form"], 0.5);
}

#[test]
fn sweep_writes_one_file_set_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = imcf(
        dir.path(),
        &["bottle", "--sweep", "0.25:0.75:3", "--format", "json"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for (i, r0p) in [0.25, 0.5, 0.75].iter().enumerate() {
        let report = read_json(&dir.path().join(format!("bottle-{i}.json")));
        assert_eq!(report["config"]["params"]["r0p"], *r0p);
        assert_eq!(report["regime"], "BottleBetweenCylinders");
    }
    let out = imcf(dir.path(), &["bottle", "--sweep", "1:2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let check = |args: &[&str]| -> Value {
        let out = imcf(d, args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        let printed: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(printed, read_json(&d.join("verify.json")));
        assert_eq!(printed["pass"], true, "{printed}");
        printed
    };
    let r = check(&["verify", "--check", "clifford", "--resolution", "64"]);
    assert!(r["value"].as_f64().unwrap() <= 1e-3);
    assert!((r["refinement_ratio"].as_f64().unwrap() - 4.0).abs() < 0.1);
    let r = check(&["verify", "--check", "minkowski1"]);
    assert!(r["value"].as_f64().unwrap().abs() <= 1e-6);
    check(&["verify", "--check", "minkowski2"]);
    for n in ["2", "3", "4"] {
        let r = check(&["verify", "--check", "constant", "--n", n]);
        assert!((r["value"].as_f64().unwrap() - n.parse::<f64>().unwrap()).abs() <= 1e-8);
    }
    let r = check(&["verify", "--check", "constant", "--radius", "5"]);
    assert!((r["value"].as_f64().unwrap() - 2.0).abs() <= 1e-8);
}

#[test]
fn flow_presets_pass() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for preset in ["circle", "spiral", "involute", "cycloid"] {
        let out = imcf(d, &["flow", "--preset", preset, "--format", "json,csv,svg", "--stem", preset]);
        assert_eq!(code(&out), 0, "{preset}: {}", stderr(&out));
        let report = read_json(&d.join(format!("{preset}.json")));
        assert_eq!(report["pass"], true, "{preset}: {report}");
        let (_, header, rows) = csv_rows(&d.join(format!("{preset}.csv")));
        assert_eq!(header[0], "t");
        assert_eq!(rows.len(), 4);
        let svg = std::fs::read_to_string(d.join(format!("{preset}.svg"))).unwrap();
        for label in ["initial", "evolved", "predicted"] {
            assert!(svg.contains(label), "{preset} overlay lacks {label}");
        }
    }
    let circle = read_json(&d.join("circle.json"));
    assert!((circle["log_slope"].as_f64().unwrap() - 1.0).abs() <= 1e-3);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args: &[&str] = &["bottle", "--n", "3", "--h0", "-2", "--r0p", "1", "--format", "csv,json,svg"];
    assert_eq!(code(&imcf(a.path(), args)), 0);
    assert_eq!(code(&imcf(b.path(), args)), 0);
    for file in ["bottle.csv", "bottle.json", "bottle.svg"] {
        assert_eq!(
            std::fs::read(a.path().join(file)).unwrap(),
            std::fs::read(b.path().join(file)).unwrap(),
            "{file} differs"
        );
    }
}
