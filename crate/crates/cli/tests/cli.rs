use std::path::Path;
use std::process::{Command, Output};

fn metascreen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metascreen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data lines of a CSV document (header comments stripped).
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

const SMALL: &str = "nodes = 48\n[screen]\nperiod = 10.0\n[screen.bubble]\nstandoff = 2.0\nshape = { kind = \"circle\", radius = 1.0 }\n";

#[test]
fn printed_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let printed = metascreen(&["print-config"]);
    assert!(printed.status.success());
    let path = write_config(dir.path(), &stdout(&printed));
    let again = metascreen(&["print-config", "--config", &path]);
    assert_eq!(stdout(&printed), stdout(&again));
}

#[test]
fn resonance_output_is_deterministic_and_self_describing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let a = metascreen(&["resonance", "--config", &cfg]);
    let b = metascreen(&["resonance", "--config", &cfg, "--jobs", "1"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["config"]["nodes"], 48);
    let r = &doc["result"];
    let (c, m1, a0) = (
        r["capacity"].as_f64().unwrap(),
        r["m1"].as_f64().unwrap(),
        r["alpha0_inf"].as_f64().unwrap(),
    );
    assert!((a0 - m1 * c / 10.0).abs() < 1e-15);
    assert!(r["omega_m"].as_f64().unwrap() > 0.0);
}

#[test]
fn out_directory_receives_csv_with_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("results");
    let o = metascreen(&[
        "reflection-sweep",
        "--config",
        &cfg,
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out.join("reflection.csv")).unwrap();
    assert!(text.starts_with(&format!("# metascreen-cli {}", env!("CARGO_PKG_VERSION"))));
    assert!(text.contains("# config: {"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 201);
    for row in &rows {
        let modulus: f64 = row[3].parse().unwrap();
        assert!((modulus - 1.0).abs() < 1e-12);
    }
    let first: f64 = rows[0][1].parse().unwrap();
    assert!(
        first < -0.5,
        "far below resonance R tends to -1, got {first}"
    );
}

#[test]
fn matched_loss_absorbs_at_resonance() {
    let dir = tempfile::tempdir().unwrap();
    let res = metascreen(&["resonance", "--config", &write_config(dir.path(), SMALL)]);
    let doc: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let r = &doc["result"];
    let wm = r["omega_m"].as_f64().unwrap();
    let eta = wm * r["m1"].as_f64().unwrap().powi(2) * r["capacity"].as_f64().unwrap() / 10.0;
    let body = format!("{SMALL}[damping]\neta_other = {eta:e}\n[sweep]\nomega = [{wm:e}]\n");
    let o = metascreen(&[
        "reflection-sweep",
        "--format",
        "csv",
        "--config",
        &write_config(dir.path(), &body),
    ]);
    let rows = csv_rows(&stdout(&o));
    let modulus: f64 = rows[0][3].parse().unwrap();
    assert!(modulus < 1e-10, "{modulus}");
}

#[test]
fn green_eval_rows() {
    let dir = tempfile::tempdir().unwrap();
    let body = "[screen]\nperiod = 4.0\n[screen.bubble]\nstandoff = 1.0\nshape = { kind = \"circle\", radius = 0.5 }\n[green]\nk = 0.5\nk_par = 0.2\nsource = [0.0, 1.0]\npoints = [[0.7, 2.0], [4.7, 2.0], [1.0, 0.0], [0.0, 1.0]]\n";
    let o = metascreen(&[
        "green-eval",
        "--format",
        "csv",
        "--oracle",
        "--config",
        &write_config(dir.path(), body),
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let g = |i: usize| {
        (
            rows[i][2].parse::<f64>().unwrap(),
            rows[i][3].parse::<f64>().unwrap(),
        )
    };
    // quasi-periodicity: G(x + a) = e^{-i k_par a} G(x)
    let (re0, im0) = g(0);
    let (re1, im1) = g(1);
    let (s, c) = (-0.2f64 * 4.0).sin_cos();
    assert!((re1 - (c * re0 - s * im0)).abs() < 1e-12 && (im1 - (s * re0 + c * im0)).abs() < 1e-12);
    assert!(rows[0][5].parse::<f64>().unwrap() < 1e-8);
    assert_eq!(g(2), (0.0, 0.0));
    // coincident point: reported per row, not fatal
    assert!(!rows[3][6].is_empty());
}

#[test]
fn trends_rows_follow_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!("{SMALL}[sweep]\nstandoff = [1.5, 2.0, 3.0]\ndelta = [1e-3, 4e-3]\n");
    let o = metascreen(&[
        "trends",
        "--format",
        "csv",
        "--config",
        &write_config(dir.path(), &body),
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 6);
    let w: Vec<f64> = rows.iter().map(|r| r[6].parse().unwrap()).collect();
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 1.5);
    assert_eq!(rows[1][3].parse::<f64>().unwrap(), 4e-3);
    assert!((w[1] / w[0] - 2.0).abs() < 1e-12);
    assert!(w[0] > w[2] && w[2] > w[4]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = metascreen(&[
        "resonance",
        "--config",
        &write_config(dir.path(), "colour = 3\n"),
    ]);
    assert_eq!(unknown.status.code(), Some(2));
    let bad_geometry = metascreen(&[
        "resonance",
        "--config",
        &write_config(
            dir.path(),
            "[screen.bubble]\nstandoff = 0.05\nshape = { kind = \"circle\", radius = 0.1 }\n",
        ),
    ]);
    assert_eq!(bad_geometry.status.code(), Some(2));
    assert_eq!(
        metascreen(&["self-test", "--jobs", "0"]).status.code(),
        Some(2)
    );

    let above = format!("{SMALL}[sweep]\nomega = [1.0]\n");
    assert_eq!(
        metascreen(&[
            "reflection-sweep",
            "--config",
            &write_config(dir.path(), &above)
        ])
        .status
        .code(),
        Some(3)
    );

    let no_dip = format!("{SMALL}[search]\nsamples = 20\nwindow = [1.5, 2.5]\n");
    let o = metascreen(&[
        "char-search",
        "--config",
        &write_config(dir.path(), &no_dip),
    ]);
    assert_eq!(
        o.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn char_search_finds_the_dip() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!("{SMALL}[search]\nsamples = 20\n");
    let o = metascreen(&["char-search", "--config", &write_config(dir.path(), &body)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["result"]["relative_gap"].as_f64().unwrap().abs() < 0.02);
    assert_eq!(doc["table"].as_array().unwrap().len(), 20);
}

#[test]
fn self_test_passes() {
    let o = metascreen(&["self-test", "--format", "csv"]);
    assert!(o.status.success());
    assert!(csv_rows(&stdout(&o)).iter().all(|r| r[3] == "yes"));
}
