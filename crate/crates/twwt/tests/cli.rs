use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use twwt::commands::Invocation;
use twwt::manifest::{execute, RunManifest};

const FULL_POWER: &str = r#"{"gaussian": {"pmax_1": 5, "pmax_2": 2, "h_1": 0.5, "h_2": 1.5}}"#;
const STRONG_TAP: &str = r#"{"gaussian": {"pmax_1": 2, "pmax_2": 2, "h_1": 1.5, "h_2": 4.2}}"#;

fn twwt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twwt"))
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

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn csv_rows(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

#[test]
fn standardize_identity_and_worked_example() {
    let dir = TempDir::new().unwrap();
    let identity = file(
        &dir,
        "id.json",
        r#"{"gain_main_1": 1, "gain_main_2": 1, "gain_tap_1": 0.5, "gain_tap_2": 1.5,
            "noise_var_1": 1, "noise_var_2": 1, "noise_var_tap": 1, "pmax_1": 5, "pmax_2": 2}"#,
    );
    let v = json(&twwt(&["standardize", s(&identity)]));
    let g = &v["gaussian"];
    assert_eq!(g["pmax_1"], 5.0);
    assert_eq!(g["pmax_2"], 2.0);
    assert_eq!(g["h_1"], 0.5);
    assert_eq!(g["h_2"], 1.5);

    let worked = file(
        &dir,
        "w.json",
        r#"{"gaussian_raw": {"gain_main_1": 4, "gain_main_2": 1, "gain_tap_1": 1, "gain_tap_2": 1,
            "noise_var_1": 1, "noise_var_2": 2, "noise_var_tap": 0.5, "pmax_1": 1, "pmax_2": 1}}"#,
    );
    let v = json(&twwt(&["standardize", s(&worked)]));
    assert_eq!(
        v["gaussian"],
        serde_json::json!({"pmax_1": 2.0, "pmax_2": 1.0, "h_1": 1.0, "h_2": 2.0,
                           "alpha_1": 0.5, "alpha_2": 0.5})
    );
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", "{\"gaussian\": {\"pmax_1\": ");
    for cmd in [
        "standardize",
        "region",
        "optimize",
        "jam-sweep",
        "verify",
        "batw-jam",
    ] {
        let mut args = vec![cmd, s(&bad)];
        if cmd == "verify" {
            args.extend(["--eps-w", "0.1"]);
        }
        let out = twwt(&args);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(
        twwt(&["region", "/nonexistent/ch.json"]).status.code(),
        Some(2)
    );
    assert_eq!(twwt(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn region_outputs() {
    let dir = TempDir::new().unwrap();
    let ch = file(&dir, "f4.json", FULL_POWER);
    let csv = stdout(&twwt(&["region", s(&ch)]));
    assert!(csv.starts_with("r1_bits_per_use,r2_bits_per_use\n"));
    let rows = csv_rows(&csv);
    assert_eq!(rows[0], (0.0, 0.0));
    assert!(rows.iter().all(|&(a, b)| a + b <= 0.734742641651 + 1e-11));

    let v = json(&twwt(&[
        "region",
        s(&ch),
        "--format",
        "json",
        "--grid",
        "8",
    ]));
    assert_eq!(v["unit"], "bits per channel use");
    assert_eq!(v["grid"], 8);
    assert_eq!(v["shape"], "Triangle");

    let sq = file(
        &dir,
        "sq.json",
        r#"{"batw": {"eps_1": 0, "eps_2": 0, "eps_w": 0.5}}"#,
    );
    let rows = csv_rows(&stdout(&twwt(&["region", s(&sq)])));
    assert_eq!(rows, vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    let v = json(&twwt(&["region", s(&sq), "--format", "json"]));
    assert_eq!(v["shape"], "Rectangle");
    assert!(v.get("grid").is_none());

    let silent = file(
        &dir,
        "z.json",
        r#"{"gaussian": {"pmax_1": 0, "pmax_2": 0, "h_1": 0.5, "h_2": 1.5}}"#,
    );
    assert_eq!(
        stdout(&twwt(&["region", s(&silent)])),
        "r1_bits_per_use,r2_bits_per_use\n0,0\n"
    );

    assert_eq!(
        twwt(&["region", s(&ch), "--grid", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        twwt(&["region", s(&ch), "--format", "table"]).status.code(),
        Some(2)
    );
}

#[test]
fn optimize_modes() {
    let dir = TempDir::new().unwrap();
    let f4 = file(&dir, "f4.json", FULL_POWER);
    let v = json(&twwt(&["optimize", s(&f4), "--oracle-grid", "51"]));
    assert_eq!(v["allocation"], serde_json::json!([5.0, 2.0]));
    assert_eq!(v["case"], "BothMax");
    let gap = v["oracle_gap"].as_f64().unwrap();
    assert!(gap.abs() <= v["oracle_gap_bound"].as_f64().unwrap());

    let v = json(&twwt(&["optimize", s(&f4)]));
    assert!(v["oracle_gap"].is_null());
    assert!(v.get("advisory").is_none());

    let f5 = file(&dir, "f5.json", STRONG_TAP);
    let v = json(&twwt(&["optimize", s(&f5), "--mode", "jam"]));
    assert_eq!(v["allocation"], serde_json::json!([2.0, 2.0]));
    assert_eq!(v["case"], "JamBothMax");
    assert_eq!(v["advisory"]["jamming_preferred"], true);

    let b = file(
        &dir,
        "b.json",
        r#"{"batw": {"eps_1": 0.1, "eps_2": 0.1, "eps_w": 0.3}}"#,
    );
    assert_eq!(twwt(&["optimize", s(&b)]).status.code(), Some(2));
}

#[test]
fn jam_sweep_rows_and_edges() {
    let dir = TempDir::new().unwrap();
    let f5 = file(&dir, "f5.json", STRONG_TAP);
    let text = stdout(&twwt(&["jam-sweep", s(&f5), "--points", "11"]));
    assert!(text.starts_with("p2_snr,jamming_rate_bits_per_use\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0].0, 0.0);
    assert_eq!(rows[10].0, 2.0);
    assert!(rows.windows(2).all(|w| w[1].1 >= w[0].1));

    let one = csv_rows(&stdout(&twwt(&["jam-sweep", s(&f5), "--points", "1"])));
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].0, 0.0);

    assert_eq!(
        twwt(&["jam-sweep", s(&f5), "--points", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_pad_plaintext_and_budget() {
    let dir = TempDir::new().unwrap();
    let pad = file(
        &dir,
        "pad.json",
        r#"{"n": 1, "m_1": 2, "m_2": 1, "mx_1": 1, "mx_2": 2,
            "books": {"secret_1": ["0", "1"], "secret_2": ["0"], "rand_1": ["0"], "rand_2": ["0", "1"]}}"#,
    );
    let v = json(&twwt(&["verify", s(&pad), "--eps-w", "0.1"]));
    assert!((v["report"]["ratio"].as_f64().unwrap() - 1.0).abs() <= 1e-12);

    let plain = file(
        &dir,
        "plain.json",
        r#"{"n": 1, "m_1": 2, "m_2": 1, "mx_1": 1, "mx_2": 1,
            "books": {"secret_1": ["0", "1"], "secret_2": ["0"], "rand_1": ["0"], "rand_2": ["0"]}}"#,
    );
    let v = json(&twwt(&[
        "verify",
        s(&plain),
        "--eps-w",
        "0",
        "--eps-self",
        "0",
    ]));
    assert!(v["report"]["ratio"].as_f64().unwrap().abs() <= 1e-12);
    assert_eq!(v["decode_error"]["user_1"], 0.0);

    let seeded = file(
        &dir,
        "s.json",
        r#"{"n": 6, "m_1": 2, "m_2": 2, "mx_1": 2, "mx_2": 2}"#,
    );
    let a = stdout(&twwt(&[
        "verify",
        s(&seeded),
        "--eps-w",
        "0.2",
        "--seed",
        "9",
    ]));
    let b = stdout(&twwt(&[
        "verify",
        s(&seeded),
        "--eps-w",
        "0.2",
        "--seed",
        "9",
    ]));
    assert_eq!(a, b);
    let table = stdout(&twwt(&[
        "verify",
        s(&seeded),
        "--eps-w",
        "0.2",
        "--format",
        "table",
    ]));
    assert!(table.contains("H(W|Z)/H(W)"));

    let out = twwt(&["verify", s(&seeded), "--eps-w", "0.2", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let big = file(
        &dir,
        "big.json",
        r#"{"n": 30, "m_1": 4, "m_2": 4, "mx_1": 4, "mx_2": 4}"#,
    );
    assert_eq!(
        twwt(&["verify", s(&big), "--eps-w", "0.2"]).status.code(),
        Some(3)
    );

    assert_eq!(
        twwt(&["verify", s(&seeded), "--eps-w", "0.7"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn batw_jam_cases() {
    let dir = TempDir::new().unwrap();
    let weak_tap = file(
        &dir,
        "a.json",
        r#"{"batw": {"eps_1": 0.1, "eps_2": 0.2, "eps_w": 0.3}}"#,
    );
    let v = json(&twwt(&["batw-jam", s(&weak_tap)]));
    assert_eq!(v["sender"], 1);
    assert_eq!(v["jamming_needed"], false);

    // the eavesdropper hears better than the main links: only jamming helps
    let strong_tap = file(
        &dir,
        "b.json",
        r#"{"batw": {"eps_1": 0.3, "eps_2": 0.25, "eps_w": 0.01}}"#,
    );
    let v = json(&twwt(&["batw-jam", s(&strong_tap)]));
    assert_eq!(v["sender"], 2);
    assert_eq!(v["jamming_needed"], true);
    assert!(v["rate"].as_f64().unwrap() > 0.0);

    let g = file(&dir, "g.json", FULL_POWER);
    assert_eq!(twwt(&["batw-jam", s(&g)]).status.code(), Some(2));
}

#[test]
fn manifest_replays_byte_identically() {
    let dir = TempDir::new().unwrap();
    let f5 = file(&dir, "f5.json", STRONG_TAP);
    let scheme = file(
        &dir,
        "s.json",
        r#"{"n": 5, "m_1": 2, "m_2": 2, "mx_1": 2, "mx_2": 2}"#,
    );
    let runs: [(&str, Vec<&str>); 3] = [
        ("sweep.csv", vec!["jam-sweep", s(&f5), "--points", "7"]),
        (
            "opt.json",
            vec!["optimize", s(&f5), "--mode", "jam", "--oracle-grid", "21"],
        ),
        (
            "v.json",
            vec!["verify", s(&scheme), "--eps-w", "0.15", "--seed", "4"],
        ),
    ];
    for (name, args) in runs {
        let out = dir.path().join(name);
        let mut full = vec!["--out", s(&out)];
        full.extend(args);
        let o = twwt(&full);
        assert!(o.status.success() && o.stdout.is_empty());

        let manifest_text =
            std::fs::read_to_string(dir.path().join(format!("{name}.manifest.json"))).unwrap();
        let manifest: RunManifest = serde_json::from_str(&manifest_text).unwrap();
        assert_eq!(manifest.command, full[2]);
        assert!(manifest.input_digest.starts_with("sha256:"));
        assert_eq!(manifest.tool_version, env!("CARGO_PKG_VERSION"));

        let replay: Invocation = manifest.parameters;
        let payload = execute(&replay, None).unwrap().unwrap();
        assert_eq!(payload.as_bytes(), std::fs::read(&out).unwrap().as_slice());
    }
}
