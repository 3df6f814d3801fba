use std::path::Path;
use std::process::{Command, Output};

use qqpft_core::io::{read_field, read_signal, read_transform, write_field, write_signal, write_transform};

fn qqpft(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qqpft")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stat(text: &str, key: &str) -> f64 {
    let prefix = format!("{key}=");
    text.split_whitespace()
        .find_map(|w| w.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn gaussian_transform_is_gaussian() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(qqpft(&["gen", "gaussian", "--n", "64", "--extent", "16", "--out", "g.qsig"], d).status.success());
    assert!(qqpft(&["qqpft", "g.qsig", "--out", "g.qqpf"], d).status.success());
    let info = qqpft(&["info", "g.qqpf"], d);
    assert!(info.status.success());
    let text = stdout(&info);
    assert!((stat(&text, "peak") - 1.0).abs() < 1e-8, "{text}");
    assert!(text.contains("at xi=(0.000000, 0.000000)"));
    assert!((stat(&text, "l2") - std::f64::consts::PI.sqrt()).abs() < 1e-8);
}

#[test]
fn zero_b_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    qqpft(&["gen", "gaussian", "--n", "8", "--extent", "4", "--out", "g.qsig"], d);
    let o = qqpft(&["qqpft", "g.qsig", "--params", "0,0,0,0,0;0,1,0,0,0", "--out", "x.qqpf"], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("B ≠ 0"));
    assert!(!d.join("x.qqpf").exists());
    assert_eq!(qqpft(&["nonsense"], d).status.code(), Some(2));
    assert_eq!(qqpft(&["info", "missing.qsig"], d).status.code(), Some(2));
}

#[test]
fn energy_ratio_of_self_windowed_transform() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    qqpft(&["gen", "gaussian", "--n", "32", "--extent", "12", "--out", "g.qsig"], d);
    let o = qqpft(&["stft", "g.qsig", "--params", "0.1,1.2,0.2,-0.3,0.4;-0.1,-0.8,0.1,0.25,-0.35", "--out", "s.qtf"], d);
    assert!(o.status.success());
    assert!((stat(&stdout(&o), "energy_ratio") - 1.0).abs() < 1e-3, "{}", stdout(&o));
}

#[test]
fn written_files_round_trip_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    qqpft(&["gen", "random-smooth", "--n", "8", "--extent", "6", "--seed", "4", "--out", "f.qsig"], d);
    qqpft(&["gen", "gaussian", "--n", "8", "--extent", "6", "--out", "w.qsig"], d);
    assert!(qqpft(&["qqpft", "f.qsig", "--params", "0.1,1,0,0,0;0,-1,0.2,0,0", "--direct", "--out", "f.qqpf"], d).status.success());
    for cmd in ["stft", "af", "wvd"] {
        let out = format!("{cmd}.qtf");
        assert!(qqpft(&[cmd, "f.qsig", "--window", "w.qsig", "--out", &out], d).status.success());
    }
    let bytes = std::fs::read(d.join("f.qsig")).unwrap();
    let mut again = Vec::new();
    write_signal(&mut again, &read_signal(&mut bytes.as_slice()).unwrap()).unwrap();
    assert_eq!(again, bytes);
    let bytes = std::fs::read(d.join("f.qqpf")).unwrap();
    let mut again = Vec::new();
    write_transform(&mut again, &read_transform(&mut bytes.as_slice()).unwrap()).unwrap();
    assert_eq!(again, bytes);
    for name in ["f.qsig", "f.qqpf", "stft.qtf", "af.qtf", "wvd.qtf"] {
        assert!(qqpft(&["info", name], d).status.success(), "{name}");
        if name.ends_with(".qtf") {
            let bytes = std::fs::read(d.join(name)).unwrap();
            let mut again = Vec::new();
            write_field(&mut again, &read_field(&mut bytes.as_slice()).unwrap()).unwrap();
            assert_eq!(again, bytes, "{name}");
        }
    }
}

#[test]
fn large_outputs_need_force_or_a_slice() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    qqpft(&["gen", "gaussian", "--n", "128", "--extent", "20", "--out", "g.qsig"], d);
    let o = qqpft(&["stft", "g.qsig", "--out", "big.qtf"], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    let o = qqpft(&["wvd", "g.qsig", "--slice", "0,0", "--out", "slice.csv"], d);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(d.join("slice.csv")).unwrap();
    assert_eq!(csv.lines().count(), 128 * 128 + 1);
    assert_eq!(qqpft(&["af", "g.qsig", "--slice", "99,0", "--out", "s.csv"], d).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["verify", "--battery", "all", "--n", "16", "--signals-count", "2", "--pairs", "2", "--seed", "5"];
    let a = qqpft(&[&args[..], &["--out", "a.tsv"]].concat(), d);
    let b = qqpft(&[&args[..], &["--out", "b.tsv"]].concat(), d);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(b.status.code(), Some(0));
    let ra = std::fs::read(d.join("a.tsv")).unwrap();
    assert!(!ra.is_empty());
    assert_eq!(ra, std::fs::read(d.join("b.tsv")).unwrap());
}

#[test]
fn verify_on_files_reports_the_gaussian_margin() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    qqpft(&["gen", "gaussian", "--n", "64", "--extent", "16", "--out", "g.qsig"], d);
    let o = qqpft(&["verify", "--battery", "shannon", "g.qsig"], d);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let cols: Vec<&str> = line.trim().split('\t').collect();
    assert_eq!(cols[0], "input/shannon");
    let margin: f64 = cols[3].parse().unwrap();
    let expected = 2.0 * (std::f64::consts::PI * std::f64::consts::E).ln()
        - (std::f64::consts::E.powi(2) / (16.0 * std::f64::consts::PI.powi(2))).ln();
    assert!((margin - expected).abs() < 1e-3);
}
