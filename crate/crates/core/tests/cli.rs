use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use extraspecial::cli::commands;
use extraspecial::cli::json::{self, ElementJson, GroupJson, InstanceFile, IntersectFile};
use extraspecial::cli::{EXIT_BAD_INPUT, EXIT_NEGATIVE, EXIT_OK};

fn esp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esp")).args(args).output().expect("binary runs")
}

fn p29() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/p29.json").to_string_lossy().into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("esp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_json<T: serde::Serialize>(path: &Path, v: &T) -> String {
    std::fs::write(path, json::to_json_text(v)).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn solve_p29_file() {
    let out = esp(&["solve", "--in", &p29()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = stdout_json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["trace"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_known_conjugator() {
    let out = esp(&["verify", "--in", &p29(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "valid\n");
}

#[test]
fn perturbed_coordinate_is_refused_with_factor() {
    let mut file: InstanceFile = json::read_json(Path::new(&p29())).unwrap();
    file.g_prime = ElementJson {
        m: Some(vec![json::MPartJson { x: "14".into(), y: "2".into() }]),
        n: Some(vec![json::NPartJson { x: "22".into(), z: "24".into() }]),
        zc: Some("3".into()),
        ..Default::default()
    };
    file.known_conjugator = None;
    let path = write_json(&tmp("perturbed.json"), &file);
    let out = esp(&["solve", "--in", &path]);
    assert_eq!(out.status.code(), Some(EXIT_NEGATIVE));
    let refusal = stdout_json(&out)["refusal"].as_str().unwrap().to_string();
    assert!(refusal.contains("factor 1") && refusal.contains("N(p)"), "{refusal}");
    let out = esp(&["decide", "--in", &path]);
    assert_eq!(out.status.code(), Some(EXIT_NEGATIVE));
    assert_eq!(stdout_json(&out)["conjugate"], false);
}

#[test]
fn self_conjugate_gives_identity() {
    let mut file = commands::random(1009, 2, 1, 3).unwrap();
    file.g_prime = file.g_tilde.clone();
    file.known_conjugator = None;
    let rep = commands::solve(&file, false).unwrap();
    let id = ElementJson {
        m: Some(vec![json::MPartJson { x: "0".into(), y: "0".into() }; 2]),
        n: Some(vec![json::NPartJson { x: "0".into(), z: "0".into() }]),
        zc: Some("0".into()),
        ..Default::default()
    };
    assert_eq!(rep.conjugator, Some(id));
    assert!(commands::decide(&file, false).unwrap().conjugate);
}

#[test]
fn wrong_candidate_reports_diff() {
    let file: InstanceFile = json::read_json(Path::new(&p29())).unwrap();
    // known conjugator times a non-central element x1 z2
    let cand = ElementJson {
        m: Some(vec![json::MPartJson { x: "15".into(), y: "0".into() }]),
        n: Some(vec![json::NPartJson { x: "0".into(), z: "0".into() }]),
        zc: Some("0".into()),
        ..Default::default()
    };
    let rep = commands::verify(&file, Some(&cand)).unwrap();
    assert!(!rep.valid);
    assert_eq!(rep.diff, vec!["zc"]);
}

#[test]
fn malformed_inputs_exit_2() {
    let out = esp(&["demo-keyexchange", "--p", "15", "--r", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_BAD_INPUT));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an odd prime"));
    assert_eq!(esp(&["random", "--p", "4", "--r", "1", "--s", "0"]).status.code(), Some(EXIT_BAD_INPUT));
    assert_eq!(esp(&["solve", "--in", "/nonexistent.json"]).status.code(), Some(EXIT_BAD_INPUT));
    assert_eq!(esp(&["frobnicate"]).status.code(), Some(EXIT_BAD_INPUT));
    let bad = tmp("bad.json");
    std::fs::write(&bad, r#"{"group": {"kind": "mp", "p": "5"}, "g_tilde": {"a": "30", "b": "0"}, "g_prime": {"a": "0", "b": "0"}}"#).unwrap();
    assert_eq!(esp(&["solve", "--in", &bad.to_string_lossy()]).status.code(), Some(EXIT_BAD_INPUT));
    assert_eq!(esp(&["--help"]).status.code(), Some(EXIT_OK));
}

#[test]
fn random_instances_verify_and_solve() {
    for seed in 0..1000 {
        let file = commands::random(3, 1, 1, seed).unwrap();
        assert!(commands::verify(&file, None).unwrap().valid);
        assert!(commands::solve(&file, false).unwrap().verified);
    }
    for (p, r, s) in [(5, 3, 0), (7, 0, 3), (1009, 2, 2), (65521, 4, 5)] {
        for seed in 0..200 {
            let file = commands::random(p, r, s, seed).unwrap();
            let text = json::to_json_text(&file);
            let back: InstanceFile = json::parse_json(&text).unwrap();
            assert_eq!(back, file);
            assert!(commands::solve(&back, false).unwrap().verified);
        }
    }
}

#[test]
fn random_large_prime_is_fast() {
    let start = Instant::now();
    let file = commands::random(2305843009213693951, 8, 8, 11).unwrap();
    assert!(start.elapsed() < Duration::from_millis(100));
    assert!(commands::verify(&file, None).unwrap().valid);
}

#[test]
fn oracle_cross_check_on_small_instance() {
    let path = tmp("small.json");
    let out = esp(&["random", "--p", "3", "--r", "1", "--s", "1", "--seed", "9", "--out", &path.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let out = esp(&["solve", "--in", &path.to_string_lossy(), "--oracle"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(stdout_json(&out)["oracle"]["agrees"], true);
    assert_eq!(stdout_json(&out)["oracle"]["order"], "243");
}

#[test]
fn oracle_cap_env_is_honored() {
    let path = tmp("cap.json");
    esp(&["random", "--p", "3", "--r", "1", "--s", "1", "--out", &path.to_string_lossy()]);
    let out = Command::new(env!("CARGO_BIN_EXE_esp"))
        .args(["decide", "--in", &path.to_string_lossy(), "--oracle"])
        .env("ESP_ORACLE_CAP", "100")
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert!(v["oracle"]["skipped"].as_str().unwrap().contains("cap 100"));
}

#[test]
fn bench_rows_and_scaling() {
    let out = esp(&["bench", "--p-bits", "16", "--components", "2", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(stdout_json(&out)["rows"].as_array().unwrap().len(), 1);

    let rep = commands::bench(&[16, 62], &[4, 8, 16], 5, 1).unwrap();
    assert!(rep.within_bound && rep.independent_of_p);
    for bits in [16, 62] {
        let solves = |c| rep.rows.iter().find(|r| r.p_bits == bits && r.components == c).unwrap().max_solves as f64;
        for (lo, hi) in [(4, 8), (8, 16)] {
            let ratio = solves(hi) / solves(lo);
            assert!((1.8..=2.2).contains(&ratio), "ratio {ratio}");
        }
    }
}

#[test]
fn intersect_from_file_and_sweeps() {
    let file = IntersectFile {
        group: GroupJson::Dihedral { n: "12".into() },
        h: ElementJson { i: Some("5".into()), j: Some("1".into()), ..Default::default() },
        u: ElementJson { i: Some("3".into()), j: Some("0".into()), ..Default::default() },
        k: ElementJson { i: Some("5".into()), j: Some("1".into()), ..Default::default() },
        v: ElementJson { i: Some("3".into()), j: Some("0".into()), ..Default::default() },
    };
    let path = write_json(&tmp("d12.json"), &file);
    let out = esp(&["intersect", "--in", &path, "--oracle"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = stdout_json(&out);
    assert_eq!(v["common"]["j"], "1");
    assert_eq!(v["oracle"]["agrees"], true);

    for args in [["--kind", "dihedral", "--n", "8"], ["--kind", "quaternion", "--n", "4"]] {
        let mut full = vec!["intersect", "--sweep", "--oracle"];
        full.extend(args);
        let out = esp(&full);
        assert_eq!(out.status.code(), Some(EXIT_OK));
        assert_eq!(stdout_json(&out)["mismatches"], 0);
    }
}

#[test]
fn text_format_keyexchange() {
    let out = esp(&["demo-keyexchange", "--p", "3", "--r", "1", "--s", "1", "--oracle", "--format", "text"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("attacker success: true"));
    assert!(text.contains("brute-force key matches: true"));
}
