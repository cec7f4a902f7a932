use std::path::Path;
use std::process::{Command, Output};

use rainbow_core::Coloring;
use rainbow_lab::format::{render_coloring, save_coloring};
use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow-lab"))
        .args(args)
        .env_remove("RAINBOW_LAB_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_examples() {
    let dir = tempfile::tempdir().unwrap();
    let pg = dir.path().join("pg3.col");
    let out = lab(&["construct", "pg", "--s", "3", "--out", s(&pg)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["colors"], 8);
    assert_eq!(v["all_absent"], true);
    assert_eq!(v["seed"], 0);
    assert!(dir.path().join("pg3.col.json").exists());

    let canc = dir.path().join("canc.col");
    let v = json(&lab(&["construct", "cancellative", "--n", "7", "--p", "3", "--out", s(&canc)]));
    assert_eq!(v["colors"], 3);

    let out = lab(&["construct", "mpsts", "--n", "6", "--seed", "1", "--out", s(&dir.path().join("m6.col"))]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["colors"], 5);
    assert_eq!(json(&out)["seed"], 1);
}

#[test]
fn construct_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.col");
    let b = dir.path().join("b.col");
    for kind in [["pg", "--s", "4"], ["mpsts", "--n", "11"], ["gallai", "--n", "12"]] {
        let one = lab(&[&["construct"], &kind[..], &["--seed", "5", "--out", s(&a)]].concat());
        let two = lab(&[&["construct"], &kind[..], &["--seed", "5", "--out", s(&b)]].concat());
        assert_eq!(code(&one), 0, "{kind:?}");
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{kind:?}");
        let strip = |o: &Output| String::from_utf8_lossy(&o.stdout).replace(s(&a), "").replace(s(&b), "");
        assert_eq!(strip(&one), strip(&two), "{kind:?}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_rainbow-lab"))
        .args(["construct", "mpsts", "--n", "10", "--out", s(&dir.path().join("m.col"))])
        .env("RAINBOW_LAB_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 9);
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let canc = dir.path().join("canc.col");
    lab(&["construct", "cancellative", "--n", "7", "--p", "3", "--out", s(&canc)]);
    let out = lab(&["verify", s(&canc), "--family", "cancellative"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["witness"], Value::Null);

    let rainbow = dir.path().join("rainbow.col");
    save_coloring(&rainbow, &Coloring::rainbow(4, 3).unwrap()).unwrap();
    let out = lab(&["verify", s(&rainbow), "--family", "f4"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["witness"]["edges"].as_array().unwrap().len(), 3);

    let mono = dir.path().join("mono.col");
    save_coloring(&mono, &Coloring::monochromatic(6, 3).unwrap()).unwrap();
    for family in ["cancellative", "f4", "f5", "h1", "h2", "t", "o"] {
        assert_eq!(code(&lab(&["verify", s(&mono), "--family", family])), 0, "{family}");
    }
    assert_eq!(code(&lab(&["verify", s(&mono), "--family", "star", "--q", "2", "--r", "3"])), 0);
    assert_eq!(code(&lab(&["verify", s(&mono), "--family", "star"])), 2);
}

#[test]
fn solve_examples() {
    let out = lab(&["solve", "--n", "5", "--p", "3", "--family", "f5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["value"], 2);
    assert_eq!(json(&out)["status"], "proved");

    let out = lab(&["solve", "--n", "4", "--p", "3", "--family", "f4"]);
    assert_eq!(json(&out)["value"], 2);

    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.col");
    let out = lab(&["solve", "--n", "6", "--p", "3", "--family", "cancellative", "--max-nodes", "1e9", "--out", s(&witness)]);
    let v = json(&out);
    assert_eq!(code(&out), 0);
    assert_eq!(v["value"], 3);
    let w = std::fs::read_to_string(&witness).unwrap();
    assert!(w.contains("colors=3"));

    let out = lab(&["solve", "--n", "6", "--p", "3", "--family", "cancellative", "--max-nodes", "10"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["status"], "timed_out");

    assert_eq!(code(&lab(&["solve", "--n", "2", "--p", "3", "--family", "f4"])), 2);
}

#[test]
fn diagnose_examples() {
    let dir = tempfile::tempdir().unwrap();
    let pg = dir.path().join("pg4.col");
    lab(&["construct", "pg", "--s", "4", "--out", s(&pg)]);
    let out = lab(&["diagnose", s(&pg)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    for inv in v["accounting"]["invariants"].as_array().unwrap() {
        assert_eq!(inv["holds"], true, "{inv}");
    }
    assert_eq!(v["accounting"]["bounds"]["within"], true);

    let mono = dir.path().join("mono.col");
    save_coloring(&mono, &Coloring::monochromatic(5, 3).unwrap()).unwrap();
    let v = json(&lab(&["diagnose", s(&mono)]));
    let identity = v["accounting"]["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .find(|i| i["name"] == "leave_identity")
        .unwrap()
        .clone();
    assert_eq!(identity["holds"], true);

    let bad = dir.path().join("bad.col");
    let text = render_coloring(&Coloring::monochromatic(5, 3).unwrap()).replace("colors=1", "colors=2");
    std::fs::write(&bad, text).unwrap();
    let out = lab(&["diagnose", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("surjectivity"));
}

#[test]
fn gallai_files_get_the_defect_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.col");
    assert_eq!(code(&lab(&["construct", "gallai", "--n", "20", "--out", s(&g)])), 0);
    let out = lab(&["diagnose", s(&g)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn packing_and_grassmann_run() {
    let out = lab(&["packing", "--n", "13"]);
    assert_eq!(code(&out), 0);
    let out = lab(&["grassmann", "--s", "4", "--restarts", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&lab(&["construct", "pg", "--s", "9"])), 2);
}
