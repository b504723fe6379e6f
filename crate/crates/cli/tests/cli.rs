use std::process::{Command, Output};

use atilde::notation::format_artin_word;
use atilde::{elementary_factors, CoxeterSystem, Letter, PeriodicPermutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn atilde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atilde"))
        .args(args)
        .env_remove("GARSIDE_MAX_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = atilde(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid json");
    (out.status.code().unwrap(), v)
}

#[test]
fn documented_examples() {
    let out = atilde(&["solve", "3", "s1 s2 s1", "s2 s1 s2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "EQUAL");

    let out = atilde(&["length", "6", "(1)[-1](2)[-1](3)[2](4)[1](5)[1](6)[-2]"]);
    assert_eq!(stdout(&out), "6");
    let out = atilde(&["length", "6", "w:[-5,-4,15,10,11,-6]"]);
    assert_eq!(stdout(&out), "6");

    let out = atilde(&["divides", "3", "(2,3)", "(2,3)[1](1)[-1]"]);
    assert_eq!(stdout(&out), "true");
    let out = atilde(&["divides", "3", "(2,6)", "(2,3)[1](1)[-1]"]);
    assert_eq!(stdout(&out), "false");
}

#[test]
fn unequal_words() {
    let out = atilde(&["solve", "3", "s1 s2", "s2 s1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "UNEQUAL");
}

#[test]
fn exit_codes() {
    assert_eq!(atilde(&["length", "3", "(1,2"]).status.code(), Some(2));
    assert_eq!(atilde(&["solve", "3", "s1 q2"]).status.code(), Some(2));
    assert_eq!(atilde(&["nf", "3", "(2,3)·x"]).status.code(), Some(2));
    // not a divisor of c
    assert_eq!(atilde(&["nf", "3", "(2,6)"]).status.code(), Some(1));
    assert_eq!(atilde(&["render", "3", "(2,6)"]).status.code(), Some(1));
    let out = atilde(&["--x-side", "1,2", "lcm", "4", "(1,2)", "(2,5)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no least common multiple"));
    assert_eq!(atilde(&["selfcheck", "2"]).status.code(), Some(0));
    assert_eq!(atilde(&["centralizer", "4", "3"]).status.code(), Some(0));
}

#[test]
fn json_schemas() {
    let (code, v) = json(&["length", "3", "(2,6)"]);
    assert_eq!(code, 0);
    assert_eq!(v["length"], 1);
    assert_eq!(v["window"].as_array().unwrap().len(), 3);

    let (_, v) = json(&["divides", "3", "(2,3)", "w:[-2,3,5]"]);
    assert_eq!(v["divides"], true);

    let (_, v) = json(&["nf", "3", "(2,3)·(2,3)"]);
    assert_eq!(v["length"], 2);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);

    let (_, v) = json(&["solve", "3", "s1 s2 s3", "--fraction"]);
    assert_eq!(v["delta_power"], 1);
    assert!(v["positive"].as_array().unwrap().is_empty());
    assert!(v["fraction"]["numerator"].is_string());

    let (_, v) = json(&["atoms", "2", "--window", "0"]);
    let atoms = v["atoms"].as_array().unwrap();
    assert!(!atoms.is_empty());
    assert!(atoms.iter().all(|a| a["x"].is_i64() && a["kind"].is_string()));

    let (code, v) = json(&["--x-side", "1,2", "lcm", "4", "(1,2)", "(2,5)"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "math");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);

    let (code, v) = json(&["length", "3", "(1,2"]);
    assert_eq!(code, 2);
    assert_eq!(v["kind"], "parse");

    let (_, v) = json(&["gcd", "3", "(2,3)", "(3,5)"]);
    assert_eq!(v["gcd"], "id");
    assert_eq!(v["length"], 0);

    let (_, v) = json(&["centralizer", "3", "2"]);
    assert_eq!(v["all_hold"], true);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);

    let (code, v) = json(&["selfcheck", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "Pass"));
}

#[test]
fn word_times_inverse_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let n: usize = rng.gen_range(2..=5);
        let len = rng.gen_range(1..=10);
        let w: Vec<Letter> = (0..len)
            .map(|_| Letter {
                index: rng.gen_range(1..=n),
                inverse: rng.gen_bool(0.5),
            })
            .collect();
        let inv: Vec<Letter> = w
            .iter()
            .rev()
            .map(|l| Letter {
                index: l.index,
                inverse: !l.inverse,
            })
            .collect();
        let both = format!("{} {}", format_artin_word(&w), format_artin_word(&inv));
        let out = atilde(&["solve", &n.to_string(), &both, ""]);
        assert_eq!(stdout(&out), "EQUAL", "{both}");
    }
}

fn factor_groups(svg: &str) -> usize {
    let doc = roxmltree::Document::parse(svg).expect("well-formed svg");
    doc.descendants()
        .filter(|n| n.has_tag_name("g") && n.attribute("class") == Some("factor"))
        .count()
}

#[test]
fn svg_has_one_group_per_factor() {
    let cases = [
        (3, "w:[-2,3,5]"),
        (3, "(2,3)"),
        (3, "(1)[-1](3)[1]"),
        (4, "(2,3)"),
        (4, "(2,3)(4,5)"),
        (4, "(2,3)(1)[-1](4)[1]"),
        (5, "(2,3)(4,5)"),
        (3, "id"),
    ];
    let dir = std::env::temp_dir().join(format!("atilde-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (n, perm) in cases {
        let sys = CoxeterSystem::standard(n).unwrap();
        let p = PeriodicPermutation::parse(n, perm).unwrap();
        let expected = elementary_factors(&sys, &p).unwrap().len();

        let out = atilde(&["render", &n.to_string(), perm]);
        assert_eq!(out.status.code(), Some(0), "{perm}");
        assert_eq!(factor_groups(&String::from_utf8(out.stdout).unwrap()), expected, "{perm}");

        let path = dir.join("out.svg");
        let out = atilde(&["render", &n.to_string(), perm, "-o", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let svg = std::fs::read_to_string(&path).unwrap();
        assert_eq!(factor_groups(&svg), expected);
    }
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(
        atilde(&["render", "3", "(2,3)", "--inner", "300"]).status.code(),
        Some(1)
    );
}

#[test]
fn outputs_are_deterministic() {
    let runs: [&[&str]; 5] = [
        &["--json", "atoms", "3", "--window", "2"],
        &["render", "4", "(2,3)(4,5)"],
        &["--json", "centralizer", "5", "4"],
        &["solve", "4", "s1 S3 s2 s4 S1", "--fraction"],
        &["--json", "selfcheck", "3"],
    ];
    for args in runs {
        let a = atilde(args);
        let b = atilde(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn window_cap_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_atilde"))
        .args(["atoms", "2", "--window", "5"])
        .env("GARSIDE_MAX_WINDOW", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capped to 1"));
    let capped = stdout(&out);
    assert_eq!(capped, stdout(&atilde(&["atoms", "2", "--window", "1"])));
}
