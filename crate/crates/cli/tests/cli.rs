//! End-to-end tests of the command-line interface: the exit-code contract,
//! byte-level determinism, JSON round trips, and the lattice output that
//! reproduces the conductor-7 diamond.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galois-cpm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn norm_verb_prints_exact_rational() {
    assert_eq!(stdout(&["norm", "--conductor", "5", "--element", "1-z"]), "5/1\n");
    assert_eq!(stdout(&["norm", "--quadratic", "5", "--element", "2+z"]), "-1/1\n");
    assert_eq!(stdout(&["norm", "--conductor", "5", "--element", "1/2"]), "1/16\n");
    // finite fields print the residue
    assert_eq!(stdout(&["norm", "--gf", "2,2", "--element", "z"]), "1\n");
}

#[test]
fn lattice_conductor_seven_is_the_paper_diamond() {
    let dot = stdout(&["lattice", "--conductor", "7", "--dot"]);
    assert_eq!(dot.matches("[label=").count(), 4, "4 subgroup nodes");
    assert_eq!(dot.matches(" -> ").count(), 4, "diamond edges");
    assert!(dot.contains("deg 6") && dot.contains("deg 3"));
    assert!(dot.contains("deg 2") && dot.contains("deg 1"));
    assert!(dot.contains("x^2+x+2"), "imaginary quadratic fixed field");
    assert!(dot.contains("x^3+x^2-2x-1"), "real cubic fixed field");

    let json = stdout(&["lattice", "--conductor", "7"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["exact"], true);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    let tags: Vec<&str> = v["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["tag"].as_str().unwrap())
        .collect();
    assert_eq!(
        tags,
        vec!["whole-field", "totally-positive", "whole-field", "totally-positive"]
    );
}

#[test]
fn lattice_conductor_five_is_a_chain() {
    let json = stdout(&["lattice", "--conductor", "5"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn lattice_gf16_is_a_subfield_chain() {
    let json = stdout(&["lattice", "--gf", "2,4"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let fields: Vec<&str> = v["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["fixed_field"].as_str().unwrap())
        .collect();
    assert_eq!(fields, vec!["GF(2^4)", "GF(2^2)", "GF(2^1)"]);
}

#[test]
fn exit_code_contract() {
    // usage errors exit 2
    let out = run(&["no-such-verb"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["norm", "--conductor", "5"]);
    assert_eq!(out.status.code(), Some(2), "missing --element");
    let out = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown suite"), "help text on stderr");
    // invalid field parameters are usage errors
    let out = run(&["norm", "--conductor", "1", "--element", "z"]);
    assert_eq!(out.status.code(), Some(2));
    // success exits 0
    let out = run(&["verify", "--suite", "env-closure", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_output_is_deterministic_and_json() {
    let args = ["verify", "--suite", "dec-idempotence", "--seed", "42"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "byte-identical stdout");
    let line = String::from_utf8(first.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["suite"], "dec-idempotence");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert!(v.get("elapsed_ms").is_none(), "timing stays off stdout");
}

#[test]
fn fold_round_trips_matrix_json() {
    let dir = std::env::temp_dir();
    let path = dir.join("galois_cpm_cli_fold_input.json");
    // [[1 - z]] over Q(zeta5)
    let matrix = serde_json::json!({
        "rows": 1,
        "cols": 1,
        "field": {"kind": "cyclotomic", "n": 5},
        "entries": [[["1/1", "-1/1", "0/1", "0/1"]]],
    });
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, "{matrix}").unwrap();
    let out = stdout(&["fold", "--conductor", "5", "--matrix", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"], 1);
    assert_eq!(v["entries"][0][0][0], "5/1", "complete fold of a scalar is its norm");
    // emitted JSON re-parses to an equal value (bit-exact round trip)
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(reparsed, v);

    // transversal fold over the subgroup {1,4} with the canonical and an
    // explicit transversal: identical on H-fixed input
    let fixed = serde_json::json!({
        "rows": 1,
        "cols": 1,
        "field": {"kind": "cyclotomic", "n": 5},
        // 3 + 2(zeta + zeta^4) = 2 + sqrt5, reduced on the power basis
        "entries": [[["1/1", "0/1", "-2/1", "-2/1"]]],
    });
    let path2 = dir.join("galois_cpm_cli_fold_fixed.json");
    let mut f = std::fs::File::create(&path2).unwrap();
    write!(f, "{fixed}").unwrap();
    let a = stdout(&[
        "fold", "--conductor", "5", "--matrix", path2.to_str().unwrap(),
        "--subgroup", "4",
    ]);
    let b = stdout(&[
        "fold", "--conductor", "5", "--matrix", path2.to_str().unwrap(),
        "--subgroup", "4", "--transversal", "1,3",
    ]);
    let va: serde_json::Value = serde_json::from_str(&a).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&b).unwrap();
    assert_eq!(va["entries"][0][0][0], "-1/1", "relative norm of 2 + sqrt5");
    assert_eq!(va, vb);
    // non-fixed entries are rejected
    let out = run(&[
        "fold", "--conductor", "5", "--matrix", path.to_str().unwrap(),
        "--subgroup", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decohere_discard_and_scalar_verbs() {
    let out = stdout(&["decohere", "--conductor", "5", "--subgroup", "4", "--dim", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exact"], true);
    assert_eq!(v["rank"], 4);
    assert_eq!(v["matrix"]["rows"], 16);

    let out = stdout(&["discard", "--conductor", "5", "--subgroup", "4", "--dim", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["effect"]["rows"], 1);
    assert_eq!(v["effect"]["cols"], 16);

    let dir = std::env::temp_dir();
    let path = dir.join("galois_cpm_cli_state.json");
    let state = serde_json::json!({
        "rows": 2,
        "cols": 1,
        "field": {"kind": "cyclotomic", "n": 5},
        "entries": [[["1/1", "-1/1", "0/1", "0/1"]], [["1/1", "0/1", "0/1", "0/1"]]],
    });
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, "{state}").unwrap();
    // full discard of the state (1 - zeta, 1): 5 + 1 = 6
    let out = stdout(&[
        "scalar", "--conductor", "5", "--subgroup", "2", "--state", path.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"]["coords"][0], "6/1");
}

#[test]
fn tp_search_and_ff_verbs() {
    let out = stdout(&["tp", "--quadratic", "5", "--element", "3+z"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["totally_positive"], true);
    let out = stdout(&["tp", "--quadratic", "5", "--element", "2+z"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["totally_positive"], false);

    let out = stdout(&[
        "search", "--quadratic", "5", "--target", "-1/1", "--bound-height", "3",
        "--bound-terms", "8",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["found"], true);
    assert_eq!(v["exact"], true);

    let out = stdout(&["ff", "--gf", "2,4"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["norm_surjective"], true);
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 0, 0, 1]), "x^4 + x + 1");
}

#[test]
fn sextic_cli_pieces() {
    assert_eq!(stdout(&["norm", "--sextic", "--element", "a"]), "4/1\n");
    let json = stdout(&["lattice", "--sextic"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
}

#[test]
fn folded_dimension_cap_is_honored() {
    let dir = std::env::temp_dir();
    let path = dir.join("galois_cpm_cli_cap.json");
    let matrix = serde_json::json!({
        "rows": 2,
        "cols": 2,
        "field": {"kind": "cyclotomic", "n": 5},
        "entries": [
            [["1/1", "0/1", "0/1", "0/1"], ["0/1", "0/1", "0/1", "0/1"]],
            [["0/1", "0/1", "0/1", "0/1"], ["1/1", "0/1", "0/1", "0/1"]]
        ],
    });
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, "{matrix}").unwrap();
    // 2^4 = 16 exceeds a cap of 8
    let out = bin()
        .args(["fold", "--conductor", "5", "--matrix", path.to_str().unwrap()])
        .env("GALOIS_CPM_MAX_DIM", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds cap"));
    // and succeeds with the default cap
    let out = bin()
        .args(["fold", "--conductor", "5", "--matrix", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
