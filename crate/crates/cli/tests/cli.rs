//! End-to-end runs of the binary: exit codes on the fixture set, output
//! determinism, and the shape of exported DOT graphs.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schober"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    p.to_str().expect("utf8 path").to_string()
}

fn scratch(name: &str) -> String {
    let p = std::env::temp_dir().join(format!("schober-cli-{name}"));
    p.to_str().expect("utf8 path").to_string()
}

const VALID: [(&str, &str); 6] = [
    ("--disk", "disk_shear.json"),
    ("--pair", "pair_skew.json"),
    ("--local-system", "local_system_circle.json"),
    ("--surface", "surface_one_point.json"),
    ("--crossing", "wall_crossing_conifold.json"),
    ("--quiver", "quiver_identity.json"),
];

const CORRUPT: [(&str, &str); 6] = [
    ("--disk", "disk_singular.json"),
    ("--pair", "pair_degenerate.json"),
    ("--local-system", "local_system_broken.json"),
    ("--surface", "surface_mismatch.json"),
    ("--crossing", "wall_crossing_not_cy.json"),
    ("--quiver", "quiver_bad.json"),
];

#[test]
fn valid_fixtures_exit_zero() {
    for (flag, file) in VALID {
        let out = run(&["validate", flag, &fixture(file)]);
        assert_eq!(code(&out), 0, "{file}: {out:?}");
    }
}

#[test]
fn corrupted_fixtures_exit_one() {
    for (flag, file) in CORRUPT {
        let out = run(&["validate", flag, &fixture(file)]);
        assert_eq!(code(&out), 1, "{file}: {out:?}");
    }
}

#[test]
fn broken_local_system_names_the_relation() {
    let out = run(&["validate", "--local-system", &fixture("local_system_broken.json")]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("inverse"), "missing relation name: {text}");
}

#[test]
fn usage_errors_exit_two() {
    let missing = run(&["validate", "--disk", &scratch("definitely-absent.json")]);
    assert_eq!(code(&missing), 2);

    let path = scratch("malformed.json");
    fs::write(&path, "{\"ambient_dim\": 2").unwrap();
    let malformed = run(&["validate", "--disk", &path]);
    assert_eq!(code(&malformed), 2);

    let word = run(&["braid-act", "--data", &fixture("disk_three.json"), "--word", "x y"]);
    assert_eq!(code(&word), 2);

    let index = run(&["braid-act", "--data", &fixture("disk_three.json"), "--word", "7"]);
    assert_eq!(code(&index), 2);

    let no_object = run(&["validate"]);
    assert_eq!(code(&no_object), 2);

    let unknown_flag = run(&["verify", "--no-such-flag"]);
    assert_eq!(code(&unknown_flag), 2);
}

#[test]
fn out_of_range_requests_exit_two() {
    let flop = run(&["verify", "--flop", "n=2"]);
    assert_eq!(code(&flop), 2);
    let radius = run(&["pullback", "--window", "0"]);
    assert_eq!(code(&radius), 2);
}

#[test]
fn json_reruns_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["validate", "--surface", &fixture("surface_one_point.json"), "--json"],
        &["verify", "--flop", "n=1", "--json"],
        &["build-windows", "--weights", "a=1,2,b=3", "--w", "-2", "--json"],
        &["pullback", "--window", "3", "--json"],
    ];
    for args in cases {
        let first = run(args);
        let second = run(args);
        assert_eq!(code(&first), 0, "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn braid_relation_gives_identical_files() {
    let data = fixture("disk_three.json");
    let left = scratch("braid-121.json");
    let right = scratch("braid-212.json");
    let a = run(&["braid-act", "--data", &data, "--word", "1 2 1", "--out", &left]);
    let b = run(&["braid-act", "--data", &data, "--word", "2 1 2", "--out", &right]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    assert_eq!(fs::read(&left).unwrap(), fs::read(&right).unwrap());
}

#[test]
fn out_file_matches_stdout() {
    let path = scratch("verify-flop.json");
    let to_file = run(&["verify", "--flop", "n=1", "--json", "--out", &path]);
    assert_eq!(code(&to_file), 0);
    let direct = run(&["verify", "--flop", "n=1", "--json"]);
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn dot_single_loop() {
    let path = scratch("loop-one.json");
    fs::write(
        &path,
        r#"{
  "presentation": {
    "basepoints": ["x"],
    "generators": [{ "label": "a", "src": "x", "dst": "x" }],
    "relations": []
  },
  "dims": { "x": 1 },
  "mats": { "a": [[2]] }
}"#,
    )
    .unwrap();
    let out = run(&["export-dot", "--local-system", &path]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let edges: Vec<&str> = text.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges, vec!["  \"x\" -> \"x\" [label=\"a: [[2]]\"];"]);
}

#[test]
fn dot_skms_has_two_nodes_four_edges() {
    let path = scratch("skms-export.json");
    let built = run(&["build-skms", "--n", "1", "--out", &path]);
    assert_eq!(code(&built), 0);
    let out = run(&["export-dot", "--local-system", &path]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let nodes = text.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
    let edges = text.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (2, 4));
}

#[test]
fn dot_empty_presentation() {
    let path = scratch("empty-pres.json");
    fs::write(&path, r#"{ "basepoints": [], "generators": [], "relations": [] }"#).unwrap();
    let out = run(&["export-dot", "--presentation", &path]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "digraph groupoid {\n  rankdir=LR;\n}\n");
}

#[test]
fn monodromy_transport_runs() {
    let out = run(&[
        "monodromy",
        "--local-system",
        &fixture("local_system_circle.json"),
        "--word",
        "c d",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[[1, 0]; [0, 1]]"), "{text}");

    let bad = run(&[
        "monodromy",
        "--local-system",
        &fixture("local_system_circle.json"),
        "--word",
        "nope",
    ]);
    assert_eq!(code(&bad), 2);
}
