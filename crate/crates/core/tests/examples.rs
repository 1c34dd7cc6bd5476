//! Runs every cargo example; `cargo test` builds them next to the test binaries.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "lattices",
    "fuzzy_sets",
    "convexity_checks",
    "level_cuts",
    "constructions",
    "morphisms",
    "functors",
    "gallery",
    "property_suite",
    "files",
];

fn example_path(name: &str) -> PathBuf {
    // target/<profile>/deps/examples-<hash> -> target/<profile>/examples/<name>
    let exe = std::env::current_exe().unwrap();
    let profile = exe.parent().unwrap().parent().unwrap();
    profile.join("examples").join(format!("{name}{}", std::env::consts::EXE_SUFFIX))
}

fn run(name: &str) -> String {
    let path = example_path(name);
    let out = if path.exists() {
        Command::new(&path).output().unwrap()
    } else {
        Command::new(env!("CARGO"))
            .args(["run", "--quiet", "--example", name])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .output()
            .unwrap()
    };
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn every_example_file_is_listed() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut found: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.unwrap().path().file_stem().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    found.sort();
    let mut listed: Vec<String> = EXAMPLES.iter().map(|s| s.to_string()).collect();
    listed.sort();
    assert_eq!(found, listed);
}

#[test]
fn lattices() {
    let out = run("lattices");
    assert!(out.contains("beta-meet fails at p and q"));
    assert!(out.contains("distributive: false"));
}

#[test]
fn fuzzy_sets() {
    assert!(run("fuzzy_sets").contains("decomposition holds: true"));
}

#[test]
fn convexity_checks() {
    let out = run("convexity_checks");
    assert!(out.contains("C2 violated"));
    assert!(out.contains("after raising the meet: valid = true"));
}

#[test]
fn level_cuts() {
    let out = run("level_cuts");
    assert!(out.contains("rebuilt from lower cuts: true"));
    assert!(out.contains("rebuilt from upper cuts: true"));
}

#[test]
fn constructions() {
    let out = run("constructions");
    assert!(!out.contains("false"), "{out}");
}

#[test]
fn morphisms() {
    let out = run("morphisms");
    assert!(out.contains("onto the quotient: cpf holds"));
    assert!(out.contains("onto a finer target: cpf fails"));
}

#[test]
fn functors() {
    let out = run("functors");
    assert!(out.contains("iota(omega(S)) = S: true"));
}

#[test]
fn gallery() {
    let out = run("gallery");
    assert!(!out.contains("valid = false"), "{out}");
}

#[test]
fn property_suite() {
    assert!(run("property_suite").contains("all passed: true"));
}

#[test]
fn files() {
    assert!(run("files").contains("broken.json:2:"));
}
