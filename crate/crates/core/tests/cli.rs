use std::path::Path;
use std::process::Command;

use eqpart::cli;
use eqpart::partition::io::{parse_pc1, parse_code1};

fn bin(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eqpart")).current_dir(dir).args(args).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

fn run(args: &[&str]) -> cli::CommandReport {
    cli::run(std::iter::once("eqpart").chain(args.iter().copied())).unwrap()
}

#[test]
fn info_reports_sizes() {
    for (m, n, v, d, diam) in [("1", "0", "16", "6", "2"), ("0", "1", "4", "3", "1"), ("2", "1", "1024", "15", "5")] {
        let r = run(&["info", m, n]);
        assert!(r.ok);
        assert_eq!(r.get("vertices"), Some(v));
        assert_eq!(r.get("degree"), Some(d));
        assert_eq!(r.get("diameter"), Some(diam));
    }
    assert_eq!(run(&["info", "0", "1"]).get("eigenvalues"), Some("3^1 -1^3"));
}

#[test]
fn admissibility() {
    let r = run(&["admissible", "15", "1"]);
    assert_eq!(r.get("infinity-admissible"), Some("true"));
    assert_eq!(r.get("a"), Some("1"));
    let r = run(&["admissible", "5", "2"]);
    assert_eq!(r.get("infinity-admissible"), Some("false"));
    assert!(r.get("violations").is_some());
    let r = run(&["admissible", "29", "3"]);
    assert_eq!(r.get("infinity-admissible"), Some("true"));
    assert_eq!(r.get("a"), Some("8"));
    assert!(r.get("smallest-construction").unwrap().starts_with("diameter 10"));
}

#[test]
fn bc_file_verifies_and_corruption_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = bin(dir.path(), &["construct", "-o", "bc.pc1", "bc", "6", "2"]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(dir.path().join("bc.pc1")).unwrap();
    assert!(text.starts_with("# eqpart construct -o bc.pc1 bc 6 2"));
    assert!(text.contains("# quotient: 0 6; 2 4"));
    assert!(text.contains("# verification: exhaustive"));
    assert_eq!(parse_pc1(&text).unwrap().k(), 2);

    let (code, out) = bin(dir.path(), &["verify", "bc.pc1", "--quotient", "0 6; 2 4"]);
    assert_eq!(code, 0, "{out}");

    let data = text.lines().last().unwrap();
    let flipped: String = data.replacen('1', "2", 1);
    std::fs::write(dir.path().join("bad.pc1"), text.replace(data, &flipped)).unwrap();
    let (code, out) = bin(dir.path(), &["verify", "bad.pc1", "--quotient", "0 6; 2 4"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("status: fail"));
    assert!(out.contains("witness: "), "{out}");
}

#[test]
fn multifold_files_are_seven_fold() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = bin(dir.path(), &["construct", "multifold", "4", "1"]);
    assert_eq!(code, 0, "{out}");
    for i in 1..=4 {
        let name = format!("multifold_4_1.{i}.code1");
        let c = parse_code1(&std::fs::read_to_string(dir.path().join(&name)).unwrap()).unwrap();
        assert_eq!(c.len(), 7 * 4u64.pow(9) / 28);
        let (code, out) = bin(dir.path(), &["verify", &name, "--mu", "7"]);
        assert_eq!(code, 0, "{out}");
    }
    let (code, _) = bin(dir.path(), &["verify", "multifold_4_1.1.code1", "--mu", "6"]);
    assert_eq!(code, 1);
}

#[test]
fn rad2_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = bin(dir.path(), &["construct", "-o", "r.txt", "rad2", "0", "16", "--b", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("representatives: 64"));
    assert!(out.contains("quotient: 0 48 0; 1 32 15; 0 48 0"));
    assert!(dir.path().join("r.txt").exists());
}

#[test]
fn searches() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = bin(dir.path(), &["search", "code", "2", "1", "--mu", "1"]);
    assert_eq!(code, 0, "{out}");
    let c = parse_code1(&std::fs::read_to_string(dir.path().join("code_2_1_mu1.code1")).unwrap()).unwrap();
    assert_eq!(c.len(), 64);

    let (code, out) = bin(dir.path(), &["search", "coloring", "1", "0", "--quotient", "1 5; 3 3"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = bin(dir.path(), &["verify", "coloring_1_0.pc1", "--quotient", "1 5; 3 3"]);
    assert_eq!(code, 0, "{out}");

    let (code, out) = bin(dir.path(), &["search", "code", "1", "1", "--mu", "1"]);
    assert_eq!(code, 1, "{out}");
    let (code, out) = bin(dir.path(), &["search", "--nodes", "10", "code", "2", "1", "--mu", "1"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn parameter_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bin(dir.path(), &["info", "x", "1"]).0, 2);
    assert_eq!(bin(dir.path(), &["info", "40", "0"]).0, 2);
    assert_eq!(bin(dir.path(), &["construct", "bogus", "1"]).0, 2);
    std::fs::write(dir.path().join("junk.pc1"), "pc1 m=0 n=1 k=2\n0 1 x 1\n").unwrap();
    assert_eq!(bin(dir.path(), &["verify", "junk.pc1"]).0, 2);
}

#[test]
fn construct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&[&str], &str)] = &[
        (&["mds", "0", "3"], "0 3 3 3; 3 0 3 3; 3 3 0 3; 3 3 3 0"),
        (&["perfect", "2", "1"], ""),
        (&["multipartite", "2", "1", "2"], ""),
        (&["bc", "5", "3"], ""),
        (&["bc", "15", "1"], ""),
    ];
    for (i, (what, quotient)) in cases.iter().enumerate() {
        let name = format!("c{i}.pc1");
        let mut args = vec!["construct", "-o", name.as_str()];
        args.extend_from_slice(what);
        let (code, out) = bin(dir.path(), &args);
        assert_eq!(code, 0, "{what:?}: {out}");
        let q = out.lines().find_map(|l| l.strip_prefix("quotient: ")).unwrap().to_string();
        if !quotient.is_empty() {
            assert_eq!(q, *quotient);
        }
        parse_pc1(&std::fs::read_to_string(dir.path().join(&name)).unwrap()).unwrap();
        let (code, out) = bin(dir.path(), &["verify", &name, "--quotient", &q]);
        assert_eq!(code, 0, "{what:?}: {out}");
    }

    let recipe = "merge 0 0 1 1\n  extend 0 1\n    diag 4\n      mds 1 0\n      perfect 0 1\n";
    std::fs::write(dir.path().join("r.recipe"), recipe).unwrap();
    let (code, out) = bin(dir.path(), &["construct", "-o", "r.pc1", "recipe", "r.recipe"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = bin(dir.path(), &["verify", "r.pc1", "--quotient", "6 6; 6 6"]);
    assert_eq!(code, 0, "{out}");
}
