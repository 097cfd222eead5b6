//! The command line front end against the library it wraps.

mod common;

use std::fs;
use std::path::{Path, PathBuf};

use common::*;
use tempfile::TempDir;
use ultragh::cli;
use ultragh::gen::{random_space, GenConfig};
use ultragh::ghdist::ugh;
use ultragh::io;
use ultragh::UltrametricSpace;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ultragh").chain(args.iter().copied());
    let code = cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, space: &UltrametricSpace) -> String {
    let path: PathBuf = dir.join(name);
    fs::write(&path, io::space_to_json(space)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn validate_reports_the_failing_triple() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "e1.json", &e1());
    let r = run(&["validate", &good]);
    assert_eq!((r.code, r.out.as_str()), (0, "valid n=3\n"));

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"points":["a","b","c"],"distances":[[0,1,2],[1,0,3],[2,3,0]]}"#,
    )
    .unwrap();
    let r = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("(a, c, b)"), "{}", r.out);

    let r = run(&["--json", "validate", bad.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let r = run_with_stdin(&["validate", "-"], "{not json");
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error:"));
    assert_eq!(run(&["ugh", "only-one.json"]).code, 2);
    assert_eq!(run(&["nonsense"]).code, 2);
    assert_eq!(run(&["validate", "/no/such/file.json"]).code, 2);
}

#[test]
fn help_goes_to_stdout() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    for sub in [
        "validate", "spectrum", "quotient", "canon", "ugh", "order", "embed", "extend", "verify", "gen", "linkage",
        "render",
    ] {
        assert!(r.out.contains(sub), "help lacks {sub}");
    }
}

#[test]
fn reads_stdin() {
    let r = run_with_stdin(&["spectrum", "-"], &io::space_to_json(&e1()));
    assert_eq!(r.out, "0 1 2\n");
    let r = run_with_stdin(&["spectrum", "-", "--above", "1"], &io::space_to_json(&e1()));
    assert_eq!(r.out, "1 2\n");
}

#[test]
fn ugh_matches_the_library() {
    let dir = TempDir::new().unwrap();
    let mut r = rng(40);
    for i in 0..20 {
        let x = draw_space(&mut r, 6, &half_heights());
        let y = draw_space(&mut r, 6, &half_heights());
        let a = write(dir.path(), &format!("x{i}.json"), &x);
        let b = write(dir.path(), &format!("y{i}.json"), &y);
        let lib = ugh(&x, &y);
        let expected = format!(
            "value={} level={} signature={}\n",
            lib.value, lib.witness_level, lib.witness_signature
        );
        assert_eq!(run(&["ugh", &a, &b]).out, expected);
        assert_eq!(run(&["ugh", &a, &b, "--scan"]).out, expected);
        let v: serde_json::Value = serde_json::from_str(&run(&["ugh", &a, &b, "--json"]).out).unwrap();
        assert_eq!(v["value"], lib.value.to_string());
    }
}

#[test]
fn worked_examples() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "e1.json", &e1());
    let y = write(dir.path(), "e2.json", &e2());
    let pt = write(dir.path(), "pt.json", &UltrametricSpace::one_point("*"));
    assert_eq!(run(&["ugh", &x, &y]).out, "value=1 level=1 signature=(2;L,L)\n");
    assert_eq!(run(&["ugh", &x, &y, "--lower-bound-only"]).out, "lower_bound=1\n");
    assert_eq!(run(&["ugh", &x, &pt]).out, "value=2 level=2 signature=L\n");
    assert_eq!(run(&["canon", &pt, &y, &x]).out, "L\n(2;L,L)\n(2;(1;L,L),L)\n");
    assert_eq!(run(&["order", &x]).out, "c,b,a\n");
    assert_eq!(run(&["order", &x, "--sequence", "2,1,0"]).out, "a,b,c\n");
}

#[test]
fn order_check() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "e1.json", &e1());
    let ok = run(&["order", &x, "--check", "--order", "c,b,a"]);
    assert_eq!((ok.code, ok.out.as_str()), (0, "OK\n"));
    let bad = run(&["order", &x, "--check", "--order", "a,c,b"]);
    assert_eq!(
        (bad.code, bad.out.as_str()),
        (1, "violation: (a,c,b) at ranks (0,1,2)\n")
    );
    let bad = run(&["order", &x, "--check", "--order", "a,c,b", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&bad.out).unwrap();
    assert_eq!(v["contiguity_violations"], 1);
    assert_eq!(run(&["order", &x, "--check"]).code, 2);
}

#[test]
fn embed_extend_verify_pipeline() {
    let dir = TempDir::new().unwrap();
    let base = space(&["x1", "x2"], &[&["0", "2"], &["2", "0"]]);
    let src = write(dir.path(), "base.json", &base);
    let fam = dir.path().join("fam.json");
    let r = run(&["embed", &src, "--order", "x1,x2", "--out", fam.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(
        run(&["verify", fam.to_str().unwrap()]).out,
        "pass pairs=1 mismatches=0\n"
    );

    let ext = dir.path().join("ext.json");
    let r = run(&[
        "extend",
        fam.to_str().unwrap(),
        "--source",
        &src,
        "--new-point",
        "x3:1,2",
        "--out",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let family = io::family_from_json(&fs::read_to_string(&ext).unwrap()).unwrap();
    let tri = space(
        &["a", "b", "c"],
        &[&["0", "1", "1"], &["1", "0", "1"], &["1", "1", "0"]],
    );
    assert!(brute_isometric(&family.images()[2], &tri));
    assert_eq!(
        run(&["verify", ext.to_str().unwrap()]).out,
        "pass pairs=3 mismatches=0\n"
    );

    let r = run(&["extend", fam.to_str().unwrap(), "--new-point", "x3:1,3"]);
    assert_eq!(r.code, 1);
}

#[test]
fn verify_flags_a_wrong_family() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "e1.json", &e1());
    let fam = dir.path().join("fam.json");
    run(&["embed", &x, "--out", fam.to_str().unwrap()]);
    let other = write(
        dir.path(),
        "e2.json",
        &space(
            &["a", "b", "c"],
            &[&["0", "1", "3"], &["1", "0", "3"], &["3", "3", "0"]],
        ),
    );
    let r = run(&["verify", fam.to_str().unwrap(), "--source", &other]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("fail pairs=3 mismatches=2\n"), "{}", r.out);
}

#[test]
fn gen_is_seeded() {
    let a = run(&["gen", "--n", "6", "--heights", "1,2,3", "--seed", "9"]);
    let b = run(&["gen", "--n", "6", "--heights", "1,2,3", "--seed", "9"]);
    assert_eq!(a.out, b.out);
    let lib = random_space(&GenConfig::new(6, vec![q("1"), q("2"), q("3")], 9, 3).unwrap());
    assert_eq!(a.out, io::space_to_json(&lib));
    assert_eq!(run(&["gen", "--n", "6", "--heights", "1"]).code, 2);
}

#[test]
fn linkage_to_space() {
    let r = run_with_stdin(&["linkage", "-", "--labels", "a,b,c"], "0,1,1,2\n2,3,2,3\n");
    assert_eq!(r.code, 0, "{}", r.err);
    let got = io::space_from_json(&r.out).unwrap();
    assert!(got.same_labeled(&e1()));
    let r = run_with_stdin(&["linkage", "-"], "[[0, 1, 0.5, 2]]");
    let got = io::space_from_json(&r.out).unwrap();
    assert_eq!(got.dist(0, 1), &q("1/2"));
    assert_eq!(run_with_stdin(&["linkage", "-"], "0,1,2,2\n2,3,1,3\n").code, 2);
}

#[test]
fn render_and_quotient() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "e1.json", &e1());
    let r = run(&["render", &x, "--format", "ascii"]);
    assert!(r.out.starts_with("# crossings: 0\n"));
    let r = run(&["render", &x, "--order", "a,c,b"]);
    assert!(r.out.contains("<!-- crossings: 1 -->"));
    let r = run(&["quotient", &x, "--level", "1"]);
    let quo = io::space_from_json(&r.out).unwrap();
    assert_eq!(quo, e1().quotient(&q("1")));
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_ultragh");
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "e1.json", &e1());
    let ok = std::process::Command::new(exe)
        .args(["order", &x, "--check", "--order", "c,b,a"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = std::process::Command::new(exe)
        .args(["order", &x, "--check", "--order", "a,c,b"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = std::process::Command::new(exe).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
