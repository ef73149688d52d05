//! The `toric` binary end to end.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn toric(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toric-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const EXAMPLE_1: &str = "# two lines\n1 2 0\n2 1 0\n";

#[test]
fn analyze_json_from_file() {
    let dir = scratch("analyze");
    let file = dir.join("example1.arr");
    std::fs::write(&file, EXAMPLE_1).unwrap();
    let out = toric(&["--no-banner", "analyze", file.to_str().unwrap(), "--json"], "");
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["f"], serde_json::json!([3, 6, 3]));
    assert_eq!(v["vertices"], serde_json::json!([["0", "0"], ["1/3", "1/3"], ["2/3", "2/3"]]));
    assert_eq!(v["routes"]["agree"], true);
    assert!(out.stderr.is_empty());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = toric(&["analyze", "-", "--json", "--poset"], EXAMPLE_1);
    let b = toric(&["analyze", "-", "--json", "--poset"], EXAMPLE_1);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).starts_with("toric "));
    let t = toric(&["--no-banner", "analyze", "-"], EXAMPLE_1);
    assert_eq!(t.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&t.stdout).contains("agreement    yes"));
}

#[test]
fn construct_pipeline() {
    let built = toric(&["--no-banner", "construct", "odd-simplicial", "3"], "");
    assert_eq!(built.status.code(), Some(0));
    let text = String::from_utf8(built.stdout).unwrap();
    assert!(text.starts_with("# odd-simplicial 3\n"));
    let out = toric(&["--no-banner", "analyze", "-", "--json"], &text);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["f"], serde_json::json!([5, 15, 10]));
    assert_eq!(v["t"], serde_json::json!({"3": 5}));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], stdin: &str| toric(args, stdin).status.code();
    assert_eq!(code(&["verify", "-"], "1 0 0\n0 1 0\n1 0 0\n"), Some(2));
    assert_eq!(code(&["verify", "-"], "1 0 0\n1 0 1/2\n"), Some(2));
    assert_eq!(code(&["verify", "-"], "1 2 0\n2 1 0\n1 -1 0\n"), Some(0));
    assert_eq!(code(&["verify", "/nonexistent/file.arr"], ""), Some(2));
    assert_eq!(code(&["analyze"], ""), Some(1));
    assert_eq!(code(&["construct", "odd-simplicial", "1"], ""), Some(2));
    assert_eq!(code(&["construct", "hexagon", "1"], ""), Some(1));
    assert_eq!(code(&["--help"], ""), Some(0));
}

#[test]
fn duplicate_line_is_named() {
    let out = toric(&["--no-banner", "verify", "-"], "1 0 0\n0 1 0\n-1 0 0\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("more than once"));
}

#[test]
fn render_is_well_formed_svg() {
    let dir = scratch("render");
    let svg = dir.join("out.svg");
    let out = toric(
        &["--no-banner", "render", "-", "-o", svg.to_str().unwrap(), "--labels"],
        "1 2 0\n2 1 0\n1 -1 1/3\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let families = root.descendants().filter(|n| n.attribute("class") == Some("line-family")).count();
    assert_eq!(families, 3);
    let circles = root.descendants().filter(|n| n.has_tag_name("circle")).count();
    assert!(circles >= 3);
    std::fs::remove_dir_all(dir).unwrap();

    let stdout = toric(&["--no-banner", "render", "-", "-o", "-"], EXAMPLE_1);
    assert!(roxmltree::Document::parse(std::str::from_utf8(&stdout.stdout).unwrap()).is_ok());
}

#[test]
fn genus_check_reports() {
    let out = toric(&["--no-banner", "genus-check", "-"], r#"{"genus": 2, "t": {"3": 4}, "p": {"3": 4, "6": 2}}"#);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["face_numbers"], serde_json::json!([4, 12, 6]));

    let sphere = toric(&["--no-banner", "genus-check", "-"], r#"{"genus": 0, "t": {"2": 2}, "p": {"2": 2}}"#);
    assert_eq!(sphere.status.code(), Some(2));
}

#[test]
fn search_report_shape_and_threads() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_toric"))
            .args(["--no-banner", "search", "--n", "3", "--coef", "2", "--denom", "2", "--f2-max", "8"])
            .env("TORIC_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["falsifications"], serde_json::json!([]));
    let first = &v["realized"][0];
    assert!(first[0].is_u64() && first[1].is_u64() && first[2].is_string());

    assert_eq!(run("zero").status.code(), Some(1));
}
