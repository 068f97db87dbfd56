use std::path::Path;

use lightning_flash::cli::{cli_dispatch, Outcome};

const M1_DOC: &str = "field 2
deg e1 1
deg e2 3
algebra B
basis x0 0, x1 2, y0 3, y1 5
e1 x1 = y0
e2 x0 = y0
e2 x1 = y1
";

fn run(args: &[&str]) -> Outcome {
    cli_dispatch(std::iter::once("lightning").chain(args.iter().copied()))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_m1_document() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m1.txt");
    std::fs::write(&file, M1_DOC).unwrap();
    let out = run(&["decompose", path(&file)]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "L(1,0,1)@0 ×1\n");

    let out = run(&["decompose", path(&file), "--certify", "--oracle"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("certificate: verified"));
    assert!(out.stdout.contains("oracle: agrees"));
}

#[test]
fn filtration_on_stage_four() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("stage.txt");
    let built = run(&["build", "M(0) + M(1) + M(2) + M(3) + M(4)", "--output", path(&file)]);
    assert_eq!(built.code, 0, "{}", built.stderr);
    assert_eq!(run(&["filtration", path(&file), "--j", "1", "--degree", "0"]).stdout, "dim 4\n");
    assert_eq!(run(&["filtration", path(&file), "--j", "5", "--degree", "0"]).stdout, "dim 0\n");
}

#[test]
fn build_options_and_determinism() {
    let a = run(&["--seed", "7", "build", "L(2,1,0)@1 + simple@0", "--randomize", "--shift", "-3"]);
    let b = run(&["--seed", "7", "build", "L(2,1,0)@1 + simple@0", "--randomize", "--shift", "-3"]);
    assert_eq!(a, b);
    assert!(a.stdout.contains("basis vm3_0 -3"));
    let c = run(&["--seed", "8", "build", "L(2,1,0)@1 + simple@0", "--randomize", "--shift", "-3"]);
    assert_eq!(c.code, 0);

    let t = run(&["build", "inf(0)@trunc=21"]);
    assert!(t.stdout.contains("y9 21"));
    let f = run(&["build", "free@0 + M(1)", "--algebra", "a", "--field", "5", "--degs", "1,3"]);
    assert!(f.stdout.contains("algebra A"));
    // sigma = (-1)^(1*3) = -1 = 4 in F_5
    assert!(f.stdout.contains("e2 e1g_0 = 4*e1e2g_0"), "{}", f.stdout);
}

#[test]
fn margolis_split_free_and_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = dir.path().join("m1.txt");
    std::fs::write(&m1, M1_DOC).unwrap();
    assert_eq!(run(&["margolis", path(&m1), "--op", "e1"]).stdout, "H(M; e1) = {0:1, 5:1}\n");
    assert_eq!(run(&["margolis", path(&m1), "--op", "e2"]).stdout, "H(M; e2) = {}\n");

    let dot = run(&["diagram", path(&m1), "--format", "dot"]).stdout;
    assert_eq!(dot.matches("->").count(), 3);

    let mixed = dir.path().join("mixed.txt");
    assert_eq!(run(&["build", "free@0 + free@2 + M(1)", "--algebra", "a", "--randomize", "-o", path(&mixed)]).code, 0);
    let out = run(&["--report", "json", "split-free", path(&mixed)]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["free_ranks"], serde_json::json!({"0": 1, "2": 1}));
    assert_eq!(v["complement_e1e2_zero"], serde_json::json!(true));
    // split-free needs algebra A
    assert_eq!(run(&["split-free", path(&m1)]).code, 1);
}

#[test]
fn paper_check_json_report() {
    let out = run(&["--report", "json", "paper-check", "--N", "8", "--jmax", "10"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["items"][2]["data"]["dims"], serde_json::json!([9, 8, 7, 6, 5, 4, 3, 2, 1, 0, 0]));
    for item in v["items"].as_array().unwrap() {
        for key in ["id", "quote", "data", "pass"] {
            assert!(item.get(key).is_some(), "missing {key}");
        }
    }
    assert!(v.get("params").is_some());
}

#[test]
fn failures_leave_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.txt");
    assert_eq!(run(&["build", "L(1,7,0)", "-o", path(&target)]).code, 2);
    assert_eq!(run(&["build", "free@0", "-o", path(&target)]).code, 2);
    assert!(!target.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn malformed_documents_exit_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "field 2\ndeg e1 1\ndeg e2 3\nbasis x0 0, x1 2\ne1 x0 = x1\n").unwrap();
    for cmd in [&["decompose"][..], &["filtration", "--j", "1"], &["diagram"]] {
        let mut args: Vec<&str> = cmd[..1].to_vec();
        args.push(path(&file));
        args.extend(&cmd[1..]);
        let out = run(&args);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("line 5:"), "{}", out.stderr);
    }
}
