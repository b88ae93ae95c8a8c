use std::fs;
use std::path::{Path, PathBuf};

use assert_cmd::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn conf(name: &str) -> PathBuf {
    root().join("configs").join(format!("{name}.conf"))
}

fn semidual() -> Command {
    let mut c = Command::cargo_bin("semidual").unwrap();
    c.env_remove("SEMIDUAL_BUDGET");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = semidual().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = run(&["check", path(&conf("ex1_min_linear"))]);
    assert_eq!(code, 0);
    assert!(out.contains("both   yes (universal)"), "{out}");
    let (code, out, _) = run(&["check", path(&conf("ex1_min_one"))]);
    assert_eq!(code, 1);
    assert!(out.contains("pair (1,1)"), "{out}");
}

#[test]
fn malformed_config_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("semidual-bad-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.conf");
    fs::write(&bad, "[semigroup]\nfamily = \"maxx\"\ncarrier = \"nat\"\n").unwrap();
    let (code, _, err) = run(&["check", path(&bad)]);
    assert_eq!(code, 3);
    assert!(err.contains("bad.conf:2:11: [unknown-family]"), "{err}");
    let (code, _, _) = run(&["check", path(&dir.join("missing.conf"))]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 3);
    let (code, _, err) = run(&["check", path(&conf("ex1_min_one")), "--epsilons", "zero"]);
    assert_eq!(code, 3);
    assert!(err.contains("command line"), "{err}");
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn quotient_convolve_action_cancellative() {
    let (code, out, _) = run(&["quotient", path(&conf("ex3_product")), "--right", "(2,2)", "(1,2)"]);
    assert_eq!((code, out.trim()), (0, "{1}×N"));
    let (_, out, _) = run(&["quotient", path(&conf("ex1_min_one")), "--left", "3", "5"]);
    assert_eq!(out.trim(), "{3}");
    let (_, out, _) = run(&["convolve", path(&conf("ex1_max_one")), "d(1)+2*d(2)", "d(3)"]);
    assert_eq!(out.trim(), "3*d(3)");
    let (_, out, _) = run(&["action", path(&conf("ex1_min_one")), "--right", "e(2)", "d(5)"]);
    assert_eq!(out.trim(), "1_{2}");
    let (code, out, _) = run(&["cancellative", path(&conf("ex1_max_one"))]);
    assert_eq!((code, out.trim()), (0, "yes (universal)"));
    let (code, _, _) = run(&["cancellative", path(&conf("ex1_min_one"))]);
    assert_eq!(code, 1);
}

#[test]
fn examples_suite_and_injected_failure() {
    let (code, out, _) = run(&["examples"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("13/13 passed\n"), "{out}");
    let (code, out, _) = run(&["examples", "--inject-failure", "ex1ii/constant"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL  ex1ii/constant"), "{out}");
    let (code, out, _) = run(&["examples", "--json"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["passed"], j["total"]);
}

#[test]
fn flags_and_environment_reach_the_report() {
    let (_, out, _) = run(&["check", path(&conf("plus_exp")), "--json", "-", "--epsilons", "0.5", "--float"]);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["check"]["epsilons"], serde_json::json!(["0.5"]));
    assert_eq!(j["check"]["arithmetic"], "float");
    let out = semidual()
        .env("SEMIDUAL_BUDGET", "4")
        .args(["check", path(&conf("ex1_max_one")), "--json", "-"])
        .output()
        .unwrap();
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["check"]["budget"], 4);
    let (_, out, _) = run(&["check", path(&conf("ex1_max_one")), "--json", "-", "--timings"]);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(j["timings"]["total_seconds"].is_string());
}

fn golden_configs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(root().join("configs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "conf"))
        .collect();
    v.sort();
    v
}

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for cfg in golden_configs() {
        let (_, first, _) = run(&["check", path(&cfg), "--json", "-"]);
        let (_, second, _) = run(&["check", path(&cfg), "--json", "-"]);
        assert_eq!(first, second, "{} is not deterministic", cfg.display());
        let file = golden.join(cfg.file_stem().unwrap()).with_extension("json");
        if update {
            fs::write(&file, &first).unwrap();
        } else {
            let expected = fs::read_to_string(&file).unwrap_or_else(|_| panic!("missing {}", file.display()));
            assert_eq!(first, expected, "{} differs from its golden report", cfg.display());
        }
    }
}
