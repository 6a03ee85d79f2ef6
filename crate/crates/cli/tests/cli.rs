use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_core-fibres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn core_subcommand() {
    assert_eq!(stdout(&["core", "--partition", "5,4,3,1", "--t", "6"]), "1\n");
    assert_eq!(stdout(&["core", "--partition", "-", "--t", "3"]), "-\n");
    assert_eq!(stdout(&["core", "--partition", "5,4,3,1", "--t", "2"]), "1\n");
    assert_eq!(code(&["core", "--partition", "1,3", "--t", "2"]), 2);
    assert_eq!(code(&["core", "--partition", "x", "--t", "2"]), 2);
    assert_eq!(code(&["core", "--t", "2"]), 2);
}

#[test]
fn count_subcommand() {
    let base = ["count", "--s", "2", "--t", "3", "--sigma", "-", "--tau", "-"];
    assert_eq!(stdout(&[&base[..], &["--k", "6"]].concat()), "7\n");
    assert_eq!(stdout(&[&base[..], &["--k", "0"]].concat()), "1\n");
    for method in ["brute", "symbolic", "auto"] {
        assert_eq!(stdout(&[&base[..], &["--k", "9", "--method", method]].concat()), "12\n");
    }
    let four_six = [
        "count", "--s", "4", "--t", "6", "--sigma", "3,1,1", "--tau", "3,2", "--k", "12",
    ];
    assert_eq!(stdout(&four_six), "35\n");
    assert_eq!(code(&[&four_six[..], &["--method", "brute", "--cap", "100"]].concat()), 3);
    // Not a 3-core.
    assert_eq!(code(&["count", "--s", "2", "--t", "3", "--sigma", "-", "--tau", "3", "--k", "1"]), 2);
}

#[test]
fn incompatible_pairs() {
    let out = run(&["count", "--s", "2", "--t", "4", "--sigma", "-", "--tau", "1", "--k", "5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("differ"));
    let json = stdout(&["--json", "quasipoly", "--s", "2", "--t", "4", "--sigma", "-", "--tau", "1"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["reason"], "d-core mismatch");
}

#[test]
fn quasipoly_subcommand() {
    let json = stdout(&["quasipoly", "--s", "2", "--t", "3", "--sigma", "-", "--tau", "-", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["period"], 6);
    let coeffs: Vec<_> = v["branches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["coeffs"].clone())
        .collect();
    assert_eq!(coeffs[0], serde_json::json!(["1", "3", "3"]));
    assert_eq!(coeffs[5], serde_json::json!(["5", "8", "3"]));

    let text = stdout(&["quasipoly", "--divisor", "--a", "6", "--b", "2", "--sigma", "4,3,2,1"]);
    assert!(text.contains("(1/4)k^4 + (7/2)k^3 + (65/4)k^2 + 28k + 15"), "{text}");
    assert!(text.contains("(1/4)k^4 + 4k^3 + (83/4)k^2 + 38k + 21"), "{text}");
    assert_eq!(code(&["quasipoly", "--divisor", "--a", "6", "--sigma", "-"]), 2);
}

#[test]
fn volume_verify_enumerate() {
    assert_eq!(stdout(&["volume", "--s", "2", "--t", "3"]), "3\n");
    assert_eq!(stdout(&["volume", "--rows", "2,2,2", "--cols", "3,3"]), "3\n");
    assert_eq!(stdout(&["enumerate", "--t", "2", "--k", "2"]).lines().count(), 3);
    assert_eq!(
        stdout(&["verify", "--s", "2", "--t", "3", "--sigma", "-", "--tau", "-", "--max-k", "30"]),
        "OK [0,30]\n"
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "quasipoly", "--s", "2", "--t", "5", "--sigma", "1", "--tau", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
