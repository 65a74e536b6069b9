//! End-to-end tests of the `prehom` binary: exit-code contract (0 positive,
//! 1 negative-but-valid, 2 error), output determinism, and JSON validity.

use std::path::PathBuf;
use std::process::{Command, Output};

fn prehom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prehom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("prehom-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn table_list_has_42_rows_and_is_deterministic() {
    let out = prehom(&["table", "list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 42);
    assert!(text.contains("K[x1,x2]/(x1*x2, x1^3-x2^3)"));

    let again = prehom(&["table", "list"]);
    assert_eq!(out.stdout, again.stdout, "byte-identical reruns");
}

#[test]
fn table_show_and_bounds() {
    let out = prehom(&["table", "show", "20"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("K[x1,x2]/(x1*x2, x1^3-x2^3)"));
    assert!(text.contains("dim: 6"));

    let out = prehom(&["table", "show", "43"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn table_show_json_is_valid() {
    let out = prehom(&["table", "show", "18", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 6);
    assert_eq!(v["chain"], true);
}

#[test]
fn algebra_info_chain() {
    let out = prehom(&["algebra", "info", "K[x1]/(x1^3)"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dim: 3"));
    assert!(text.contains("geometrically local: true"));
    assert!(text.contains("chain: true"));
    assert!(text.contains("orbit count: 4"));
}

#[test]
fn algebra_info_infinite_dimensional_is_an_error() {
    let out = prehom(&["algebra", "info", "K[x1]"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("infinite-dimensional"));
}

#[test]
fn algebra_info_split_quotient() {
    let out = prehom(&["algebra", "info", "K[x1]/(x1^2-1)"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("local summands: 2"));
    assert!(text.contains("geometrically local: false"));
}

#[test]
fn algebra_info_from_file() {
    let path = temp_file("presentation.txt", "K[x1,x2]/(x1^2, x2^2, x1*x2)\n");
    let out = prehom(&["algebra", "info", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dim: 3"));
    std::fs::remove_file(path).ok();
}

#[test]
fn rep_matrix_eval() {
    let out = prehom(&["rep", "matrix", "2", "--eval", "l1=2,a1=3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("[ 2  0 ]"));
    assert!(text.contains("[ 6  2 ]"));

    // zero torus value is an input error
    let out = prehom(&["rep", "matrix", "2", "--eval", "l1=0,a1=3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn rep_matrix_trivial_entry() {
    let out = prehom(&["rep", "matrix", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("l1"));
}

#[test]
fn rep_matrix_latex_with_paper_basis() {
    let out = prehom(&[
        "rep",
        "matrix",
        "20",
        "--basis",
        "1,x1,x2,x1^2,x2^2,x1^3",
        "--format",
        "latex",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\\begin{pmatrix}"));
    assert!(text.contains("\\lambda_{1} \\alpha_{1}"));
    assert!(text.contains("\\frac{1}{2}"));

    // invalid basis: x1*x2 vanishes in the quotient
    let out = prehom(&["rep", "matrix", "20", "--basis", "1,x1,x2,x1^2,x2^2,x1*x2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn rep_matrix_json_schema() {
    let out = prehom(&["rep", "matrix", "10", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 5);
    assert!(v["torus_params"].is_array());
    assert!(v["additive_params"].is_array());
    assert_eq!(v["entries"].as_array().unwrap().len(), 5);
    assert!(v["layout"].is_array());
}

#[test]
fn compare_exit_codes() {
    let out = prehom(&["compare", "3", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("hilbert"));

    // a frozen inconclusive pair
    let out = prehom(&["compare", "20", "21"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("inconclusive"));

    let out = prehom(&["compare", "3", "nonsense["]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reconstruct_from_file() {
    // lie basis of the regular representation of K[x]/(x^2)
    let input = serde_json::json!({
        "n": 2,
        "lie_basis": [
            [["1", "0"], ["0", "1"]],
            [["0", "0"], ["1", "0"]],
        ],
    });
    let path = temp_file("rep2.json", &input.to_string());
    let out = prehom(&[
        "reconstruct",
        "--matrices",
        path.to_str().unwrap(),
        "--vector",
        "1,0",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("reconstructed algebra of dim 2"));
    std::fs::remove_file(path).ok();
}

#[test]
fn reconstruct_without_vector_is_deterministic() {
    let input = serde_json::json!({
        "n": 2,
        "lie_basis": [
            [["1", "0"], ["0", "1"]],
            [["0", "0"], ["1", "0"]],
        ],
    });
    let path = temp_file("rep2-seeded.json", &input.to_string());
    let a = prehom(&["reconstruct", "--matrices", path.to_str().unwrap()]);
    let b = prehom(&["reconstruct", "--matrices", path.to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = prehom(&[
        "reconstruct",
        "--matrices",
        path.to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(code(&c), 0);
    std::fs::remove_file(path).ok();
}

#[test]
fn reconstruct_negative_cases() {
    // the block example: commutant dimension exceeds the module dimension
    let mut lie = vec![serde_json::json!([["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]])];
    for (i, j) in [(0usize, 2usize), (0, 3), (1, 2), (1, 3)] {
        let mut m = vec![vec!["0".to_string(); 4]; 4];
        m[i][j] = "1".to_string();
        lie.push(serde_json::to_value(&m).unwrap());
    }
    let input = serde_json::json!({ "n": 4, "lie_basis": lie });
    let path = temp_file("polex2.json", &input.to_string());
    let out = prehom(&[
        "reconstruct",
        "--matrices",
        path.to_str().unwrap(),
        "--vector",
        "1,2,3,4",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("dimension mismatch"));
    std::fs::remove_file(path).ok();

    // non-commuting input
    let input = serde_json::json!({
        "n": 2,
        "lie_basis": [
            [["1", "2"], ["3", "4"]],
            [["0", "1"], ["1", "1"]],
        ],
    });
    let path = temp_file("noncomm.json", &input.to_string());
    let out = prehom(&["reconstruct", "--matrices", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not commutative"));
    std::fs::remove_file(path).ok();

    // unreadable file is an input error
    let out = prehom(&["reconstruct", "--matrices", "/no/such/file.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn action_check_commands() {
    let out = prehom(&["action", "check", "hirzebruch", "--param", "d=1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("axioms ok"));
    assert!(text.contains("linear=false"));

    let out = prehom(&["action", "check", "translations", "--param", "n=3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("fixed point: no"));

    // asking for a fixed point when there is none is a negative result
    let out = prehom(&[
        "action",
        "check",
        "translations",
        "--param",
        "n=2",
        "--expect-fixed-point",
    ]);
    assert_eq!(code(&out), 1);

    let out = prehom(&["action", "check", "bogus"]);
    assert_eq!(code(&out), 2);

    let out = prehom(&[
        "action", "check", "polex", "--param", "n=2", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["axioms_ok"], true);
    assert_eq!(v["orbit_rank"], 3);
}

#[test]
fn output_flag_writes_file() {
    let mut path = std::env::temp_dir();
    path.push(format!("prehom-test-{}-out.txt", std::process::id()));
    let out = prehom(&[
        "table",
        "show",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("K[x1]/(x1^2)"));
    std::fs::remove_file(path).ok();
}
