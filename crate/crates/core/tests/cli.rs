use std::process::{Command, Output};

fn ncq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncq"))
        .args(args)
        .env_remove("NCQ_ALGEBRA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn derive_second_order() {
    let o = ncq(&["derive", "x^3", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.trim().split(" + ").count(), 6);
    assert!(text.contains("h1*h2*x"));
}

#[test]
fn json_report_schema() {
    let o = ncq(&["--json", "derive", "x^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"], "quaternion");
    assert_eq!(v["canonical"], "x*h1 + h1*x");
    let coords = v["coordinates"].as_array().unwrap();
    assert_eq!(coords.len(), 2);
    assert!(coords[0]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.as_str().unwrap().contains('/')));
    assert!(v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn conjugation_jacobian() {
    let o = ncq(&["jacobian", "conj(x)", "--at", "1+2i-j"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[ 1  0  0  0]"));
    assert!(text.contains("[ 0  0  0 -1]"));
    assert!(text.contains("[-1/2    0    0    0]"));
    assert!(!text.contains("fail"));
}

#[test]
fn solvable_and_unsolvable_odes() {
    let o = ncq(&["solve-ode", "--rhs", "h*x^2 + x*h*x + x^2*h"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "y = x^3");

    let o = ncq(&["solve-ode", "--rhs", "3*h*x^2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("order 2"));
}

#[test]
fn cauchy_riemann_exit_codes() {
    let ok = ncq(&["--algebra", "complex", "check-cr", "--matrix", "1,2;-2,1"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = ncq(&["--algebra", "complex", "check-cr", "--matrix", "1,0;0,-1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("(2, 0)"));
    let wrong_dim = ncq(&["check-cr", "--matrix", "1,0,0;0,1,0;0,0,1"]);
    assert_eq!(wrong_dim.status.code(), Some(2));
}

#[test]
fn error_exit_codes() {
    let o = ncq(&["derive", "x +* 2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 4"));

    let o = ncq(&["--algebra", "complex", "jacobian", "conj(x)", "--at", "1"]);
    assert_eq!(o.status.code(), Some(4));

    let o = ncq(&["--algebra", "efab:0/-1", "derive", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn algebra_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ncq"))
        .args(["--json", "derive", "x"])
        .env("NCQ_ALGEBRA", "complex")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"], "complex");
}

#[test]
fn exponent_and_oracle() {
    let o = ncq(&["exp", "--at", "i"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0.5403023058"), "{text}");
    assert!(text.contains("0.8414709848"), "{text}");

    let o = ncq(&["oracle", "x^-1", "--at", "i", "--dir", "j"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn table_verification_passes() {
    let o = ncq(&["verify-table", "--points", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("pass").count(), 7);
}

#[test]
fn operator_norm() {
    let o = ncq(&["norm", "--coord-matrix", "1,1,0,0;0,1,0,0;0,0,1,0;0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1.618"), "{}", stdout(&o));
}

#[test]
fn taylor_reproduces_polynomials() {
    let o = ncq(&["taylor", "x^3 + i*x*j", "--at", "1+k", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reproduces input: pass"));

    let o = ncq(&["taylor", "x^3", "--at", "i", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("truncated below degree 3"));
}
