//! Byte-exact comparison of the `qcl` binary against checked-in outputs.

use std::path::Path;
use std::process::Command;

fn check(file: &str, args: &[&str], code: i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcl")).args(args).output().expect("run qcl");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), want, "{file}");
    assert_eq!(out.status.code(), Some(code), "{file}");
}

#[test]
fn normal_form() {
    check("nf_psid_psi.txt", &["--n", "1", "--k", "1", "nf", "psid(1)*psi(1)"], 0);
    check("nf_psid_psi.json", &["--n", "1", "--k", "1", "--format", "json", "nf", "psid(1)*psi(1)"], 0);
}

#[test]
fn representation_matrices() {
    check("rep_w.txt", &["--n", "1", "--k", "1", "rep", "--p", "0", "w(1)"], 0);
    check("rep_w.json", &["--n", "1", "--k", "1", "--format", "json", "rep", "--p", "0", "w(1)"], 0);
    check("rep_f1.txt", &["--n", "1", "--k", "1", "rep", "--p", "0", "f(1)"], 0);
    check("rep_psi2_p01.txt", &["--n", "2", "--k", "1", "rep", "--p", "0,1", "psi(2)"], 0);
}

#[test]
fn quantum_group_check() {
    check("qgroup_A_check.txt", &["--n", "2", "--k", "1", "qgroup", "A", "--check"], 0);
    check("qgroup_A_check.json", &["--n", "2", "--k", "1", "--format", "json", "qgroup", "A", "--check"], 0);
}
