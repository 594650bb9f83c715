//! Golden-file and exit-code tests for the `cellkernel` binary.
//!
//! Set `CELLKERNEL_BLESS=1` to rewrite the golden files from current output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cellkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellkernel"))
        .args(args)
        .env_remove("CELLKERNEL_MAX_D")
        .output()
        .expect("binary runs")
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("CELLKERNEL_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from golden output:\n{actual}");
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const GRID: [(&str, &str, &str); 12] = [
    ("3", "1", "0"),
    ("4", "1", "0"),
    ("4", "2", "0"),
    ("5", "1", "0"),
    ("5", "2", "0"),
    ("5", "3", "0"),
    ("4", "1", "half"),
    ("5", "1", "half"),
    ("5", "2", "half"),
    ("6", "1", "half"),
    ("6", "2", "half"),
    ("6", "3", "half"),
];

#[test]
fn kernel_golden_over_default_grid() {
    let mut all = String::new();
    for (n, r, eps) in GRID {
        let o = cellkernel(&["kernel", "--n", n, "--r", r, "--eps", eps, "--ring", "Z"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        all.push_str(&stdout(&o));
    }
    golden("kernel_grid.jsonl", &all);
}

#[test]
fn kernel_pretty_golden() {
    let o = cellkernel(&["kernel", "--n", "3", "--r", "1", "--eps", "0", "--ring", "Z", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    golden("kernel_n3_r1.txt", &stdout(&o));
}

#[test]
fn verify_all_golden_and_deterministic() {
    let a = cellkernel(&["verify", "--all", "--max-d", "5", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = cellkernel(&["verify", "--all", "--max-d", "5", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    golden("verify_all.jsonl", &stdout(&a));
}

#[test]
fn verify_rationals_all_pass() {
    let o = cellkernel(&["verify", "--all", "--max-d", "5", "--ring", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true, "{line}");
    }
}

#[test]
fn verify_pretty_golden() {
    let o = cellkernel(&[
        "verify",
        "--check",
        "kernel_cell_ideal",
        "--check",
        "h_module_isos",
        "--max-d",
        "4",
        "--format",
        "pretty",
    ]);
    assert_eq!(o.status.code(), Some(0));
    golden("verify_small.txt", &stdout(&o));
}

#[test]
fn small_outputs_golden() {
    let o = cellkernel(&[
        "diagram",
        "mul",
        "--left",
        "1|2,3,3'|4,1'|5,5'|2'|4'",
        "--right",
        "1,3,3',4'|2,1'|5,2',5'|4",
        "--delta",
        "7",
    ]);
    assert_eq!(stdout(&o), "7 * 1|2,3,4,3',4'|5,2',5'|1'\n");
    let o = cellkernel(&["decompose", "--n", "3", "--r", "2", "--eps", "half"]);
    golden("decompose_n3_r2_half.txt", &stdout(&o));
    let o = cellkernel(&["murphy", "--d", "3", "--basis", "x", "--format", "csv"]);
    golden("murphy_d3_x.csv", &stdout(&o));
    let o = cellkernel(&["commutant", "--n", "2", "--r", "2", "--ring", "Q", "--format", "pretty"]);
    golden("commutant_n2_r2.txt", &stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(cellkernel(&["verify"]).status.code(), Some(2));
    assert_eq!(cellkernel(&["verify", "--check", "no_such_check"]).status.code(), Some(2));
    assert_eq!(cellkernel(&["kernel", "--n", "3", "--r", "1", "--ring", "F4"]).status.code(), Some(2));
    assert_eq!(
        cellkernel(&["diagram", "mul", "--left", "1|1'", "--right", "1,2'|2,1'", "--delta", "2"]).status.code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_cellkernel"))
        .args(["murphy", "--d", "5"])
        .env("CELLKERNEL_MAX_D", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("size guard"));
}

#[test]
fn json_round_trips() {
    use cellkernel::ring::Integers;
    use cellkernel::symgroup::GroupAlgElem;
    use cellkernel::theorems::CheckReport;

    let o = cellkernel(&["kernel", "--n", "4", "--r", "1", "--ring", "Z"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["rank"], 14);
    for b in v["basis"].as_array().unwrap() {
        let e = GroupAlgElem::from_json(&Integers, b).unwrap();
        assert_eq!(&e.to_json(), b);
    }
    let o = cellkernel(&["verify", "--check", "when_zero", "--max-d", "3"]);
    for line in stdout(&o).lines() {
        let rep: CheckReport = serde_json::from_str(line).unwrap();
        assert_eq!(rep.to_json_line(), line);
    }
}
