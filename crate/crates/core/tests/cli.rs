use std::process::{Command, Output};

use multiarr::render::{derivation_from_json, OutputRecord, Provenance};

fn multiarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiarr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn basis_prints_a_record() {
    let o = multiarr(&["basis", "b2", "3,5,2,2"]);
    assert!(o.status.success());
    let rec = OutputRecord::from_json(&stdout(&o)).unwrap();
    assert_eq!(rec.exponents, (5, 7));
    assert_eq!(
        rec.provenance,
        Provenance::ClosedForm {
            case: "main".into()
        }
    );
    assert_eq!(rec.multiplicity, vec![3, 5, 2, 2]);
}

#[test]
fn exit_codes() {
    assert_eq!(multiarr(&["basis", "b2", "1,1,0,1"]).status.code(), Some(3));
    assert_eq!(multiarr(&["basis", "b2", "1,1"]).status.code(), Some(2));
    assert_eq!(multiarr(&["basis"]).status.code(), Some(2));
    assert_eq!(
        multiarr(&["emit", "--input", "/nonexistent"]).status.code(),
        Some(2)
    );
    assert_eq!(
        multiarr(&["verify", "--max-sum", "0"]).status.code(),
        Some(0)
    );
    assert_eq!(multiarr(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_file_and_emit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.json");
    let p = path.to_str().unwrap();
    let o = multiarr(&["basis", "b2", "2,2,1,1", "--out", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let rec = OutputRecord::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();

    let o = multiarr(&["emit", "--input", p, "--format", "latex"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("\\theta_1 = \\left("));

    let o = multiarr(&["emit", "--input", p]);
    assert_eq!(OutputRecord::from_json(&stdout(&o)).unwrap(), rec);
}

#[test]
fn theta_json() {
    let o = multiarr(&["theta", "1,1,1,1"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"degree":1,"f":[["1",1,0]],"g":[["1",0,1]]}"#
    );
    let t = derivation_from_json(&stdout(&o)).unwrap();
    assert_eq!(t, multiarr::Derivation::euler());
}

#[test]
fn verify_reports_counts() {
    let o = multiarr(&["verify", "--max-sum", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("multiplicities: 70"));
    assert!(s.contains("all checks passed"));
    let o = multiarr(&["verify", "--max-sum", "4", "--verbose"]);
    assert!(stdout(&o).contains("(1,1,1,1) oracle exponent sum=ok"));
}
