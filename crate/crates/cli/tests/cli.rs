use std::process::{Command, Output};

use ut2dos::modular::TableDoc;
use ut2dos::{verify_witness, Mat64};
use ut2dos_cli::{DecideReport, GReport};

fn ut2dos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ut2dos"))
        .args(args)
        .env_remove("UT2DOS_MAX_MODULUS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["decide", "4", "2", "4"], 1),
        (&["decide", "1", "7", "3", "--witness"], 0),
        (&["decide", "x", "0", "1"], 2),
        (&["decide", "2", "0", "1"], 1),
        (&["decide", "-12", "-8", "4"], 0),
        (&["decide", "99999999999999999999", "0", "1"], 2),
        (&["g", "4", "12"], 0),
        (&["g", "6", "1"], 1),
        (&["g", "1", "1", "--brute", "8"], 0),
        (&["modtable", "4"], 0),
        (&["modtable", "128"], 2),
        (&["verify", "--a", "1,0,2", "--b", "0,-7,1", "--t", "1,7,3"], 0),
        (&["verify", "--a", "0,0,0", "--b", "0,0,0", "--t", "0,0,0"], 0),
        (&["verify", "--a", "1,0,2", "--b", "0,-7,1", "--t", "1,7,4"], 1),
        (&["verify", "--a", "1,0", "--b", "0,-7,1", "--t", "1,7,4"], 2),
        (&["selfcheck", "--bound", "0"], 0),
        (&["selfcheck", "--bound", "3", "--inject-fault"], 3),
        (&["frobnicate"], 2),
    ];
    for (args, expected) in cases {
        let out = ut2dos(args);
        assert_eq!(code(&out), *expected, "{args:?}: {}{}", stdout(&out), stderr(&out));
    }
}

#[test]
fn decide_json_shape() {
    let out = ut2dos(&["decide", "1", "7", "3", "--witness", "--json"]);
    let report: DecideReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.representable);
    assert_eq!(report.g, Some(1));
    let w = report.witness.clone().unwrap();
    assert!(verify_witness(&w.a, &w.b, &Mat64::new(1, 7, 3)).unwrap());

    let raw: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(raw["witness"]["A"].as_array().unwrap().len(), 3);
    assert_eq!(raw["witness"]["B"].as_array().unwrap().len(), 3);

    let again = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<DecideReport>(&again).unwrap(), report);

    let out = ut2dos(&["decide", "4", "2", "4", "--json"]);
    let raw: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(raw["representable"], false);
    assert_eq!(raw["obstruction"], "CornerMod4");
    assert!(raw.get("witness").is_none());
}

#[test]
fn g_with_brute_reports_match() {
    let out = ut2dos(&["g", "1", "1", "--brute", "8"]);
    assert_eq!(stdout(&out), "2\nbrute 2 MATCH\n");
    let out = ut2dos(&["g", "-4", "-4", "--brute", "8", "--json"]);
    let report: GReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((report.g, report.brute, report.matches), (4, Some(4), Some(true)));
}

#[test]
fn modtable_outputs() {
    let out = ut2dos(&["modtable", "4"]);
    let text = stdout(&out);
    assert!(text.starts_with("(0,0,0) (0,0,1) (0,0,3) "));
    assert_eq!(text.split_whitespace().count(), 32);

    let out = ut2dos(&["modtable", "16", "--diag-multiple", "4"]);
    assert_eq!(stdout(&out).split_whitespace().count(), 208);
    assert!(stderr(&out).contains("48 non-representable"));

    let out = ut2dos(&["modtable", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "0,0,0\n");

    let out = ut2dos(&["modtable", "16", "--diag-multiple", "4", "--complement", "--format", "json"]);
    let doc: TableDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.modulus, 16);
    assert_eq!(doc.not_representable.unwrap().len(), 48);
}

#[test]
fn modtable_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m4.json");
    let out = ut2dos(&["modtable", "4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let doc: TableDoc = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.representable.unwrap().len(), 32);
}

#[test]
fn modulus_cap_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_ut2dos"))
        .args(["modtable", "8"])
        .env("UT2DOS_MAX_MODULUS", "4")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn selfcheck_reports() {
    let out = ut2dos(&["selfcheck", "--bound", "12", "--workers", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("15625 cases"), "{text}");
    assert!(text.trim_end().ends_with("PASS"));

    let out = ut2dos(&["selfcheck", "--bound", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1 cases"));
    assert!(stderr(&out).contains("warning: branches not exercised"));

    let out = ut2dos(&["selfcheck", "--bound", "16"]);
    assert_eq!(code(&out), 0);
    assert!(!stderr(&out).contains("warning"), "{}", stderr(&out));

    let out = ut2dos(&["selfcheck", "--bound", "3", "--inject-fault"]);
    assert!(stderr(&out).contains("counterexample: oracle check failed at [[0, 0], [0, 0]]"));
}
