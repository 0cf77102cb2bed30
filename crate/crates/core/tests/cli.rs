use edgegreen::cli::{execute, exit_code, parse_rational, parse_sector, OutputRecord, Status, EXIT_MISMATCH, EXIT_USAGE};
use edgegreen::exact_algebra::{parse_coefficient, q};
use proptest::prelude::*;
use std::process::Command;

fn run(args: &str) -> (i32, String) {
    let r = execute(std::iter::once("edgegreen").chain(args.split_whitespace()));
    (r.code, r.stdout)
}

fn record(args: &str) -> OutputRecord {
    let (code, out) = run(&format!("{args} --format json"));
    assert!(code == 0, "{args}: exit {code}");
    serde_json::from_str(&out).unwrap()
}

fn row<'a>(rec: &'a OutputRecord, pred: impl Fn(&[String]) -> bool) -> &'a [String] {
    rec.rows.iter().find(|r| pred(r)).map(|r| r.as_slice()).expect("row present")
}

fn col(rec: &OutputRecord, r: &[String], name: &str) -> String {
    r[rec.column(name).unwrap()].clone()
}

const COMMANDS: [&str; 11] = [
    "expand --target h --order 4",
    "expand --target molecule --order 1",
    "symbols --level 1 --sector 0..2",
    "residues --green g02",
    "theorem1",
    "verify --case noninteracting --l 1 --Z 3",
    "verify --case cusp",
    "verify --case molecule",
    "verify --case poles --gamma 7/5",
    "verify --case functionals --l 0 --Z 1",
    "expand --target vee --order 2 --Z 2",
];

#[test]
fn expand_examples() {
    let rec = record("expand --target h --order 4");
    assert_eq!(rec.cells("coefficient"), ["-1", "0", "8/3", "0", "32/45"]);
    assert_eq!(rec.status, Some(Status::Pass));
    let rec = record("expand --target vee --order 1");
    assert_eq!(rec.cells("coefficient"), ["1/2*s", "-2*s*Z"]);
    assert_eq!(record("expand --target h --order 0").cells("coefficient"), ["-1"]);
    let rec = record("expand --target ven --order 1 --Z 2");
    assert_eq!(rec.cells("coefficient"), ["-2", "-1"]);
    let rec = record("expand --target molecule --order 0 --za 2 --zb 1");
    assert_eq!(rec.cells("coefficient"), ["-2"]);
    assert_eq!(rec.status, None);
}

#[test]
fn symbols_examples() {
    let rec = record("symbols --level 0 --sector 0 --order 2");
    let r = row(&rec, |r| r[0] == "d^(0)_(2,0)");
    assert_eq!(col(&rec, r, "value"), "-2/((w-5)(w-4)(w-3)(w-2))");
    let rec = record("symbols --level 1 --sector 0");
    let r = row(&rec, |r| r[0] == "d^(1)_(1,0)");
    assert!(col(&rec, r, "value").starts_with("-10/"));
    let r = row(&rec, |r| r[0] == "d^(1)_(0,0)");
    assert_eq!(col(&rec, r, "poles"), "2 3^2 4");
    assert!(record("symbols --level 0 --sector 2..2").rows.is_empty());
    let l = record("symbols --level 2 --sector 0..=3").cells("l").into_iter().map(String::from).collect::<Vec<_>>();
    assert_eq!(l, ["0", "1", "2", "3"]);
}

#[test]
fn residues_examples() {
    let rec = record("residues --green g02");
    let r = row(&rec, |r| r[1] == "Res(d^(0)_(0,0), 2)" && r[2] == "0");
    assert_eq!(col(&rec, r, "computed"), "(-1)");
    assert!(rec.cells("diff").iter().all(|d| *d == "0"));
    let rec = record("residues --green ga --l-max 3");
    let want = ["(-1)", "(-1/3)", "(-1/5)", "(-1/7)"];
    for (l, w) in want.iter().enumerate() {
        let r = row(&rec, |r| r[1] == "Res(T^2 d^(0)_(0,0), -l)" && r[2] == l.to_string());
        assert_eq!(&col(&rec, r, "computed"), w);
    }
    let rec = record("residues --green g03 --l-max 0");
    assert!(!rec.rows.is_empty());
    assert!(rec.cells("l").iter().all(|l| *l == "0" || *l == "generic"));
    let rec = record("residues --green g22 --sector 1..=2");
    assert!(rec.cells("l").iter().all(|l| *l == "1" || *l == "2"));
    assert_eq!(rec.status, Some(Status::Pass));
}

#[test]
fn theorem1_examples() {
    let rec = record("theorem1 --edge en");
    let sector0: Vec<String> = rec
        .rows
        .iter()
        .filter(|r| r[1] == "symbolic" && r[2] == "0" && r[3] == "1")
        .map(|r| col(&rec, r, "derived"))
        .collect();
    assert_eq!(sector0, ["1", "t*Z1", "-2+1/3*t*Z2+1/3*t^2*Z1^2"]);
    assert_eq!(col(&rec, row(&rec, |r| r[4] == "Z1"), "derived"), "-Z");
    let r = row(&rec, |r| r[1] == "symbolic" && r[2] == "1" && r[4] == "r^0");
    assert_eq!(col(&rec, r, "derived"), "0");
    let rec = record("theorem1 --edge ee");
    assert_eq!(col(&rec, row(&rec, |r| r[4] == "Z1"), "derived"), "1/2*s");
    assert!(rec.cells("diff").iter().all(|d| *d == "0"));
    assert_eq!(rec.status, Some(Status::Pass));
}

#[test]
fn verify_examples() {
    let rec = record("verify --case noninteracting --l 0 --Z 2");
    assert_eq!(rec.cells("residual"), ["0", "0", "0"]);
    let rec = record("verify --case cusp");
    let get = |e: &str, l: &str| col(&rec, row(&rec, |r| r[0] == e && r[1] == l), "derived");
    assert_eq!((get("ee", "0"), get("en", "0"), get("ee", "1")), ("1/2".into(), "-Z".into(), "1/4".into()));
    let rec = record("verify --case poles");
    for r in rec.rows.iter().filter(|r| r[3] != "1") {
        assert_eq!(r[1], "0");
        assert!(r[2] == "3" || r[2] == "4");
        assert_eq!(r[4], "right");
    }
    let rec = record("verify --case molecule");
    assert_eq!(col(&rec, row(&rec, |r| r[0] == "Z2+tE"), "derived"), "-1");
    let rec = record("verify --case functionals");
    assert!(rec.rows.len() >= 10);
    assert_eq!(rec.numeric.as_ref().unwrap().precision, 12);
    assert!(rec.cells("rel_error").iter().all(|e| e.parse::<f64>().unwrap() <= 1e-8));
}

#[test]
fn default_output_is_deterministic() {
    for c in COMMANDS {
        let a = run(c);
        assert_eq!(a, run(c), "{c}");
        assert_eq!(a.0, 0);
        assert!(a.1.starts_with('#'));
    }
}

#[test]
fn json_output_validates_and_round_trips() {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../schemas/output.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for c in COMMANDS {
        let (_, out) = run(&format!("{c} --format json"));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(validator.is_valid(&v), "{c}");
        let rec: OutputRecord = serde_json::from_value(v).unwrap();
        assert_eq!(serde_json::to_string_pretty(&rec).unwrap() + "\n", out);
        for name in &rec.exact_columns {
            for cell in rec.cells(name) {
                if cell == "-" {
                    continue;
                }
                let x = parse_coefficient(cell).unwrap_or_else(|e| panic!("{c}: {cell}: {e}"));
                assert_eq!(x.render(), cell, "{c}");
            }
        }
    }
    let bad = serde_json::json!({"command": "expand", "parameters": {}, "columns": [], "rows": [[1]], "exact_columns": []});
    assert!(!validator.is_valid(&bad));
}

#[test]
fn csv_output_matches_table() {
    for c in COMMANDS {
        let rec = record(c);
        let (_, out) = run(&format!("{c} --format csv"));
        let mut rd = csv::Reader::from_reader(out.as_bytes());
        assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), rec.columns);
        let rows: Vec<Vec<String>> =
            rd.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
        assert_eq!(rows, rec.rows, "{c}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for a in [
        "",
        "expand --target foo",
        "expand --target h --order 99",
        "symbols --level 3",
        "symbols --level 0 --sector x",
        "verify --case poles --gamma 3/2",
        "verify --case poles --gamma 0.5",
        "verify --case noninteracting --l 3",
        "verify --case cusp --l 2",
        "verify --case functionals --tol -1",
        "residues --green g99",
        "expand --target h --za 2",
        "expand --target h --format xml",
        "verify --case nothing",
    ] {
        assert_eq!(run(a).0, EXIT_USAGE, "{a}");
    }
    assert_eq!(run("--help").0, 0);
    assert_eq!(run("verify --case poles --gamma 0.6").0, 0);
}

#[test]
fn failed_verification_maps_to_one() {
    let mut rec = record("verify --case cusp");
    assert_eq!(exit_code(&rec), 0);
    rec.status = Some(Status::Fail);
    assert_eq!(exit_code(&rec), EXIT_MISMATCH);
}

#[test]
fn binary_honours_order_cap() {
    let bin = env!("CARGO_BIN_EXE_edgegreen");
    let out = Command::new(bin).args(["expand", "--target", "h", "--order", "4"]).env("EDGEGREEN_MAX_ORDER", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("EDGEGREEN_MAX_ORDER"));
    let out = Command::new(bin).args(["expand", "--target", "h", "--order", "3"]).env("EDGEGREEN_MAX_ORDER", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["theorem1", "--edge", "ee", "--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("edge,form,l,n,power,derived,printed,diff"));
}

#[test]
fn rational_and_sector_arguments() {
    assert_eq!(parse_rational("0.6").unwrap(), q(3, 5));
    assert_eq!(parse_rational("-7/14").unwrap(), q(-1, 2));
    assert_eq!(parse_rational("3").unwrap(), q(3, 1));
    assert!(parse_rational("1/0").is_err() && parse_rational("x").is_err() && parse_rational(".").is_err());
    assert_eq!(parse_sector("0..3").unwrap(), 0..=2);
    assert_eq!(parse_sector("1..=4").unwrap(), 1..=4);
    assert_eq!(parse_sector("2").unwrap(), 2..=2);
    assert!(parse_sector("3..3").unwrap().is_empty());
}

proptest! {
    #[test]
    fn rational_arguments_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = q(n, d);
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn decimal_arguments_are_exact(n in -100_000i64..100_000) {
        let s = format!("{}{}.{:03}", if n < 0 { "-" } else { "" }, n.abs() / 1000, n.abs() % 1000);
        prop_assert_eq!(parse_rational(&s).unwrap(), q(n, 1000));
    }
}
