use std::process::Command;

use num_bigint::BigUint;
use serde_json::Value;
use solenoid_lab::{run, CommandResult};

fn lab(args: &str) -> CommandResult {
    let argv = std::iter::once("solenoid-lab").chain(args.split_whitespace());
    run(argv)
}

fn json(args: &str) -> Value {
    let r = lab(args);
    assert_eq!(r.status, 0, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn fixed_points_csv() {
    let r = lab("fixed-points --r 2 --s-set 2 --upto 5");
    assert_eq!(r.status, 0);
    assert_eq!(r.stdout, "n,F\n1,1\n2,3\n3,7\n4,15\n5,31\n");
}

#[test]
fn entropy_of_three_halves() {
    let v = json("entropy --r 3/2");
    assert_eq!(v["h"].as_f64(), Some(1.0986122886681098));
    assert_eq!(v["exact_arg"], serde_json::json!(3));
}

#[test]
fn unrealizable_sequence_exits_4() {
    let r = lab("realizable --coeffs 2,2,8,16");
    assert_eq!(r.status, 4);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["fail_at"], serde_json::json!(4));
    assert_eq!(v["sum"], serde_json::json!(14));
}

#[test]
fn exit_codes() {
    assert_eq!(lab("bogus").status, 2);
    assert_eq!(lab("fixed-points --r 2 --bogus 1").status, 2);
    let help = lab("--help");
    assert_eq!(help.status, 0);
    assert!(help.stdout.contains("fixed-points"));
    // 2 is not a unit of ℤ.
    let r = lab("fixed-points --r 2");
    assert_eq!(r.status, 2);
    assert!(r.stdout.is_empty() && !r.stderr.is_empty());
    assert_eq!(lab("dirichlet --r 2 --s-cofinite 3,5 --s 1").status, 2);
    assert_eq!(lab("realizable --coeffs 1,1,1,1 --order 64").status, 3);
    assert_eq!(lab("mahler --poly 1,1 --format csv").status, 2);
}

#[test]
fn big_integers_round_trip_exactly() {
    let v = json("fixed-points --r 2 --s-set 2 --n 200 --format json");
    let f = &v["rows"][0]["F"];
    let want = (BigUint::from(1u32) << 200usize) - 1u32;
    assert_eq!(f.to_string(), want.to_string());
    let back: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn csv_and_json_agree() {
    let args = "orbits --r 3/2 --s-set 2,3 --upto 30";
    let csv = lab(args).stdout;
    let v = json(&format!("{args} --format json"));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows = v["rows"].as_array().unwrap();
    let mut count = 0;
    for (line, row) in lines.zip(rows) {
        for (col, cell) in header.iter().zip(line.split(',')) {
            assert_eq!(cell, row[*col].to_string(), "column {col}");
        }
        count += 1;
    }
    assert_eq!(count, 30);
}

#[test]
fn output_is_deterministic() {
    for args in [
        "lehmer-scan --degree 8 --threshold 0.3",
        "boundary-scan --r 2 --s-cofinite 3 --angles 8",
        "poset --matrices 3,10;1,3|3,5;2,3",
        "zeta --r 2 --mode endo --upto 12",
    ] {
        assert_eq!(lab(args), lab(args), "{args}");
    }
}

#[test]
fn conjugacy_of_the_torus_pair() {
    let v = json("conjugacy --a 3,10;1,3 --b 3,5;2,3");
    assert_eq!(v["form"], "2x^2 - 5y^2");
    assert_eq!(v["decision"]["kind"], "obstructed");
    assert_eq!(v["decision"]["modulus"], serde_json::json!(5));
    let v = json("conjugacy --a 3,10;1,3 --b 3,5;2,3 --invert 2");
    assert_eq!(v["decision"]["kind"], "conjugate");
    assert_eq!(v["decision"]["det"].to_string().trim_start_matches('-'), "2");
}

#[test]
fn poset_dot() {
    let r = lab("poset --matrices 3,10;1,3|3,5;2,3 --primes 2,3");
    assert_eq!(r.status, 0);
    assert!(r.stdout.starts_with("digraph"));
    assert!(r.stdout.contains("L0C0 [label=\"Z: {0}\"]"));
    assert!(r.stdout.contains("L0C1 [label=\"Z: {1}\"]"));
    assert!(r.stdout.contains("L1C0 [label=\"Z[1/2]: {0,1}\"]"));
    assert_eq!(r.stdout.matches("rank=same").count(), 4);
    let v = json("poset --matrices 3,10;1,3|3,5;2,3 --primes 2,3 --format json");
    assert_eq!(v["levels"][3]["label"], "Q");
}

#[test]
fn zeta_closed_form() {
    let v = json("zeta --r -2 --mode endo --upto 8");
    assert_eq!(v["zeta"], "(1 + z)/(1 - 2z)");
    let v = json("toral-zeta --matrix 2,1;1,1");
    assert_eq!(v["char_poly"], "x^2 - 3x + 1");
}

#[test]
fn dirichlet_reference_column() {
    let r = lab("dirichlet --r 2 --s-cofinite 3,5 --upto 2000 --s 2,3");
    assert_eq!(r.status, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("s,partial,reference,tail_bound"));
    for line in lines {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cells[1] - cells[2]).abs() <= cells[3] + 1e-9, "{line}");
    }
}

#[test]
fn growth_construct_reports_flags() {
    let v = json("growth-construct --square-exponent 5");
    assert_eq!(v["multiplicities"], serde_json::json!([3, 1, 1, 1]));
    assert_eq!(v["all_sandwiched"], serde_json::json!(true));
}

#[test]
fn thread_cap_from_environment() {
    let bin = env!("CARGO_BIN_EXE_solenoid-lab");
    let args = ["lehmer-scan", "--degree", "6"];
    let one = Command::new(bin).args(args).env("SOLENOID_LAB_THREADS", "1").output().unwrap();
    let many = Command::new(bin).args(args).env("SOLENOID_LAB_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(bin).args(args).env("SOLENOID_LAB_THREADS", "0").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
