use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn factorlens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factorlens"))
        .args(args)
        .env_remove("FACTORLENS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = factorlens(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    r.records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect()
}

fn set_of(v: &Value) -> BTreeSet<u64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

const TWO_THREE: &str = r#"{"kind":"lattice","dim":1,"atoms":[[2],[3]]}"#;

// 𝒰_k of <2,3> from the lengths of every n, by dynamic programming.
fn numerical_unions(gens: &[u64], k_max: u64) -> Vec<BTreeSet<u64>> {
    let top = (gens.iter().max().unwrap() * k_max) as usize;
    let mut lengths = vec![BTreeSet::new(); top + 1];
    lengths[0].insert(0u64);
    for n in 1..=top {
        for &g in gens {
            if g as usize <= n {
                let prev: Vec<u64> = lengths[n - g as usize].iter().copied().collect();
                lengths[n].extend(prev.into_iter().map(|l| l + 1));
            }
        }
    }
    (1..=k_max)
        .map(|k| {
            lengths
                .iter()
                .filter(|l| l.contains(&k))
                .flatten()
                .copied()
                .collect()
        })
        .collect()
}

#[test]
fn realize_row_matches_the_construction() {
    let o = factorlens(&["realize", "2,3", "--k-max", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("\"k\",\"lambda\",\"rho\",\"size\",\"m\",\"union\"\n"));
    assert!(text.contains("\n2,2,3,2,0,\"{2,3}\"\n"), "{text}");
    assert_eq!(csv_rows(&o).len(), 6);
}

#[test]
fn realize_reports_its_verification() {
    let v = json(&["realize", "2,5"]);
    assert_eq!(v["realization"]["passed"], true);
    assert_eq!(set_of(&v["realization"]["union_at_min"]), [2, 5].into());
    assert_eq!(v["elasticity"], "5/2");
}

#[test]
fn free_monoid_rows() {
    let o = factorlens(&[
        "unions",
        "--spec",
        r#"{"kind":"lattice","dim":2,"atoms":[[1,0],[0,1]]}"#,
        "--k-max",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for (i, row) in csv_rows(&o).iter().enumerate() {
        let k = (i + 1).to_string();
        assert_eq!(row, &[&k, &k, &k, "1", "0", &format!("{{{k}}}")]);
    }
}

#[test]
fn two_three_invariants() {
    let v = json(&["invariants", "--spec", TWO_THREE, "--k-max", "6"]);
    assert_eq!(set_of(&v["delta"]["set"]), [1].into());
    assert_eq!(v["delta"]["certification"], "exact");
    assert_eq!(v["elasticity"], "3/2");
    assert_eq!(v["atoms_verified"], true);
    let oracle = numerical_unions(&[2, 3], 6);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (row, want) in rows.iter().zip(&oracle) {
        assert_eq!(&set_of(&row["union"]), want);
        assert_eq!(row["rho"].as_u64(), want.last().copied());
        assert_eq!(row["lambda"].as_u64(), want.first().copied());
    }
}

#[test]
fn power_example_omega() {
    let v = json(&["invariants", "--spec", r#"{"kind":"power","n":2}"#]);
    assert_eq!(v["omega"]["value"], 5);
    assert_eq!(v["elasticity"], "4");
    assert!(v["accepted_at_k"].is_null());
    let v = json(&["power-example", "--n", "3"]);
    assert_eq!(v["omega"]["value"], 7);
    let rows = v["rows"].as_array().unwrap();
    for k in 6..=9u64 {
        assert_eq!(rows[k as usize - 1]["rho"].as_u64(), Some(6 * (k - 1) + 1));
    }
}

#[test]
fn power_generators_spec() {
    let spec = r#"{"kind":"power","generators":[[0,1],[0,1,2,4]],"bound":20}"#;
    let v = json(&["invariants", "--spec", spec, "--k-max", "4"]);
    assert_eq!(v["atoms"].as_array().unwrap().len(), 2);
    assert_eq!(v["omega"]["closed"], false);
    assert_eq!(v["delta"]["certification"], "partial");
}

#[test]
fn zero_sum_z3() {
    let v = json(&["invariants", "--spec", r#"{"kind":"zero_sum","group":[3]}"#]);
    assert_eq!(v["elasticity"], "3/2");
    assert_eq!(set_of(&v["rows"][1]["union"]), [2, 3].into());
}

#[test]
fn counterexample_rows() {
    let o = factorlens(&[
        "counterexample",
        "--d",
        "2",
        "--k-max",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    let u3: BTreeSet<u64> = rows[2][5]
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .map(|t| t.parse().unwrap())
        .collect();
    let upper: BTreeSet<u64> = (3..=6).chain((7..=19).step_by(2)).collect();
    assert_eq!(u3.range(3..).copied().collect::<BTreeSet<_>>(), upper);

    let closed = json(&["counterexample", "--k-max", "3"]);
    let truncated = json(&["counterexample", "--k-max", "3", "--route", "truncated"]);
    assert_eq!(closed["rows"], truncated["rows"]);
    let sig = closed["signature"].as_array().unwrap();
    assert!(sig.iter().all(|s| s["hole"] == true));
}

#[test]
fn family_file_structure_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.json");
    std::fs::write(&path, r#"{"generators": [[1],[2,3]], "depth": 12}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["structure-check", "--spec", p, "--k-max", "10"]);
    assert_eq!(v["properties"]["passed"], true);
    assert_eq!(v["verdict"]["delta"], 1);
    assert_eq!(v["verdict"]["stabilized"], true);
    let o = factorlens(&[
        "structure-check",
        "--spec",
        p,
        "--k-max",
        "10",
        "--format",
        "csv",
    ]);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.len() == 5));
}

#[test]
fn shallow_family_is_partial() {
    let spec = r#"{"generators": [[1],[2,3]], "depth": 3}"#;
    let o = factorlens(&["unions", "--spec", spec, "--k-max", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["partial"].as_array().unwrap().len(), 1);
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["unions"][..],
        &["unions", "--spec", "{\"kind\":\"moon\"}"],
        &["unions", "--spec", "/no/such/file.json"],
        &[
            "unions",
            "--spec",
            r#"{"kind":"lattice","dim":1,"atoms":[[1],[-1]]}"#,
        ],
        &["realize", "2,x"],
        &["realize", "2"],
        &["unions", "--spec", TWO_THREE, "--budget", "0"],
        &["frobnicate"],
    ] {
        let o = factorlens(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_exhaustion_keeps_partial_rows() {
    let spec = r#"{"kind":"zero_sum","group":[2,2]}"#;
    let o = factorlens(&["unions", "--spec", spec, "--budget", "5", "--k-max", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("partial"));

    let o = Command::new(env!("CARGO_BIN_EXE_factorlens"))
        .args(["unions", "--spec", spec, "--k-max", "4"])
        .env("FACTORLENS_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_independent_of_threads() {
    for args in [
        &[
            "invariants",
            "--spec",
            r#"{"kind":"zero_sum","group":[2,2]}"#,
        ][..],
        &["paper-suite", "--only", "3,5,7"],
    ] {
        let one = factorlens(&[args, &["--threads", "1"]].concat());
        let four = factorlens(&[args, &["--threads", "4"]].concat());
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let o = factorlens(&[
        "realize",
        "2,3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("2,2,3,2,0,\"{2,3}\""));
}

#[test]
fn perturbed_atoms_fail_the_realization_check() {
    let o = factorlens(&["paper-suite", "--only", "1", "--perturb", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(3));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2], "FAIL");
    assert!(rows[0][4].contains("enumeration gives"));
}

#[test]
fn reduced_budget_never_passes_falsely() {
    let o = factorlens(&[
        "paper-suite",
        "--budget",
        "1000",
        "--only",
        "1,2,4,6",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    for row in csv_rows(&o) {
        assert_eq!(row[2], "PARTIAL", "{row:?}");
    }
}

#[test]
fn help_exits_zero() {
    let o = factorlens(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("paper-suite"));
}
