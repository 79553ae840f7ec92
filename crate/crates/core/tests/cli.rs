use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};
use urg::hseries::{q, HSeries};
use urg::ncalg::{GenId, Letter, NCPoly, Sign};
use urg::qmatrix::sln_vector_r;

fn urg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_urg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("urg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn nf_of_out_of_order_pair() {
    let out = urg(&["nf", "t+[1,2] t+[1,1]", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let n = 4;
    let t = |i, j| Letter { gen: GenId::new(Sign::Plus, i, j), leg: 1 };
    let q_minus_one = (&q(n + 1) - &HSeries::one(n + 1)).div_by_hbar().unwrap();
    let want = NCPoly::monomial(vec![t(1, 1), t(1, 2)], q(n), 1).add(&NCPoly::monomial(vec![t(1, 2)], q_minus_one, 1));
    assert_eq!(json(&out)["nf"], serde_json::to_value(&want).unwrap());
}

#[test]
fn nf_parses_ell_and_scalars() {
    let a = json(&urg(&["nf", "l+[1,1] - 1 - h t+[1,1]"]));
    assert_eq!(a["text"], "0");
    let b = json(&urg(&["nf", "2/3 (t-[2,1])^2 * hbar"]));
    let c = json(&urg(&["nf", "ħ t-[2,1] t-[2,1] 2/3"]));
    assert_eq!(b["nf"], c["nf"]);
}

#[test]
fn qybe_exit_codes() {
    assert_eq!(urg(&["qybe", "--algebra", "sln", "--n", "3", "--order", "8"]).status.code(), Some(0));
    assert_eq!(urg(&["qybe", "--algebra", "sln", "--n", "2", "--order", "1"]).status.code(), Some(0));
    let path = scratch("perturbed.json");
    let bad = sln_vector_r(2, 4).perturbed(1, 2, 2);
    std::fs::write(&path, serde_json::to_string(&bad.to_json()).unwrap()).unwrap();
    let out = urg(&["qybe", "--r", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let qybe = doc["checks"].as_array().unwrap().iter().find(|c| c["check"] == "qybe").unwrap();
    assert_eq!(qybe["status"], "fail");
    assert!(qybe["witness"]["row"].is_u64() && qybe["witness"]["col"].is_u64());
}

#[test]
fn r_file_round_trip() {
    let path = scratch("sl2.json");
    std::fs::write(&path, serde_json::to_string(&sln_vector_r(2, 5).to_json()).unwrap()).unwrap();
    let out = urg(&["verify", "--suite", "hopf", "--r", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["instance"].as_str().unwrap().ends_with("N=4"));
}

#[test]
fn present_counts() {
    let doc = json(&urg(&["present", "--order", "3"]));
    assert_eq!(doc["generators"].as_array().unwrap().len(), 6);
    let rels = doc["relations"].as_array().unwrap();
    let sector = |r: &Value| r["label"].as_str().unwrap()[..2].to_string();
    let sectors: std::collections::BTreeSet<String> = rels.iter().map(sector).collect();
    assert_eq!(sectors.into_iter().collect::<Vec<_>>(), ["++", "+-", "--"]);
    let count = |s: &str| rels.iter().filter(|r| sector(r) == s).count();
    assert_eq!(count("++"), count("--"));

    let uhg = json(&urg(&["present", "--order", "3", "--quotient", "uhg"]));
    assert!(!uhg["quotient"]["extra_relations"].as_array().unwrap().is_empty());
    assert_eq!(uhg["quotient"]["generators"].as_array().unwrap().len(), 3);

    let borel = json(&urg(&["present", "--order", "3", "--borel", "+"]));
    let gens = borel["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 3);
    assert!(gens.iter().all(|g| g["gen"]["sign"] == "+"));
}

#[test]
fn present_is_deterministic() {
    let a = urg(&["present", "--n", "3", "--order", "2"]);
    let b = urg(&["present", "--n", "3", "--order", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites() {
    let out = urg(&["verify", "--suite", "hopf", "--algebra", "sln", "--n", "2", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "pass");
    let out = urg(&["verify", "--suite", "cocomm", "--algebra", "sl2-sum2", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["checks"][0]["witness"]["witness"], "present");
}

#[test]
fn verify_writes_out_file() {
    let path = scratch("report.json");
    let out = urg(&["verify", "--suite", "rep", "--order", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["suite"], "rep");
}

#[test]
fn failures_and_usage_errors() {
    // No straightening system exists for repeated factors.
    assert_eq!(urg(&["verify", "--suite", "confluence", "--algebra", "sl2-sum2"]).status.code(), Some(1));
    assert_eq!(urg(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(urg(&["nf", "t+[1,"]).status.code(), Some(2));
    assert_eq!(urg(&["nf", "t+[3,1]"]).status.code(), Some(2));
    assert_eq!(urg(&["qybe", "--r", "/nonexistent/r.json"]).status.code(), Some(2));
    assert_eq!(urg(&["verify", "--suite", "quotients", "--borel", "+"]).status.code(), Some(2));
}
