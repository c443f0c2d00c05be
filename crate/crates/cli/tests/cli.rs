use std::process::{Command, Output};

fn coalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coalg")).args(args).output().expect("run coalg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str], file: &str) -> (Output, serde_json::Value, Vec<u8>) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(file);
    let mut all = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--json", &p]);
    let out = coalg(&all);
    let bytes = std::fs::read(&path).unwrap();
    (out, serde_json::from_slice(&bytes).unwrap(), bytes)
}

#[test]
fn check_cogroup_on_one_generator() {
    let (out, v, _) = json(&["check", "V_Grp_x"], "vgrp.json");
    assert!(out.status.success());
    assert_eq!(v["verdict"], "ok");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["details"].as_array().unwrap().len(), 5);
    assert!(stdout(&out).contains("i(x) = x^-1"));
}

#[test]
fn check_empty_theory() {
    let out = coalg(&["check", "Triv"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("theory Triv ops eqs"));
}

#[test]
fn bad_morphism_fails_with_counterexample() {
    let (out, v, _) = json(&["check", "BadMorphism"], "bad.json");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["verdict"], "fail");
    assert!(v["details"][0]["check"].as_str().unwrap().starts_with("equation m(m(x1,x2),x3)"));
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn invariants_of_the_upper_triangular_regular_bimodule() {
    let out = coalg(&["gphi", "IdUT2", "UT2co"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("witness: {0, 5}"));
}

#[test]
fn g_of_n_is_the_whole_carrier() {
    let out = coalg(&["gphi", "IdAb", "N_Z2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("witness: {0, 1}"));
}

#[test]
fn group_likes_of_f2_c2() {
    let out = coalg(&["gphi", "grouplike", "F2C2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("witness: {x, 1}"));
}

#[test]
fn free_carrier_is_bounded_not_ok() {
    let (out, v, _) = json(&["gphi", "IdGrp", "V_Grp_x", "--bound", "3"], "bounded.json");
    assert!(out.status.success());
    assert_eq!(v["verdict"], "bounded");
    assert_eq!(v["inputs"][2], "--bound=3");
}

#[test]
fn zero_bimodule_gives_singletons() {
    let out = coalg(&["ew", "Zero", "Z2_4", "Z4_4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("1 = 1 homs").count(), 4);
}

#[test]
fn bimodule_z2_over_z4() {
    let out = coalg(&["ew", "M", "Z2_4", "Z4_4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("C2 and C2").count(), 2);
}

#[test]
fn mismatched_rings() {
    let (out, v, _) = json(&["ew", "M", "F2"], "mismatch.json");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["details"][0]["message"], "ring-mismatch");
}

#[test]
fn unknown_suite() {
    let out = coalg(&["suite", "nosuch"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("unknown suite `nosuch`"));
}

#[test]
fn suites_pass() {
    for s in ["paper-examples", "kan-cogroups"] {
        let out = coalg(&["suite", s]);
        assert!(out.status.success(), "{}", stdout(&out));
    }
}

#[test]
fn reports_are_byte_identical() {
    for args in [&["suite", "kan-cogroups"][..], &["hopf", "Z3C2"], &["check", "BadMorphism"]] {
        let (_, _, a) = json(args, "det1.json");
        let (_, _, b) = json(args, "det2.json");
        assert_eq!(a, b);
    }
}

#[test]
fn json_field_order() {
    let (_, _, bytes) = json(&["check", "Triv"], "order.json");
    let text = String::from_utf8(bytes).unwrap();
    let keys = ["\"schema\"", "\"command\"", "\"inputs\"", "\"verdict\"", "\"details\"", "\"witnesses\"", "\"millis\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    assert!(text.contains("\"millis\": 0"));
}

#[test]
fn workspace_files_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.coalg");
    std::fs::write(&good, "theory Magma ops m/2 eqs\nmorphism IdAb = id Ab\nalgebra Z3 : Ab size 3\n  table plus = [0,1,2,1,2,0,2,0,1]\n  table zero = [0]\n  table neg = [0,2,1]\n").unwrap();
    let out = coalg(&["check", "Z3", "--workspace", good.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    // the bundled examples are not loaded alongside
    let out = coalg(&["check", "Triv", "--workspace", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let bad = dir.path().join("bad.coalg");
    std::fs::write(&bad, "theory T ops m/2 eqs\n  m(x1,=x1\n").unwrap();
    let out = coalg(&["check", "T", "--workspace", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("2:8"), "{}", stdout(&out));
}

#[test]
fn hopf_on_stored_examples() {
    for h in ["F2C2", "Z3C2", "Dual", "DualFromTables"] {
        let out = coalg(&["hopf", h]);
        assert!(out.status.success(), "{}", stdout(&out));
    }
}
