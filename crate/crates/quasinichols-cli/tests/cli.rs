use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use quasinichols_cli::instance::{emit_instance, parse_instance};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(name)
}

fn qnichols(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qnichols")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn with_instance<'a>(cmd: &[&'a str], file: &'a str) -> Vec<&'a str> {
    let mut v = cmd.to_vec();
    v.extend(["--instance", file]);
    v
}

#[test]
fn verdict_on_minimal_nondiagonal() {
    let f = fixture("z2cube_minimal.toml");
    let (code, out, _) = qnichols(&with_instance(&["verdict", "--json"], f.to_str().unwrap()));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["finiteness"], "InfiniteGK");
    assert_eq!(v["certificate"][0]["step"], "nondiagonal");
}

#[test]
fn verdict_reports_have_stable_fields() {
    for name in ["z2cube_minimal.toml", "sign_line.toml", "a2_cube_root.toml"] {
        let f = fixture(name);
        let (code, out, _) = qnichols(&with_instance(&["verdict", "--json"], f.to_str().unwrap()));
        assert_eq!(code, 0, "{name}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["certificate", "diagram", "finiteness", "roots"], "{name}");
    }
}

#[test]
fn a2_has_three_roots() {
    let f = fixture("a2_cube_root.toml");
    let (_, out, _) = qnichols(&with_instance(&["verdict", "--json"], f.to_str().unwrap()));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["finiteness"], "FiniteGK");
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn resolve_not_coboundary_is_not_an_error() {
    let f = fixture("z2cube_cocycle.toml");
    let (code, out, _) = qnichols(&with_instance(&["resolve"], f.to_str().unwrap()));
    assert_eq!(code, 0);
    assert!(out.contains("not a coboundary"), "{out}");
}

#[test]
fn resolve_abelian_cocycle() {
    let f = fixture("sign_line.toml");
    let (code, out, _) = qnichols(&with_instance(&["resolve", "--json"], f.to_str().unwrap()));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "coboundary");
    assert_eq!(v["verified"], true);
}

#[test]
fn degree_two_relations_on_cube() {
    let f = fixture("z2cube_minimal.toml");
    let (code, out, _) = qnichols(&with_instance(&["relations", "--degree", "2"], f.to_str().unwrap()));
    assert_eq!(code, 0);
    for rel in [
        "ad_Y1(Z1) + ad_Y2(Z1) = 0",
        "ad_Y1(Z2) + (-1) ad_Y2(Z2) = 0",
        "ad_X1(Y1) = 0",
        "ad_X2(Y2) = 0",
        "ad_X1(Z1) + ad_X2(Z2) = 0",
        "ad_X1(Z2) + ad_X2(Z1) = 0",
    ] {
        let line = out.lines().find(|l| l.starts_with(rel)).unwrap_or_else(|| panic!("missing {rel}\n{out}"));
        assert!(line.contains("holds"), "{line}");
    }
    assert!(!out.contains("DISAGREE"));
}

#[test]
fn degree_cap_enforced() {
    let f = fixture("sign_line.toml");
    let (code, _, err) = qnichols(&with_instance(&["relations", "--degree", "9", "--degree-cap", "4"], f.to_str().unwrap()));
    assert_eq!(code, 1);
    assert!(err.contains("degree cap"), "{err}");
}

#[test]
fn dynkin_and_is_abelian() {
    let f = fixture("z2cube_minimal.toml");
    let (code, out, _) = qnichols(&with_instance(&["dynkin"], f.to_str().unwrap()));
    assert_eq!(code, 0);
    assert!(out.contains("not of diagonal type"));
    let (_, out, _) = qnichols(&with_instance(&["is-abelian", "--json"], f.to_str().unwrap()));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["abelian"], false);
    assert_eq!(v["support_abelian"], false);
}

#[test]
fn enumerate_cube_family() {
    let f = fixture("z2cube_cocycle.toml");
    let (code, out, _) = qnichols(&with_instance(&["enumerate", "--n", "2", "--json"], f.to_str().unwrap()));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let members = v["members"].as_array().unwrap();
    assert!(!members.is_empty());
    assert!(members.iter().all(|m| m["verdict"]["finiteness"] == "InfiniteGK"));
}

#[test]
fn tiny_cap_is_unresolved() {
    let f = fixture("a2_cube_root.toml");
    let (code, _, _) = qnichols(&with_instance(&["verdict", "--cap", "1"], f.to_str().unwrap()));
    assert_eq!(code, 2);
}

#[test]
fn errors_exit_one() {
    let (code, _, err) = qnichols(&["verdict"]);
    assert_eq!(code, 1);
    assert!(err.contains("--instance"));
    let (code, _, _) = qnichols(&["verdict", "--instance", "/nonexistent.toml"]);
    assert_eq!(code, 1);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = qnichols(&["selftest"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_instance(&text).unwrap();
        let again = parse_instance(&emit_instance(&parsed).unwrap()).unwrap();
        assert_eq!(again, parsed, "{}", path.display());
        parsed.build().unwrap();
    }
}
