use std::path::PathBuf;
use std::process::{Command, Output};

use orbifold::covering::{CoveringCertificate, Report};
use orbifold::fundamental::{GeometryClass, GroupOrder, GroupPresentation};
use orbifold::geometry::{GaussBonnetReport, PoincareHopfReport};
use orbifold::quotient::QuotientResult;
use orbifold::wps::StrataPoset;
use orbifold::{Rational, Signature};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbifold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.code().unwrap() <= 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn parse<T: serde::de::DeserializeOwned>(v: &Value) -> T {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn euler_prints_the_value_three_ways() {
    let out = stdout(&["euler", "O0(2,3,7)"]);
    assert_eq!(out.lines().next(), Some("-1/42"));
    assert_eq!(out.matches("-1/42").count(), 4);
    assert_eq!(code(&["euler", "O0(2,3,7)"]), 0);
}

#[test]
fn classify_teardrop() {
    assert_eq!(stdout(&["classify", "O0(5)"]).trim(), "Bad");
    assert_eq!(code(&["classify", "O0(5)"]), 0);
}

#[test]
fn verification_failures_exit_1() {
    assert_eq!(code(&["cover", "verify", &data("badcert.json")]), 1);
    let out = stdout(&["cover", "verify", &data("badcert.json")]);
    assert!(out.contains("FAIL euler"), "{out}");
    assert!(out.contains("ok   fiber-sum[0]"), "{out}");
    assert_eq!(code(&["poincare-hopf", "O0(2,3)", "--zeros", "2:1"]), 1);
    assert_eq!(code(&["gauss-bonnet", "-p", "2", "-q", "3", "--intervals", "4", "--tolerance", "1e-12"]), 1);
}

#[test]
fn passing_checks_exit_0() {
    assert_eq!(code(&["cover", "verify", &data("pillowcase-cert.json")]), 0);
    assert_eq!(code(&["poincare-hopf", "O0(5,5)", "--zeros", "5:1,5:1"]), 0);
    assert_eq!(code(&["poincare-hopf", "O1()"]), 0);
    assert_eq!(code(&["gauss-bonnet", "-p", "2", "-q", "3"]), 0);
    assert_eq!(code(&["poincare-hopf", "O0(2,3,7)", "--zeros", "2:1,3:1,7:1,1:-1"]), 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["euler"]), 2);
    assert_eq!(code(&["euler", "O0(("]), 2);
    assert_eq!(code(&["cover", "verify", "/nonexistent/cert.json"]), 2);
    assert_eq!(code(&["poincare-hopf", "O0(2)", "--zeros", "2-1"]), 2);
    assert_eq!(code(&["cover", "enumerate", "-n", "1", "-r", "1"]), 2);
    assert_eq!(code(&["quotient", "--action", &fixture("torus4-half-turn")]), 2);
    let err = String::from_utf8(run(&["euler", "O0(("]).stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn domain_errors_exit_3() {
    assert_eq!(code(&["pi1", "O0()*()"]), 3);
    assert_eq!(code(&["double", "O0(3)"]), 3);
    assert_eq!(code(&["wps", "euler", "-w", "2,4"]), 3);
    assert_eq!(code(&["wps", "football", "-w", "1,2,3"]), 3);
    assert_eq!(code(&["gauss-bonnet", "-p", "2", "-q", "3", "--intervals", "7"]), 3);
    assert_eq!(code(&["poincare-hopf", "O0(2,3)", "--zeros", "5:1"]), 3);
    assert_eq!(code(&["cover", "verify", &data("malformed-cert.json")]), 3);
    assert_eq!(
        code(&[
            "quotient",
            "--surface",
            &fixture("octahedron"),
            "--action",
            &data("octahedron-bad-transposition.json")
        ]),
        3
    );
}

#[test]
fn help_exits_0() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["cover", "verify", "--help"]), 0);
}

#[test]
fn json_round_trips() {
    let v = json(&["euler", "O0()*(2,2,2,2)"]);
    let sig: Signature = parse(&v["signature"]);
    assert_eq!(sig.to_string(), "O0()*(2,2,2,2)");
    for key in ["closed_form", "cell_sum", "strata_sum"] {
        assert_eq!(parse::<Rational>(&v[key]), Rational::ZERO);
    }

    let v = json(&["classify", "O0(2,3,5)"]);
    assert_eq!(parse::<GeometryClass>(&v["class"]), GeometryClass::Spherical);
    let _: Signature = parse(&v["signature"]);

    let v = json(&["pi1", "O0(2,3,4)"]);
    let _: GroupPresentation = parse(&v["presentation"]);
    assert_eq!(parse::<GroupOrder>(&v["order"]), GroupOrder::Finite(24));

    let v = json(&["double", "O0()*(2,3)"]);
    assert_eq!(parse::<Signature>(&v).to_string(), "O0(3,2)");

    let v = json(&["quotient", "--surface", &fixture("icosahedron"), "--action", &fixture("icosahedron-rotation")]);
    let q: QuotientResult = parse(&v);
    assert_eq!(q.signature.unwrap().to_string(), "O0(5,5)");
    assert_eq!(q.chi_quotient, Rational::new(2, 5));

    let v = json(&["cover", "verify", &data("badcert.json")]);
    let r: Report = parse(&v);
    assert!(!r.pass);

    let v = json(&["cover", "enumerate", "-n", "2", "-r", "2"]);
    assert_eq!(parse::<Vec<Vec<u32>>>(&v), vec![vec![1], vec![2, 2]]);

    let v = json(&[
        "cover",
        "from-quotient",
        "--surface",
        &fixture("torus4"),
        "--action",
        &fixture("torus4-quarter-turn"),
        "--subgroup",
        &fixture("torus4-half-turn"),
    ]);
    let cert: CoveringCertificate = parse(&v["certificate"]);
    assert_eq!(cert.degree, 2);
    assert!(parse::<Report>(&v["report"]).pass);

    let v = json(&["wps", "strata", "-w", "1,2,3"]);
    let p: StrataPoset = parse(&v);
    assert_eq!(p.singular().count(), 2);

    let v = json(&["wps", "euler", "-w", "1,2,2"]);
    assert_eq!(parse::<Rational>(&v["euler"]), 2);

    let v = json(&["wps", "football", "-w", "2,3"]);
    assert_eq!(parse::<Signature>(&v).to_string(), "O0(3,2)");

    let v = json(&["gauss-bonnet", "-p", "5", "-q", "5"]);
    let r: GaussBonnetReport = parse(&v);
    assert!(r.rel_error < 1e-6);

    let v = json(&["poincare-hopf", "O0(2,3)", "--zeros", "2:1,3:1"]);
    let r: PoincareHopfReport = parse(&v);
    assert!(r.pass);
    assert_eq!(r.index_sum, Rational::new(5, 6));
}

#[test]
fn action_file_may_embed_the_surface() {
    let surface: Value = serde_json::from_str(&std::fs::read_to_string(fixture("torus4")).unwrap()).unwrap();
    let mut action: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("torus4-half-turn")).unwrap()).unwrap();
    action["surface"] = surface;
    let dir = std::env::temp_dir().join(format!("orbifold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("embedded.json");
    std::fs::write(&path, action.to_string()).unwrap();
    let out = stdout(&["quotient", "--action", path.to_str().unwrap()]);
    assert!(out.contains("signature: O0(2,2,2,2)"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}
