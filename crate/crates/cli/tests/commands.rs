use std::path::PathBuf;
use std::process::{Command, Output};

use hyperwedge::format::{multivector_from_json, multivector_to_json, polynomial_from_record, PolynomialRecord};
use hyperwedge::{QMultivector, QPolynomial, Window};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperwedge"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperwedge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn mv(w: Window, parts: &[&[i32]]) -> QMultivector {
    let grade = parts[0].len();
    parts.iter().fold(QMultivector::zero(w, grade), |acc, p| acc.add(&QMultivector::basis(w, p).unwrap()).unwrap())
}

fn file_of(name: &str, v: &QMultivector) -> String {
    scratch(name, &multivector_to_json(v)).to_string_lossy().into_owned()
}

#[test]
fn eval_examples() {
    let split = file_of("split.json", &mv(Window::new(0, 4), &[&[1, 2], &[3, 4]]));
    let o = run(&["eval", "--form", "2", "2", "--set", "1,2,3,4", &split]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");

    let zero = file_of("zero.json", &QMultivector::zero(Window::new(0, 4), 2));
    assert_eq!(stdout(&run(&["eval", "--form", "2", "2", "--set", "1,2,3,4", &zero])).trim(), "0");

    let eight = file_of("eight.json", &mv(Window::new(0, 8), &[&[1, 2, 3, 4], &[5, 6, 7, 8]]));
    let o = run(&["eval", "--form", "4", "2", "--set", "1,2,3,4,5,6,7,8", &eight]);
    assert_eq!(stdout(&o).trim(), "1");

    let o = run(&["eval", "--form", "2", "2", "--set", "-2,-1,1,2", &split]);
    assert_eq!(o.status.code(), Some(3), "negative indices outside the window");
    let o = run(&["eval", "--form", "4", "2", "--set", "1,2,3,4,5,6,7,8", &split]);
    assert_eq!(o.status.code(), Some(3), "grade mismatch");
}

#[test]
fn parse_errors_exit_two() {
    let bad = scratch("bad.json", r#"{"window":[0,3],"grade":2,"terms":[{"indices":[2,1],"coeff":"1"}]}"#);
    let o = run(&["star", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let junk = scratch("junk.json", "not json");
    assert_eq!(run(&["member", "--variety", "gr", junk.to_str().unwrap()]).status.code(), Some(2));
    let ok = file_of("ok.json", &mv(Window::new(0, 2), &[&[1, 2]]));
    assert_eq!(run(&["member", "--variety", "nonsense", &ok]).status.code(), Some(2));
}

#[test]
fn member_exit_codes() {
    let w = Window::new(0, 4);
    let dec = file_of("dec.json", &mv(w, &[&[1, 2]]));
    let split = file_of("split2.json", &mv(w, &[&[1, 2], &[3, 4]]));
    let o = run(&["member", "--variety", "gr", &dec]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"member\": true"));

    let o = run(&["member", "--variety", "pf:2", &split]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("hpf(2,2)@{1,2,3,4}"), "{text}");
    assert!(text.contains("\"value\": \"1\""), "{text}");

    let omega = mv(
        Window::new(5, 4),
        &[&[-5, -4, -3, -2], &[-1, 1, 2, 3], &[-5, -4, -3, -1], &[-2, 1, 2, 3], &[-5, -2, -1, 4]],
    );
    let omega = file_of("omega.json", &omega);
    assert_eq!(run(&["member", "--variety", "hpf:4,2", &omega]).status.code(), Some(0));

    let o = run(&["member", "--variety", "contraction:2,3", "--seed", "7", "--trials", "5", &dec]);
    assert!(stdout(&o).contains("seed: 7"));
}

#[test]
fn ideal_counts_and_round_trip() {
    let count = |m: &str, l: &str, n: &str, p: &str| -> Vec<PolynomialRecord> {
        let o = run(&["ideal", "--form", m, l, "--window", n, p]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        serde_json::from_value(v["equations"].clone()).unwrap()
    };
    assert_eq!(count("2", "2", "2", "2").len(), 1);
    let hyper = count("4", "2", "4", "4");
    assert_eq!(hyper.len(), 1);
    assert_eq!(hyper[0].terms.len(), 35);
    assert!(count("4", "2", "3", "4").is_empty());

    for rec in count("2", "2", "2", "3") {
        let (poly, label): (QPolynomial, String) = polynomial_from_record(&rec).unwrap();
        assert_eq!(label, rec.label);
        let again = hyperwedge::format::polynomial_record(&poly, &label);
        assert_eq!(serde_json::to_string(&again).unwrap(), serde_json::to_string(&rec).unwrap());
    }

    let o = run(&["ideal", "--form", "4", "2", "--window", "3", "4"]);
    assert!(stdout(&o).contains("\"trivial\""));
    assert_eq!(run(&["ideal", "--form", "3", "2", "--window", "3", "3"]).status.code(), Some(4));
    assert_eq!(run(&["ideal", "--window", "3", "3"]).status.code(), Some(4));
}

#[test]
fn ideal_with_dual_side() {
    let o = run(&["ideal", "--form", "2", "2", "--dual", "2", "2", "--window", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let eqs: Vec<PolynomialRecord> = serde_json::from_value(v["equations"].clone()).unwrap();
    assert_eq!(eqs.len(), 2);
    assert!(eqs[1].label.starts_with("star*"));
    // both sides vanish on a decomposable 2-vector in window (2,2)
    let w = Window::new(2, 2);
    let d = mv(w, &[&[-2, 1]]);
    for rec in &eqs {
        let (poly, _): (QPolynomial, String) = polynomial_from_record(rec).unwrap();
        assert_eq!(poly.eval(&d).unwrap(), hyperwedge::Rational::from_integer(0.into()));
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hyperwedge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("ideal.json");
    let o = run(&["ideal", "--form", "2", "2", "--window", "2", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(&target).unwrap().contains("hpf(2,2)@{-2,-1,1,2}"));
}

#[test]
fn wedge_star_contract() {
    let w = Window::new(1, 2);
    let a = file_of("a.json", &mv(w, &[&[-1]]));
    let b = file_of("b.json", &mv(w, &[&[1, 2]]));
    let o = run(&["wedge", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    let got: QMultivector = multivector_from_json(&stdout(&o)).unwrap();
    assert_eq!(got, mv(w, &[&[-1, 1, 2]]));

    let o = run(&["star", &b]);
    let star: QMultivector = multivector_from_json(&stdout(&o)).unwrap();
    assert_eq!(star.window(), Window::new(2, 1));
    assert_eq!(star.grade(), 1);

    let f = scratch("f.json", r#"{"window":[1,2],"coeffs":[[2,"1"]]}"#);
    let o = run(&["contract", f.to_str().unwrap(), &b]);
    let got: QMultivector = multivector_from_json(&stdout(&o)).unwrap();
    assert_eq!(got, mv(w, &[&[1]]));

    let other = file_of("other.json", &mv(Window::new(0, 2), &[&[1]]));
    assert_eq!(run(&["wedge", &a, &other]).status.code(), Some(3));
}

#[test]
fn demos_all_pass() {
    let list = stdout(&run(&["list-demos"]));
    let names: Vec<&str> = list.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["gr24", "lift", "trivector", "omega", "limit-element"]);
    for name in names {
        let o = run(&["demo", name]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    assert_eq!(run(&["demo", "nope"]).status.code(), Some(4));
}
