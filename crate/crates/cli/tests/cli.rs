use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use superfield::dynamics::{FieldTheory, Side};
use superfield::enriched::{RelMorphism, RelSection, RelSectionJson};
use superfield::grassmann::{Field, GrassmannElement, Parity};
use superfield::model11::{apply_p11, GrassmannSection11, Grid1, Morphism11, Section11, Section11Json, Theory11};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superfield"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_json(name: &str, v: serde_json::Value) -> String {
    let p = scratch(name);
    fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn grid() -> Grid1 {
    Grid1::new(0.0, 2.0, 1025).unwrap()
}

fn bump() -> Section11 {
    let g = grid();
    Section11::even_bump(g, 0.9, 0.06, 1.0).axpy(1.0, &Section11::odd_bump(g, 1.1, 0.05, -0.7)).unwrap()
}

fn transform(morphism: &RelMorphism, section: &Section11, tag: &str) -> RelSection {
    let m = write_json(&format!("{tag}-morphism.json"), serde_json::to_value(morphism).unwrap());
    let s = write_json(&format!("{tag}-section.json"), serde_json::to_value(section.to_json()).unwrap());
    let o = run(&["transform", "--section", &s, "--morphism", &m]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let j: RelSectionJson = serde_json::from_slice(&o.stdout).unwrap();
    RelSection::from_json(&j).unwrap()
}

#[test]
fn passing_suite_exits_zero() {
    let o = run(&["check", "grassmann-laws"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("overall: PASS"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["check", "no-such-suite"])), 2);
    assert_eq!(code(&run(&["check", "berezinian", "--tol", "green11"])), 2);
    assert_eq!(code(&run(&["check", "berezinian", "--tol", "green11=abc"])), 2);
    assert_eq!(code(&run(&["check", "berezinian", "--tol", "green11=-1"])), 2);
    assert_eq!(code(&run(&["check", "berezinian", "--tol", "nonsense=1e-6"])), 2);
    assert_eq!(code(&run(&["green", "11", "retarded", "--input", "/nonexistent/section.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn tightened_tolerance_fails_with_exit_one() {
    let o = run(&["check", "green11", "--tol", "green11=1e-12"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("overall: FAIL"));
}

#[test]
fn reports_are_deterministic() {
    let paths = [scratch("report-a.json"), scratch("report-b.json")];
    for p in &paths {
        let o = run(&["check", "berezinian", "--seed", "17", "--report", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let (a, b) = (fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
}

#[test]
fn report_to_stdout() {
    let o = run(&["check", "berezinian", "--quiet", "--report", "-"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let start = text.find('{').expect("json on stdout");
    let v: serde_json::Value = serde_json::from_str(&text[start..]).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
}

#[test]
fn green_output_inverts_p() {
    let x = bump();
    let input = write_json("green-input.json", serde_json::to_value(x.to_json()).unwrap());
    for side in ["retarded", "advanced"] {
        let o = run(&["green", "11", side, "--input", &input]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let j: Section11Json = serde_json::from_slice(&o.stdout).unwrap();
        let g = Section11::from_json(&j).unwrap();
        let s = if side == "retarded" { Side::Retarded } else { Side::Advanced };
        assert!(g.max_abs_diff(&Theory11.green(&x, s).unwrap()) <= 1e-12);
        let back = apply_p11(&g).unwrap();
        assert!(back.axpy(-1.0, &x).unwrap().norm() <= 1e-6 * x.norm());
    }
}

#[test]
fn identity_transform_lifts_unchanged() {
    let x = bump();
    let out = transform(&RelMorphism::M11(Morphism11::identity(1, grid())), &x, "identity");
    let expect = RelSection::S11(GrassmannSection11::unit(1, &x));
    assert_eq!(out.max_abs_diff(&expect), 0.0);
}

#[test]
fn susy_transform_adds_an_odd_coefficient() {
    let g = grid();
    let x = Section11::even_bump(g, 1.0, 0.06, 1.0);
    let m = Morphism11::new(GrassmannElement::zero(1, Field::Real), GrassmannElement::generator(1, 1), g, g).unwrap();
    let RelSection::S11(out) = transform(&RelMorphism::M11(m), &x, "zeta") else {
        panic!("1|1 output expected");
    };
    assert!(out.component(0).max_abs_diff(&x) <= 1e-12);
    let coeff = out.component(1);
    assert_eq!(coeff.parity(), Some(Parity::Odd));
    assert!(coeff.norm() > 1e-3 * x.norm());
}

#[test]
fn quantize_demo_is_deterministic() {
    let a = run(&["quantize-demo"]);
    let b = run(&["quantize-demo"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let _: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
}
