use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetatqft")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn close(v: &Value, re: f64, im: f64) -> bool {
    (v[0].as_f64().unwrap() - re).abs() < 1e-9 && (v[1].as_f64().unwrap() - im).abs() < 1e-9
}

#[test]
fn empty_surgery_invariant_is_inverse_root_of_level() {
    let v = json(&run(&["invariant", "--input", &data("s3.json"), "--format", "float"]));
    assert!(close(&v["invariant"], 0.5, 0.0), "{v}");
}

#[test]
fn level_flag_wins_over_file() {
    let v = json(&run(&["invariant", "--input", &data("s3.json"), "--N", "16", "--format", "float"]));
    assert_eq!(v["N"], 16);
    assert!(close(&v["invariant"], 0.25, 0.0));
}

#[test]
fn lens_space_value() {
    let v = json(&run(&["invariant", "--input", &data("lens_4_1.json"), "--format", "float"]));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!(close(&v["invariant"], h, -h), "{v}");
}

#[test]
fn fourier_transform_of_empty_skein() {
    let v = json(&run(&["mcg-rep", "--input", &data("phi.json"), "--format", "float"]));
    let coeffs = v["image"]["coefficients"].as_array().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(coeffs.len(), 2);
    assert_eq!(coeffs[0][0], serde_json::json!([0]));
    assert_eq!(coeffs[1][0], serde_json::json!([1]));
    assert!(close(&coeffs[0][1], h, 0.0) && close(&coeffs[1][1], h, 0.0), "{v}");
    // the inline word gives the same bytes
    let inline = run(&["mcg-rep", "--word", r#"[["phi",1]]"#, "--N", "2", "--apply", "0", "--format", "float"]);
    assert_eq!(inline.stdout, run(&["mcg-rep", "--input", &data("phi.json"), "--format", "float"]).stdout);
}

#[test]
fn cylinder_is_identity_and_output_is_deterministic() {
    let a = run(&["cobordism", "--input", &data("cylinder_genus1.json")]);
    let b = run(&["cobordism", "--input", &data("cylinder_genus1.json"), "--threads", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&run(&["cobordism", "--input", &data("cylinder_genus1.json"), "--format", "float"]));
    let e = v["entries"].as_array().unwrap();
    assert_eq!(e.len(), 4);
    for (i, row) in e.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert!(close(x, if i == j { 1.0 } else { 0.0 }, 0.0));
        }
    }
}

#[test]
fn exact_and_float_outputs_agree() {
    let exact = json(&run(&["mcg-rep", "--input", &data("phi.json")]));
    let float = json(&run(&["mcg-rep", "--input", &data("phi.json"), "--format", "float"]));
    for (er, fr) in exact["entries"].as_array().unwrap().iter().zip(float["entries"].as_array().unwrap()) {
        for (e, f) in er.as_array().unwrap().iter().zip(fr.as_array().unwrap()) {
            assert!(close(f, e["float"][0].as_f64().unwrap(), e["float"][1].as_f64().unwrap()));
        }
    }
}

#[test]
fn heisenberg_matrices() {
    let v = json(&run(&["heisenberg", "--input", &data("heisenberg.json"), "--format", "float"]));
    assert_eq!(v["operators"].as_array().unwrap().len(), 2);
    let inline = json(&run(&["heisenberg", "--N", "4", "--p", "1", "--q", "0", "--format", "float"]));
    assert_eq!(inline["operators"][0], v["operators"][0]);
}

#[test]
fn theta_check_passes() {
    let v = json(&run(&["theta-check", "--input", &data("theta.json")]));
    assert_eq!(v["passed"], true, "{v}");
}

#[test]
fn selftest_subset() {
    let v = json(&run(&["selftest", "--only", "1,8,12"]));
    assert_eq!(v["passed"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariant"]).status.code(), Some(1));
    assert_eq!(run(&["invariant", "--input", &data("s3.json"), "--N", "3"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["invariant", "--input", &data("cylinder_genus1.json")]).status.code(), Some(1));
    // 13 components of genus 1 at N = 4 would need 4^13 basis vectors
    assert_eq!(run(&["mcg-rep", "--word", "[]", "--genus", "13", "--N", "4"]).status.code(), Some(2));
}
