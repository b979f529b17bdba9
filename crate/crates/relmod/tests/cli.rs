use serde_json::Value;
use std::process::{Command, Output};

fn relmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relmod")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn even_ell_is_a_config_error() {
    let o = relmod(&["verify", "--ell", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tiny_tolerance_fails_verification() {
    let o = relmod(&["verify", "--only", "6", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 1);
    assert_eq!(v["pass"], Value::Bool(false));
}

#[test]
fn single_criterion_passes() {
    let o = relmod(&["verify", "--only", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fuse_gives_three_summands() {
    let o = relmod(&["fuse", "--a", "0.3+0.1i", "--b", "0.45-0.2i"]);
    assert!(o.status.success());
    let v = json(&o);
    let list = v["value"].as_array().unwrap();
    assert_eq!(list.len(), 3);
    let dims: Vec<u64> = list.iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![4, 8, 4]);
}

#[test]
fn zero_grading_is_atypical() {
    let o = relmod(&["typical", "--a", "0", "--c", "0"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["value"]["typical"], Value::Bool(false));
    let o = relmod(&["typical", "--a", "0.3+0.1i", "--c", "0"]);
    assert_eq!(json(&o)["value"]["typical"], Value::Bool(true));
}

#[test]
fn output_is_deterministic() {
    let a = relmod(&["mdim", "--ideal", "pert", "--a", "0.3+0.1i", "--c", "1"]);
    let b = relmod(&["mdim", "--ideal", "pert", "--a", "0.3+0.1i", "--c", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v["value"]["re"].is_number());
    assert_eq!(v["meta"]["ell"], 5);
}

#[test]
fn delta_modes() {
    let v = json(&relmod(&["delta", "--mode", "both"]));
    assert!(v["value"]["plus"]["diff"].as_f64().unwrap() < 1e-9);
    let v = json(&relmod(&["delta", "--mode", "sum", "--a", "0.7"]));
    let s = &v["value"]["plus"]["sum"];
    let m = (s["re"].as_f64().unwrap().powi(2) + s["im"].as_f64().unwrap().powi(2)).sqrt();
    let expect = 10.0 / (2.0 * (2.0 * std::f64::consts::PI / 5.0).sin());
    assert!((m - expect).abs() < 1e-9);
}

#[test]
fn table_format() {
    let o = relmod(&["twist", "--a", "0.3", "--format", "table"]);
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("value"));
    assert!(serde_json::from_str::<Value>(&s).is_err());
}

#[test]
fn braid_checks() {
    let v = json(&relmod(&["braid", "--check", "ybe"]));
    assert!(v["value"]["ybe"].as_f64().unwrap() < 1e-9);
    let v = json(&relmod(&["braid", "--check", "twist", "--modules", "standard,typical:0.3:1"]));
    assert_eq!(v["value"][1]["scalar"], Value::Bool(true));
}

#[test]
fn domain_errors_exit_one() {
    let o = relmod(&["mdim", "--a", "0", "--c", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["error"].is_string());
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(relmod(&["mdim", "--a", "zzz"]).status.code(), Some(2));
    assert_eq!(relmod(&["nosuch"]).status.code(), Some(2));
}

#[test]
fn diagram_files() {
    let dir = std::env::temp_dir().join(format!("relmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kink.json");
    let file = serde_json::json!({
        "palette": [{"type": "typical", "a": {"re": 0.3, "im": 0.1}, "c": 0}],
        "bottom": [{"color": 0, "up": true}],
        "slices": [{"op": "twistP", "pos": 0}]
    });
    std::fs::write(&path, file.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let e = relmod(&["eval", "--diagram", p]);
    assert!(e.status.success(), "{}", String::from_utf8_lossy(&e.stderr));
    assert_eq!(json(&e)["value"]["rows"], 4);
    let f = relmod(&["fprime", "--ideal", "pert", "--diagram", p]);
    assert!(f.status.success());
    let t = relmod(&["twist", "--a", "0.3+0.1i"]);
    let d = relmod(&["mdim", "--ideal", "pert", "--a", "0.3+0.1i"]);
    let (fv, tv, dv) = (json(&f)["value"].clone(), json(&t)["value"].clone(), json(&d)["value"].clone());
    let c = |v: &Value| num_complex::Complex64::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap());
    assert!((c(&fv) - c(&tv) * c(&dv)).norm() < 1e-8 * c(&fv).norm().max(1.0));
    std::fs::remove_dir_all(&dir).ok();
}
