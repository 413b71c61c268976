use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hexaspinor"));
    c.env_remove("HEXASPINOR_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn tmp(name: &str, v: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hexaspinor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn tensor(shape: &[usize], f: impl Fn(usize) -> [f64; 2]) -> Value {
    let count: usize = shape.iter().product();
    json!({"shape": shape, "entries": (0..count).map(f).collect::<Vec<_>>()})
}

fn identity(n: usize) -> Value {
    tensor(&[n, n], |k| if k / n == k % n { [1.0, 0.0] } else { [0.0, 0.0] })
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let ls = lines(&o);
    assert!(ls.len() > 50);
    assert!(ls.iter().all(|l| l["pass"] == true));
    assert_eq!(ls.last().unwrap()["suite"], "all");
    assert!(ls.iter().all(|l| l.get("duration_ms").is_none()));
}

#[test]
fn output_is_byte_stable() {
    let a = run(&["verify", "octo", "--seed", "11"]);
    let b = run(&["verify", "octo", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let t = run(&["verify", "cover", "--timing"]);
    assert!(lines(&t).last().unwrap()["duration_ms"].as_f64().is_some());
}

#[test]
fn tolerance_from_environment() {
    let o = bin().args(["verify", "norden"]).env("HEXASPINOR_TOL", "1e-30").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin().args(["verify", "norden", "--tol", "1e-10"]).env("HEXASPINOR_TOL", "1e-30").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify", "norden", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn norden_table_entry() {
    let v = &lines(&run(&["tables", "--set", "norden6"]))[0];
    assert_eq!(v["eta_up"]["shape"], json!([6, 4, 4]));
    let e = &v["eta_up"]["entries"][16 + 1];
    assert_eq!(e[0].as_f64().unwrap(), 0.7071067811865475);
    assert_eq!(e[1].as_f64().unwrap(), 0.0);
}

#[test]
fn other_tables() {
    let e8 = &lines(&run(&["tables", "--set", "eta8"]))[0];
    assert_eq!(e8["eta"]["shape"], json!([8, 8, 8]));
    let rf = &lines(&run(&["tables", "--set", "realform", "--sig", "1,5"]))[0];
    assert_eq!(rf["signature"], json!([1, 5]));
    assert_eq!(rf["branch_sign"].as_f64(), Some(-1.0));
    let oc = &lines(&run(&["tables", "--set", "octonion"]))[0];
    assert_eq!(oc["table"]["shape"], json!([8, 8, 8]));
    assert_eq!(run(&["tables", "--set", "realform", "--sig", "4,2"]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let bad = std::env::temp_dir().join("hexaspinor-cli-bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(run(&["push", "--in", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["push"]).status.code(), Some(2));
    let ones = tmp("ones.json", &tensor(&[6, 6], |_| [1.0, 0.0]));
    let o = run(&["lift", "--in", ones.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("orthogonal"));
    let wrong = tmp("wrong-shape.json", &identity(3));
    assert_eq!(run(&["push", "--in", wrong.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn push_then_lift() {
    // diag(2, 1/2, 1, 1) has determinant 1
    let s = tensor(&[4, 4], |k| match k {
        0 => [2.0, 0.0],
        5 => [0.5, 0.0],
        10 | 15 => [1.0, 0.0],
        _ => [0.0, 0.0],
    });
    let sp = tmp("s.json", &s);
    let pushed = &lines(&run(&["push", "--in", sp.to_str().unwrap()]))[0];
    assert!(pushed["orthogonality_residual"].as_f64().unwrap() < 1e-12);
    let kp = tmp("k.json", &pushed["k"]);
    let out = std::env::temp_dir().join(format!("hexaspinor-cli-{}-lift.json", std::process::id()));
    let o = run(&["lift", "--in", kp.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let lifted: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(lifted["round_trip_residual"].as_f64().unwrap() < 1e-12);
    let d = lifted["s"]["entries"][0][0].as_f64().unwrap().abs();
    assert!((d - 2.0).abs() < 1e-12);
}

#[test]
fn nullpair_and_canon() {
    // X = e1, Y = e2: p = X Y^T has a single entry at (0, 1)
    let p = tmp("p.json", &tensor(&[4, 4], |k| if k == 1 { [3.0, 0.0] } else { [0.0, 0.0] }));
    let v = &lines(&run(&["nullpair", "--in", p.to_str().unwrap()]))[0];
    assert!(v["reconstruction_residual"].as_f64().unwrap() < 1e-14);
    // i * diag(1, -1, 2, -2) lies in the compact slice
    let d = [1.0, -1.0, 2.0, -2.0];
    let r = tmp("r.json", &tensor(&[4, 4], |k| if k / 4 == k % 4 { [0.0, d[k / 4]] } else { [0.0, 0.0] }));
    let o = run(&["canon", "--in", r.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let ev = &lines(&o)[0]["eigenvalues"];
    let sum: f64 = (0..4).map(|k| ev[k][1].as_f64().unwrap()).sum();
    assert!(sum.abs() < 1e-12);
}

#[test]
fn flag_and_quadrics() {
    let f = &lines(&run(&["flag", "--theta", "0.3"]))[0];
    assert_eq!(f["pass"], true);
    assert_eq!(f["extension_type"], "second");

    let e = |k: usize| tensor(&[8], move |i| if i == k { [1.0, 0.0] } else { [0.0, 0.0] });
    let fam = tmp("family.json", &json!({"vectors": [e(0), e(1), e(2), e(3)]}));
    assert_eq!(lines(&run(&["quadric", "family", "--in", fam.to_str().unwrap()]))[0]["rho"], 1);
    let swapped = tmp("family2.json", &json!({"vectors": [e(4), e(1), e(2), e(3)]}));
    assert_eq!(lines(&run(&["quadric", "family", "--in", swapped.to_str().unwrap()]))[0]["rho"], -1);

    let v4 = |xs: [f64; 4]| tensor(&[4], move |i| [xs[i], 0.0]);
    let pt = tmp("point.json", &json!({"x": v4([1.0, 0.0, 0.0, 0.0]), "y": v4([0.0, 1.0, 0.0, 0.0])}));
    let pg = &lines(&run(&["quadric", "point2gen", "--in", pt.to_str().unwrap()]))[0];
    assert_eq!(pg["rank"], 3);
    assert!(pg["residual"].as_f64().unwrap() < 1e-12);
    let bad = tmp("point-bad.json", &json!({"x": v4([1.0, 0.0, 0.0, 0.0]), "y": v4([1.0, 0.0, 0.0, 0.0])}));
    assert_eq!(run(&["quadric", "point2gen", "--in", bad.to_str().unwrap()]).status.code(), Some(2));

    let zero = tmp("zero-biv.json", &tensor(&[4, 4], |_| [0.0, 0.0]));
    let hc = &lines(&run(&["quadric", "coords", "--in", zero.to_str().unwrap()]))[0];
    assert_eq!(hc["nf"], json!([0, 0]));
}

#[test]
fn octonion_product_with_unit() {
    let unit = tmp("unit.json", &tensor(&[8], |i| if i == 3 { [1.0, 0.0] } else { [0.0, 0.0] }));
    let x = tmp("x.json", &tensor(&[8], |i| [i as f64 + 1.0, -0.5]));
    let o = run(&["octonion", "--mul", unit.to_str().unwrap(), x.to_str().unwrap()]);
    let p = &lines(&o)[0]["product"]["entries"];
    for i in 0..8 {
        assert!((p[i][0].as_f64().unwrap() - (i as f64 + 1.0)).abs() < 1e-13);
        assert!((p[i][1].as_f64().unwrap() + 0.5).abs() < 1e-13);
    }
    let t = &lines(&run(&["octonion", "--table"]))[0];
    assert_eq!(t["reading"], json!([false, false, false]));
}

#[test]
fn curvature_report() {
    let o = run(&["curvature", "--seed", "3", "--sig", "2,4"]);
    assert_eq!(o.status.code(), Some(0));
    let ls = lines(&o);
    let last = ls.last().unwrap();
    assert_eq!(last["weyl"]["shape"], json!([4, 4, 4, 4]));
    assert!(last["real"].is_boolean());
    let wrong = tmp("r6.json", &tensor(&[6, 6, 6], |_| [0.0, 0.0]));
    assert_eq!(run(&["curvature", "--in", wrong.to_str().unwrap()]).status.code(), Some(2));
}
