use std::process::{Command, Output};

const M7_15_DIMS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/match/m7_15_phi51.dims");
const M7_15_H: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/match/m7_15_phi51.h");

fn etale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etale")).args(args).env_remove("ETALE_PRECISION_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(etale(&["classify", "nosuchring"]).status.code(), Some(2));
    assert_eq!(etale(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(etale(&["classify", "so5_2", "--md", "99"]).status.code(), Some(2));
    assert_eq!(etale(&["classify", "so5_2", "--md", "1", "--all"]).status.code(), Some(2));
}

#[test]
fn precision_cap_from_environment() {
    let low = Command::new(env!("CARGO_BIN_EXE_etale"))
        .args(["rings", "list"])
        .env("ETALE_PRECISION_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(low.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_etale"))
        .args(["rings", "list"])
        .env("ETALE_PRECISION_CAP", "256")
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn so5_classification_check_passes() {
    let o = etale(&["classify", "so(5)_2", "--all", "--check"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("1+X      TY(Z/5Z)  6     false"), "{text}");
    assert!(text.contains("completely anisotropic: no"));
}

#[test]
fn condense_reports_both_categories() {
    let o = etale(&["condense", "so5_2", "--algebra", "1+X", "--md", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("TY(Z/5Z)"));
    assert!(text.contains("Vec^1_{Z/5Z}"));
    assert!(text.contains("V=W"));
    // Ruled-out algebras are refused.
    assert_eq!(etale(&["condense", "so5_2", "--algebra", "1+Y"]).status.code(), Some(2));
}

#[test]
fn structured_and_csv_output() {
    let o = etale(&["--format", "json", "gsd", "so5_2", "--algebra", "1+X"]);
    let value: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(value[0]["rows"][0]["GSD"], "6");
    assert_eq!(value[0]["rows"][0]["ssb"], "true");
    let csv = stdout(&etale(&["--format", "csv", "characters", "vec_z6"]));
    assert!(csv.starts_with("# real characters of Vec_Z6\n#,"));
}

#[test]
fn export_round_trips() {
    let dir = std::env::temp_dir().join(format!("etale-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("su2_5.json");
    assert!(etale(&["rings", "export", "su2_5", "--output", path.to_str().unwrap()]).status.success());
    let bundled = stdout(&etale(&["rings", "show", "su2_5"]));
    let reloaded = stdout(&etale(&["rings", "show", path.to_str().unwrap()]));
    assert_eq!(bundled, reloaded);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn minimal_model_match() {
    let o = etale(&["match", "--dims", M7_15_DIMS, "--h", M7_15_H]);
    let text = stdout(&o);
    assert!(text.contains("su(2)_5"));
    let line = text.lines().find(|l| l.starts_with("object X")).unwrap();
    assert!(line.ends_with("L16"), "{text}");
}

#[test]
fn runs_are_deterministic() {
    let args = ["--format", "csv", "mfcs", "count", "z2_ising"];
    let a = etale(&args);
    let b = etale(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("16+16+32+32=96"));
}
