//! The binary end to end: exit codes, output formats, schema conformance.

use std::path::Path;
use std::process::{Command, Output};

use gapdens::report::{from_csv, Document, SCHEMA};

fn gapdens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapdens"))
        .args(args)
        .env_remove("GAPDENS_PRECISION")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn assert_schema_valid(json: &str) {
    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let doc: serde_json::Value = serde_json::from_str(json).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn json_doc(args: &[&str]) -> Document {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = gapdens(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_schema_valid(&text);
    Document::from_json(&text).unwrap()
}

fn summary(doc: &Document, name: &str) -> f64 {
    doc.records
        .iter()
        .find(|r| r.section == "summary" && r.name == name)
        .and_then(|r| r.number())
        .unwrap()
}

fn lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn generate_writes_sequence_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sq.txt");
    let o = gapdens(&["generate", "--family", "power", "--a", "0.5", "--n", "10", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let want: Vec<String> = (1..=10).map(|k: u32| (k * k).to_string()).collect();
    assert_eq!(lines(&out), want);

    let o = gapdens(&["generate", "--family", "double-exp-union", "--n", "11"]);
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 11);
    assert_eq!(*body.last().unwrap(), "257");
}

#[test]
fn invalid_parameters_exit_two() {
    let o = gapdens(&["generate", "--family", "power", "--a", "1.5", "--n", "10"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("a must lie in (0,1]"));

    let o = gapdens(&["probe", "--family", "power", "--a", "0.5", "--sigma", "-1"]);
    assert_eq!(code(&o), 2);

    let o = gapdens(&["profile", "--family", "nosuch"]);
    assert_eq!(code(&o), 2);

    let o = gapdens(&["frobnicate"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gapdens"))
        .args(["generate", "--family", "power", "--a", "0.5", "--n", "5"])
        .env("GAPDENS_PRECISION", "16")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("precision"));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# overrides\nn=5\nfamily=arithmetic k=2 l=3\n").unwrap();
    let o = gapdens(&["generate", "--family", "power", "--a", "0.5", "--n", "10", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let body: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect();
    assert_eq!(body, ["5", "8", "11", "14", "17"]);
}

#[test]
fn profile_of_squares_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("custom.txt");
    let text: String = (1..=2000u64).map(|k| format!("{}\n", k * k)).collect();
    std::fs::write(&f, text).unwrap();
    let doc = json_doc(&["profile", "--file", f.to_str().unwrap()]);
    assert!((summary(&doc, "eps_hat") - 0.5).abs() < 1e-12);
}

#[test]
fn profile_of_arithmetic_family() {
    let doc = json_doc(&["profile", "--family", "arithmetic", "--k", "3", "--l", "5", "--n", "100000"]);
    assert!((summary(&doc, "alpha_hat") - 1.0).abs() < 0.01);
    assert!((summary(&doc, "beta_hat") - 1.0).abs() < 0.01);
    // ln n / ln(5n + 3) is still 0.88 at n = 10^5
    let eps = summary(&doc, "eps_hat");
    assert!(eps > 0.85 && eps < 1.0, "{eps}");
}

#[test]
fn finite_product_reports_its_values() {
    let doc = json_doc(&["profile", "--family", "product", "--c", "10", "--alpha", "2"]);
    assert_eq!(doc.kind.name(), "finite-set");
}

#[test]
fn verify_exit_codes() {
    let o = gapdens(&["verify", "--check", "analytic"]);
    assert_eq!(code(&o), 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1\n4\n3\n9\n").unwrap();
    let o = gapdens(&["verify", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);

    let o = gapdens(&["verify", "--file", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(code(&o), 3);

    let ok = dir.path().join("ok.manifest");
    std::fs::write(
        &ok,
        "family=power a=1/2 n=4000 check=sandwich\nfamily=geometric alpha=1 b=2 n=3000 check=rho-tau-zero\n",
    )
    .unwrap();
    let o = gapdens(&["verify", "--manifest", ok.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    // a strict sandwich tolerance fails on the slowly converging k + l n
    let failing = dir.path().join("fail.manifest");
    std::fs::write(&failing, "family=arithmetic k=3 l=5 n=4000 check=sandwich tol=0.01\n").unwrap();
    let o = gapdens(&["verify", "--manifest", failing.to_str().unwrap()]);
    assert_eq!(code(&o), 1);

    let o = gapdens(&["verify", "--output", "/nonexistent-dir/x.json", "--check", "analytic"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn probe_outputs() {
    let doc = json_doc(&["probe", "--family", "geometric", "--alpha", "1", "--b", "2", "--sigma", "0.2"]);
    let r = doc.find("geometric(alpha=1,b=2)", "series", "sigma").unwrap();
    assert_eq!(r.diagnostic.as_deref(), Some("converging"));

    let doc = json_doc(&["probe", "--family", "power", "--a", "0.5", "--bracket", "0.1", "1.0"]);
    let lo = doc.find("power(a=0.5)", "bracket", "lo").unwrap().number().unwrap();
    let hi = doc.find("power(a=0.5)", "bracket", "hi").unwrap().number().unwrap();
    assert!(lo <= 0.5 && 0.5 <= hi, "[{lo}, {hi}]");
}

#[test]
fn every_json_output_validates_and_csv_round_trips() {
    let cases: &[&[&str]] = &[
        &["generate", "--family", "sqrt-exp", "--n", "200"],
        &["generate", "--family", "geometric", "--b", "3", "--n", "400"],
        &["profile", "--family", "nonsquare-squares", "--n", "3000"],
        &["verify", "--family", "double-exp-union", "--n", "60"],
        &["probe", "--family", "power", "--a", "1/3", "--n", "5000", "--sigma", "0.5", "--bracket", "0.1", "1"],
        &["table", "--n", "2000"],
    ];
    for args in cases {
        let json = json_doc(args);
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let o = gapdens(&csv_args);
        assert!(code(&o) <= 1);
        let back = from_csv(&stdout(&o)).unwrap();
        assert_eq!(back, json, "{args:?}");
    }
}

#[test]
fn table_pretty_marks_divergence() {
    let o = gapdens(&["table", "--n", "2000"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("+∞(div)"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn schema_command_prints_schema() {
    let o = gapdens(&["schema"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), SCHEMA);
}
