use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn docs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadrics"))
        .args(args)
        .current_dir(docs().join("examples"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden_cases() -> Vec<(String, Vec<String>)> {
    let text = std::fs::read_to_string(docs().join("examples/golden.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').unwrap();
            (name.trim().to_string(), args.split_whitespace().map(String::from).collect())
        })
        .collect()
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(docs().join("schemas").join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value, what: &str) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{what}: {errors:?}");
}

#[test]
fn golden_reports_are_reproduced_byte_for_byte() {
    let cases = golden_cases();
    assert!(cases.len() >= 13);
    for (name, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let expected = std::fs::read_to_string(docs().join(format!("examples/reports/{name}.json"))).unwrap();
        assert_eq!(stdout(&o), expected, "{name}");
    }
}

#[test]
fn every_report_validates_against_the_schema() {
    let v = schema("report.schema.json");
    for (name, args) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let doc: Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
        assert_valid(&v, &doc, &name);
    }
}

#[test]
fn schemas_reject_a_broken_report() {
    let v = schema("report.schema.json");
    let mut doc: Value = serde_json::from_str(&stdout(&run(&["weil", "--in", "diag7.json"]))).unwrap();
    doc["result"]["weil"]["coefficients"] = serde_json::json!([1, 0]);
    assert!(!v.is_valid(&doc));
    let mut doc: Value = serde_json::from_str(&stdout(&run(&["count", "--in", "diag7.json"]))).unwrap();
    doc["input"]["digest"] = "md5:00".into();
    assert!(!v.is_valid(&doc));
}

#[test]
fn inputs_and_embedded_objects_validate() {
    let pencil = schema("pencil.schema.json");
    for f in ["diag7.json", "diag17.json", "smooth_q.json", "dependent.json"] {
        let text = std::fs::read_to_string(docs().join("examples").join(f)).unwrap();
        assert_valid(&pencil, &serde_json::from_str(&text).unwrap(), f);
    }
    let doc: Value = serde_json::from_str(&stdout(&run(&["find-lines", "--in", "diag7.json"]))).unwrap();
    assert_valid(&schema("lineset.schema.json"), &doc["result"]["lines"], "lineset");
    let doc: Value = serde_json::from_str(&stdout(&run(&[
        "laurent-demo", "--kind", "odd", "--q", "7", "--a", "0,1,2,3,4,5",
    ])))
    .unwrap();
    let cert = schema("certificate.schema.json");
    assert_valid(&cert, &doc["result"]["certificate"], "certificate");
    assert_valid(&pencil, &doc["result"]["certificate"]["pencil"], "laurent pencil");
}

#[test]
fn readme_examples() {
    let o = run(&["decide", "--in", "diag7.json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"]["verdict"], "rational");
    assert_eq!(doc["result"]["lines_found"], 48);

    let o = run(&["laurent-demo", "--kind", "odd", "--q", "7", "--a", "0,1,2,3,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"]["verdict"], "not_rational");

    let o = run(&["find-lines", "--in", "dependent.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dependent"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["find-lines", "--in", "diag17.json"]), Some(3));
    assert_eq!(code(&["count", "--in", "diag17.json"]), Some(0));
    assert_eq!(code(&["decide"]), Some(2));
    assert_eq!(code(&["decide", "--in", "missing.json"]), Some(2));
    assert_eq!(code(&["decide", "--in", "diag7.json", "--bogus"]), Some(2));
    assert_eq!(code(&["decide", "--in", "diag7.json", "--max-extension", "5"]), Some(2));
    assert_eq!(code(&["incidence", "--in", "diag7.json", "--line", "48"]), Some(2));
    assert_eq!(code(&["laurent-demo", "--kind", "odd", "--q", "7", "--a", "0,0,2,3,4,5"]), Some(2));
    assert_eq!(code(&["laurent-demo", "--kind", "char2", "--q", "4", "--a", "0,1"]), Some(2));
    assert_eq!(code(&["laurent-demo", "--kind", "odd", "--q", "6", "--a", "0,1,2,3,4,5"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn malformed_json_reports_line_and_column() {
    let o = run(&["decide", "--in", "malformed.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3 column"), "{}", stderr(&o));
}

#[test]
fn reports_do_not_depend_on_threads_or_out() {
    for args in [
        vec!["normal-type", "--in", "diag7.json"],
        vec!["delta", "--in", "diag7.json", "--line", "5"],
        vec!["laurent-demo", "--kind", "char2", "--q", "4", "--a", "0,1,g"],
    ] {
        let base = stdout(&run(&args));
        for t in ["1", "8"] {
            let mut a = args.clone();
            a.extend(["--threads", t]);
            assert_eq!(stdout(&run(&a)), base, "{args:?} with {t} threads");
        }
        let dir = std::env::temp_dir().join(format!("quadrics-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{}.json", args[0]));
        let mut a = args.clone();
        let p = path.to_str().unwrap();
        a.extend(["--out", p]);
        let o = run(&a);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        assert_eq!(std::fs::read_to_string(&path).unwrap(), base);
    }
}

#[test]
fn char_two_laurent_input_is_marked_assumed() {
    let doc: Value = serde_json::from_str(&stdout(&run(&[
        "laurent-demo", "--kind", "char2", "--q", "4", "--a", "0,1,g",
    ])))
    .unwrap();
    let pencil = serde_json::to_string(&doc["result"]["certificate"]["pencil"]).unwrap();
    let dir = std::env::temp_dir().join(format!("quadrics-char2-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pencil.json");
    std::fs::write(&path, pencil).unwrap();
    let o = run(&["check-smooth", "--in", path.to_str().unwrap(), "--max-extension", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"]["verdict"], "unknown");
    assert_eq!(doc["result"]["notes"][0], "smoothness: assumed beyond depth 3");
    let o = run(&["decide", "--in", path.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"]["verdict"], "not_rational");
    assert_eq!(doc["result"]["notes"][0], "smoothness: assumed beyond depth 4");
}
