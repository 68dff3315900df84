use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;
use tonal::format::parse_host;
use tonal::{canonical_colouring, CanonicalSize};

fn tonal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tonal"))
        .args(args)
        .env_remove("TONAL_WORKERS")
        .output()
        .expect("binary runs")
}

fn validator() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
        let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        jsonschema::validator_for(&schema).unwrap()
    })
}

/// Runs a command expected to succeed and returns its validated JSON report.
fn report(args: &[&str]) -> Value {
    let out = tonal(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let errors: Vec<String> = validator().iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} violates the schema: {errors:?}");
    assert_eq!(doc["schemaVersion"], 1);
    doc
}

fn fixture(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn p4() -> String {
    fixture("p4.el", "p 4\ne 0 1\ne 1 2\ne 2 3\n")
}

fn host4() -> String {
    let out = tonal(&["canonical", "host", "--n", "4", "--format", "text"]);
    fixture("host4.el", &String::from_utf8(out.stdout).unwrap())
}

#[test]
fn canonical_sizes_lists_the_family() {
    let doc = report(&["canonical", "sizes", "--limit", "150"]);
    let sizes: Vec<(u64, u64)> = doc["result"]["sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["n"].as_u64().unwrap(), s["r"].as_u64().unwrap()))
        .collect();
    assert_eq!(sizes, [(4, 3), (21, 15), (120, 85)]);
}

#[test]
fn canonical_host_text_is_an_edge_list() {
    let out = tonal(&["canonical", "host", "--n", "21", "--format", "text"]);
    let h = parse_host(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(h, canonical_colouring(CanonicalSize::new(21, 15).unwrap()).unwrap());
    let doc = report(&["canonical", "host", "--n", "21"]);
    assert_eq!(doc["result"]["redCount"], 105);
    let host = fixture("host21.el", &tonal::format::write_host(&h));
    let doc = report(&["canonical", "check", "--host", &host]);
    assert_eq!(doc["result"]["rbrP4Found"], false);
    assert_eq!(doc["result"]["k3TwoOneFound"], false);
}

#[test]
fn pattern_commands() {
    let doc = report(&["patterns", "classes", "--graph", &p4()]);
    assert_eq!(doc["result"]["classes"].as_array().unwrap().len(), 6);
    assert_eq!(doc["result"]["burnsideCount"], 6);
    let doc = report(&["patterns", "witness", "--graph", &p4()]);
    assert_eq!(doc["result"]["starForest"], false);
    assert_eq!(doc["result"]["witness"]["tone"]["red"], 2);
    let star = fixture("star.g6", "Bo\n");
    let doc = report(&["patterns", "witness", "--graph", &star]);
    assert_eq!(doc["result"]["witness"], Value::Null);
    let a = fixture("rbr.el", "p 4\ne 0 1 R\ne 1 2 B\ne 2 3 R\n");
    let b = fixture("rbr2.el", "p 4\ne 3 2 R\ne 2 1 B\ne 0 1 R\n");
    let c = fixture("rrb.el", "p 4\ne 0 1 R\ne 1 2 R\ne 2 3 B\n");
    assert_eq!(
        report(&["patterns", "equivalent", "--a", &a, "--b", &b])["result"]["equivalent"],
        true
    );
    assert_eq!(
        report(&["patterns", "equivalent", "--a", &a, "--b", &c])["result"]["equivalent"],
        false
    );
}

#[test]
fn embed_commands() {
    let host = host4();
    let rrb = fixture("rrb-e.el", "p 4\ne 0 1 R\ne 1 2 R\ne 2 3 B\n");
    let rbr = fixture("rbr-e.el", "p 4\ne 0 1 R\ne 1 2 B\ne 2 3 R\n");
    let doc = report(&["embed", "find", "--host", &host, "--pattern", &rrb]);
    assert_eq!(doc["result"]["found"], true);
    assert_eq!(doc["result"]["map"].as_array().unwrap().len(), 4);
    let doc = report(&["embed", "find", "--host", &host, "--pattern", &rbr]);
    assert_eq!(doc["result"]["found"], false);
    let doc = report(&[
        "embed",
        "coverage",
        "--host",
        &host,
        "--graph",
        &p4(),
        "--level",
        "tone",
    ]);
    assert_eq!(doc["result"]["complete"], false);
    let doc = report(&[
        "embed",
        "coverage",
        "--host",
        &host,
        "--graph",
        &p4(),
        "--level",
        "class",
    ]);
    assert_eq!(doc["result"]["entries"].as_array().unwrap().len(), 6);

    let big = tonal(&["canonical", "host", "--n", "21", "--format", "text"]);
    let big = fixture("host21-e.el", &String::from_utf8(big.stdout).unwrap());
    let sf = fixture("sf.el", "p 5\ne 0 1 R\ne 0 2 B\ne 3 4 B\n");
    let doc = report(&["embed", "star-forest", "--host", &big, "--pattern", &sf]);
    assert_eq!(doc["result"]["found"], true);
    // Outside the proven range the command refuses rather than guessing.
    let out = tonal(&["embed", "star-forest", "--host", &host, "--pattern", &sf]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extremal_commands() {
    let doc = report(&["extremal", "formula", "--n", "16", "--k", "4"]);
    assert_eq!(doc["result"]["value"], 29);
    let doc = report(&["extremal", "bound", "--n", "16", "--parts", "2,1"]);
    assert_eq!(doc["result"]["value"], 48);
    let doc = report(&["extremal", "tot", "--n", "4", "--graph", &p4()]);
    assert_eq!(doc["result"]["value"], 3);
    assert_eq!(doc["result"]["saturated"], true);
    let k2 = fixture("k2.el", "p 2\ne 0 1\n");
    let doc = report(&["extremal", "ot", "--n", "5", "--graph", &k2]);
    assert_eq!(doc["result"]["value"], 0);
}

#[test]
fn output_is_identical_across_worker_counts() {
    let star = fixture("k12.el", "p 3\ne 0 1\ne 0 2\n");
    let run = |workers: &str| tonal(&["--workers", workers, "extremal", "ot", "--n", "7", "--graph", &star]).stdout;
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one, run("8"));
    let env = Command::new(env!("CARGO_BIN_EXE_tonal"))
        .args(["extremal", "ot", "--n", "7", "--graph", &star])
        .env("TONAL_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(one, env.stdout);
    let verify = |workers: &str| {
        tonal(&[
            "--workers",
            workers,
            "verify",
            "--only",
            "star-forest-bound,embedding-oracle",
        ])
        .stdout
    };
    assert_eq!(verify("1"), verify("4"));
}

#[test]
fn other_formats_render() {
    let out = tonal(&["canonical", "sizes", "--limit", "150", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,r,x,y,edges_per_colour"));
    assert_eq!(text.lines().count(), 4);
    let out = tonal(&["patterns", "classes", "--graph", &p4(), "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("6 classes"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        tonal(&["patterns", "classes", "--graph", "/nonexistent/g.el"])
            .status
            .code(),
        Some(1)
    );
    let bad = fixture("bad.el", "p 3\ne 0 1\ne 1 1\n");
    let out = tonal(&["patterns", "classes", "--graph", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 10"));
    assert_eq!(tonal(&["canonical", "host", "--n", "5"]).status.code(), Some(2));
    assert_eq!(
        tonal(&["extremal", "formula", "--n", "3", "--k", "4"]).status.code(),
        Some(2)
    );
    let k2 = fixture("k2-guard.el", "p 2\ne 0 1\n");
    assert_eq!(
        tonal(&["extremal", "ot", "--n", "9", "--graph", &k2]).status.code(),
        Some(2)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_tonal"))
        .args(["extremal", "formula", "--n", "16", "--k", "4"])
        .env("TONAL_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_negative_control_and_budget() {
    let out = tonal(&["verify", "--only", "canonical-obstructions", "--corrupt-canonical"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("canonical-obstructions"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(validator().is_valid(&doc));
    assert_eq!(doc["result"]["passed"], false);

    let out = tonal(&["verify", "--budget-secs", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["complete"], false);

    assert_eq!(tonal(&["verify", "--only", "no-such-claim"]).status.code(), Some(2));
}

#[test]
fn verify_default_run_passes() {
    let doc = report(&["verify"]);
    assert_eq!(doc["result"]["passed"], true);
    assert_eq!(doc["result"]["complete"], true);
    assert_eq!(doc["result"]["claims"].as_array().unwrap().len(), 9);
}
