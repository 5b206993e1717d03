use std::io::Write;
use std::process::{Command, Output, Stdio};

const EXAMPLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/example.json");

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_widerec"))
        .args(args)
        .env_remove("WIDEREC_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table1_lists_five_rows() {
    let o = run(&["table1"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("5 rows; bijection verified; fixpoint oracle agrees"),
        "{text}"
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "wide", EXAMPLE][..],
        &["bijection", EXAMPLE],
        &["--json", "fuzz", "--count", "4"],
    ] {
        assert_eq!(run(args, None).stdout, run(args, None).stdout, "{args:?}");
    }
}

#[test]
fn wide_without_flag_counts_all() {
    let o = run(&["--json", "wide", EXAMPLE], None);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["results"]["containing_image"], false);
    assert!(json["results"]["count"].as_u64().unwrap() > 5);
    assert_eq!(json["command"], "wide");
    assert!(json.get("elapsed_ms").is_none());
}

#[test]
fn one_vertex_algebra_has_two_wide_subcategories() {
    let spec = r#"{"field":{"p":3},"quiver":{"vertices":["1"],"arrows":[]},"idempotent":["1"]}"#;
    let o = run(&["--json", "wide", "-"], Some(spec));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["results"]["count"], 2);
}

#[test]
fn dot_output_is_a_digraph() {
    let o = run(&["--dot", "bijection", EXAMPLE], None);
    let text = stdout(&o);
    assert!(text.starts_with("digraph bijection {"));
    assert_eq!(text.matches(" -> ").count(), 5);
    assert_eq!(
        run(&["--dot", "indec", EXAMPLE], None).status.code(),
        Some(2)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["check", EXAMPLE, "--theorem", "all"], None)
            .status
            .code(),
        Some(0)
    );
    assert_eq!(run(&["indec", "-"], Some("{")).status.code(), Some(2));
    assert_eq!(
        run(&["indec", "/nonexistent.json"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", EXAMPLE, "--theorem", "1.0"], None)
            .status
            .code(),
        Some(2)
    );
    let tight = std::fs::read_to_string(EXAMPLE)
        .unwrap()
        .replace(r#""total_dim": 4"#, r#""total_dim": 4, "hom_budget": 1"#);
    assert_eq!(run(&["indec", "-"], Some(&tight)).status.code(), Some(3));
    let small = std::fs::read_to_string(EXAMPLE)
        .unwrap()
        .replace(r#""total_dim": 4"#, r#""total_dim": 4, "subset_cap": 2"#);
    assert_eq!(run(&["wide", "-"], Some(&small)).status.code(), Some(3));
}

#[test]
fn degenerate_idempotent_gives_identity_bijection() {
    let spec = std::fs::read_to_string(EXAMPLE).unwrap().replace(
        r#""idempotent": ["2", "3"]"#,
        r#""idempotent": ["1", "2", "3"]"#,
    );
    let o = run(&["--json", "bijection", "-"], Some(&spec));
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in json["results"]["rows"].as_array().unwrap() {
        assert_eq!(row["subcategory"]["labels"], row["restriction"]["labels"]);
    }
    let o = run(&["check", "-", "--theorem", "all"], Some(&spec));
    assert!(o.status.success(), "{}", stdout(&o));
}
