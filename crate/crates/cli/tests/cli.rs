use std::process::{Command, Output};

fn surfqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfqp"))
        .args(args)
        .env_remove("SURFQP_FIXTURES")
        .output()
        .expect("spawn surfqp")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = surfqp(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn verify_d2_passes() {
    let out = surfqp(&["verify", "d2", "--fixtures", "builtin"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = surfqp(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_fixture_exits_2() {
    let out = surfqp(&["qp", "--surface", "/nonexistent/triangulation.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flip_mutation_on_the_hexagon() {
    let v = json(&["verify", "flip-mutation", "--surface", "hexagon"]);
    let cases = v["cases"].as_array().unwrap();
    let passes = cases
        .iter()
        .filter(|c| {
            c["status"] == "pass" && !c["operation"].as_str().unwrap().starts_with("control")
        })
        .count();
    assert_eq!(passes, 42);
}

#[test]
fn verify_output_is_deterministic() {
    let a = surfqp(&["--json", "verify", "k0"]);
    let b = surfqp(&["--json", "verify", "k0"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn surface_counts() {
    let v = json(&["surface", "--genus", "0", "--marked", "6"]);
    assert_eq!(
        (v["arcs"].as_u64(), v["decorations"].as_u64()),
        (Some(3), Some(4))
    );
}

#[test]
fn mutation_of_the_three_cycle() {
    let v = json(&["mutate", "--qp", "three-cycle", "--vertex", "2"]);
    let s = v.to_string();
    assert!(
        s.contains("x'") && s.contains("y'") && !s.contains("[x.y]"),
        "{s}"
    );
}

#[test]
fn egraph_dot() {
    let out = surfqp(&[
        "egraph",
        "--surface",
        "pentagon",
        "--depth",
        "5",
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph {") && dot.trim_end().ends_with('}'));
    let nodes = dot
        .lines()
        .filter(|l| l.contains("[ label") && !l.contains("->"))
        .count();
    assert_eq!(nodes, 5);
}

#[test]
fn egraph_json() {
    let v = json(&[
        "egraph",
        "--surface",
        "hexagon",
        "--depth",
        "1",
        "--format",
        "json",
    ]);
    assert!(v["edges"].as_array().unwrap().len() <= 3);
}

#[test]
fn ext_table_and_transport() {
    let v = json(&["ext", "table", "--surface", "pentagon"]);
    assert!(v.is_object());
    let v = json(&[
        "ext",
        "transport",
        "--surface",
        "hexagon",
        "--path",
        "d0-3+,d0-3-",
    ]);
    assert!(v.is_object());
}

#[test]
fn twist_apply_and_braid() {
    let v = json(&["twist", "apply", "--qp", "a2", "--word", "1+,1-"]);
    assert_eq!(v["matrix"], serde_json::json!([[1, 0], [0, 1]]));
    let out = surfqp(&["twist", "braid", "--qp", "a2", "--i", "1", "--j", "2"]);
    assert_eq!(out.status.code(), Some(0));
}
