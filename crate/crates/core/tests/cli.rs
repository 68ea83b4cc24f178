use std::io::Write;
use std::process::{Command, Output, Stdio};

fn confluent(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_confluent"))
        .args(args)
        .env_remove("CONFLUENT_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate(args: &[&str]) -> String {
    let o = confluent(&[&["generate"], args].concat(), "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn parse_svg(text: &str) -> roxmltree::Document<'_> {
    let doc = roxmltree::Document::parse(text).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    doc
}

#[test]
fn draw_k5_is_deterministic() {
    let k5 = generate(&["complete", "5"]);
    let a = confluent(&["draw"], &k5);
    let b = confluent(&["draw", "-"], &k5);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    let doc = parse_svg(&svg);
    let circles = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
    assert_eq!(circles, 1);
}

#[test]
fn draw_petersen_minus_vertex_fails() {
    let g = generate(&["petersen-minus-vertex"]);
    let o = confluent(&["draw"], &g);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("check --oracle"));
}

#[test]
fn check_modes() {
    let o = confluent(&["check", "--planar"], &generate(&["hypercube", "3"]));
    assert_eq!((o.status.code(), stdout(&o).lines().next()), (Some(0), Some("planar")));
    let o = confluent(&["check", "--planar"], &generate(&["complete", "5"]));
    assert_eq!((o.status.code(), stdout(&o).lines().next()), (Some(1), Some("non-planar")));
    let o = confluent(&["check", "--oracle"], &generate(&["petersen"]));
    assert_eq!((o.status.code(), stdout(&o).lines().next()), (Some(1), Some("not-reducible")));
    let o = confluent(&["check", "--oracle"], &generate(&["bipartite", "3", "4"]));
    assert_eq!((o.status.code(), stdout(&o).lines().next()), (Some(0), Some("reducible")));
}

#[test]
fn reduce_emits_a_log() {
    let o = confluent(&["reduce"], &generate(&["bipartite", "3", "3"]));
    assert_eq!(o.status.code(), Some(0));
    let log: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(log["status"], "planar");
    assert_eq!(log["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn constructions() {
    let tree = generate(&["random-tree", "9", "--seed", "4"]);
    for (kind, input) in [("cotree", tree.as_str()), ("cocycle", "7"), ("cograph", "cu(a, u(b, c), d)")] {
        let o = confluent(&["draw", "--construction", kind], input);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
        parse_svg(&stdout(&o));
    }
}

#[test]
fn seeds() {
    assert_eq!(generate(&["random", "12", "0.4", "--seed", "3"]), generate(&["random", "12", "0.4", "--seed", "3"]));
    assert_ne!(generate(&["random", "12", "0.4", "--seed", "3"]), generate(&["random", "12", "0.4", "--seed", "4"]));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(confluent(&["draw"], "0 1\nnot an edge\n").status.code(), Some(2));
    assert_eq!(confluent(&["generate", "nonsense"], "").status.code(), Some(2));
    assert_eq!(confluent(&["check"], "").status.code(), Some(2));
    assert_eq!(confluent(&["draw", "/nonexistent/graph.txt"], "").status.code(), Some(2));
}

#[test]
fn file_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let o = confluent(&["generate", "bipartite", "3", "4", "-o", &path("g.txt")], "");
    assert_eq!(o.status.code(), Some(0));
    let o = confluent(&["draw", &path("g.txt"), "-o", &path("g.svg"), "--network", &path("net.json")], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    parse_svg(&std::fs::read_to_string(path("g.svg")).unwrap());
    let net = confluent::track::TrackNetwork::from_json(&std::fs::read_to_string(path("net.json")).unwrap()).unwrap();
    assert_eq!(net.realized_edges().len(), 12);
    let o = confluent(&["check", "--oracle", &path("g.txt"), "--witness", &path("w.json")], "");
    assert_eq!(o.status.code(), Some(0));
    let log = confluent::reduction::ReductionResult::from_json(&std::fs::read_to_string(path("w.json")).unwrap());
    assert_eq!(confluent::reduction::expand(&log.unwrap()).unwrap().m(), 12);
}
