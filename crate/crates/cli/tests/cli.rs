use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use permrep_core::graphcore::generators::{cycle, demo_tree, spider_s};
use permrep_core::graphcore::io::format_graph;
use permrep_core::graphcore::{represents, Graph, Word};
use serde_json::Value;

fn permrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permrep"))
        .args(args)
        .env_remove("PERMREP_BOUNDS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    let path = dir.join(name);
    fs::write(&path, format_graph(g)).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = permrep(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn tree_reproduces_demo_permutations() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "tree.txt", &demo_tree());
    let v = json(&["tree", "--edges", &g, "--root", "1"]);
    assert_eq!(v["p1"], "2 8 3 5 4 6 1 10 7 9 12 11");
    assert_eq!(v["p2"], "6 12 11 9 4 10 7 2 1 5 8 3");
    assert_eq!(v["p3"], "12 10 8 2 3 5 4 7 6 9 11 1");
    assert_eq!(v["prn"], 3);
}

#[test]
fn verify_spider_word() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "s.g", &spider_s());
    let w = dir.path().join("s.w");
    fs::write(&w, "2 3 4 6 1 5 7 6 7 4 5 2 1 3 2 3 4 5 6 7 1\n").unwrap();
    let out = permrep(&["verify", "--word", w.to_str().unwrap(), "--graph", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "represents: true\n");

    let out = permrep(&["verify", "--word", "1 2 3 4 5 6 7", "--graph", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "represents: false\n");
}

#[test]
fn derive_inline_word() {
    let out = permrep(&["derive", "--word", "a b a b"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a b\n");
}

#[test]
fn malformed_graph_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3 2\n1 2\n2 2\n").unwrap();
    let out = permrep(&["circle", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(permrep(&["bogus"]).status.code(), Some(1));
    assert_eq!(permrep(&["cycle", "5"]).status.code(), Some(1));
    assert_eq!(permrep(&["--bounds", "perm2=x", "path", "4"]).status.code(), Some(1));
    assert_eq!(permrep(&["--help"]).status.code(), Some(0));
}

/// Every emitted witness is fed back through `verify`.
#[test]
fn emitted_words_verify() {
    let dir = tempfile::tempdir().unwrap();
    let mut cases: Vec<(Vec<String>, Graph)> = Vec::new();
    for n in [4, 6, 10] {
        cases.push((vec!["cycle".into(), n.to_string()], cycle(n)));
    }
    for n in [1, 2, 3, 7] {
        cases.push((vec!["path".into(), n.to_string()], permrep_core::graphcore::generators::path(n)));
    }
    for m in [1, 2, 4] {
        let graph_out = dir.path().join(format!("book{m}.txt"));
        let v = json(&["book", &m.to_string(), "--graph-out", graph_out.to_str().unwrap()]);
        let g: Graph = serde_json::from_value(v["graph"].clone()).unwrap();
        let from_file = permrep_core::graphcore::io::parse_graph(&fs::read_to_string(&graph_out).unwrap()).unwrap();
        assert_eq!(g, from_file);
        let w: Word = serde_json::from_value(v["word"].clone()).unwrap();
        assert!(represents(&w, &g).unwrap());
        let path = write_graph(dir.path(), &format!("b{m}.g"), &g);
        let out = permrep(&["verify", "--word", &w.to_string(), "--graph", &path]);
        assert_eq!(out.status.code(), Some(0));
        let witness: Vec<String> = serde_json::from_value(v["witness"].clone()).unwrap();
        let out = permrep(&["verify", "--word", &witness.join(" "), "--graph", &path]);
        assert_eq!(out.status.code(), Some(0), "m = {m} witness");
    }
    for (args, g) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let v = json(&args);
        let word = v["word"].as_str().unwrap().to_string();
        let path = write_graph(dir.path(), "g.txt", &g);
        let out = permrep(&["verify", "--word", &word, "--graph", &path]);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn json_graph_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "c6.txt", &cycle(6));
    let lc = json(&["lc", "--graph", &g, "--vertex", "a1"]);
    let parsed: Graph = serde_json::from_value(lc.clone()).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), lc);
    let again = dir.path().join("lc.json");
    fs::write(&again, serde_json::to_string(&lc).unwrap()).unwrap();
    let twice: Graph = serde_json::from_value(json(&["lc", "--graph", again.to_str().unwrap(), "--vertex", "a1"])).unwrap();
    assert_eq!(twice, cycle(6));
}

#[test]
fn oracle_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_graph(dir.path(), "c6.txt", &cycle(6));
    let v = json(&["search", "--graph", &c6, "-k", "2"]);
    assert_eq!(v["found"], false);
    assert_eq!(v["states_examined"], 518_400);
    assert!(v["elapsed_ms"].is_u64());
    let v = json(&["search", "--graph", &c6, "-k", "3", "--canonical"]);
    assert_eq!(v["found"], true);
    let v = json(&["circle", "--graph", &c6]);
    assert_eq!(v["found"], true);
    let v = json(&["comparability", "--graph", &c6]);
    assert_eq!(v["found"], true);
    let v = json(&["probe", "--graph", &c6]);
    assert_eq!(v["verdict"], "consistent");
    assert_eq!(v["prn"], 3);
}

#[test]
fn bounds_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_graph(dir.path(), "c6.txt", &cycle(6));
    let out = Command::new(env!("CARGO_BIN_EXE_permrep"))
        .args(["search", "--graph", &c6, "-k", "2"])
        .env("PERMREP_BOUNDS", "perm2=5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit of 5"));
}

#[test]
fn book_suffix_tokens() {
    let v = json(&["book", "2", "--suffix"]);
    assert_eq!(v["permutations"][2], "1 2 0_p 0 2_p 1_p");
    assert_eq!(v["representation_number"], 2);
}

#[test]
fn selftest_quick_and_corrupted_fixture() {
    let out = permrep(&["selftest", "--quick", "--only", "1,4,7,9"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("[PASS]")).count(), 4);

    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    for entry in fs::read_dir(&src).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    fs::write(dir.path().join("demo_tree.perms"), "2 8 3 5 4 6 1 10 7 9 11 12\n6 12 11 9 4 10 7 2 1 5 8 3\n12 10 8 2 3 5 4 7 6 9 11 1\n").unwrap();
    let out = permrep(&["selftest", "--only", "1,7", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("[FAIL] 1 demo tree golden permutations"), "{text}");
    assert!(text.contains("[PASS] 7"), "{text}");
}
