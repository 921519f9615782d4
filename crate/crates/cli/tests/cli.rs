use std::path::Path;
use std::process::{Command, Output};

use ramsey_goodness::families::{complete, copies};
use ramsey_goodness::{Graph, TwoColoring};
use serde_json::Value;

fn rgood(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgood")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn k11_instance(dir: &Path) -> String {
    let red = Graph::disjoint_union(&[&copies(&complete(11), 3), &Graph::empty(4)]);
    let path = dir.join("k11.col");
    std::fs::write(&path, TwoColoring::from_red(red).to_text()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn invariants_of_small_families() {
    let out = rgood(&["invariants", "C:5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "decided");
    assert_eq!(r["data"]["chi"], 3);
    assert_eq!(r["data"]["sigma"], 1);
    assert_eq!(r["data"]["alpha"], 2);
    assert_eq!(r["data"]["bandwidth"], 2);

    let r = report(&rgood(&["invariants", "P:6"]));
    assert_eq!((r["data"]["chi"].as_u64(), r["data"]["sigma"].as_u64()), (Some(2), Some(3)));
    assert_eq!(r["data"]["alpha"], 3);
    assert_eq!(r["data"]["longest_cycle"], Value::Null);
    assert_eq!(r["data"]["longest_path"].as_array().map(Vec::len), Some(6));
    assert_eq!(r["data"]["equal_clique_union"], false);
}

#[test]
fn graph6_argument_and_report_fields() {
    let p3 = ramsey_goodness::graph6::encode(&ramsey_goodness::families::path(3));
    let r = report(&rgood(&["invariants", &p3]));
    assert_eq!(r["data"]["n"], 3);
    assert_eq!(r["data"]["e"], 2);
    for key in ["command", "inputs", "verdict", "data", "budget", "timing"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["inputs"]["graph"]["graph6"], p3.as_str());
}

#[test]
fn malformed_inputs_exit_with_parse_code() {
    for bad in [&["invariants", ""][..], &["invariants", "nope:3"], &["invariants", "~~~"]] {
        let out = rgood(bad);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = rgood(&["pipeline", "/nonexistent/coloring", "K:3", "--eps", "1/10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_with_four() {
    // F must be connected
    let out = rgood(&["witness", "2*K:2", "K:3"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn goodness_summary() {
    let out = rgood(&["goodness", "P:4", "P:4", "--cap", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "good");
    assert_eq!(r["data"]["summary"], "good, R=5, bound=5");
}

#[test]
fn ramsey_value_and_cap() {
    let r = report(&rgood(&["ramsey", "P:4", "K:3"]));
    assert_eq!(r["verdict"], "decided");
    assert_eq!(r["data"]["value"], 7);
    let out = rgood(&["ramsey", "K:3", "K:3", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["verdict"], "above_cap");
}

#[test]
fn witness_round_trips_through_its_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.col");
    let out = rgood(&["witness", "P:4", "K:3", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "witness");
    let col = TwoColoring::parse(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(col.red(), &copies(&complete(3), 2));
    assert_eq!(r["data"]["coloring"], col.to_text());
    // the graph6 form of the red graph parses to the same coloring
    let again = TwoColoring::parse(r["data"]["red_graph6"].as_str().unwrap()).unwrap();
    assert_eq!(again, col);
}

#[test]
fn eg_check_branches() {
    let r = report(&rgood(&["eg-check", "K:5", "5"]));
    assert_eq!(r["verdict"], "long_cycle");
    let r = report(&rgood(&["eg-check", "P:6", "3"]));
    assert_eq!(r["verdict"], "edge_bound");
}

#[test]
fn pipeline_writes_trace_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let col = k11_instance(dir.path());
    let trace = dir.path().join("trace.json");
    let table = dir.path().join("map.txt");
    let out = rgood(&[
        "pipeline", &col, "3*K:4", "--eps", "1/100", "--beta", "3",
        "--trace", trace.to_str().unwrap(), "--out", table.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["verdict"], "embedding");
    assert_eq!(r["data"]["burr_bound"], 36);

    let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let stages: Vec<&str> = t["records"].as_array().unwrap().iter().map(|s| s["stage"].as_str().unwrap()).collect();
    assert_eq!(stages.first(), Some(&"parameters"));
    assert_eq!(stages.last(), Some(&"embedding"));
    assert_eq!(t, r["data"]["trace"]);

    let text = std::fs::read_to_string(&table).unwrap();
    let map: Vec<(usize, usize)> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(map.len(), 12);
    let coloring = TwoColoring::parse(&std::fs::read_to_string(&col).unwrap()).unwrap();
    let g = copies(&complete(4), 3);
    for (u, v) in g.edges() {
        assert!(coloring.is_blue(map[u].1, map[v].1));
    }
}

#[test]
fn pipeline_reads_stdin_and_reports_red_paths() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_rgood"))
        .args(["pipeline", "-", "2*K:3", "--eps", "1/100"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let col = TwoColoring::from_red(complete(13));
    child.stdin.take().unwrap().write_all(col.to_text().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdict"], "red_path");
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let col = k11_instance(dir.path());
    let run = || {
        let mut r = report(&rgood(&["pipeline", &col, "3*K:4", "--eps", "1/100", "--beta", "3", "--threads", "2"]));
        r.as_object_mut().unwrap().remove("timing");
        r
    };
    assert_eq!(run(), run());
    let inv = || {
        let mut r = report(&rgood(&["invariants", "petersen:"]));
        r.as_object_mut().unwrap().remove("timing");
        r
    };
    assert_eq!(inv(), inv());
}
