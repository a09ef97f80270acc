use std::fs;
use std::path::{Path, PathBuf};

use fracture_lab::cli::{resolve_threads, run};
use fracture_lab::formats::{graph_to_text, ColoredDoc, InstanceDoc};
use fracture_lab_core::fracture::Fracture;
use fracture_lab_core::gadgets::GadgetKind;
use fracture_lab_core::samples::default_instance;
use fracture_lab_core::Graph;
use serde_json::Value;
use tempfile::TempDir;

fn lab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["fracture-lab"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out, err) = lab(&a);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, graph_to_text(g)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn counting_modes() {
    let d = TempDir::new().unwrap();
    let k3 = write_graph(d.path(), "k3.g", &Graph::complete(3));
    let k4 = write_graph(d.path(), "k4.g", &Graph::complete(4));
    let (code, out, _) = lab(&[
        "count",
        "--mode",
        "sub",
        "--pattern",
        s(&k3),
        "--host",
        s(&k4),
    ]);
    assert_eq!((code, out.as_str()), (0, "4\n"));
    let (_, v) = json(&[
        "count",
        "--mode",
        "emb",
        "--pattern",
        s(&k3),
        "--host",
        s(&k4),
    ]);
    assert_eq!(v["exact"], "24");
    let (_, v) = json(&[
        "count",
        "--mode",
        "hom",
        "--pattern",
        s(&k3),
        "--host",
        s(&k4),
        "--mod2",
    ]);
    assert_eq!(v["parity"], 0);
    assert!(v.get("exact").is_none());
    let col = d.path().join("c.json");
    fs::write(
        &col,
        r#"{"palette": 3, "colors": [[0,1,0],[0,2,1],[0,3,2],[1,2,2],[1,3,1],[2,3,0]]}"#,
    )
    .unwrap();
    let (_, v) = json(&[
        "count",
        "--mode",
        "colsub",
        "--pattern",
        s(&k3),
        "--host",
        s(&k4),
        "--coloring",
        s(&col),
    ]);
    assert_eq!(v["exact"], "4");
    let (code, _, err) = lab(&[
        "count",
        "--mode",
        "colsub",
        "--pattern",
        s(&k3),
        "--host",
        s(&k4),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("--coloring"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(lab(&["count", "--mode", "bogus"]).0, 2);
    assert_eq!(lab(&["frobnicate"]).0, 2);
    let (code, _, err) = lab(&[
        "count",
        "--mode",
        "sub",
        "--pattern",
        "/nonexistent.g",
        "--host",
        "/x.g",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent.g"));
    assert_eq!(lab(&["gadget", "build", "--kind", "hexagon"]).0, 2);
    assert_eq!(lab(&["--help"]).0, 0);
}

#[test]
fn classify_reports() {
    let d = TempDir::new().unwrap();
    let t = write_graph(d.path(), "t.g", &Graph::star(4));
    let (code, v) = json(&["classify", "--tree", s(&t), "--dmax", "3", "--amax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["matching_split_number"], 1);
    assert_eq!(v["fork_numbers"].as_array().unwrap().len(), 3);
    let c = write_graph(d.path(), "c.g", &Graph::cycle(4));
    assert_eq!(lab(&["classify", "--tree", s(&c)]).0, 2);
}

#[test]
fn fracture_commands() {
    let d = TempDir::new().unwrap();
    let k3 = write_graph(d.path(), "k3.g", &Graph::complete(3));
    let (_, v) = json(&["fracture", "--graph", s(&k3), "--enumerate"]);
    assert_eq!(v["count"], 8);
    let (_, v) = json(&[
        "fracture",
        "--graph",
        s(&k3),
        "--enumerate",
        "--max-blocks",
        "1",
    ]);
    assert_eq!(v["count"], 1);
    let (code, out, _) = lab(&["fracture", "--graph", s(&k3), "--apply", "0/1;0,2;1,2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "p 4 3\n0 2\n1 3\n2 3\n");
    let target = write_graph(d.path(), "p3.g", &Graph::path(3));
    let (_, v) = json(&[
        "fracture",
        "--graph",
        s(&k3),
        "--coefficients",
        "--target",
        s(&target),
    ]);
    let c = v["coefficients"].as_object().unwrap();
    assert_eq!(c.len(), 4);
    assert_eq!(c.values().filter(|x| *x == "1").count(), 3);
    assert_eq!(c["0,1;0,2;1,2"], "-3");
    assert_eq!(
        lab(&["fracture", "--graph", s(&k3), "--apply", "0;1;2"]).0,
        2
    );
    assert_eq!(lab(&["fracture", "--graph", s(&k3)]).0, 2);
}

#[test]
fn p2_instance_has_243_odd_fractures() {
    let d = TempDir::new().unwrap();
    let k5 = write_graph(d.path(), "k5.g", &Graph::complete(5));
    let (code, out, _) = lab(&["gadget", "build", "--kind", "p2", "--base", s(&k5)]);
    assert_eq!(code, 0);
    let inst = d.path().join("p2.json");
    fs::write(&inst, out).unwrap();
    let (_, v) = json(&["fracture", "--enumerate", "--odd", "--instance", s(&inst)]);
    assert_eq!(v["count"], 243);
    let (_, v) = json(&["fracture", "--odd", "--graph", s(&k5)]);
    assert_eq!(v["count"], 243);
    let (code, v) = json(&[
        "gadget",
        "verify",
        "--instance",
        s(&inst),
        "--trials",
        "4",
        "--seed",
        "1",
    ]);
    assert_eq!((code, v["pass"].as_bool()), (0, Some(true)));
}

#[test]
fn fork_verification_passes_and_is_deterministic() {
    let (code, a, _) = lab(&[
        "--json", "gadget", "verify", "--kind", "fork", "--trials", "50", "--seed", "7",
    ]);
    assert_eq!(code, 0);
    let (_, b, _) = lab(&[
        "--json",
        "--threads",
        "2",
        "gadget",
        "verify",
        "--kind",
        "fork",
        "--trials",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["trials"], 50);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 50);
    for (i, r) in results.iter().enumerate() {
        assert_eq!(r["index"], i);
        let invalid: u64 = r["invalid"].as_str().unwrap().parse().unwrap();
        assert_eq!(invalid % 2, 0);
    }
}

#[test]
fn failing_host_exits_with_one_and_is_embedded() {
    let d = TempDir::new().unwrap();
    let i = default_instance(GadgetKind::Star).unwrap();
    let hp = d.path().join("h.json");
    fs::write(
        &hp,
        serde_json::to_string(&ColoredDoc::from_colored(&i.witness_host())).unwrap(),
    )
    .unwrap();
    let mut doc = InstanceDoc::from_instance(&i);
    let ip = d.path().join("i.json");
    fs::write(&ip, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, v) = json(&["gadget", "verify", "--instance", s(&ip), "--host", s(&hp)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["lhs"], "1");
    assert!(v["results"][0].get("host").is_none());

    // With tau replaced by the trivial fracture the left side counts copies
    // of q itself, which the witness host does not contain.
    doc.tau = Fracture::top(&i.q).encode(&i.q);
    fs::write(&ip, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, v) = json(&["gadget", "verify", "--instance", s(&ip), "--host", s(&hp)]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    let r = &v["results"][0];
    assert_eq!(
        (r["lhs"].as_str(), r["rhs"].as_str(), r["equal"].as_bool()),
        (Some("0"), Some("1"), Some(false))
    );
    let embedded: ColoredDoc = serde_json::from_value(r["host"].clone()).unwrap();
    assert_eq!(embedded.to_colored().unwrap(), i.witness_host());
}

#[test]
fn reductions() {
    let d = TempDir::new().unwrap();
    let k3 = write_graph(d.path(), "k3.g", &Graph::complete(3));
    let k4 = write_graph(d.path(), "k4.g", &Graph::complete(4));
    let col = d.path().join("c.json");
    fs::write(
        &col,
        r#"{"palette": 3, "colors": [[0,1,0],[0,2,1],[0,3,2],[1,2,2],[1,3,1],[2,3,0]]}"#,
    )
    .unwrap();
    let (code, v) = json(&[
        "reduce",
        "colsub-parity",
        "--pattern",
        s(&k3),
        "--host",
        s(&k4),
        "--coloring",
        s(&col),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["parity"], 0);
    assert_eq!(v["oracle_calls"], 8);
    let c6 = write_graph(d.path(), "c6.g", &Graph::cycle(6));
    let (_, v) = json(&[
        "reduce",
        "st-path",
        "--host",
        s(&c6),
        "-s",
        "0",
        "-t",
        "3",
        "-k",
        "3",
    ]);
    assert_eq!(v["count"], "2");
    assert_eq!(v["parity"], 0);
    let (_, v) = json(&[
        "reduce",
        "st-path",
        "--host",
        s(&c6),
        "-s",
        "0",
        "-t",
        "2",
        "-k",
        "2",
    ]);
    assert_eq!(v["count"], "1");
    assert_eq!(v["parity"], 1);
    assert_eq!(
        lab(&[
            "reduce",
            "st-path",
            "--host",
            s(&c6),
            "-s",
            "0",
            "-t",
            "0",
            "-k",
            "2"
        ])
        .0,
        2
    );
}

#[test]
fn p2_packing_modes() {
    let (code, v) = json(&["gadget", "p2-packing", "--sample", "20000", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["mismatches"], 0);
    let (code, v) = json(&["gadget", "p2-packing"]);
    assert_eq!(code, 0);
    assert_eq!(v["packing"], 243);
    assert_eq!(v["covered"], "33554432");
}

#[test]
fn selftest_passes() {
    let (code, v) = json(&["selftest"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
}

#[test]
fn thread_count_resolution() {
    assert_eq!(resolve_threads(Some(3), Some("5")), Ok(3));
    assert_eq!(resolve_threads(None, Some(" 5 ")), Ok(5));
    assert_eq!(resolve_threads(None, None), Ok(0));
    assert!(resolve_threads(None, Some("many"))
        .unwrap_err()
        .contains("FRACTURE_LAB_THREADS"));
}
