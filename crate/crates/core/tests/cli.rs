use std::path::{Path, PathBuf};
use std::process::Command;

use pltopo::cli::{run, Status};
use serde_json::{json, Value};

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn call(args: &[&str], files: &[&Path]) -> pltopo::cli::CommandResult {
    let mut argv: Vec<String> = vec!["pltopo".into()];
    argv.extend(args.iter().map(|s| s.to_string()));
    for f in files {
        argv.push("--in".into());
        argv.push(f.display().to_string());
    }
    run(argv)
}

fn with_out(args: &[&str], files: &[&Path], out: &Path) -> pltopo::cli::CommandResult {
    let mut a: Vec<&str> = args.to_vec();
    let o = out.display().to_string();
    a.push("--out");
    a.push(&o);
    call(&a, files)
}

fn pts(list: &[&[&str]]) -> Value {
    json!(list)
}

#[test]
fn boundary_of_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", &json!({
        "dim": 2, "ambient": 2, "simplices": [[["0", "0"], ["1", "0"], ["0", "1"]]]
    }));
    let r = call(&["boundary"], &[&tri]);
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.payload["simplices"].as_array().unwrap().len(), 3);
    assert_eq!(r.payload["dim"], 1);
}

#[test]
fn one_edge_is_not_a_cycle_and_witness_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write(dir.path(), "one_edge.json", &json!({
        "dim": 1, "ambient": 2, "simplices": [[["0", "0"], ["1", "0"]]]
    }));
    let w = dir.path().join("w.json");
    let r = with_out(&["check-cycle"], &[&edge], &w);
    assert_eq!((r.status, r.exit_code()), (Status::Violation, 2));
    assert_eq!(call(&["check-cycle"], &[&w]).status, Status::Violation);
}

#[test]
fn simpliciality_witness_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cross = write(dir.path(), "cross.json", &json!({
        "dim": 1, "ambient": 2,
        "simplices": [[["0", "0"], ["2", "2"]], [["0", "2"], ["2", "0"]], [["5", "5"], ["6", "5"]]]
    }));
    let w = dir.path().join("w.json");
    assert_eq!(with_out(&["check-simplicial"], &[&cross], &w).status, Status::Violation);
    let again = call(&["check-simplicial"], &[&w]);
    assert_eq!(again.status, Status::Violation);
    assert_eq!(again.payload["witness"]["simplices"].as_array().unwrap().len(), 2);
}

#[test]
fn position_witnesses_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let collinear = write(dir.path(), "c.json", &json!({
        "ambient": 2, "points": pts(&[&["0", "0"], &["1", "1"], &["5", "-3"], &["3", "3"]])
    }));
    let w = dir.path().join("w.json");
    assert_eq!(with_out(&["check-gp"], &[&collinear], &w).status, Status::Violation);
    let again = call(&["check-gp"], &[&w]);
    assert_eq!(again.status, Status::Violation);
    assert_eq!(again.payload["witness"]["points"].as_array().unwrap().len(), 3);

    let lines = write(dir.path(), "lines.json", &json!({
        "ambient": 2,
        "points": pts(&[&["1", "0"], &["-1", "0"], &["3/5", "4/5"], &["-3/5", "-4/5"], &["0", "1"], &["0", "-1"]])
    }));
    let w2 = dir.path().join("w2.json");
    assert_eq!(with_out(&["check-sgp"], &[&lines], &w2).status, Status::Violation);
    assert_eq!(call(&["check-sgp"], &[&w2]).status, Status::Violation);
    let r = call(&["check-gp"], &[&lines]);
    assert_eq!(r.status, Status::Ok);
}

#[test]
fn lemma_witnesses_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let square = |n: usize| {
        let e = [
            [["0", "0"], ["1", "0"]],
            [["1", "0"], ["1", "1"]],
            [["1", "1"], ["0", "1"]],
            [["0", "1"], ["0", "0"]],
        ];
        json!({ "dim": 1, "ambient": 2, "cells": e[..n] })
    };
    let full = write(dir.path(), "sq.json", &square(4));
    let ok = call(&["lemma-eq"], &[&full]);
    assert_eq!(ok.status, Status::Ok);
    assert_eq!(ok.payload["simplices"].as_array().unwrap().len(), 4);

    let open = write(dir.path(), "open.json", &square(3));
    let w = dir.path().join("w.json");
    let r = with_out(&["lemma-eq"], &[&open], &w);
    assert_eq!(r.status, Status::Violation);
    assert_eq!(r.payload["hypothesis"], 2);
    assert_eq!(call(&["lemma-eq"], &[&w]).payload["hypothesis"], 2);

    let overlap = write(dir.path(), "ov.json", &json!({
        "dim": 1, "ambient": 2, "cells": [[["0", "0"], ["2", "0"]], [["1", "0"], ["3", "0"]]]
    }));
    let w = dir.path().join("w1.json");
    assert_eq!(with_out(&["lemma-eq"], &[&overlap], &w).payload["hypothesis"], 1);
    assert_eq!(call(&["lemma-eq"], &[&w]).payload["hypothesis"], 1);
}

#[test]
fn resimplicialize_reports_degenerate_points() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", &json!({
        "dim": 1, "ambient": 2,
        "simplices": [[["0", "0"], ["4", "0"]], [["4", "0"], ["0", "4"]], [["0", "4"], ["0", "0"]]]
    }));
    let on_edge = write(dir.path(), "u.json", &json!({ "ambient": 2, "points": [["2", "0"], ["2", "5"]] }));
    let w = dir.path().join("w.json");
    let r = with_out(&["resimplicialize"], &[&tri, &on_edge], &w);
    assert_eq!(r.status, Status::Violation);
    assert_eq!(call(&["check-sgp"], &[&w]).status, Status::Violation);

    let generic = write(dir.path(), "g.json", &json!({ "ambient": 2, "points": [["7/3", "-1"], ["5/2", "9/7"]] }));
    let r = call(&["resimplicialize"], &[&tri, &generic]);
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.payload["dim"], 1);
}

#[test]
fn generators_and_products() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    assert_eq!(with_out(&["gen-sphere", "--k", "2"], &[], &s).status, Status::Ok);
    let dp = call(&["deleted-product"], &[&s]);
    assert_eq!(dp.payload["cells"], 50);
    assert_eq!(dp.payload["fixed_point_free"], true);
    assert_eq!(call(&["check-cycle"], &[&s]).status, Status::Ok);

    let t = call(&["gen-torus", "--l", "1"], &[]);
    assert_eq!(t.payload["summary"]["face_vector"], json!([9, 27, 18]));
    assert_eq!(t.payload["summary"]["euler_characteristic"], 0);
}

#[test]
fn linking_and_leibniz() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", &json!({
        "dim": 1, "ambient": 3,
        "simplices": [[["-2", "-1", "0"], ["2", "-1", "0"]], [["2", "-1", "0"], ["0", "2", "0"]], [["0", "2", "0"], ["-2", "-1", "0"]]]
    }));
    let y = write(dir.path(), "y.json", &json!({
        "dim": 1, "ambient": 3,
        "simplices": [[["1/7", "0", "-1"], ["-1/5", "0", "1"]], [["-1/5", "0", "1"], ["1/3", "5", "1/2"]], [["1/3", "5", "1/2"], ["1/7", "0", "-1"]]]
    }));
    let r = call(&["linking"], &[&x, &y]);
    assert_eq!(r.payload["linking_mod2"], 1);

    let cfg = dir.path().join("ra.json");
    with_out(&["gen-remark-a", "--k", "2"], &[], &cfg);
    // l = 0 is outside the identity's hypotheses
    assert_eq!(call(&["leibniz"], &[&cfg]).status, Status::Error);
}

#[test]
fn errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(call(&["no-such-command"], &[]).exit_code(), 1);
    assert_eq!(call(&[], &[]).exit_code(), 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 1,\n \"ambient\": 2,\n \"simplices\": [[[\"0\"]]\n").unwrap();
    let r = call(&["boundary"], &[&bad]);
    assert_eq!(r.exit_code(), 1);
    assert!(r.payload["error"].as_str().unwrap().contains("line"));
    let field = write(dir.path(), "field.json", &json!({ "dim": 1, "ambient": 2, "simplexes": [] }));
    let r = call(&["boundary"], &[&field]);
    assert!(r.payload["error"].as_str().unwrap().contains("simplexes"));
    assert_eq!(call(&["boundary"], &[]).exit_code(), 1);
}

#[test]
fn schema_lists_formats() {
    let r = call(&["--schema"], &[]);
    assert_eq!(r.status, Status::Ok);
    assert!(r.payload.as_object().unwrap().len() >= 5);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    std::fs::write(&cnf, "p cnf 3 2\n1 -2 3 0\n-1 2 0\n").unwrap();
    let runs: Vec<(Vec<u8>, Vec<u8>)> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("k{i}.json"));
            let o = Command::new(env!("CARGO_BIN_EXE_pltopo"))
                .args(["reduce", "--k", "2", "--d", "4", "--in"])
                .arg(&cnf)
                .arg("--out")
                .arg(&out)
                .output()
                .unwrap();
            let stdout = String::from_utf8(o.stdout).unwrap().replace(&format!("k{i}.json"), "k.json");
            (stdout.into_bytes(), std::fs::read(&out).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);

    let gen = || {
        Command::new(env!("CARGO_BIN_EXE_pltopo"))
            .args(["gen-sphere", "--k", "2", "--d", "4", "--seed", "17"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(gen(), gen());
}
