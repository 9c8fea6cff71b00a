//! The `mpart` binary: exit codes, output formats and catalogs.

use std::process::{Command, Output};

use serde_json::Value;

fn mpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpart"))
        .args(args)
        .env_remove("MPART_JOBS")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn solve_contract() {
    let c5 = mpart(&["solve", "--matrix", "0*;*0", "--graph6", "Dhc"]);
    assert_eq!(c5.status.code(), Some(1));
    assert_eq!(json(&c5)["result"], "no-partition");

    let two_k2 = mpart(&["solve", "--matrix", "0*;*1", "--edges", "4; 0-1, 2-3"]);
    assert_eq!(two_k2.status.code(), Some(1));

    let p4 = mpart(&["solve", "--matrix", "0*;*1", "--edges", "4; 0-1, 1-2, 2-3"]);
    assert_eq!(p4.status.code(), Some(0));
    let parts: Vec<usize> = serde_json::from_value(json(&p4)["parts"].clone()).unwrap();
    // independent check of the witness: part 0 independent, part 1 a clique
    let edges = [(0, 1), (1, 2), (2, 3)];
    for u in 0..4 {
        for v in u + 1..4 {
            let adjacent = edges.contains(&(u, v));
            if parts[u] == 0 && parts[v] == 0 {
                assert!(!adjacent);
            }
            if parts[u] == 1 && parts[v] == 1 {
                assert!(adjacent);
            }
        }
    }
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["solve", "--matrix", "0*;11", "--graph6", "A_"][..],
        &["solve", "--matrix", "0x", "--graph6", "A_"],
        &["solve", "--matrix", "0", "--graph6", "A"],
        &[
            "solve", "--matrix", "0", "--graph6", "A_", "--edges", "2; 0-1",
        ],
        &["construct", "mkt", "--k", "3", "--t", "3"],
        &[
            "enumerate",
            "--matrix",
            "0",
            "--class",
            "split",
            "--max-n",
            "10",
            "--no-catalog",
        ],
        &["nonsense"],
    ] {
        let o = mpart(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn files_as_inputs() {
    let tmp = tempfile::tempdir().unwrap();
    let m = tmp.path().join("m.txt");
    let g = tmp.path().join("g.txt");
    std::fs::write(&m, "0*\n*0\n").unwrap();
    std::fs::write(&g, "5; 0-1, 1-2, 2-3, 3-4, 4-0\n").unwrap();
    let o = mpart(&[
        "check-minimal",
        "--matrix-file",
        m.to_str().unwrap(),
        "--graph-file",
        g.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "minimal-obstruction");
    assert_eq!(v["certificate_ok"], true);
    assert_eq!(v["certificate"]["witnesses"].as_array().unwrap().len(), 5);
}

#[test]
fn enumerate_counts_and_catalog() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let o = mpart(&[
        "enumerate",
        "--matrix",
        "0*;*1",
        "--class",
        "all",
        "--max-n",
        "6",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["counts"], serde_json::json!({"4": 2, "5": 1}));
    let dir = tmp.path().join("0x-x1").join("all");
    assert_eq!(
        std::fs::read_to_string(dir.join("n4.g6")).unwrap(),
        "CK\nC]\n"
    );
    assert_eq!(std::fs::read_to_string(dir.join("n5.g6")).unwrap(), "DLo\n");
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["bounds"]["split"]["value"], 11);
    assert_eq!(manifest["tool_version"], env!("CARGO_PKG_VERSION"));

    let split = mpart(&[
        "enumerate",
        "--matrix",
        "0*;*1",
        "--class",
        "split",
        "--max-n",
        "9",
        "--no-catalog",
        "--format",
        "tsv",
    ]);
    assert_eq!(split.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(split.stdout).unwrap(),
        "n\tgraph6\tcertificate-ok\n"
    );

    let star = mpart(&[
        "enumerate",
        "--matrix",
        "*0;01",
        "--max-n",
        "5",
        "--no-catalog",
    ]);
    assert_eq!(star.status.code(), Some(0));
    assert!(json(&star)["trivial_reason"].is_string());
}

#[test]
fn jobs_from_environment() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_mpart"))
            .args([
                "enumerate",
                "--matrix",
                "0*;*1",
                "--max-n",
                "6",
                "--no-catalog",
                "--format",
                "tsv",
            ])
            .env("MPART_JOBS", jobs)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("3");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run("0").status.code(), Some(2));
}

#[test]
fn constructions() {
    let large = json(&mpart(&["construct", "large-split", "--n", "1"]));
    assert_eq!(large["vertices"], 7);
    assert_eq!(large["matrix"], "0**;*01;*10");
    let gt = json(&mpart(&["construct", "gt", "--t", "3"]));
    assert_eq!(gt["vertices"], 7);
    assert_eq!(gt["chordal"], true);
    let mkt = json(&mpart(&["construct", "mkt", "--k", "5", "--t", "3"]));
    assert_eq!(mkt["rows"][4], "*1110");

    // the constructed graph feeds back into the solver
    let g6 = large["graph6"].as_str().unwrap();
    let o = mpart(&["check-minimal", "--matrix", "0**;*01;*10", "--graph6", g6]);
    assert_eq!(json(&o)["status"], "minimal-obstruction");
}

#[test]
fn recognize_classes() {
    let c5 = "Dhc";
    for class in ["split", "bipartite", "cobipartite", "chordal"] {
        assert_eq!(
            mpart(&["recognize", "--class", class, "--graph6", c5])
                .status
                .code(),
            Some(1),
            "{class}"
        );
    }
    let k4 = mpart(&[
        "recognize",
        "--class",
        "cobipartite",
        "--edges",
        "4; 0-1,0-2,0-3,1-2,1-3,2-3",
    ]);
    assert_eq!(k4.status.code(), Some(0));
    assert_eq!(json(&k4)["member"], true);
}

#[test]
fn timeout_exits_3() {
    // full verification does not finish in a millisecond
    let o = mpart(&["--timeout", "0.001", "verify", "--level", "full"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_quick_and_tamper() {
    let o = mpart(&["verify", "--level", "quick", "--format", "json"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    assert_eq!(json(&o)["passed"], true);

    let t = mpart(&["verify", "--level", "quick", "--tamper"]);
    assert_eq!(t.status.code(), Some(1));
    let table = String::from_utf8(t.stdout).unwrap();
    let row12 = table.lines().find(|l| l.starts_with("12\t")).unwrap();
    assert!(row12.contains("FAIL"), "{row12}");
}
