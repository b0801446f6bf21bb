use std::path::Path;
use std::process::Command;

use mbox_cli::{run, EXIT_ERROR, EXIT_OK, EXIT_UNSOLVED};

fn mbox(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mbox").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const ONE_TWO: &str = "rules=strict\np=1\nq=2\nfirst=avoider\nboxes=2,2\n";

#[test]
fn solve_prints_winner_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.txt", ONE_TWO);
    let (code, out, _) = mbox(&["solve", &game]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("winner: Enforcer"), "{out}");
    assert!(out.contains("optimal line:"));
    assert!(out.lines().any(|l| l.trim_start().starts_with("E [")), "{out}");
}

#[test]
fn sweep_writes_sorted_stable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let (code, _, err) = mbox(&[
            "sweep", "--p", "1", "--q", "1", "--k", "1", "--n", "1..3", "--rules", "strict", "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,q,k,n,rules,first,winner,source");
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "1,1,1,1,strict,Avoider,Enforcer,solver");
    assert_eq!(lines[2], "1,1,1,1,strict,Enforcer,Avoider,solver");
}

#[test]
fn sweep_sources_agree_where_they_decide() {
    let dir = tempfile::tempdir().unwrap();
    let mut tables = Vec::new();
    for source in ["solver", "strategy", "criterion"] {
        let path = dir.path().join(format!("{source}.csv"));
        let (code, _, err) = mbox(&[
            "sweep", "--p", "1,2", "--q", "1..2", "--k", "1..2", "--n", "1..4", "--source", source, "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        let mut rdr = csv::Reader::from_path(&path).unwrap();
        let rows: Vec<Vec<String>> = rdr
            .records()
            .map(|r| r.unwrap().iter().map(str::to_string).collect())
            .collect();
        tables.push(rows);
    }
    for (i, exact) in tables[0].iter().enumerate() {
        for other in &tables[1..] {
            let w = &other[i][6];
            assert_eq!(&other[i][..6], &exact[..6]);
            assert!(w == "unsolved" || w == &exact[6], "{:?} vs {:?}", other[i], exact);
        }
    }
}

#[test]
fn criteria_reports_potential_win() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.txt", "rules=strict\np=1\nq=1\nfirst=avoider\nboxes=4x15\n");
    let (code, out, _) = mbox(&["criteria", &game]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("last mover: Enforcer"), "{out}");
    assert!(out.contains("potential criterion: holds; Avoider wins"), "{out}");
}

#[test]
fn play_reports_a_winner() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.txt", ONE_TWO);
    let (code, out, _) = mbox(&["play", &game, "--avoider", "random", "--enforcer", "optimal", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("winner: Enforcer"), "{out}");
}

#[test]
fn play_on_hypergraph_and_graph() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.txt", "rules=strict\np=2\nq=1\nfirst=enforcer\nboxes=1\n");
    let h = write(dir.path(), "h.txt", "m 9\n0 1\n2 3\n4 5\n1 6\n3 7 8\n");
    let (code, out, err) = mbox(&[
        "play", &game, "--hypergraph", &h, "--avoider", "random", "--enforcer", "matching-enforcer",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("winner: Enforcer"), "{out}");

    let mono = write(dir.path(), "m.txt", "rules=monotone\np=1\nq=1\nfirst=avoider\nboxes=1\n");
    let g = write(dir.path(), "graph.txt", "n 8\n0 1\n2 3\n4 5\n6 7\n");
    let (code, out, err) = mbox(&["play", &mono, "--graph", &g, "--avoider", "isolate-vertex", "--enforcer", "spread"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("winner: Avoider"), "{out}");
}

#[test]
fn errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.txt", ONE_TWO);
    let (code, _, err) = mbox(&["play", &game, "--avoider", "nobody", "--enforcer", "optimal"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("unknown strategy"), "{err}");
    let bad = write(dir.path(), "bad.txt", "rules=strict\np=1\ncolour=red\n");
    assert_eq!(mbox(&["solve", &bad]).0, EXIT_ERROR);
    assert_eq!(mbox(&["solve", "/no/such/file"]).0, EXIT_ERROR);
    assert_eq!(mbox(&["sweep", "--p", "0", "--q", "1", "--k", "1", "--n", "1", "--out", "x.csv"]).0, EXIT_ERROR);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.txt", ONE_TWO);
    let cache = dir.path().join("memo.txt");
    let cache = cache.to_str().unwrap();
    let (code, out, _) = mbox(&["cache", "save", cache, &game]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("records written"));
    let (code, out, _) = mbox(&["cache", "load", cache]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.starts_with("0 records"), "{out}");
    let (code, out, _) = mbox(&["--cache", cache, "solve", &game]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("winner: Enforcer"));
    std::fs::write(cache, "something else\n").unwrap();
    assert_eq!(mbox(&["cache", "load", cache]).0, EXIT_ERROR);
}

#[test]
fn budget_override_gives_unsolved_exit() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "g.txt", "rules=monotone\np=1\nq=2\nfirst=avoider\nboxes=8x3\n");
    let out = Command::new(env!("CARGO_BIN_EXE_mbox"))
        .args(["solve", &game])
        .env("MBOX_NODE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_UNSOLVED));
    assert!(String::from_utf8_lossy(&out.stdout).contains("unsolved"));

    let out = Command::new(env!("CARGO_BIN_EXE_mbox"))
        .args(["solve", &game])
        .env("MBOX_NODE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_ERROR));
}

#[test]
fn verify_single_check() {
    let (code, out, _) = mbox(&["verify", "--only", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("criterion  1 PASS"), "{out}");
}
