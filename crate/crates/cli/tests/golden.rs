use std::process::{Command, Output};

use ordgl::logic::{KripkeTree, TreeJson};
use ordgl::ordinal::{fundamental_seq, hyper_log, Ordinal};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

fn ordgl(args: &[&str]) -> Output {
    let args: Vec<String> = args.iter().map(|a| a.replace("$DATA", DATA)).collect();
    Command::new(env!("CARGO_BIN_EXE_ordgl"))
        .args(&args)
        .output()
        .expect("binary runs")
}

/// `(arguments, exit code, substring of stdout, or of stderr for exit 2)`.
const CORPUS: [(&[&str], i32, &str); 30] = [
    (&["ord", "hlog", "2", "w^(w^3)"], 0, "3"),
    (&["ord", "add", "w", "1"], 0, "w + 1"),
    (&["ord", "add", "1", "w"], 0, "w"),
    (&["ord", "sub", "w", "w^2"], 0, "w^2"),
    (&["ord", "sub", "w^2", "w"], 2, "error"),
    (&["ord", "cmp", "w^w", "w^5"], 0, ">"),
    (&["ord", "log", "w^3 + w^2"], 0, "2"),
    (&["ord", "hexp", "2", "1"], 0, "w^w"),
    (&["ord", "cf", "w + 3"], 0, "1"),
    (&["ord", "fund", "w^2", "3"], 0, "w*3"),
    (&["ord", "hlog", "w", "w^w"], 0, "0"),
    (&["ord", "add", "w^", "1"], 2, "offset 2"),
    (&["prove", "[]([]p0 -> p0) -> []p0"], 0, "valid"),
    (&["prove", "[]p0 -> p0"], 1, "not valid"),
    (&["prove", "p0 &"], 2, "offset"),
    (&["sat", "<>p0, []~p0"], 1, "unsat"),
    (
        &["sat", "<>p0 & <>~p0", "--model", "dot"],
        0,
        "digraph kripke",
    ),
    (&["mc", "<>p0", "$DATA/rank_one.json", "w^2"], 0, "true"),
    (&["mc", "<>p0", "$DATA/rank_one.json", "w*3"], 1, "false"),
    (&["mc", "p0", "$DATA/missing.json", "1"], 2, "missing.json"),
    (&["mc", "p0", "$DATA/broken.json", "1"], 2, "broken.json:3:"),
    (&["derive", "$DATA/rank_one.json", "p0", "2"], 0, "empty"),
    (&["rank", "w^w*2 + w^3", "w^(w+1)", "1"], 0, "3"),
    (&["rank", "w^2", "w", "1"], 2, "error"),
    (
        &["gamma", "3", "--model", "--verify"],
        0,
        "all 6 formulas hold",
    ),
    (&["gamma", "3", "--coloring", "0"], 1, "no bound"),
    (&["ramsey", "arrow", "6", "3", "2"], 0, "true"),
    (&["ramsey", "arrow", "5", "3", "2"], 1, "counterexample"),
    (
        &["ramsey", "arrow", "12", "3", "2", "--budget", "1000"],
        2,
        "budget",
    ),
    (
        &["bouquet", "build", "--input", "$DATA/bad.txt"],
        2,
        "bad.txt:2",
    ),
];

#[test]
fn golden_corpus() {
    for (args, code, needle) in CORPUS {
        let out = ordgl(args);
        let stdout = String::from_utf8_lossy(&out.stdout);
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{args:?}\nstdout: {stdout}\nstderr: {stderr}"
        );
        let haystack = if code == 2 { &stderr } else { &stdout };
        assert!(
            haystack.contains(needle),
            "{args:?}: {needle:?} not in {haystack}"
        );
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ordgl(&["ord", "hlog", "2"]).status.code(), Some(2));
    assert_eq!(ordgl(&["gamma", "3", "--verify"]).status.code(), Some(2));
}

#[test]
fn gamma_model_output() {
    let out = ordgl(&["gamma", "3", "--model", "--verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("theta: w^4 + 1"));
    assert!(text.contains("alpha: w^4"));
}

#[test]
fn bouquet_checks_hold() {
    let out = ordgl(&[
        "bouquet",
        "build",
        "--input",
        "$DATA/gamma3.txt",
        "--check",
        "8",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.matches("holds:").count(), 6);
    let out = ordgl(&[
        "bouquet",
        "build",
        "--input",
        "$DATA/gamma3.txt",
        "--check",
        "2",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "bouquet");
    assert_eq!(v["model"]["children"].as_array().unwrap().len(), 2);
}

#[test]
fn output_matches_library_calls() {
    for (a, n) in [("w^2", 3u64), ("w^w", 2), ("w^(w+1) + w", 4)] {
        let out = ordgl(&["ord", "fund", a, &n.to_string()]);
        let lib = fundamental_seq(&a.parse::<Ordinal>().unwrap(), n).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), format!("{lib}\n"));
    }
    let out = ordgl(&["ord", "hlog", "3", "w^(w^(w^2))", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let lib = hyper_log(&Ordinal::nat(3), &"w^(w^(w^2))".parse().unwrap());
    assert_eq!(v["result"], lib.to_string());
}

#[test]
fn json_models_round_trip() {
    let out = ordgl(&["sat", "<>p0, <>p1, [](p0 -> <>p1)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"], "sat");
    let tree: TreeJson = serde_json::from_value(v["model"].clone()).unwrap();
    let m = KripkeTree::from_json(&tree).unwrap();
    assert!(m.eval(0, &"[](p0 -> <>p1)".parse().unwrap()).unwrap());
}
