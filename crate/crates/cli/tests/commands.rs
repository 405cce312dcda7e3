use std::process::{Command, Output};

use serde_json::Value;

use padded_schubert::{MarkedPipeDream, Permutation, PipeDream};

const TYPE_A_W: &str = "2,1,3,6,7,5,4";
const TYPE_A_PI: &str = "7,6,5,4,3,2,1";
const TYPE_A_P: &str = "[[1,1],[1,5],[2,5],[3,2],[4,2],[5,2]]";
const TYPE_A_Q: &str = "[[1,1],[1,3],[2,4],[3,2],[3,4],[4,2],[5,2]]";

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padded-schubert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

/// Runs a command expected to succeed and returns its trimmed stdout.
fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    cli(args).status.code()
}

#[test]
fn enumerate_counts() {
    assert_eq!(ok(&["enumerate", "1,4,3,2", "--format", "count"]), "5");
    assert_eq!(ok(&["enumerate", "1", "--format", "count"]), "1");
    assert_eq!(ok(&["enumerate", "3,2,1", "--format", "count"]), "1");
}

#[test]
fn enumerate_json_round_trips() {
    let text = ok(&["enumerate", "3,1,5,2,4", "--format", "json"]);
    assert!(text.contains(r#"{"crosses":[[1,1],[1,2],[1,4],[3,1]]}"#));
    let pds: Vec<PipeDream> = serde_json::from_str(&text).unwrap();
    let w: Permutation = "3,1,5,2,4".parse().unwrap();
    assert!(pds.iter().all(|pd| pd.permutation() == &w));
    assert!(pds.windows(2).all(|p| p[0] < p[1]));
    assert_eq!(serde_json::to_string(&pds).unwrap(), text);
}

#[test]
fn enumerate_ascii() {
    let text = ok(&["enumerate", "2,1", "--format", "ascii"]);
    assert_eq!(text, "{(1,1)}\n+.\n..");
}

#[test]
fn padded_polynomials() {
    assert_eq!(
        ok(&["padded", "1,4,3,2", "3,4,2,1"]),
        "x1*x2*x3*y1*y2 + x1*x2^2*y1*y3 + x1^2*x2*y2*y3 + x1^2*x3*y2^2 + x2^2*x3*y1^2"
    );
    assert_eq!(ok(&["padded", "1", "2,1"]), "y1");
    assert_eq!(ok(&["padded", "3,4,2,1", "3,4,2,1"]), "x1^2*x2^2*x3");
    let terms = json(&["padded", "1,4,3,2", "3,4,2,1", "--format", "json"]);
    assert_eq!(terms.as_array().unwrap().len(), 5);
}

#[test]
fn schubert_polynomials() {
    assert_eq!(ok(&["schubert", "1,3,2"]), "x1 + x2");
    assert_eq!(ok(&["schubert", "3,2,1"]), "x1^2*x2");
}

#[test]
fn phi_worked_runs() {
    let run = json(&["phi", TYPE_A_W, TYPE_A_PI, "--crosses", TYPE_A_P, "--mark", "3,4"]);
    assert_eq!(run["kind"], "A");
    assert_eq!(run["k"], 7);
    assert_eq!(run["steps"].as_array().unwrap().len(), 4);
    let q: PipeDream = serde_json::from_value(run["result"].clone()).unwrap();
    assert_eq!(q.permutation().to_string(), "2,1,4,6,7,5,3");
    let first: MarkedPipeDream = serde_json::from_value(run["steps"][0].clone()).unwrap();
    assert_eq!(first.permutation().to_string(), TYPE_A_W);

    let run = json(&[
        "phi",
        "2,1,6,5,7,4,3",
        "6,5,7,3,4,2,1",
        "--crosses",
        "[[1,1],[1,5],[2,2],[2,3],[3,2],[4,1],[4,2],[5,1],[5,2]]",
        "--mark",
        "3,4",
    ]);
    assert_eq!(run["kind"], "B");
    let q: PipeDream = serde_json::from_value(run["result"].clone()).unwrap();
    assert_eq!(q.permutation().to_string(), "2,4,6,5,7,1,3");
}

#[test]
fn phi_class_zero() {
    let text = ok(&["phi", "1", "2,1", "--crosses", "[]", "--mark", "1,1"]);
    assert_eq!(
        text,
        r#"{"cover":[1,2],"k":0,"kind":"0","result":{"crosses":[[1,1]]},"steps":[{"crosses":[],"mark":[1,1]}]}"#
    );
}

#[test]
fn phi_trace_frames() {
    let text = ok(&["phi", TYPE_A_W, TYPE_A_PI, "--crosses", TYPE_A_P, "--mark", "3,4", "--trace"]);
    let (head, frames) = text.split_once("\n\n").unwrap();
    serde_json::from_str::<Value>(head).unwrap();
    assert_eq!(frames.matches("step ").count(), 4);
    assert!(frames.contains("result: 2,1,4,6,7,5,3"));
    assert_eq!(frames.matches('*').count(), 4);
}

#[test]
fn fiber_of_type_a_result() {
    let fiber = json(&["fiber", TYPE_A_W, TYPE_A_PI, "--cover", "3,4", "--crosses", TYPE_A_Q]);
    assert_eq!(fiber["ok"], true);
    let sizes: Vec<u64> = serde_json::from_value(fiber["sizes"].clone()).unwrap();
    let a = fiber["sets"]["A"].as_array().unwrap().len() as u64;
    let b = fiber["sets"]["B"].as_array().unwrap().len() as u64;
    assert_eq!(sizes, vec![1, a, b]);
    let members: Vec<MarkedPipeDream> = fiber["fiber"]["A"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| serde_json::from_value(m["marked"].clone()).unwrap())
        .collect();
    let input: MarkedPipeDream =
        serde_json::from_str(&format!(r#"{{"crosses":{TYPE_A_P},"mark":[3,4]}}"#)).unwrap();
    assert!(members.contains(&input));

    let all = json(&["fiber", "1,3,2", "3,2,1", "--cover", "1,3"]);
    assert!(all.as_array().unwrap().iter().all(|f| f["ok"] == true));
}

/// Inversion count of a one-line window.
fn length(w: &[usize]) -> usize {
    (0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] > w[j])
        .count()
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n);
            out.push(q);
        }
    }
    out
}

/// Pairs (w, pi) in S_n with pi 132-avoiding and l(pi w^{-1}) + l(w) = l(pi).
fn weak_pairs(n: usize) -> usize {
    let perms = all_perms(n);
    let avoids_132 = |p: &Vec<usize>| {
        !(0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| p[i] < p[k] && p[k] < p[j])))
    };
    let mut count = 0;
    for pi in perms.iter().filter(|p| avoids_132(p)) {
        for w in &perms {
            let mut w_inv = vec![0; n];
            for (i, &v) in w.iter().enumerate() {
                w_inv[v - 1] = i + 1;
            }
            let u: Vec<usize> = w_inv.iter().map(|&i| pi[i - 1]).collect();
            if length(&u) + length(w) == length(pi) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn verify_sweeps() {
    for kind in ["delta", "nabla"] {
        let report = json(&["verify", kind, "--n", "4"]);
        assert_eq!(report["ok"], true);
        assert_eq!(report["cases"], weak_pairs(4));
        assert_eq!(report["counterexamples"], Value::Array(Vec::new()));
    }
    let sl2 = json(&["verify", "sl2", "--lambda", "2,2,1"]);
    assert_eq!((sl2["ok"].clone(), sl2["cases"].clone()), (true.into(), 18.into()));
    let single = json(&["verify", "nabla", "--pi", "3,4,2,1", "--w", "1,4,3,2"]);
    assert_eq!(single["ok"], true);
    assert_eq!(single["report"]["lhs"], single["report"]["rhs"]);
    assert_eq!(json(&["verify", "fibers", "--n", "3"])["ok"], true);
    let oracle = json(&["verify", "enum-oracle", "--n", "4"]);
    assert_eq!((oracle["ok"].clone(), oracle["cases"].clone()), (true.into(), 24.into()));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "delta", "--pi", "3,2,1"];
    assert_eq!(ok(&args), ok(&args));
    let args = ["enumerate", "1,5,4,3,2"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn validation_errors_exit_two() {
    let bad: &[&[&str]] = &[
        &["enumerate", "1,1"],
        &["enumerate", "x"],
        &["padded", "2,1", "1,3,2"],
        &["padded", "3,2,1", "2,1"],
        &["phi", "1", "2,1", "--crosses", "[]", "--mark", "2,2"],
        &["phi", "1", "2,1", "--crosses", "[[1,1]]", "--mark", "1,2"],
        &["phi", "1", "2,1", "--crosses", "not json", "--mark", "1,1"],
        &["fiber", "1", "2,1", "--cover", "1,3"],
        &["verify", "delta", "--n", "7"],
        &["verify", "delta", "--n", "0"],
        &["verify", "delta", "--w", "2,1"],
        &["verify", "sl2", "--pi", "2,1"],
        &["verify", "nabla", "--pi", "1,3,2"],
        &["verify", "bogus"],
        &[],
    ];
    for args in bad {
        let out = cli(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(code(&["padded", "2,1", "1,3,2"]), Some(2));
    let msg = String::from_utf8(cli(&["padded", "2,1", "1,3,2"]).stderr).unwrap();
    assert!(msg.contains("not dominant"), "{msg}");
}
