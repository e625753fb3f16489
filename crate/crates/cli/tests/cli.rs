use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use genlstar::automata::{parse_automaton, AutomatonFile, MooreMachine};
use genlstar::domain::BoolDomain;
use genlstar::learner::{learn, CounterexampleMode, LearnerConfig};
use genlstar::teacher::builtin;
use genlstar::teacher::dfa_teacher;
use genlstar::Alphabet;
use serde_json::Value;

fn genlstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genlstar")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(args: &[&str]) -> Value {
    let out = genlstar(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let next: Vec<Vec<usize>> = layer
            .iter()
            .flat_map(|u: &Vec<usize>| {
                (0..k).map(move |a| {
                    let mut v = u.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Distinct rows of the Nerode matrix over short access words and suffixes.
fn nerode_classes(member: impl Fn(&[usize]) -> bool) -> usize {
    let suffixes = all_words(2, 4);
    let rows: HashSet<Vec<bool>> = all_words(2, 4)
        .iter()
        .map(|u| {
            suffixes
                .iter()
                .map(|v| member(&[u.as_slice(), v.as_slice()].concat()))
                .collect()
        })
        .collect();
    rows.len()
}

/// Accepting runs of a Moore file, walking the JSON directly.
fn json_accepts(m: &Value, word: &[&str]) -> bool {
    let mut q = m["initial"].as_u64().unwrap().to_string();
    for a in word {
        q = m["transitions"][&q][*a].as_u64().unwrap().to_string();
    }
    m["output"][&q].as_bool().unwrap()
}

#[test]
fn learns_ends_in_a() {
    let r = report(&["learn", "dfa", "builtin:ends-in-a"]);
    let oracle = nerode_classes(|u| u.last() == Some(&0));
    assert_eq!(r["learned"]["states"], oracle);
    assert_eq!(r["verification"]["equivalent"], true);
    assert_eq!(r["verification"]["minimal"], true);
    for u in all_words(2, 5) {
        let names: Vec<&str> = u.iter().map(|&a| ["a", "b"][a]).collect();
        assert_eq!(json_accepts(&r["learned"], &names), u.last() == Some(&0));
    }
    assert!(r["wall_time_ms"].as_f64().unwrap() >= 0.0);
    assert!(r["stats"]["membership_queries"].as_u64().unwrap() > 0);
}

/// Classes of a^n (1 <= n <= 8) under contexts a^i _ a^j with i + j <= 6.
fn even_length_congruence() -> Vec<usize> {
    let member = |n: usize| n >= 2 && n.is_multiple_of(2);
    let profile = |n: usize| -> Vec<bool> {
        (0..=6).flat_map(|i| (0..=6 - i).map(move |j| member(i + n + j))).collect()
    };
    let mut seen: Vec<Vec<bool>> = Vec::new();
    (1..=8)
        .map(|n| {
            let p = profile(n);
            match seen.iter().position(|q| *q == p) {
                Some(i) => i,
                None => {
                    seen.push(p);
                    seen.len() - 1
                }
            }
        })
        .collect()
}

#[test]
fn learns_z2_for_even_length() {
    let r = report(&["learn", "semigroup", "builtin:even-a-length"]);
    let classes = even_length_congruence();
    let count = classes.iter().collect::<HashSet<_>>().len();
    let s = &r["learned"];
    assert_eq!(s["kind"], "semigroup");
    assert_eq!(s["size"], count);
    let mult = |x: u64, y: u64| s["mult"][x as usize][y as usize].as_u64().unwrap();
    let g = s["generators"][0].as_u64().unwrap();
    assert_ne!(mult(g, g), g);
    // a^n lands in the class of its congruence representative.
    let mut x = g;
    for n in 2..=8 {
        x = mult(x, g);
        assert_eq!(classes[n - 1] == classes[0], x == g);
    }
    assert_eq!(r["verification"]["equivalent"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"kind\": \"moore\", ").unwrap();
    assert_eq!(code(&genlstar(&["learn", "dfa", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&genlstar(&["learn", "dfa", "builtin:no-such-target"])), 2);
    assert_eq!(code(&genlstar(&["learn", "wfa", "builtin:ends-in-a"])), 2);
    assert_eq!(code(&genlstar(&["learn", "dfa", "builtin:suffix-a-at-3", "--budget", "5"])), 3);
    let out = genlstar(&["learn", "semigroup", "builtin:ab-plus", "--presentation", "append-only"]);
    assert_eq!(code(&out), 4);
    assert_eq!(code(&genlstar(&["learn", "dfa", "builtin:ends-in-a", "--quiet"])), 0);
}

#[test]
fn every_kind_verifies() {
    for (kind, target) in [
        ("dfa", "builtin:mod-3"),
        ("rfsa", "builtin:suffix-a-at-3"),
        ("wfa", "builtin:count-a"),
        ("sorted", "builtin:inf-a"),
        ("omega", "builtin:eventually-b"),
        ("semigroup", "builtin:ab-plus"),
        ("wilke", "builtin:inf-a"),
    ] {
        for mode in ["prefix", "suffix"] {
            let r = report(&["learn", kind, target, "--mode", mode]);
            assert_eq!(r["verification"]["equivalent"], true, "{kind} {target} {mode}");
            assert_eq!(r["verification"]["minimal"], true, "{kind} {target} {mode}");
            assert_eq!(r["mode"], mode);
        }
    }
}

#[test]
fn writes_json_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let dot = dir.path().join("r.dot");
    let out = genlstar(&[
        "learn",
        "dfa",
        "builtin:ab-star",
        "--quiet",
        "--json",
        json.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["learned"]["states"], 3);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    assert_eq!(code(&genlstar(&["learn", "wfa", "builtin:count-a", "--dot", dot.to_str().unwrap()])), 2);
}

fn write_machine(path: &Path, m: &AutomatonFile) {
    fs::write(path, m.to_json_string()).unwrap();
}

fn load(path: &Path) -> AutomatonFile {
    parse_automaton(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn learned_machines_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let r = report(&["learn", "dfa", "builtin:suffix-a-at-2"]);
    fs::write(&first, r["learned"].to_string()).unwrap();
    let a = load(&first);
    let second = dir.path().join("b.json");
    write_machine(&second, &a);
    match (a, load(&second)) {
        (AutomatonFile::Moore(x), AutomatonFile::Moore(y)) => assert!(x.is_isomorphic(&y)),
        _ => panic!("kind changed"),
    }
    let relearned = report(&["learn", "dfa", first.to_str().unwrap()]);
    assert_eq!(relearned["learned"], r["learned"]);
}

#[test]
fn minimize_files() {
    let dir = tempfile::tempdir().unwrap();
    let ab = Alphabet::from_chars("ab").unwrap();
    // ends-in-a with its accepting state split in two.
    let padded = MooreMachine::new(ab.clone(), 0, vec![vec![1, 0], vec![2, 0], vec![1, 0]], vec![false, true, true]).unwrap();
    let one = MooreMachine::new(ab, 0, vec![vec![0, 0]], vec![false]).unwrap();
    let cases = [
        (padded, nerode_classes(|u| u.last() == Some(&0))),
        (builtin::ab_star(), 3),
        (one, 1),
    ];
    for (i, (m, expected)) in cases.into_iter().enumerate() {
        let input = dir.path().join(format!("in{i}.json"));
        let output = dir.path().join(format!("out{i}.json"));
        write_machine(&input, &AutomatonFile::Moore(m.clone()));
        let out = genlstar(&["minimize", input.to_str().unwrap(), "-o", output.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        match load(&output) {
            AutomatonFile::Moore(min) => {
                assert_eq!(min.state_count(), expected);
                assert_eq!(min.distinguish(&m).unwrap(), None);
            }
            _ => panic!("kind changed"),
        }
    }
}

#[test]
fn minimize_sorted_and_weighted_files() {
    let dir = tempfile::tempdir().unwrap();
    let reference = builtin::inf_a().unwrap().reference().clone();
    let input = dir.path().join("sorted.json");
    write_machine(&input, &AutomatonFile::Sorted(reference.clone()));
    let out = genlstar(&["minimize", input.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    match parse_automaton(&String::from_utf8(out.stdout).unwrap()).unwrap() {
        AutomatonFile::Sorted(m) => assert!(m.is_isomorphic(&reference)),
        _ => panic!("kind changed"),
    }

    // count-a with an unreachable third dimension.
    let text = r#"{"kind":"wfa","alphabet":["a","b"],"states":3,"initial":["1/1","0/1","0/1"],
        "output":["0/1","1/1","5/1"],
        "transitions":{"a":[["1/1","1/1","0/1"],["0/1","1/1","0/1"],["0/1","0/1","1/1"]],
                       "b":[["1/1","0/1","0/1"],["0/1","1/1","0/1"],["0/1","0/1","1/1"]]}}"#;
    let input = dir.path().join("wfa.json");
    fs::write(&input, text).unwrap();
    let out = genlstar(&["minimize", input.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    match parse_automaton(&String::from_utf8(out.stdout).unwrap()).unwrap() {
        AutomatonFile::Wfa(m) => {
            assert_eq!(m.dimension(), 2);
            assert_eq!(m.distinguish(&builtin::count_a()).unwrap(), None);
        }
        _ => panic!("kind changed"),
    }
}

#[test]
fn bench_mod_k_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bench.json");
    let out = genlstar(&["bench", "mod-k", "--quiet", "--json", json.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    let mut previous = 0;
    for (row, k) in rows.iter().zip(2..=8) {
        let r = learn(
            BoolDomain::new(Alphabet::from_chars("ab").unwrap()),
            &dfa_teacher(builtin::mod_counter(k).unwrap()),
            &LearnerConfig::new(CounterexampleMode::Prefix),
        )
        .unwrap();
        assert_eq!(row["target"], format!("mod-{k}"));
        assert_eq!(row["states"], k);
        assert_eq!(row["membership_queries"], r.stats.membership_queries);
        assert_eq!(row["equivalence_queries"], r.stats.equivalence_queries);
        assert_eq!(row["rounds"], r.stats.rounds);
        let mq = r.stats.membership_queries;
        assert!(mq > previous);
        previous = mq;
    }
}

#[test]
fn bench_small_suites() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bench.json");
    let path = json.to_str().unwrap();
    assert_eq!(code(&genlstar(&["bench", "", "--quiet", "--json", path])), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 0);
    assert_eq!(code(&genlstar(&["bench", "ends-in-a", "--quiet", "--json", path])), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
    assert_eq!(doc["rows"][0]["states"], 2);

    let random = |seed: &str| {
        assert_eq!(code(&genlstar(&["bench", "random", "--seed", seed, "--count", "4", "--quiet", "--json", path])), 0);
        let doc: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(doc["seed"], seed.parse::<u64>().unwrap());
        doc["rows"].clone()
    };
    assert_eq!(random("7"), random("7"));
}

#[test]
fn validate_targets() {
    let r = report(&["validate", "builtin:inf-a", "--seed", "3"]);
    assert_eq!(r["valid"], true);
    assert_eq!(r["seed"], 3);
    let r = report(&["validate", "builtin:ends-in-a"]);
    assert_eq!(r["states"], 2);
    assert_eq!(r["minimal"], true);
    assert_eq!(code(&genlstar(&["validate", "builtin:bogus"])), 2);
}

#[test]
fn interactive_teacher() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_genlstar"))
        .args(["learn", "dfa", "--interactive", "--alphabet", "ab"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // The user has ends-in-a in mind; answer enough questions in order.
    let ends_in_a = |u: &[usize]| u.last() == Some(&0);
    let mut answers = String::new();
    for u in all_words(2, 3) {
        answers += if ends_in_a(&u) { "y\n" } else { "n\n" };
    }
    answers += "\n";
    child.stdin.take().unwrap().write_all(answers.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["learned"]["states"], 2);
    assert_eq!(r["target"], "interactive");

    // Running out of answers is an input error.
    let out = Command::new(env!("CARGO_BIN_EXE_genlstar"))
        .args(["learn", "dfa", "--interactive"])
        .stdin(Stdio::null())
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
