use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinorlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn spinor_doc(n: usize, terms: &[(&[usize], &str)]) -> String {
    let terms: Vec<String> = terms.iter().map(|(i, c)| format!(r#"{{"indices":{i:?},"coef":"{c}"}}"#)).collect();
    format!(r#"{{"n":{n},"terms":[{}]}}"#, terms.join(","))
}

#[test]
fn dims_table_n6() {
    let o = run(&["dims", "--n", "6", "--verify"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for (label, d) in [("Pure", 15), ("Sigma(2)", 24), ("Theta(3)", 30), ("Sigma(3)", 31)] {
        let line = text.lines().find(|l| l.starts_with(label)).unwrap();
        assert!(line.contains(&d.to_string()) && line.ends_with("ok"), "{line}");
    }
    assert!(text.lines().any(|l| l.starts_with("secant") && l.ends_with("31")));
    assert!(text.lines().any(|l| l.starts_with("tangential") && l.ends_with("30")));
}

#[test]
fn classify_dense_point() {
    let dir = TempDir::new().unwrap();
    let q = write(dir.path(), "q.json", &spinor_doc(6, &[(&[], "1"), (&[1, 2, 3, 4, 5, 6], "1")]));
    let o = run(&["classify", "--in", q.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("orbit: Sigma(3)"));
    assert!(text.contains("= 1\n") && text.contains("= e[1,2,3,4,5,6]"));

    let o = run(&["classify", "--in", q.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["orbit"], "Sigma(3)");
    assert_eq!(v["certificate"]["points"].as_array().unwrap().len(), 2);
}

#[test]
fn distance_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", &spinor_doc(8, &[(&[1, 2, 3, 4, 5, 6, 7, 8], "1")]));
    let b = write(dir.path(), "b.json", &spinor_doc(8, &[(&[], "1")]));
    let o = run(&["distance", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4");

    let q = write(dir.path(), "q.json", &spinor_doc(8, &[(&[], "1"), (&[1, 2, 3, 4, 5, 6, 7, 8], "1")]));
    let o = run(&["distance", "--a", q.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let bad = write(dir.path(), "bad.json", &spinor_doc(8, &[(&[2, 1], "1")]));
    assert_eq!(run(&["classify", "--in", bad.to_str().unwrap()]).status.code(), Some(1));
    let garbage = write(dir.path(), "g.json", "{not json");
    assert_eq!(run(&["classify", "--in", garbage.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["dims", "--n", "7"]).status.code(), Some(1));
    assert_eq!(run(&["dims"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--n", "6", "--suite", "nope", "--seed", "1"]).status.code(), Some(1));
}

#[test]
fn off_variety_point_reports_caveat() {
    let dir = TempDir::new().unwrap();
    let q = write(
        dir.path(),
        "q.json",
        &spinor_doc(8, &[(&[], "1"), (&[1, 2, 3, 4], "2"), (&[5, 6, 7, 8], "3"), (&[1, 2, 5, 6, 7, 8], "5"), (&[1, 3, 5, 7], "1")]),
    );
    let o = run(&["classify", "--in", q.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a proof of non-membership"));
}

#[test]
fn sample_then_classify_and_decompose() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.json");
    let o = run(&["sample", "--n", "6", "--orbit", "theta:3", "--seed", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&["decompose", "--in", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("orbit: Theta(3)") && text.contains("tangency point"));

    let out2 = dir.path().join("s2.json");
    run(&["sample", "--n", "6", "--orbit", "sigma:2", "--seed", "1", "--twists", "1", "--out", out2.to_str().unwrap()]);
    let o = run(&["decompose", "--in", out2.to_str().unwrap(), "--trials", "4", "--seed", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("not identifiable"));
    assert!(text.matches(": a = ").count() <= 4 && text.matches(": a = ").count() >= 2);
}

#[test]
fn sample_documents_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.json");
    run(&["sample", "--n", "8", "--orbit", "sigma:3", "--seed", "9", "--out", out.to_str().unwrap()]);
    let first = std::fs::read_to_string(&out).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert!(first.ends_with("}\n"));
    let copy = write(dir.path(), "copy.json", &serde_json::to_string(&doc).unwrap());
    let reread: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&copy).unwrap()).unwrap();
    assert_eq!(doc, reread);
    for f in [&out, &copy] {
        let o = run(&["classify", "--in", f.to_str().unwrap()]);
        assert!(stdout(&o).contains("orbit: Sigma(3)"));
    }
}

#[test]
fn terracini_verdicts() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", &spinor_doc(8, &[(&[1, 2, 3, 4, 5, 6, 7, 8], "1")]));
    let b = write(dir.path(), "b.json", &spinor_doc(8, &[(&[1, 2], "1")]));
    let c = write(dir.path(), "c.json", &spinor_doc(8, &[(&[1, 2, 3, 4], "1")]));
    let o = run(&["terracini", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(stdout(&o), "deficient: no\nspan dimension: 58\n");
    let o = run(&["terracini", "--a", a.to_str().unwrap(), "--b", c.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("deficient: yes"));
}

#[test]
fn pure_from_subspace_and_wrong_component() {
    let dir = TempDir::new().unwrap();
    // span(f_1, f_2, e_3, e_4) annihilates e_3 ∧ e_4
    let rows = |spec: &[usize]| {
        spec.iter()
            .map(|&k| {
                let row: Vec<String> = (0..8).map(|j| if j == k { "\"1\"".into() } else { "\"0\"".into() }).collect();
                format!("[{}]", row.join(","))
            })
            .collect::<Vec<_>>()
            .join(",")
    };
    let plus = write(dir.path(), "h.json", &format!(r#"{{"n":4,"rows":[{}]}}"#, rows(&[4, 5, 2, 3])));
    let out = dir.path().join("x.json");
    let o = run(&["pure-from-subspace", "--in", plus.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["terms"][0]["indices"], serde_json::json!([3, 4]));

    let minus = write(dir.path(), "m.json", &format!(r#"{{"n":4,"rows":[{}]}}"#, rows(&[4, 1, 2, 3])));
    let o = run(&["pure-from-subspace", "--in", minus.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let not_iso = write(dir.path(), "n.json", &format!(r#"{{"n":4,"rows":[{}]}}"#, rows(&[0, 4])));
    let o = run(&["pure-from-subspace", "--in", not_iso.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "--n", "6", "--suite", "all", "--seed", "11"];
    let first = run(&args);
    assert!(first.status.success(), "{}", stdout(&first));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let json = run(&["verify", "--n", "6", "--suite", "all", "--seed", "11", "--json"]);
    let reports: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let text = stdout(&first);
    let mut anchors = 0;
    for r in reports.as_array().unwrap() {
        for c in r["claims"].as_array().unwrap() {
            assert!(text.contains(&format!("[{}]", c["anchor"].as_str().unwrap())));
            anchors += 1;
        }
    }
    assert!(anchors > 20);
    let suites: Vec<&str> = reports.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    let mut sorted = suites.clone();
    sorted.sort();
    assert_eq!(suites, sorted);
}

#[test]
fn single_thread_matches_parallel() {
    let args = ["verify", "--n", "6", "--suite", "all", "--seed", "4"];
    let par = run(&args);
    let one = Command::new(env!("CARGO_BIN_EXE_spinorlab")).args(args).env("SPINORLAB_THREADS", "1").output().unwrap();
    assert_eq!(par.stdout, one.stdout);
}
