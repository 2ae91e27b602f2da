use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn starmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starmon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = starmon(&all);
    (serde_json::from_str(&stdout(&out)).unwrap(), out.status.code().unwrap())
}

fn without_timings(mut report: Value) -> Value {
    report.as_object_mut().unwrap().remove("timings_ms");
    report
}

#[test]
fn enumerate_reports_sizes() {
    for (n, class, size) in [("4", "end", 30), ("2", "wend", 4), ("1", "end", 1), ("5", "send", 260)] {
        let (report, code) = json(&["enumerate", "--n", n, "--class", class]);
        assert_eq!(code, 0);
        assert_eq!(report["results"]["size"], size, "{class} {n}");
        assert_eq!(report["parameters"]["class"], class);
        assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn enumerate_writes_the_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("end3.txt");
    let out = starmon(&["enumerate", "--n", "3", "--class", "end", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "end S_3: 6 elements (formula 6, match)\n");
    let dump = std::fs::read_to_string(&path).unwrap();
    assert!(dump.starts_with("degree 3 size 6\n"));
    assert_eq!(dump.lines().count(), 7);
}

#[test]
fn over_budget_enumeration_exits_with_budget_code() {
    let out = starmon(&["enumerate", "--n", "6", "--class", "end", "--budget-degree", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds budget"));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_verdicts_and_exit_codes() {
    let (report, code) = json(&["verify", "--n", "4", "--class", "wend"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["verdict"], "verified");
    assert_eq!(report["results"]["quotient_size"]["size"], 88);
    assert_eq!(report["results"]["target_size"], 88);

    let (report, code) = json(&["verify", "--n", "3", "--class", "swend"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["quotient_size"]["size"], 9);

    assert_eq!(starmon(&["verify", "--n", "2", "--class", "end"]).status.code(), Some(2));
    assert_eq!(starmon(&["verify", "--n", "4", "--class", "aut"]).status.code(), Some(2));
    assert_eq!(starmon(&["verify", "--n", "4", "--class", "bogus"]).status.code(), Some(2));
}

fn edited_presentation(dir: &Path, drop: &[Value]) -> String {
    let out = starmon(&["dump-presentation", "--n", "4", "--class", "end"]);
    let mut doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    doc["relations"]
        .as_array_mut()
        .unwrap()
        .retain(|r| !drop.contains(r));
    let path = dir.join("p.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_accepts_presentation_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = edited_presentation(dir.path(), &[]);
    let (report, code) = json(&["verify", "--n", "4", "--class", "end", "--presentation", &path]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["verdict"], "verified");

    // without z^2 = e0 b0 e0 the quotient is infinite
    let fold = serde_json::json!([["z", "z"], ["e0", "b0", "e0"]]);
    let path = edited_presentation(dir.path(), &[fold]);
    let (report, code) = json(&[
        "verify", "--n", "4", "--class", "end", "--presentation", &path, "--budget-classes", "20000",
    ]);
    assert_eq!(code, 3);
    assert_eq!(report["results"]["verdict"], "inconclusive-budget");
}

#[test]
fn census_csv() {
    let out = starmon(&["census", "--range", "3..5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,class,formula,enumerated,match");
    assert_eq!(lines.len(), 13);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    assert!(lines.contains(&"5,aut,24,24,true"));

    let out = starmon(&["census", "--range", "1..1"]);
    assert!(stdout(&out).lines().any(|l| l == "1,end,1,1,true"));
    assert_eq!(starmon(&["census", "--range", "5..3"]).status.code(), Some(2));
}

#[test]
fn rank_results() {
    let (report, code) = json(&["rank", "--n", "3", "--class", "wend"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["rank"]["status"], "exact");
    assert_eq!(report["results"]["rank"]["rank"], 3);

    let (report, _) = json(&["rank", "--n", "4", "--class", "swend"]);
    assert_eq!(report["results"]["rank"]["rank"], 5);

    let (report, code) = json(&["rank", "--n", "4", "--class", "end", "--max-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["rank"]["status"], "unknown");
    assert_eq!(report["results"]["rank"]["searched_up_to"], 2);
}

#[test]
fn check_generators_lists_the_standard_sets() {
    let (report, code) = json(&["check-generators", "--n", "5", "--class", "swend"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["generates"], true);
    assert_eq!(report["results"]["generated_size"], 265);
    let names: Vec<&str> = report["results"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["a0", "b0", "e0", "z", "z0"]);
}

#[test]
fn dump_presentation_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wend5.json");
    let out = starmon(&["dump-presentation", "--n", "5", "--class", "wend", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    let p = starmon::Presentation::from_json(&written).unwrap();
    assert_eq!(p, starmon::presentation::wend_star_presentation(5).unwrap());
    assert_eq!(p.to_json(), written);
}

#[test]
fn outputs_are_deterministic_modulo_timings() {
    let runs: [&[&str]; 5] = [
        &["enumerate", "--n", "5", "--class", "wend"],
        &["verify", "--n", "5", "--class", "wend"],
        &["verify", "--n", "4", "--class", "swend"],
        &["census", "--range", "1..6"],
        &["rank", "--n", "4", "--class", "end"],
    ];
    for args in runs {
        let first = starmon(args);
        let second = starmon(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
        let (a, _) = json(args);
        let (b, _) = json(args);
        assert_eq!(without_timings(a), without_timings(b), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let dumps: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("d{i}"));
            starmon(&["enumerate", "--n", "5", "--class", "end", "--output", path.to_str().unwrap()]);
            std::fs::read(path).unwrap()
        })
        .collect();
    assert_eq!(dumps[0], dumps[1]);
}
