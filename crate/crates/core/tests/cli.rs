use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file)
}

fn loopcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn structured(args: &[&str]) -> (Vec<Value>, i32) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let out = loopcheck(&full);
    let records = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect();
    (records, out.status.code().unwrap())
}

fn text(args: &[&str]) -> (String, i32) {
    let out = loopcheck(args);
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn check_reports_failures_with_witnesses() {
    let l5 = corpus("l5.loop");
    let l5 = l5.to_str().unwrap();
    let (out, code) = text(&["check", l5, "L5", "3-PAPL"]);
    assert_eq!(code, 1);
    assert!(out.contains("3-PAPL fails") && out.contains("x=2"), "{out}");

    let (records, code) = structured(&["check", l5, "L5", "3-PAPL"]);
    assert_eq!(code, 1);
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["kind"], "property");
    assert_eq!(records[0]["holds"], false);
    assert_eq!(records[0]["witness"]["assignment"][0], serde_json::json!(["x", 2]));
}

#[test]
fn check_passes_on_groups() {
    let groups = corpus("groups.loop");
    let groups = groups.to_str().unwrap();
    let (out, code) = text(&["check", groups, "Q8", "osborn", "universal-osborn", "moufang"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 3);
    let (records, code) = structured(&["--method", "both", "check", groups, "Z4", "universal-osborn"]);
    assert_eq!(code, 0);
    assert_eq!(records[0]["holds"], true);
}

#[test]
fn usage_errors_exit_2() {
    let groups = corpus("groups.loop");
    let groups = groups.to_str().unwrap();
    assert_eq!(text(&["check", groups, "Z4", "no-such-property"]).1, 2);
    assert_eq!(text(&["check", groups, "NOPE", "osborn"]).1, 2);
    assert_eq!(text(&["identity", groups, "Z4", "x*(y = x"]).1, 2);
    assert_eq!(text(&["check", "/nonexistent.loop", "Z4", "osborn"]).1, 2);
    assert_eq!(text(&["search", "--order", "6", "--require", "cc", "--forbid", "cc"]).1, 2);
    assert_eq!(text(&["search", "--order", "12"]).1, 2);
}

#[test]
fn identity_command() {
    let l5 = corpus("l5.loop");
    let (records, code) = structured(&["identity", l5.to_str().unwrap(), "L5", "(x*x)*x = x*(x*x)"]);
    assert_eq!(code, 1);
    assert_eq!(records[0]["counterexample"], serde_json::json!([["x", 2]]));
    let (_, code) = structured(&["identity", l5.to_str().unwrap(), "L5", "x*(x\\y) = y"]);
    assert_eq!(code, 0);
}

#[test]
fn isotope_output_is_a_loop_file_with_kept_labels() {
    let groups = corpus("groups.loop");
    let (out, code) = text(&["isotope", groups.to_str().unwrap(), "Z4", "2", "1"]);
    assert_eq!(code, 0);
    let file = loopcheck::parse_loop_file(&out).unwrap();
    assert_eq!(file.loops.len(), 1);
    assert_eq!(file.loops[0].table.identity(), 3);
    assert!(file.loops[0].comments.iter().any(|c| c.contains("not normalized")));

    let (records, _) = structured(&["isotope", groups.to_str().unwrap(), "Z4", "--left", "2"]);
    assert_eq!(records[0]["identity"], 2);
    assert_eq!(records[0]["spec"]["kind"], "left");
}

#[test]
fn search_output_round_trips_and_counts() {
    let (out, code) = text(&["search", "--order", "6", "--require", "cc", "--forbid", "associative", "--limit", "2", "--prefix", "C"]);
    assert_eq!(code, 0);
    let file = loopcheck::parse_loop_file(&out).unwrap();
    assert_eq!(file.names(), ["C1", "C2"]);
    for l in &file.loops {
        assert!(loopcheck::check(&l.table, "cc", loopcheck::Method::Identity).unwrap().holds);
        assert!(!l.table.is_associative());
    }

    let (records, code) = structured(&["search", "--order", "6", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(records[0]["count"], 9408);

    let (records, code) = structured(&["search", "--order", "7", "--require", "moufang", "--forbid", "associative"]);
    assert_eq!(code, 1, "no hits");
    assert_eq!(records.last().unwrap()["kind"], "search-summary");
    assert_eq!(records.last().unwrap()["hits"], 0);
}

#[test]
fn verify_reads_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("l5.loop"), dir.path().join("l5.loop")).unwrap();
    std::fs::copy(corpus("moufang12.loop"), dir.path().join("m.loop")).unwrap();
    let d = dir.path().to_str().unwrap();

    let (records, code) = structured(&["verify", d]);
    assert_eq!(code, 0);
    let summary = records.last().unwrap();
    assert_eq!(summary["kind"], "verify-summary");
    assert_eq!(summary["loops"], 2);

    let (out, code) = text(&["verify", d, "--claim", "Moufang form"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("ok") && l.contains("Moufang form")), "{out}");

    std::fs::write(dir.path().join("bad.loop"), "loop X\norder 2\n0 1\n1 1\nend\n").unwrap();
    assert_eq!(text(&["verify", d]).1, 2);
}

#[test]
fn text_and_structured_agree() {
    let groups = corpus("groups.loop");
    let groups = groups.to_str().unwrap();
    let props = ["osborn", "cc", "extra", "universal-wipl", "aut-triple-1"];
    for name in ["Z6", "S3", "Q8", "D4"] {
        let mut args = vec!["check", groups, name];
        args.extend_from_slice(&props);
        let (out, tc) = text(&args);
        let (records, sc) = structured(&args);
        assert_eq!(tc, sc);
        for (line, rec) in out.lines().zip(&records) {
            let holds = rec["holds"].as_bool().unwrap();
            assert!(line.contains(rec["property"].as_str().unwrap()));
            assert_eq!(line.contains(" holds"), holds, "{line}");
        }
    }
}

#[test]
fn catalog_lists_claims() {
    let (records, code) = structured(&["catalog"]);
    assert_eq!(code, 0);
    let claims = records.iter().filter(|r| r["kind"] == "claim-definition").count();
    assert_eq!(claims, loopcheck::theoremlab::claims().len());
    assert!(records.iter().any(|r| r["kind"] == "registry-entry"));
}
