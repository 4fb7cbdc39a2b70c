use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ggs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggs"))
        .args(args)
        .env_remove("GGS_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "structured"]);
    let o = ggs(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_gupta_sidki() {
    let r = json(&["classify", "--p", "3", "--e", "1,-1"]);
    assert_eq!(r["periodic"], true);
    assert_eq!(r["symmetric"], false);
    assert_eq!(r["t"], 2);
    assert_eq!(r["gupta_sidki"], true);
    let orders: Vec<&str> = r["predicted"].as_array().unwrap().iter().map(|x| x["order"].as_str().unwrap()).collect();
    assert_eq!(orders, ["3", "27", "2187"]);
}

#[test]
fn classify_symmetric_has_no_formula_at_level_three() {
    let r = json(&["classify", "--p", "5", "--e", "1,2,2,1", "--level", "3"]);
    assert_eq!(r["symmetric"], true);
    assert_eq!(r["predicted"][0]["order"], Value::Null);
}

#[test]
fn zero_vector_is_an_error() {
    let o = ggs(&["classify", "--p", "3", "--e", "0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero"));
}

#[test]
fn bad_arguments() {
    for args in [
        &["classify", "--p", "4", "--e", "1,1,1"][..],
        &["classify", "--p", "3", "--e", "1,1,1"],
        &["enumerate", "--level", "0"],
        &["verify", "thm-Z"],
        &["verify", "thm-G3", "--level", "2"],
    ] {
        assert_eq!(ggs(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn enumerate_sizes_and_formula() {
    let r = json(&["enumerate", "--e", "1,0", "--level", "3"]);
    assert_eq!(r["order"], 59049);
    assert_eq!(r["formula"], "matches");
    assert_eq!(r["exponent"], 27);
    let r = json(&["enumerate", "--level", "3"]);
    assert_eq!(r["order"], 2187);
    assert_eq!(r["exponent"], 9);
}

#[test]
fn enumerate_dump_lists_every_element() {
    let r = json(&["enumerate", "--level", "2", "--dump"]);
    let els = r["elements"].as_array().unwrap();
    assert_eq!(els.len(), 27);
    assert_eq!(els[0], "3,2:0,0,0,0");
}

#[test]
fn enumerate_over_budget() {
    let o = ggs(&["enumerate", "--level", "3", "--budget", "500"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn cayley_graph_is_dot() {
    let o = ggs(&["enumerate", "--level", "1", "--cayley"]);
    let s = stdout(&o);
    assert!(s.contains("digraph"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(ggs(&["verify", "thm-G3"]).status.code(), Some(0));
    let o = ggs(&["verify", "thm-A", "--p", "3", "--level", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "skipped: hypothesis not met");
    // ab has order 3 in G_2 but 9 in G_4.
    let o = ggs(&["verify", "lifting", "--level", "2", "--to", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict: refuted"));
}

#[test]
fn verify_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let o = ggs(&["verify", "thm-G2", "--format", "structured", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read(&out).unwrap(), o.stdout);
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["verify", "thm-G3", "--format", "structured", "--cache-dir", d];
    let cold = ggs(&args);
    assert!(cold.status.success());
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let warm = ggs(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = ggs(&["verify", "thm-G3", "--format", "structured", "--no-cache"]);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn cache_keys_separate_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for p in ["3", "5"] {
        assert!(ggs(&["verify", "lemma-orders", "--p", p, "--cache-dir", d]).status.success());
    }
    assert!(ggs(&["verify", "lifting", "--level", "3", "--to", "4", "--cache-dir", d]).status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn sigma_contains_generators_and_identity() {
    let r = json(&["sigma", "--x", "a", "--y", "b", "--level", "2", "--member", "1", "--member", "ab", "--member", "ABab", "--member", "aB"]);
    assert_eq!(r["group_order"], 27);
    // Three cyclic subgroups, each contributing two conjugacy classes of size 3.
    assert_eq!(r["sigma_size"], 19);
    let m: Vec<bool> = r["members"].as_array().unwrap().iter().map(|x| x["member"].as_bool().unwrap()).collect();
    assert_eq!(m, [true, true, false, false]);
}

#[test]
fn sigma_rejects_non_generating_pair() {
    let o = ggs(&["sigma", "--x", "a", "--y", "A", "--level", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sigma_rejects_bad_word() {
    let o = ggs(&["sigma", "--x", "a(b", "--y", "b"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a(b"));
}

#[test]
fn replay_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = ggs(&["verify", "thm-G2", "--p", "5", "--e", "1,-1,1,-1", "--format", "structured", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let r = ggs(&["replay", path.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));

    // Swap a witness for the identity: the replayed pair no longer works.
    let mut cert: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ws = cert["witnesses"].as_array_mut().unwrap();
    let y2 = ws.iter_mut().find(|w| w["role"] == "y2").unwrap();
    y2["element"] = Value::from("5,2:1,0,0,0,0,0");
    fs::write(&path, serde_json::to_string_pretty(&cert).unwrap()).unwrap();
    let r = ggs(&["replay", path.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2), "{}", stdout(&r));
}

#[test]
fn replay_rejects_wrong_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, r#"{"schema":"other/1"}"#).unwrap();
    assert_eq!(ggs(&["replay", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn claims_lists_all_ids() {
    let s = stdout(&ggs(&["claims"]));
    let ids: Vec<&str> = s.lines().collect();
    assert_eq!(ids.len(), 14);
    assert!(ids.contains(&"eq-3.1"));
}

#[test]
fn workers_do_not_change_certificates() {
    let run = |w: &str| ggs(&["verify", "thm-G2", "--p", "5", "--e", "1,-1,1,-1", "--format", "json", "--workers", w]).stdout;
    assert_eq!(run("1"), run("3"));
}
