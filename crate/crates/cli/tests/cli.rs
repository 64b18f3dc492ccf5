use std::process::{Command, Output};

fn truncpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_truncpath")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let o = truncpath(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn bdg_wedge_passes() {
    let o = truncpath(&["verify", "bdg", "--space", "wedge2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Z^6  Z^6"), "{text}");
    assert!(text.contains("verdict: pass"));
}

#[test]
fn distinct_endpoints_add_the_constant_path() {
    let v = json(&["verify", "bdg", "--space", "wedge2", "--n", "2", "--distinct-endpoints"]);
    assert_eq!(v["verdict"], "pass");
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["lhs_invariants"], "Z^7");
        assert_eq!(c["rhs_invariants"], "Z^7");
    }
}

#[test]
fn graded_pieces_of_torus() {
    let o = truncpath(&["compute", "graded", "--space", "torus", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "A_1 = Z^2\nA_2 = Z^3\n");
}

#[test]
fn structured_report_schema() {
    let v = json(&["verify", "connectivity", "--space", "circle", "--n", "1..3"]);
    assert_eq!(v["space"], "circle");
    assert_eq!(v["n_range"], serde_json::json!([1, 3]));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for c in checks {
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 5);
        for k in ["check_id", "lhs_invariants", "rhs_invariants", "match", "ms"] {
            assert!(keys.contains(&k), "{k}");
        }
        assert!(c["ms"].is_null());
        assert_eq!(c["match"], true);
    }
}

#[test]
fn timings_are_opt_in() {
    let v = json(&["verify", "hopf", "--space", "circle", "--n", "2", "--timings"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ms"].is_u64()));
}

#[test]
fn reports_are_deterministic() {
    let args = ["report", "--space", "torus", "--n", "1..2"];
    let a = truncpath(&args);
    let b = truncpath(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_holds_the_structured_report() {
    let dir = std::env::temp_dir().join(format!("truncpath-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = truncpath(&["verify", "cupexample", "--space", "genus2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checks"][0]["lhs_invariants"], "Z^15");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn space_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("truncpath-file-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torus.space");
    let raw = truncpath(&["spaces", "show", "--space", "torus", "--raw"]);
    std::fs::write(&path, &raw.stdout).unwrap();
    let o = truncpath(&["verify", "bdg", "--file", path.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("Z^5"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(truncpath(&["verify", "bdg", "--space", "klein"]).status.code(), Some(2));
    assert_eq!(truncpath(&["verify", "bdg", "--space", "circle", "--n", "3..1"]).status.code(), Some(2));
    assert_eq!(truncpath(&["verify", "nonsense", "--space", "circle"]).status.code(), Some(2));
    assert_eq!(truncpath(&["verify", "hopf", "--space", "interval_wedge1"]).status.code(), Some(2));
    assert_eq!(truncpath(&["verify", "bdg", "--file", "/nonexistent/space"]).status.code(), Some(2));
}

#[test]
fn resource_cap_exits_3() {
    let o = truncpath(&["verify", "bdg", "--space", "torus", "--n", "3", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn spaces_list_names_builtins() {
    let o = truncpath(&["spaces", "list"]);
    let text = stdout(&o);
    for name in ["circle", "torus", "sphere2", "interval_wedge(g)"] {
        assert!(text.lines().any(|l| l == name), "{name}");
    }
}

#[test]
fn oracle_and_fox_homology_agree() {
    let fox = stdout(&truncpath(&["compute", "homology", "--space", "wedge2", "--n", "1..2"]));
    let oracle = stdout(&truncpath(&["compute", "homology", "--method", "oracle", "--space", "wedge2", "--n", "1..2"]));
    assert!(fox.contains("n=2  H_n = Z^6"), "{fox}");
    assert!(oracle.contains("H_2 = Z^6"), "{oracle}");
}
