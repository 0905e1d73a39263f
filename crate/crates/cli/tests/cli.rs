use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lmov(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lmov"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("LMOV_CACHE_DIR", dir),
        None => cmd.env_remove("LMOV_CACHE_DIR"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariant_table_for_trefoil() {
    let o = lmov(&["invariant", "--link", "trefoil", "--cap", "2"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let table = v["table"].as_object().unwrap();
    assert_eq!(table.len(), 4);
    for k in ["[0]", "[1]", "[2]", "[1+1]"] {
        assert!(table.contains_key(k), "{k} missing from {:?}", table.keys().collect::<Vec<_>>());
    }
}

#[test]
fn hopf_from_a_braid_word() {
    let named = lmov(&["invariant", "--link", "hopf", "--cap", "1,1"], None);
    let braid = lmov(&["invariant", "--braid", "s1 s1", "--strands", "2", "--cap", "1,1"], None);
    assert_eq!(braid.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_str(&stdout(&named)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&braid)).unwrap();
    assert_eq!(a["table"], b["table"]);
    assert_eq!(b["table"].as_object().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_one() {
    let o = lmov(&["invariant", "--link", "borromean-rings", "--cap", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown link"));
    assert_eq!(lmov(&["invariant", "--link", "trefoil", "--cap", "9"], None).status.code(), Some(1));
    assert_eq!(lmov(&["lmov", "--link", "trefoil", "--primes", "4"], None).status.code(), Some(1));
    assert_eq!(lmov(&["frobnicate"], None).status.code(), Some(1));
}

#[test]
fn lmov_passes_on_regression_links() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("unknot");
    let o = lmov(&["lmov", "--link", "unknot", "--cap", "3", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let csv = fs::read_to_string(out.join("n_table.csv")).unwrap();
    assert_eq!(csv, "B,g,2Q,N\n\"[1]\",0,-1,1\n\"[1]\",0,1,-1\n");
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));

    let o = lmov(&["lmov", "--link", "trefoil", "--cap", "2", "--primes", "2,3"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn perturbed_table_exits_two() {
    let o = lmov(&["lmov", "--link", "trefoil", "--cap", "2", "--perturb", "(2):+q"], None);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("FAIL  conjugation_symmetry  at [2]"), "{text}");
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str| {
        let out = dir.path().join(jobs);
        let o = lmov(&["lmov", "--link", "hopf", "--cap", "1,1", "--jobs", jobs, "--out", out.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0));
        (fs::read(out.join("n_table.csv")).unwrap(), fs::read(out.join("report.json")).unwrap())
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn cache_round_trip() {
    let cache = tempfile::tempdir().unwrap();
    let args = ["invariant", "--link", "trefoil", "--cap", "2"];
    let cold = lmov(&args, Some(cache.path()));
    let entries = fs::read_dir(cache.path()).unwrap().count();
    assert_eq!(entries, 3);
    let warm = lmov(&args, Some(cache.path()));
    assert_eq!(cold.stdout, warm.stdout);

    let first = fs::read_dir(cache.path()).unwrap().next().unwrap().unwrap().path();
    fs::write(&first, "{\"version\":\"x\"}").unwrap();
    let healed = lmov(&args, Some(cache.path()));
    assert_eq!(healed.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&healed.stderr).contains("corrupt cache entry"));
    assert_eq!(healed.stdout, cold.stdout);
    let after = lmov(&args, Some(cache.path()));
    assert!(after.stderr.is_empty());

    let uncached = lmov(&["invariant", "--link", "trefoil", "--cap", "2", "--no-cache"], Some(cache.path()));
    assert_eq!(uncached.stdout, cold.stdout);
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("job.conf");
    fs::write(&conf, "link=trefoil\ncap=3\nno-cache=true\n").unwrap();
    let from_file = lmov(&["invariant", "--config", conf.to_str().unwrap(), "--cap", "2"], None);
    let direct = lmov(&["invariant", "--link", "trefoil", "--cap", "2"], None);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, direct.stdout);
}

#[test]
fn partition_function_reports_both_bases() {
    let o = lmov(&["partition-function", "--link", "unknot", "--cap", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for k in ["schur", "power", "zhat", "free_energy"] {
        assert!(!v[k].is_null(), "{k}");
    }
}
