use std::process::{Command, Output};

fn nearmiss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearmiss")).args(args).output().expect("spawn nearmiss")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gen_prints_the_table() {
    let o = nearmiss(&["gen", "--count", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "0\t22\t23\t717\n1\t1058\t1103\t1653213\n2\t50806\t52967\t3812308653\n3\t2439746\t2543519\t8791182100413\n"
    );
}

#[test]
fn tsv_and_jsonl_carry_the_same_strings() {
    let tsv = stdout(&nearmiss(&["gen", "--count", "30"]));
    let jsonl = stdout(&nearmiss(&["gen", "--count", "30", "--format", "jsonl"]));
    let a: Vec<&str> = tsv.lines().collect();
    let b: Vec<&str> = jsonl.lines().collect();
    assert_eq!(a.len(), b.len());
    for (t, j) in a.iter().zip(&b) {
        let v: serde_json::Value = serde_json::from_str(j).unwrap();
        let from_json: Vec<&str> = ["n", "x", "y", "z"].iter().map(|k| v[k].as_str().unwrap()).collect();
        assert_eq!(t.split('\t').collect::<Vec<_>>(), from_json);
    }
}

#[test]
fn gen_rejects_zero_and_garbage() {
    assert_eq!(nearmiss(&["gen", "--count", "0"]).status.code(), Some(2));
    assert_eq!(nearmiss(&["gen", "--count", "-3"]).status.code(), Some(2));
    assert_eq!(nearmiss(&["gen"]).status.code(), Some(2));
    assert_eq!(nearmiss(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_detects_corruption() {
    let o = nearmiss(&["verify", "--count", "60"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 60);

    let o = nearmiss(&["verify", "--count", "5", "--override-z0", "718"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("n = 0"), "{}", stderr(&o));
    assert!(stdout(&o).lines().next().unwrap().ends_with("FAIL"));
}

#[test]
fn closed_form_reports_integer_sums() {
    let o = nearmiss(&["closed-form", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("x\t117158614\n"));
    assert!(out.contains("y\t122141879\n"));
    assert!(out.contains("z\t20272462111243917\n"));
    assert!(out.contains("z_sum\t20272462111243917 + 0*sqrt(577)\n"));

    let o = nearmiss(&["closed-form", "--n", "1", "--format", "jsonl"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["n"], "1");
    assert_eq!(v["z"], "1653213");
    assert_eq!(v["g_term"], "-48/577");
}

#[test]
fn identities_hold_and_perturbation_fails() {
    let o = nearmiss(&["identities"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_passed"], true);
    assert!(stderr(&o).contains("9/9"));

    let o = nearmiss(&["identities", "--perturb-g", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_passed"], false);
}

#[test]
fn search_exact_residual() {
    let o = nearmiss(&["search", "--max-x", "30", "--exact-residual", "8", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\t2\t3\t8\n3\t6\t37\t8\n22\t23\t717\t8\n");
    assert!(stderr(&o).is_empty());
}

#[test]
fn search_reports_progress_unless_quiet() {
    let o = nearmiss(&["search", "--max-x", "40", "--threshold", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("stripes"));
}

#[test]
fn search_usage_errors() {
    for args in [
        &["search", "--min-x", "11", "--max-x", "10"][..],
        &["search", "--min-x", "0", "--max-x", "10"],
        &["search", "--max-x", "10", "--workers", "0"],
        &["search", "--max-x", "10", "--threshold", "-1"],
        &["search", "--max-x", "10", "--threshold", "3", "--exact-residual", "8"],
    ] {
        assert_eq!(nearmiss(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let o = nearmiss(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("search"));
    assert!(!stdout(&o).contains("override-z0"));
    assert_eq!(nearmiss(&["--version"]).status.code(), Some(0));
}
