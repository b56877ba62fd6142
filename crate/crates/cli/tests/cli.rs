use std::process::Command;

use serde_json::Value;

fn binact(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_binact"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, stdout, _) = binact(args);
    let last = stdout.lines().last().expect("a report line");
    (code, serde_json::from_str(last).expect("report is JSON"))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn orbit_z5_point_2_stabilizes_at_step_2() {
    let (code, r) = report(&["orbit", "--space", "z5", "--point", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "orbit");
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["results"]["step"], 2);
    let chain = r["results"]["chain"].as_array().unwrap();
    assert_eq!(strings(&chain[0]), ["2", "3"]);
    assert_eq!(strings(&chain[1]), ["1", "2", "3", "4"]);
}

#[test]
fn orbit_z5_point_1_stabilizes_at_step_1() {
    let (code, r) = report(&["orbit", "--space", "z5", "--point", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["step"], 1);
}

#[test]
fn orbit_s3_chain() {
    let (code, r) = report(&["orbit", "--space", "s3", "--point", "x"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["step"], 3);
    assert_eq!(r["results"]["chain"].as_array().unwrap().len(), 3);
}

#[test]
fn windowed_orbit_of_zero_is_fixed() {
    let (code, r) = report(&["orbit", "--space", "zwin:50", "--point", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["chain"], serde_json::json!([[0]]));
    assert!(r["results"]["step"].is_null());
    let (_, r) = report(&["orbit", "--space", "zwin:50", "--point", "1"]);
    assert_eq!(r["results"]["step"], 1);
}

#[test]
fn reports_match_goldens() {
    for (args, golden) in [
        (
            &["orbit", "--space", "z5", "--point", "2"][..],
            include_str!("golden/orbit_z5_2.json"),
        ),
        (&["verify-prop2", "--group", "z4"][..], include_str!("golden/verify_prop2_z4.json")),
    ] {
        let (code, first, _) = binact(args);
        let (_, second, _) = binact(args);
        assert_eq!(code, 0);
        assert_eq!(first, second);
        assert_eq!(first, golden, "{args:?}");
    }
}

#[test]
fn verify_thm1_over_s3_census() {
    let (code, r) = report(&["verify-thm1", "--group", "s3", "--enumerate", "--carrier", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "pass");
    assert!(!r["results"]["classified"].as_array().unwrap().is_empty());
}

#[test]
fn verify_thm1_round_trips_every_normal_subgroup() {
    let (code, r) = report(&["verify-thm1", "--group", "s3", "--all-bases"]);
    assert_eq!(code, 0);
    // {e}: 6 bases, A3: 2 bases, S3: 1 base
    assert_eq!(r["results"]["round_trips"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_thm2_and_prop2_pass() {
    assert_eq!(report(&["verify-thm2", "--group", "z2", "--enumerate", "--carrier", "2"]).0, 0);
    assert_eq!(report(&["verify-thm2", "--space", "eta:s3"]).0, 0);
    let (code, r) = report(&["verify-prop2", "--group", "s3"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["pairs"].as_array().unwrap().len(), 9);
    let (code, r) = report(&["verify-prop2", "--group", "z4", "--subgroup", "0", "--subgroup", "0,2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["pairs"][0]["projection"], serde_json::json!([0, 1, 0, 1]));
}

#[test]
fn verify_implications_is_seeded() {
    let args = ["verify-implications", "--group", "z4", "--carrier", "3", "--no-census", "--random", "50", "--seed", "3"];
    let (code, a, _) = binact(&args);
    let (_, b, _) = binact(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let r: Value = serde_json::from_str(a.trim()).unwrap();
    assert_eq!(r["results"]["spaces_checked"], 50);
    assert_eq!(r["inputs"]["seed"], 3);
}

#[test]
fn census_emits_rows_then_summary() {
    let (code, stdout, stderr) = binact(&["census", "--group", "z2", "--carrier", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[..4].iter().all(|row| row["space_id"].is_string()));
    assert_eq!(lines[4]["results"]["total"], 4);
    assert!(stderr.contains("census"));
}

#[test]
fn input_errors_exit_1() {
    let (code, r) = report(&["validate", "--space", "coset:s3:1"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["results"]["error"]["kind"], "not_normal");
    assert!(r["results"]["error"]["witness"]["g"].is_number());

    let (code, r) = report(&["orbit", "--space", "z5", "--point", "7"]);
    assert_eq!(code, 1);
    assert!(r["results"]["error"]["message"].as_str().unwrap().contains("--point"));

    let (code, _, stderr) = binact(&["orbit", "--space", "z5"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--point"));

    let (code, _, stderr) = binact(&["orbit", "--space", "z5", "--point", "1", "--bogus"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--bogus"));

    let (code, r) = report(&["verify-thm1", "--space", "z5"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["error"]["kind"], "not_transitive");

    let (code, _) = report(&["validate", "--group", "nope"]);
    assert_eq!(code, 1);
}

#[test]
fn group_order_guard() {
    let (code, r) = report(&["validate", "--group", "s5"]);
    assert_eq!(code, 1);
    assert!(r["results"]["error"]["message"].as_str().unwrap().contains("--max-order"));
    assert_eq!(r["inputs"]["group"], "s5");
    assert_eq!(report(&["validate", "--group", "s5", "--max-order", "120"]).0, 0);
}

#[test]
fn budget_exceeded_exits_3() {
    let (code, r) = report(&["census", "--group", "z4", "--carrier", "4", "--budget", "100"]);
    assert_eq!(code, 3);
    assert_eq!(r["results"]["error"]["kind"], "budget_exceeded");
    assert_eq!(r["results"]["error"]["witness"]["needed"], 65536);
}

#[test]
fn continuum_subcommands() {
    let (code, r) = report(&["continuum", "axioms", "--dim", "3", "--samples", "200", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["pass"], true);
    assert_eq!(r["inputs"]["seed"], 5);

    let (code, r) = report(&["continuum", "reach", "--dim", "3", "--target", "-1.5,2,0.25"]);
    assert_eq!(code, 0);
    assert!(r["results"]["error"].as_f64().unwrap() < 1e-6);
    assert!(r["results"]["depth"].as_u64().unwrap() <= 3);

    let (code, r) = report(&["continuum", "witness", "--dim", "4", "--samples", "100", "--reach-samples", "20"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["subspaces"].as_array().unwrap().len(), 4);

    // composition residuals of a few ulps exceed an absurdly tight tolerance
    let (code, r) = report(&["continuum", "axioms", "--dim", "4", "--samples", "200", "--tol-axiom", "1e-30"]);
    assert_eq!(code, 2);
    assert_eq!(r["verdict"], "refuted");
    assert_eq!(report(&["continuum", "axioms", "--dim", "2", "--tol-axiom", "0"]).0, 1);

    let (code, _) = report(&["continuum", "reach", "--dim", "2", "--target", "1,x"]);
    assert_eq!(code, 1);
}

#[test]
fn translate_audits_every_orbit_point() {
    let (code, r) = report(&["translate", "--space", "s3", "--point", "x"]);
    assert_eq!(code, 0);
    let ts = r["results"]["translations"].as_array().unwrap();
    assert_eq!(ts.len(), 6);
    assert!(ts.iter().all(|t| t["verified"] == true));

    let (code, r) = report(&["translate", "--space", "dihedral:4", "--point", "e", "--to", "r"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["error"]["kind"], "not_in_orbit");
}

#[test]
fn gallery_export_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("binact-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.json");
    let p = path.to_str().unwrap();
    let (code, _) = report(&["gallery", "export", "--space", "s3", "--output", p]);
    assert_eq!(code, 0);
    let (code, r) = report(&["orbit", "--space", p, "--point", "x"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["step"], 3);
    assert_eq!(report(&["validate", "--space", p]).0, 0);

    // a corrupted table is rejected with the violated law
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file["mu"][0][0][0] = Value::from(1);
    std::fs::write(&path, file.to_string()).unwrap();
    let (code, r) = report(&["validate", "--space", p]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["error"]["kind"], "axiom_violation");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_reports_flags_and_subgroup() {
    let (code, r) = report(&["classify", "--space", "coset:z4:2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["flags"]["transitive"], true);
    assert_eq!(r["results"]["classification"]["subgroup"]["members"], serde_json::json!([0, 2]));

    let (code, r) = report(&["classify", "--group", "z2", "--carrier", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["spaces"].as_array().unwrap().len(), 4);
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = binact_cli::run(["binact", "steps", "--space", "z5"], &mut out, &mut err);
    assert_eq!(code, 0);
    let (_, stdout, _) = binact(&["steps", "--space", "z5"]);
    assert_eq!(String::from_utf8(out).unwrap(), stdout);
}
