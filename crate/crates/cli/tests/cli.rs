use std::path::PathBuf;
use std::process::{Command, Output};

use utlab::catalog::{self, GroupFile};
use utlab::set_orbits::is_ij_homogeneous;
use utlab_cli::{Outcome, Report};

fn ut_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ut-lab"))
        .args(args)
        .env_remove("UT_LAB_DATA")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json_report(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = ut_lab(&all);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("bad JSON ({e}):\n{text}"));
    (code(&out), report)
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ut-lab-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn homog_exit_codes() {
    let (c, r) = json_report(&["homog", "--group", "catalog:ASL(2,3)@9", "--i", "3", "--j", "4"]);
    assert_eq!(c, 1);
    assert_eq!(r.outcome, Outcome::Fails);
    assert!(r.verdicts[0].witness.is_some());
    assert_eq!(r.group.as_ref().unwrap().order, "216");

    let (c, r) = json_report(&["homog", "--group", "catalog:S5@5", "--i", "2", "--j", "2"]);
    assert_eq!(c, 0);
    assert_eq!(r.outcome, Outcome::Holds);
}

#[test]
fn ut_examples() {
    let (c, _) = json_report(&["ut", "--group", "catalog:M11@12", "--k", "4"]);
    assert_eq!(c, 0);

    let out = ut_lab(&["ut", "--group", "catalog:AGL(1,17)", "--k", "3", "--witness"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("witness: partition"), "{text}");
}

#[test]
fn witness_hidden_without_flag() {
    let out = ut_lab(&["ut", "--group", "catalog:AGL(1,17)", "--k", "3"]);
    assert_eq!(code(&out), 1);
    assert!(!String::from_utf8(out.stdout).unwrap().contains("witness:"));
}

#[test]
fn degree_selects_the_action() {
    let (_, r11) = json_report(&["ut", "--group", "catalog:M11@11", "--k", "4"]);
    let (_, r12) = json_report(&["ut", "--group", "catalog:M11@12", "--k", "4"]);
    assert_eq!(r11.group.unwrap().degree, 11);
    assert_eq!(r12.group.unwrap().degree, 12);
    assert_eq!(r11.verdicts[0].method.as_deref(), Some("k_homogeneous"));
    assert_ne!(r12.verdicts[0].method.as_deref(), Some("k_homogeneous"));
}

#[test]
fn regular_examples() {
    let (c, _) = json_report(&["regular", "--group", "catalog:PGL(2,7)@8", "--rank", "4"]);
    assert_eq!(c, 0);
    let (c, _) = json_report(&["regular", "--group", "catalog:S4@4", "--map", "1,2,3,3"]);
    assert_eq!(c, 0);
    // C6 has four orbits on 3-sets; {1,3,5} is a section of {1,2}|{3,4}|{5,6}
    let (c, _) = json_report(&["regular", "--group", "catalog:C6@6", "--map", "1,1,3,3,5,5"]);
    assert_eq!(c, 0);
    // {1,2}|{3,4}|{5,6} has no section among the translates of {1,2,3}
    let (c, r) = json_report(&["regular", "--group", "catalog:C6@6", "--map", "1,1,2,2,3,3"]);
    assert_eq!(c, 1);
    assert!(r.verdicts[0].witness.as_deref().unwrap().contains("kernel 1,2|3,4|5,6"));
}

#[test]
fn regular_rank_agrees_with_direct() {
    for k in 2..5 {
        let ks = k.to_string();
        let (a, _) = json_report(&["regular", "--group", "catalog:C6@6", "--rank", &ks]);
        let (b, _) = json_report(&["regular", "--group", "catalog:C6@6", "--rank", &ks, "--direct"]);
        assert_eq!(a, b, "rank {k}");
    }
}

#[test]
fn agl_examples() {
    let (c, r) = json_report(&["agl", "--p", "13"]);
    assert_eq!(c, 1);
    assert!(r.verdicts[0].witness.as_deref().unwrap().starts_with("c = 4"));
    assert_eq!(r.verdicts[0].details.len(), 1 + 11);

    let (c, r) = json_report(&["agl", "--p", "4"]);
    assert_eq!(c, 2);
    assert_eq!(r.outcome, Outcome::Error);
    assert!(r.error.unwrap().contains("not prime"));

    let (c, r) = json_report(&["agl", "--sieve-limit", "500"]);
    assert_eq!(c, 0);
    let primes: Vec<u64> = (11..=500u64)
        .step_by(12)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect();
    assert_eq!(r.verdicts.len(), primes.len());
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(code(&ut_lab(&["ut", "--group", "catalog:NoSuchGroup", "--k", "2"])), 2);
    assert_eq!(code(&ut_lab(&["ut", "--group", "catalog:S5", "--k", "9"])), 2);
    assert_eq!(code(&ut_lab(&["regular", "--group", "catalog:S4", "--rank", "2", "--map", "1,1,1,1"])), 2);
    assert_eq!(code(&ut_lab(&["agl"])), 2);
}

#[test]
fn json_round_trips() {
    for args in [
        &["ut", "--group", "catalog:PGammaL(2,8)", "--k", "3", "--method", "extend"][..],
        &["ut", "--group", "catalog:AGL(1,17)", "--k", "3"][..],
        &["agl", "--p", "13"][..],
        &["verify", "--suite", "small"][..],
    ] {
        let (_, report) = json_report(args);
        let again = Report::from_json(&report.to_json()).unwrap();
        assert_eq!(again, report);
        assert!(report.command.iter().any(|a| a == args[0]));
    }
}

#[test]
fn file_group_round_trip() {
    let dir = scratch_dir("file");
    let group = catalog::group("ASL(2,3)@9").unwrap();
    let path = dir.join("asl23.grp");
    std::fs::write(&path, GroupFile::render("ASL(2,3)", &group, &["written by a test"])).unwrap();
    let address = format!("file:{}", path.display());

    for (i, j) in [(3, 4), (4, 5), (2, 2)] {
        let (c, r) = json_report(&["homog", "--group", &address, "--i", &i.to_string(), "--j", &j.to_string()]);
        let expected = is_ij_homogeneous(&group, i, j).unwrap().holds;
        assert_eq!(c, if expected { 0 } else { 1 }, "({i},{j})");
        let info = r.group.unwrap();
        assert_eq!((info.name.as_str(), info.degree, info.order.as_str()), ("ASL(2,3)", 9, "216"));
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn data_directory_override() {
    let dir = scratch_dir("data");
    let m12 = catalog::stored_text("m12.grp").unwrap();
    // an M12 file posing as M11 must be rejected by the order check
    std::fs::write(dir.join("m11_12.grp"), m12.replace("name: M12", "name: M11")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ut-lab"))
        .args(["ut", "--group", "catalog:M11@12", "--k", "4"])
        .env("UT_LAB_DATA", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn seed_is_echoed_and_threads_accepted() {
    let (c, r) = json_report(&["--seed", "7", "--threads", "1", "ut", "--group", "catalog:PSL(2,13)", "--k", "3", "--two-graph"]);
    assert_eq!(c, 0);
    assert!(r.command.windows(2).any(|w| w == ["--seed", "7"]));
}
