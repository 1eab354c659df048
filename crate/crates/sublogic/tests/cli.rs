use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sublogic")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

/// Runs a proof-producing command and checks its output with `check`.
fn produces_valid_proof(name: &str, args: &[&str]) -> String {
    let o = bin(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let path = tmp(name, &stdout(&o));
    let c = bin(&["check", &path]);
    assert_eq!(c.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&c.stderr));
    stdout(&c)
}

#[test]
fn check_fixture_proof() {
    let o = bin(&["check", &fixture("horn.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok LK_u: p, p -> q => q"));
}

#[test]
fn check_rejects_wrong_calculus() {
    // LK_nn initial sequents are not available in FL_e.
    let o = bin(&["check", &fixture("lknn.json"), "--calculus", "FL_e"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn tampered_proof_is_a_violation() {
    let text = std::fs::read_to_string(fixture("horn.json")).unwrap().replacen("\"q\"", "\"r\"", 1);
    let path = tmp("tampered.json", &text);
    assert_eq!(bin(&["check", &path]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["horn", "valid", "p -> => q"]).status.code(), Some(2));
    assert_eq!(bin(&["check", "/nonexistent/proof.json"]).status.code(), Some(2));
    assert_eq!(bin(&["search", "decide", "p => p", "--calculus", "FL_ec"]).status.code(), Some(2));
    assert_eq!(bin(&["bench", "nope"]).status.code(), Some(2));
}

#[test]
fn negative_verdicts_exit_1() {
    assert_eq!(bin(&["horn", "valid", "p -> q => q"]).status.code(), Some(1));
    assert_eq!(bin(&["search", "taut", "p -> q"]).status.code(), Some(1));
    assert_eq!(bin(&["search", "decide", "p => p * p", "--calculus", "FL_e"]).status.code(), Some(1));
    let v = fixture("doubler.vass");
    assert_eq!(bin(&["vass", "reach", &v, "--from", "r:0,0", "--to", "q:0,0"]).status.code(), Some(1));
}

#[test]
fn proof_producing_commands_check() {
    produces_valid_proof("horn.json", &["horn", "prove", "p, p -> q, q -> r => r"]);
    produces_valid_proof("decide.json", &["search", "decide", "p * q => q * p", "--calculus", "FL_e"]);
    produces_valid_proof("bounded.json", &["search", "bounded", "p => p * p", "--calculus", "FL_ec"]);
    produces_valid_proof("lemma33.json", &["cutfree", "lemma33", "p * (q \\/ r)", "--goal", "em"]);
    produces_valid_proof(
        "duality.json",
        &["chu", "duality", "p * q -> r", "--system", "CFL_e", "--d", "d", "--n", "n"],
    );
    produces_valid_proof(
        "axiom.json",
        &["chu", "translate-axiom", "--axiom", "pf", "--system", "FLe_F", "--subst", "A:=p,B:=q*r,C:=1"],
    );
    let out = produces_valid_proof(
        "frege.json",
        &["chu", "translate-proof", &fixture("disjunction.frege"), "--system", "FLe_F", "--d", "d", "--n", "n"],
    );
    assert!(out.contains("p -> p \\/ q"));
    produces_valid_proof("pipeline.json", &["chu", "pipeline", &fixture("disjunction.frege"), "--system", "MALL_F"]);
    produces_valid_proof(
        "run.json",
        &["vass", "run-to-proof", &fixture("doubler.vass"), "--from", "q:0,0", "--run", "r0,r1,r2,r3"],
    );
}

#[test]
fn lknn_translation_chain() {
    let lk = bin(&["search", "lknn", "p \\/ (p -> 0) \\/ q => p \\/ (p -> 0)"]);
    assert_eq!(lk.status.code(), Some(0));
    let lk = tmp("chain_lknn.json", &stdout(&lk));
    let g = produces_valid_proof("chain_g.json", &["cutfree", "translate", &lk]);
    assert!(g.starts_with("ok G:"));
    let g = bin(&["cutfree", "translate", &lk]);
    let g = tmp("chain_g2.json", &stdout(&g));
    let d = produces_valid_proof("chain_d.json", &["cutfree", "deduce", &g]);
    assert!(d.starts_with("ok FL_e:"));
}

#[test]
fn vass_reach_and_reduce() {
    let v = fixture("doubler.vass");
    let o = bin(&["vass", "reach", &v, "--from", "q:0,0", "--to", "r:0,0"]);
    assert_eq!(stdout(&o).trim(), "found r0,r1,r2,r3");
    let o = bin(&["vass", "reduce", &v, "--target", "r"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("state q_new"));
    let o = bin(&["vass", "encode", &v, "--from", "q", "--to", "r"]);
    assert!(stdout(&o).trim_end().ends_with("=> r"));
}

#[test]
fn seeded_output_is_reproducible() {
    let a = bin(&["--seed", "5", "gen", "formula", "--lang", "bang", "--size", "30"]);
    let b = bin(&["--seed", "5", "gen", "formula", "--lang", "bang", "--size", "30"]);
    assert_eq!(stdout(&a), stdout(&b));
    let a = bin(&["--seed", "2", "bench", "horn", "--sizes", "10,20", "--samples", "2"]);
    let b = bin(&["--seed", "2", "bench", "horn", "--sizes", "10,20", "--samples", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn out_flag_writes_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("gen_vass.txt");
    let o = bin(&["--out", path.to_str().unwrap(), "gen", "vass", "--ordinary"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("vass d="));
    let r = bin(&["vass", "encode", path.to_str().unwrap(), "--from", "q0", "--to", "q0"]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
}

#[test]
fn family_stats_and_vass_horn_bridge() {
    let o = bin(&["gen", "clique", "--n", "4", "--stats"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,n,k,m,clauses,size,atoms"));
    assert!(lines.next().unwrap().starts_with("clique,4,2,2,"));
    let o = bin(&["gen", "clique", "--n", "3", "--k", "5"]);
    assert_eq!(o.status.code(), Some(2));

    let out =
        produces_valid_proof("vass_horn.json", &["horn", "prove", "--from-vass", &fixture("doubler.vass"), "q", "r"]);
    assert!(out.starts_with("ok LK_u: q, "));
    assert_eq!(bin(&["horn", "check", "p => p"]).status.code(), Some(0));
    assert_eq!(bin(&["horn", "prove", "p \\/ q => q"]).status.code(), Some(2));
}
