//! End-to-end runs of the `wer` binary: every command, the exit-code
//! contract, chained artifacts feeding each other, and byte-level
//! reproducibility of the generated files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn wer(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wer"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("reports are UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("errors are UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal exits")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).expect("test files are writable");
    path
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).expect("the command wrote the file")
}

/// Two contradictory unit clauses.
const TINY_CNF: &str = "p cnf 1 2\n1 0\n-1 0\n";
/// One extension triple x2 = 1 AND 1, then the input units resolve to
/// the empty clause; size 2 distinct extension clauses + 2.
const TINY_ER: &str = "x 2 1 1 0\nr 1 2 1 0\n";

#[test]
fn gen_bphp_writes_dimacs_and_meta() {
    let dir = TempDir::new().unwrap();
    let out = wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "bphp1.cnf"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "wrote bphp1.cnf: 6 clauses over 3 variables\nwrote bphp1.cnf.meta\n"
    );
    let cnf = read(dir.path(), "bphp1.cnf");
    assert!(cnf.starts_with("c bit pigeonhole principle: 3 pigeons, 2 holes"));
    assert!(cnf.contains("p cnf 3 6\n"));
    assert_eq!(cnf.lines().filter(|l| l.ends_with(" 0")).count(), 6);
    assert_eq!(read(dir.path(), "bphp1.cnf.meta"), "family=bphp\nk=1\nn=2\n");
}

#[test]
fn generate_refute_check_round_trip() {
    let dir = TempDir::new().unwrap();
    wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "f.cnf"]);
    let dp = wer(
        dir.path(),
        &["oracle", "dp", "--cnf", "f.cnf", "--out", "p.wer"],
    );
    assert_eq!(code(&dp), 0);
    assert!(stdout(&dp).starts_with("UNSAT proof size "));
    let check = wer(
        dir.path(),
        &["check", "res", "--cnf", "f.cnf", "--proof", "p.wer"],
    );
    assert_eq!(code(&check), 0, "{}", stdout(&check));
    assert!(stdout(&check).starts_with("verdict accepted\nsize "));
}

#[test]
fn check_rejects_new_variables_with_exit_one() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.cnf", TINY_CNF);
    write(dir.path(), "p.wer", "s 1 2 0\n");
    let out = wer(
        dir.path(),
        &["check", "sbc", "--cnf", "f.cnf", "--proof", "p.wer"],
    );
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("verdict rejected"), "{text}");
    assert!(
        text.contains("step 1: variable 2 does not occur"),
        "{text}"
    );
}

#[test]
fn prove_g_rat_emits_a_checkable_proof_within_the_bound() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.cnf", TINY_CNF);
    write(dir.path(), "f.er", TINY_ER);
    let prove = wer(
        dir.path(),
        &[
            "prove", "g-rat", "--cnf", "f.cnf", "--er", "f.er", "--out", "p.wer", "--out-cnf",
            "g.cnf",
        ],
    );
    assert_eq!(code(&prove), 0, "{}", stderr(&prove));
    assert!(stdout(&prove).contains("size 4 <= er size 4"), "{}", stdout(&prove));
    let check = wer(
        dir.path(),
        &["check", "rat", "--cnf", "g.cnf", "--proof", "p.wer"],
    );
    assert_eq!(code(&check), 0, "{}", stdout(&check));
}

#[test]
fn prove_i_ger_emits_a_checkable_certificate() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.cnf", TINY_CNF);
    write(dir.path(), "f.er", TINY_ER);
    let prove = wer(
        dir.path(),
        &[
            "prove", "i-ger", "--cnf", "f.cnf", "--er", "f.er", "-m", "1", "--out", "c.ger",
            "--out-cnf", "i.cnf",
        ],
    );
    assert_eq!(code(&prove), 0, "{}", stderr(&prove));
    assert!(stdout(&prove).contains("size 4 <= er size 4"), "{}", stdout(&prove));
    assert!(read(dir.path(), "c.ger").starts_with("keep 1 2 "));
    let check = wer(
        dir.path(),
        &["check", "ger", "--cnf", "i.cnf", "--proof", "c.ger"],
    );
    assert_eq!(code(&check), 0, "{}", stdout(&check));
}

#[test]
fn prove_rejects_an_unaccepted_refutation_with_exit_two() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.cnf", TINY_CNF);
    write(dir.path(), "f.er", "r 1 1 1 0\n");
    let out = wer(
        dir.path(),
        &["prove", "g-rat", "--cnf", "f.cnf", "--er", "f.er", "--out", "p.wer"],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("rejected at step 1"), "{}", stderr(&out));
    assert!(!dir.path().join("p.wer").exists());
}

#[test]
fn missing_files_exit_three() {
    let dir = TempDir::new().unwrap();
    let out = wer(dir.path(), &["oracle", "sat", "--cnf", "nosuch.cnf"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn oracle_sat_respects_the_variable_cap() {
    let dir = TempDir::new().unwrap();
    let mut wide = String::from("p cnf 21 1\n");
    for v in 1..=21 {
        wide.push_str(&format!("{v} "));
    }
    wide.push_str("0\n");
    write(dir.path(), "wide.cnf", &wide);
    let capped = wer(dir.path(), &["oracle", "sat", "--cnf", "wide.cnf"]);
    assert_eq!(code(&capped), 2);
    assert!(stderr(&capped).contains("above the brute-force limit 20"));
    let raised = wer(
        dir.path(),
        &["--oracle-var-limit", "21", "oracle", "sat", "--cnf", "wide.cnf"],
    );
    assert_eq!(code(&raised), 0);
    assert!(stdout(&raised).starts_with("SAT "));
}

#[test]
fn config_file_applies_and_flags_override_it() {
    let dir = TempDir::new().unwrap();
    wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "f.cnf"]);
    write(dir.path(), "run.conf", "oracle_var_limit=2\n");
    let capped = wer(
        dir.path(),
        &["--config", "run.conf", "oracle", "sat", "--cnf", "f.cnf"],
    );
    assert_eq!(code(&capped), 2);
    let raised = wer(
        dir.path(),
        &[
            "--config", "run.conf", "--oracle-var-limit", "20", "oracle", "sat", "--cnf",
            "f.cnf",
        ],
    );
    assert_eq!(code(&raised), 0);
    assert_eq!(stdout(&raised), "UNSAT\n");
    write(dir.path(), "bad.conf", "depth=3\n");
    let unknown = wer(
        dir.path(),
        &["--config", "bad.conf", "oracle", "sat", "--cnf", "f.cnf"],
    );
    assert_eq!(code(&unknown), 2);
    assert!(stderr(&unknown).contains("unknown config key"));
}

#[test]
fn restricted_proofs_check_out_and_reproduce_per_seed() {
    let dir = TempDir::new().unwrap();
    wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "f.cnf"]);
    wer(dir.path(), &["oracle", "dp", "--cnf", "f.cnf", "--out", "p.wer"]);
    let args = [
        "--seed", "7", "oracle", "restrict", "--cnf", "f.cnf", "--proof", "p.wer", "--match",
        "1", "--out", "r.wer", "--out-cnf", "r.cnf",
    ];
    let first = wer(dir.path(), &args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    assert!(stdout(&first).contains("verdict accepted"));
    let restricted = read(dir.path(), "r.wer");
    let check = wer(
        dir.path(),
        &["check", "res", "--cnf", "r.cnf", "--proof", "r.wer"],
    );
    assert_eq!(code(&check), 0, "{}", stdout(&check));
    let again = wer(dir.path(), &args);
    assert_eq!(stdout(&first), stdout(&again));
    assert_eq!(read(dir.path(), "r.wer"), restricted);
}

#[test]
fn restrict_accepts_an_explicit_assignment() {
    let dir = TempDir::new().unwrap();
    wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "f.cnf"]);
    wer(dir.path(), &["oracle", "dp", "--cnf", "f.cnf", "--out", "p.wer"]);
    let out = wer(
        dir.path(),
        &[
            "oracle", "restrict", "--cnf", "f.cnf", "--proof", "p.wer", "--assign", "1",
            "--out", "r.wer",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("assignment 1\n"));
}

#[test]
fn enum_sbc_reports_widths_and_the_minimum() {
    let dir = TempDir::new().unwrap();
    wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "f.cnf"]);
    let out = wer(dir.path(), &["oracle", "enum-sbc", "--cnf", "f.cnf"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| l.contains('\t'))
        .collect();
    assert_eq!(rows.len(), 6, "{text}");
    assert!(rows.iter().all(|r| r.ends_with("\t3")), "{text}");
    assert!(text.ends_with("count 6\nmin pigeon-width 3\n"), "{text}");
}

#[test]
fn width_covers_inputs_and_proof_steps() {
    let dir = TempDir::new().unwrap();
    wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "f.cnf"]);
    wer(dir.path(), &["oracle", "dp", "--cnf", "f.cnf", "--out", "p.wer"]);
    let out = wer(
        dir.path(),
        &["oracle", "width", "--cnf", "f.cnf", "--proof", "p.wer"],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("input\t")).count(), 6);
    assert_eq!(text.lines().filter(|l| l.starts_with("step\t")).count(), 5);
    assert!(text.ends_with("max pigeon-width 2\n"), "{text}");
}

#[test]
fn gen_g_and_i_take_guards_from_a_file_or_a_count() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.cnf", TINY_CNF);
    write(dir.path(), "f.er", TINY_ER);
    let from_er = wer(
        dir.path(),
        &["gen", "g", "--cnf", "f.cnf", "--er", "f.er", "--out", "g.cnf"],
    );
    assert_eq!(code(&from_er), 0, "{}", stderr(&from_er));
    assert_eq!(read(dir.path(), "g.cnf.meta"), "family=g\nt=1\n");
    let fresh = wer(
        dir.path(),
        &["gen", "i", "--cnf", "f.cnf", "-t", "2", "-m", "3", "--out", "i.cnf"],
    );
    assert_eq!(code(&fresh), 0, "{}", stderr(&fresh));
    assert_eq!(read(dir.path(), "i.cnf.meta"), "family=i\nm=3\nt=2\n");
    // inputs 2, linking 2*3*2, blocks 3*(1 + 2*2)
    assert!(read(dir.path(), "i.cnf").contains("p cnf 9 29\n"));
    let neither = wer(dir.path(), &["gen", "g", "--cnf", "f.cnf", "--out", "g.cnf"]);
    assert_eq!(code(&neither), 2);
}

#[test]
fn json_lines_reports_are_parseable_objects() {
    let dir = TempDir::new().unwrap();
    wer(dir.path(), &["gen", "bphp", "-k", "1", "--out", "f.cnf"]);
    wer(dir.path(), &["oracle", "dp", "--cnf", "f.cnf", "--out", "p.wer"]);
    for args in [
        vec!["--json-lines", "gen", "bphp", "-k", "1", "--out", "f2.cnf"],
        vec!["--json-lines", "check", "res", "--cnf", "f.cnf", "--proof", "p.wer"],
        vec!["--json-lines", "oracle", "sat", "--cnf", "f.cnf"],
        vec!["--json-lines", "oracle", "enum-sbc", "--cnf", "f.cnf"],
        vec!["--json-lines", "oracle", "width", "--cnf", "f.cnf"],
    ] {
        let out = wer(dir.path(), &args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(!text.is_empty(), "{args:?} printed nothing");
        for line in text.lines() {
            let record: serde_json::Value =
                serde_json::from_str(line).unwrap_or_else(|e| panic!("{args:?}: {e}: {line}"));
            assert!(record.get("event").is_some(), "{line}");
        }
    }
}

#[test]
fn check_json_record_carries_the_rejection() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.cnf", TINY_CNF);
    write(dir.path(), "p.wer", "s 1 2 0\n");
    let out = wer(
        dir.path(),
        &["--json-lines", "check", "sbc", "--cnf", "f.cnf", "--proof", "p.wer"],
    );
    assert_eq!(code(&out), 1);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["verdict"], "rejected");
    assert_eq!(record["step"], 1);
    assert_eq!(record["reason_code"], "new-variable");
}
