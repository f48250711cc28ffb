//! One test per acceptance criterion. Each prints a PASS or FAIL line
//! before asserting; thresholds live in `gradus_cli::criteria`.

use std::process::Command;

use gradus_cli::criteria::{self, CheckConfig, Outcome};

fn check(o: Result<Outcome, gradus_cli::commands::CliError>) {
    let o = o.unwrap_or_else(|e| panic!("criterion did not run: {e}"));
    println!(
        "criterion {:>2} [{}] {}",
        o.id,
        if o.passed { "PASS" } else { "FAIL" },
        o.name
    );
    assert!(o.passed, "{}", serde_json::to_string_pretty(&o.detail).unwrap());
}

const SEED: u64 = 42;

#[test]
fn key_form_values() {
    check(criteria::key_forms());
}

#[test]
fn degree_drop_matches_membership() {
    check(criteria::drop_equivalence(SEED));
}

#[test]
fn lifts_reach_the_substituted_degree() {
    check(criteria::lifting(SEED));
}

#[test]
fn degree_like_axioms() {
    check(criteria::degree_axioms(SEED));
}

#[test]
fn substituted_degrees_extend_eta() {
    check(criteria::extension(SEED));
}

#[test]
fn each_ri_is_finitely_generated() {
    check(criteria::generation(&CheckConfig::standard(SEED)));
}

#[test]
fn generators_keep_appearing_for_the_max() {
    check(criteria::generator_growth(&CheckConfig::standard(SEED)));
}

#[test]
fn conjugate_coefficients_are_bounded() {
    check(criteria::integrality(SEED));
}

#[test]
fn family_reproduces_and_a_second_member_passes() {
    check(criteria::family_reproduction(SEED));
}

#[test]
fn check_all_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_gradus"))
            .args(["check-all", "--seed", "42", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        (std::fs::read(&out).unwrap(), status.status.code())
    };
    let (a, code_a) = run("first.json");
    let (b, code_b) = run("second.json");
    let passed = a == b && code_a == code_b && !a.is_empty();
    println!("criterion 10 [{}] determinism", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "aggregate reports differ");
}
