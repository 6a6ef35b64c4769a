//! Byte-stable reports for the documented invocations. Set `BLESS=1` to
//! rewrite the expected files after an intended change.

use std::fs;
use std::path::PathBuf;

use faircheck_cli::run;

const FIG2: &str = "fixtures/fig2.aut";
const FIG3: &str = "fixtures/fig3.aut";
const HIDE: &str = "fixtures/hide.hom";

fn golden(name: &str, code: i32, args: &[&str]) {
    let (got_code, out) = run(args.iter().copied());
    assert_eq!(got_code, code, "exit code of {args:?}\n{out}");
    let path = PathBuf::from("tests/golden").join(format!("{name}.out"));
    if std::env::var_os("BLESS").is_some() {
        fs::write(&path, &out).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, want, "output of {args:?} differs from {}", path.display());
}

#[test]
fn server_checks() {
    golden("check_sat_fig2", 1, &["check", "sat", "--system", FIG2, "--formula", "G F result"]);
    golden("check_rl_fig2", 0, &["check", "rl", "--system", FIG2, "--formula", "G F result"]);
    golden("check_rl_fig3", 1, &["check", "rl", "--system", FIG3, "--formula", "G F result"]);
    golden("check_rs_fig2_json", 1, &["check", "rs", "--system", FIG2, "--formula", "G F result", "--json"]);
}

#[test]
fn server_abstraction() {
    golden("wcc_fig2", 0, &["wcc", "--system", FIG2, "--hom", HIDE]);
    golden("wcc_fig3", 1, &["wcc", "--system", FIG3, "--hom", HIDE]);
    golden("wcc_fig3_json", 1, &["wcc", "--system", FIG3, "--hom", HIDE, "--json"]);
    golden("abstract_fig2", 0, &["abstract", "--system", FIG2, "--hom", HIDE]);
    golden("xtd_fig2", 0, &["xtd", "--system", FIG2, "--hom", HIDE]);
    golden("preserve_fig2", 0, &["preserve", "--system", FIG2, "--hom", HIDE, "--formula", "G F result"]);
    golden("preserve_fig3_json", 1, &["preserve", "--system", FIG3, "--hom", HIDE, "--formula", "G F result", "--json"]);
}

#[test]
fn transformations() {
    golden("transform_t_next", 0, &["transform", "--formula", "X a", "--mode", "T"]);
    golden("transform_r_always", 0, &["transform", "--formula", "G a", "--mode", "R"]);
    golden("transform_r_boolean", 0, &["transform", "--formula", "a & !b", "--mode", "R"]);
    golden("transform_pnf", 0, &["transform", "--formula", "!(a U b) -> X c", "--mode", "pnf"]);
}

#[test]
fn synthesis_and_eval() {
    golden("synthesize_fig2", 0, &["synthesize", "--system", FIG2, "--formula", "G F result"]);
    golden("synthesize_fig3", 1, &["synthesize", "--system", FIG3, "--formula", "G F result"]);
    golden("eval_lock_cycle", 1, &["eval", "--lasso", "lock;request no reject", "--formula", "G F result"]);
    golden("safety_class", 0, &["safety-class", "--formula", "G (a -> X b)", "--alphabet", "a b"]);
    golden("safety_class_live", 1, &["safety-class", "--formula", "G F a", "--alphabet", "a b"]);
}

#[test]
fn synthesized_implementation_verifies() {
    let (code, text) = run(["synthesize", "--system", FIG2, "--formula", "G F result"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("faircheck-golden-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let imp = dir.join("imp.aut");
    fs::write(&imp, text).unwrap();
    let imp = imp.to_str().unwrap();
    let (code, out) = run(["verify-impl", "--impl", imp, "--system", FIG2, "--formula", "G F result"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(["verify-impl", "--impl", FIG2, "--system", FIG2, "--formula", "G F result"]);
    assert_eq!(code, 1, "{out}");
    fs::remove_dir_all(dir).ok();
}

#[test]
fn input_errors() {
    golden("missing_initial", 2, &["check", "rl", "--system", "tests/bad/missing_initial.aut", "--formula", "true"]);
    golden("bad_hom", 2, &["wcc", "--system", FIG2, "--hom", "tests/bad/partial.hom"]);
    let (code, _) = run(["check", "xx", "--system", FIG2, "--formula", "true"]);
    assert_eq!(code, 2);
    let (code, _) = run(["check", "rl", "--system", FIG2, "--formula", "G (unknown"]);
    assert_eq!(code, 2);
    let (code, _) = run(["check", "rl", "--system", FIG2]);
    assert_eq!(code, 2);
}

#[test]
fn timing_is_reported_on_request() {
    let (_, out) = run(["transform", "--formula", "a", "--mode", "N", "--json", "--timing"]);
    assert!(out.contains("\"timing_ms\""));
    let (_, out) = run(["transform", "--formula", "a", "--mode", "N", "--json"]);
    assert!(!out.contains("timing"));
}
