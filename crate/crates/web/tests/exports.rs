use faircheck_web::{check, transform_formula, wcc};
use serde_json::Value;

const FIG2: &str = include_str!("../../cli/fixtures/fig2.aut");
const FIG3: &str = include_str!("../../cli/fixtures/fig3.aut");
const HIDE: &str = include_str!("../../cli/fixtures/hide.hom");

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn server_example() {
    assert_eq!(parse(check(FIG2, "G F result", "rl"))["holds"], true);
    let sat = parse(check(FIG2, "G F result", "sat"));
    assert_eq!(sat["holds"], false);
    assert_eq!(sat["witness"]["text"], "lock·(request·no·reject)^ω");
    assert_eq!(parse(wcc(FIG2, HIDE))["closed"], true);
    assert_eq!(parse(wcc(FIG3, HIDE))["closed"], false);
}

#[test]
fn transforms() {
    assert_eq!(parse(transform_formula("X a", "T"))["formula"], "eps U (!eps & X (eps U a))");
    assert!(parse(transform_formula("X a", "Q"))["error"].is_string());
}

#[test]
fn errors_are_reported() {
    assert!(parse(check("alphabet: a\n", "a", "rl"))["error"].as_str().unwrap().contains("states"));
    assert!(parse(check(FIG2, "G F nothing", "rl"))["error"].is_string());
    assert!(parse(check(FIG2, "G F result", "xx"))["error"].is_string());
}
