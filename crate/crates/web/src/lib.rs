//! WebAssembly entry points for the demo page in `www/`. Every function takes
//! plain text and returns a JSON object, either `{"error": ...}` or a result.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use faircheck::abstraction::is_weakly_continuation_closed;
use faircheck::format::{parse_automaton, parse_homomorphism, ParsedAutomaton};
use faircheck::pltl::{parse_formula, to_positive_normal_form, transform, Labeling, Transform};
use faircheck::relprops::{is_relative_liveness, is_relative_safety, satisfies, Property, Witness};
use faircheck::Error;

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Decides `kind` (`rl`, `rs` or `sat`) for the automaton text and formula.
#[wasm_bindgen]
pub fn check(system: &str, formula: &str, kind: &str) -> String {
    respond((|| {
        let sys = parse_automaton(system).map_err(err)?.omega_behavior();
        let f = parse_formula(formula).map_err(err)?;
        let s = sys.alphabet();
        if let Some(bad) = f.atoms().into_iter().find(|p| s.symbol(p).is_none()) {
            return Err(format!("`{bad}` is not a letter of {s}"));
        }
        let p = Property::from_formula(&f, &Labeling::canonical(s));
        let v = match kind {
            "rl" => is_relative_liveness(&sys, &p),
            "rs" => is_relative_safety(&sys, &p),
            "sat" => satisfies(&sys, &p),
            other => return Err(format!("unknown check `{other}`")),
        }
        .map_err(err)?;
        let witness = v.witness.as_ref().map(|w| {
            let kind = if matches!(w, Witness::Prefix(_)) { "prefix" } else { "lasso" };
            json!({ "kind": kind, "text": w.render(s) })
        });
        Ok(json!({ "holds": v.holds, "witness": witness }))
    })())
}

/// Applies `pnf`, `N`, `T` or `R` to a formula.
#[wasm_bindgen]
pub fn transform_formula(formula: &str, mode: &str) -> String {
    respond((|| {
        let pnf = to_positive_normal_form(&parse_formula(formula).map_err(err)?);
        let out = match mode {
            "pnf" => pnf,
            "N" => transform(&pnf, Transform::N).map_err(err)?,
            "T" => transform(&pnf, Transform::T).map_err(err)?,
            "R" => transform(&pnf, Transform::R).map_err(err)?,
            other => return Err(format!("unknown mode `{other}`")),
        };
        Ok(json!({ "formula": out.to_string() }))
    })())
}

/// Weak continuation-closure of a homomorphism on a transition system.
#[wasm_bindgen]
pub fn wcc(system: &str, hom: &str) -> String {
    respond((|| {
        let ParsedAutomaton::Finite(l) = parse_automaton(system).map_err(err)? else {
            return Err("expected a transition system, not a Büchi automaton".into());
        };
        let h = parse_homomorphism(hom, l.alphabet()).map_err(err)?;
        let report = is_weakly_continuation_closed(&l, &h).map_err(err)?;
        let words: Vec<String> = report.violations.iter().map(|v| l.alphabet().render(&v.word)).collect();
        Ok(json!({ "closed": report.closed, "violations": words }))
    })())
}
