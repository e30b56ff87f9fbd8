//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and returns a JSON document: either the
//! report or `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use wpo_core::kruskal::TermSystem;
use wpo_core::normality::{check_property, Bounds, Property};
use wpo_core::ordinal::{otype_of, OtypeQuery};
use wpo_core::syntax::{parse_ordinal, parse_spec, parse_term};

/// Largest bounds the page will run; beyond these a check can take seconds.
const PAGE_MAX_POSET: usize = 4;
const PAGE_MAX_ELEM: usize = 3;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn err(e: wpo_core::Error) -> String {
    e.to_string()
}

/// Normal form of `expr` with its fundamental sequence (for limits) and the
/// order types of sequences and multisets over it.
#[wasm_bindgen]
pub fn ordinal_report(expr: &str) -> String {
    respond((|| {
        let a = parse_ordinal(expr).map_err(err)?;
        let fs: Vec<String> = if a.is_limit() {
            (0..5)
                .map(|n| a.fundamental_sequence(n).map(|o| o.to_string()))
                .collect::<Result<_, _>>()
                .map_err(err)?
        } else {
            Vec::new()
        };
        Ok(json!({
            "normalForm": a.to_string(),
            "kind": if a.is_zero() { "zero" } else if a.is_limit() { "limit" } else { "successor" },
            "fundamentalSequence": fs,
            "seq": otype_of(&OtypeQuery::Seq(a.clone())).to_string(),
            "multiset": otype_of(&OtypeQuery::Multiset(a.clone())).to_string(),
        }))
    })())
}

/// Runs one normality check and returns the verdict record.
#[wasm_bindgen]
pub fn check_dilator(spec: &str, property: &str, max_poset: usize, max_elem: usize) -> String {
    respond((|| {
        if max_poset > PAGE_MAX_POSET || max_elem > PAGE_MAX_ELEM {
            return Err(format!("the page runs at most {PAGE_MAX_POSET}/{PAGE_MAX_ELEM}"));
        }
        let spec = parse_spec(spec).map_err(err)?;
        let property: Property = property.parse().map_err(err)?;
        let v = check_property(&spec, property, Bounds::new(max_poset, max_elem)).map_err(err)?;
        let mut out = serde_json::to_value(&v).map_err(|e| e.to_string())?;
        out["text"] = Value::String(v.to_text());
        Ok(out)
    })())
}

/// Compares two Kruskal terms of `spec` in both directions.
#[wasm_bindgen]
pub fn compare_terms(spec: &str, s: &str, t: &str) -> String {
    respond((|| {
        let sys = TermSystem::new(parse_spec(spec).map_err(err)?).map_err(err)?;
        let s = parse_term(&sys, s).map_err(err)?;
        let t = parse_term(&sys, t).map_err(err)?;
        let (le, ge) = (sys.leq(&s, &t), sys.leq(&t, &s));
        let relation = match (le, ge) {
            (true, true) => "=",
            (true, false) => "<",
            (false, true) => ">",
            (false, false) => "incomparable",
        };
        let describe = |x: &wpo_core::kruskal::KruskalTerm| {
            json!({ "term": x.to_string(), "length": x.length(), "height": x.height() })
        };
        Ok(json!({ "s": describe(&s), "t": describe(&t), "relation": relation }))
    })())
}
