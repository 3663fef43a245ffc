use std::collections::BTreeMap;

use serde_json::{json, Value};
use skewsp::poly::Poly;
use skewsp::rational::{self, Q};

/// Result of one command: a JSON document, its text rendering and whether every check held.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, text: impl Into<String>, ok: bool) -> Self {
        Report {
            json,
            text: text.into(),
            ok,
        }
    }
}

pub fn q_str(x: &Q) -> String {
    rational::to_string(x)
}

/// A polynomial as a map from comma-joined exponent vectors to rational strings.
pub fn poly_json(p: &Poly) -> Value {
    let map: BTreeMap<String, String> = p
        .terms()
        .map(|(e, c)| {
            let key: Vec<String> = e.iter().map(|k| k.to_string()).collect();
            (key.join(","), q_str(c))
        })
        .collect();
    json!(map)
}

pub fn var_names(prefix: &str, g: usize) -> Vec<String> {
    if g == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=g).map(|i| format!("{prefix}{i}")).collect()
    }
}

pub fn poly_text(p: &Poly, names: &[String]) -> String {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    p.display(&refs)
}

pub fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}
