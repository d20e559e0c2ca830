//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string: either the result object or
//! `{"error": "..."}`. The plain `*_json` functions do the work so they can be
//! tested natively.

use overcubic::classify::{classify_n, theorem_mod4_residue, verify_family, CongruenceFamily};
use overcubic::eta_theta::gen_overcubic_gf;
use overcubic::EtaQuotient;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest truncation order the demo accepts.
pub const MAX_ORDER: usize = 5000;

fn check_order(order: usize) -> Result<(), String> {
    if order == 0 || order > MAX_ORDER {
        return Err(format!("order must be between 1 and {MAX_ORDER}"));
    }
    Ok(())
}

fn modulus_opt(m: u32) -> Result<Option<u64>, String> {
    match m {
        0 => Ok(None),
        1 => Err("modulus must be 0 (exact) or at least 2".to_string()),
        m => Ok(Some(m as u64)),
    }
}

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Coefficients of the c-colored overcubic generating function with the
/// observed and predicted residues modulo 4.
pub fn overcubic_table_json(c: u32, order: usize) -> Result<Value, String> {
    check_order(order)?;
    let exact = gen_overcubic_gf(c, order, None).map_err(|e| e.to_string())?;
    let mod4 = gen_overcubic_gf(c, order, Some(4)).map_err(|e| e.to_string())?;
    let res = mod4.residues().expect("series has a modulus");
    let rows: Vec<Value> = (0..=order)
        .map(|n| {
            let (class, predicted) = match n {
                0 => (None, None),
                n => (Some(classify_n(n as u64).tag()), Some(theorem_mod4_residue(c, n as u64))),
            };
            json!({
                "n": n,
                "coefficient": exact.coefficient(n).expect("within order").to_string(),
                "mod4": res[n],
                "predicted_mod4": predicted,
                "class": class,
            })
        })
        .collect();
    let mismatches = rows.iter().filter(|r| !r["predicted_mod4"].is_null() && r["mod4"] != r["predicted_mod4"]).count();
    Ok(json!({ "c": c, "order": order, "rows": rows, "mismatches": mismatches }))
}

/// Expansion of an eta quotient such as `f2^2/f1`. A modulus of 0 means exact.
pub fn expand_eta_json(spec: &str, order: usize, modulus: u32) -> Result<Value, String> {
    check_order(order)?;
    let m = modulus_opt(modulus)?;
    let e: EtaQuotient = spec.parse().map_err(|e: overcubic::EtaError| e.to_string())?;
    let s = e.expand(order, m).map_err(|e| e.to_string())?;
    let coefficients: Vec<String> = s.coefficients().iter().map(|c| c.to_string()).collect();
    Ok(json!({
        "quotient": e.to_string(),
        "order": order,
        "modulus": m,
        "coefficients": coefficients,
        "display": s.to_string(),
    }))
}

/// Sweep of `abar_{a i + b}(s n + t) = r (mod m)` over `1 <= i <= i_max`,
/// `0 <= n <= n_max`.
#[allow(clippy::too_many_arguments)]
pub fn verify_family_json(a: u32, b: u32, s: u32, t: u32, m: u32, r: u32, i_max: u32, n_max: u32) -> Result<Value, String> {
    let f = CongruenceFamily::new(a, b, s as u64, t as u64, m as u64, r as u64).map_err(|e| e.to_string())?;
    let order = s as usize * n_max as usize + t as usize;
    check_order(order.max(1))?;
    let report = verify_family(&f, i_max as u64, n_max as u64, order).map_err(|e| e.to_string())?;
    serde_json::to_value(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn overcubic_table(c: u32, order: usize) -> String {
    finish(overcubic_table_json(c, order))
}

#[wasm_bindgen]
pub fn expand_eta(spec: &str, order: usize, modulus: u32) -> String {
    finish(expand_eta_json(spec, order, modulus))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn check_family(a: u32, b: u32, s: u32, t: u32, m: u32, r: u32, i_max: u32, n_max: u32) -> String {
    finish(verify_family_json(a, b, s, t, m, r, i_max, n_max))
}
