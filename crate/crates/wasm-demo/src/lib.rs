//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string; the page does the plotting.

use serde_json::{json, Value};
use tiltwalk_core::asymptotics::{normalize_a1, Approximant};
use tiltwalk_core::io::DecompositionRecord;
use tiltwalk_core::roots;
use tiltwalk_core::tilting::{tensor_power, Weight};
use tiltwalk_core::walks::streamed_sums;
use tiltwalk_core::{Error, Result};
use wasm_bindgen::prelude::*;

pub const MAX_N: u32 = 3000;
pub const MAX_K: u32 = 60;
pub const MAX_POWER: u32 = 40;

fn limit(name: &str, v: u32, max: u32) -> Result<()> {
    if v > max {
        return Err(Error::InvalidArgument(format!("{name} is limited to {max} here")));
    }
    Ok(())
}

/// `[{n, ratio, limit}]` with `ratio = b_n / a_approx(n)`.
pub fn ratio_series_json(ell: u32, n_max: u32) -> Result<String> {
    limit("n", n_max, MAX_N)?;
    let ell = u64::from(ell);
    let sums = streamed_sums(ell, n_max as usize)?;
    let approx = Approximant::modular(ell)?;
    let base = Approximant::classical().normalized(1);
    let points: Vec<Value> = (1..=n_max as usize)
        .map(|n| {
            json!({
                "n": n,
                "ratio": normalize_a1(&sums.modular.values[n], n) / base,
                "limit": approx.normalized(n) / base,
            })
        })
        .collect();
    Ok(Value::Array(points).to_string())
}

/// Decomposition record of `T(k)^{(x) n}`.
pub fn decompose_json(k: u32, n: u32, ell: u32) -> Result<String> {
    limit("k", k, MAX_K)?;
    limit("n", n, MAX_POWER)?;
    let (td, d) = tensor_power(Weight(k.into()), n as usize, ell.into())?;
    Ok(serde_json::to_string(&DecompositionRecord::new(&td, &d)).expect("record serializes"))
}

/// The A1 envelope for `T(1)` and the normalized `b_n / (n^{-1/2} 2^n)`.
pub fn envelope_json(ell: u32, n_max: u32) -> Result<String> {
    limit("n", n_max, MAX_N)?;
    let env = roots::a1_envelope(2, 2, ell.into())?;
    let sums = streamed_sums(ell.into(), n_max as usize)?;
    let points: Vec<Value> = (1..=n_max as usize)
        .map(|n| json!([n, normalize_a1(&sums.modular.values[n], n)]))
        .collect();
    let outside = (1..=n_max as usize)
        .filter(|&n| !env.contains(normalize_a1(&sums.modular.values[n], n)))
        .count();
    Ok(json!({
        "lower": env.lower_const,
        "upper": env.upper_const,
        "tau": env.tau.to_string(),
        "beta": env.beta,
        "outside": outside,
        "points": points,
    })
    .to_string())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn ratio_series(ell: u32, n_max: u32) -> std::result::Result<String, JsError> {
    js(ratio_series_json(ell, n_max))
}

#[wasm_bindgen]
pub fn decompose(k: u32, n: u32, ell: u32) -> std::result::Result<String, JsError> {
    js(decompose_json(k, n, ell))
}

#[wasm_bindgen]
pub fn envelope(ell: u32, n_max: u32) -> std::result::Result<String, JsError> {
    js(envelope_json(ell, n_max))
}
