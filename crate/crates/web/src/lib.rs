//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string: either the table the page renders
//! or `{"error": "..."}`. Sizes are capped so that a click stays
//! interactive in a single browser thread.

use fihom::catalan::{enumerate_sigma, subset_label};
use fihom::families::preset;
use fihom::fi::Ring;
use fihom::koszul::fi_homology;
use fihom::stable_range::{congruence_bounds, propagate_claim, DegreeSpectralInput};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

pub const MAX_CATALAN_B: usize = 9;
pub const MAX_BOUNDS_K: usize = 20;
pub const MAX_TRUNCATION: usize = 6;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// The sets of Σ(a, b) with their complements.
#[wasm_bindgen]
pub fn catalan_table(a: usize, b: usize) -> String {
    respond((|| {
        if b > MAX_CATALAN_B {
            return Err(format!("b is capped at {MAX_CATALAN_B} in the browser"));
        }
        let sets = enumerate_sigma(a, b).map_err(|e| e.to_string())?;
        let rows: Vec<Value> = sets
            .iter()
            .map(|s| json!({ "set": s.label(), "complement": subset_label(&s.complement()) }))
            .collect();
        Ok(json!({ "a": a, "b": b, "count": sets.len(), "rows": rows }))
    })())
}

/// Colimit thresholds and `E²` bounds for rows `0..=k_max`.
#[wasm_bindgen]
pub fn bounds_table(d: u32, k_max: usize) -> String {
    respond((|| {
        if k_max > MAX_BOUNDS_K {
            return Err(format!("k is capped at {MAX_BOUNDS_K}"));
        }
        let closed = congruence_bounds(d, k_max, 2).map_err(|e| e.to_string())?;
        let prop = propagate_claim(&DegreeSpectralInput::standard(d, k_max), k_max, 2).map_err(|e| e.to_string())?;
        let rows: Vec<Value> = closed
            .rows
            .iter()
            .map(|r| {
                let p = prop.row(r.k);
                json!({
                    "k": r.k,
                    "h0": r.h0,
                    "h1": r.h1,
                    "threshold": r.threshold,
                    "propagated_h0": p.map(|p| p.h0),
                    "propagated_h1": p.map(|p| p.h1),
                })
            })
            .collect();
        Ok(json!({ "d": d, "rows": rows }))
    })())
}

/// `W_n` and `H_p(W)_n` for a built-in module such as `sharpness:1,2`.
#[wasm_bindgen]
pub fn homology_table(name: &str, rational: bool, truncation: usize, p_max: usize) -> String {
    respond((|| {
        if truncation > MAX_TRUNCATION {
            return Err(format!("truncation is capped at {MAX_TRUNCATION} in the browser"));
        }
        let ring = if rational { Ring::Q } else { Ring::Z };
        let file = preset(name, ring, truncation).map_err(|e| e.to_string())?;
        let w = file.build().map_err(|e| e.to_string())?.module();
        let table = fi_homology(&w, p_max.min(3));
        let show = |g: &fihom::linalg::GroupInvariants| g.to_string();
        let module: Vec<String> = (0..=w.truncation()).map(|n| show(&w.invariants(n))).collect();
        let rows: Vec<Value> = table
            .groups
            .iter()
            .zip(&table.degrees)
            .enumerate()
            .map(|(p, (groups, deg))| {
                json!({
                    "p": p,
                    "groups": groups.iter().map(show).collect::<Vec<_>>(),
                    "degree": deg.degree,
                    "truncation_limited": deg.truncation_limited,
                })
            })
            .collect();
        Ok(json!({ "name": name, "ring": ring, "truncation": truncation, "module": module, "homology": rows }))
    })())
}
