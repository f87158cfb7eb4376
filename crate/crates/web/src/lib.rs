//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic can be tested natively; the exports only convert errors.

use hyperrho::analytic::lemma_l2_audit;
use hyperrho::{fr_value, spectral_radius, BoundCertificate, Hypergraph, SolverOptions};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest grid the page may ask for.
const MAX_SAMPLES: usize = 4096;

pub fn fr_samples(rank: usize, e_max: f64, samples: usize) -> Result<Vec<f64>, String> {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must be in 2..={MAX_SAMPLES}"));
    }
    if e_max.is_nan() || e_max <= 0.0 {
        return Err("e_max must be positive".into());
    }
    let step = e_max / (samples - 1) as f64;
    (0..samples)
        .map(|i| fr_value(rank, step * i as f64).map_err(|e| e.to_string()))
        .collect()
}

pub fn lemma_json(rank: usize, e: f64, samples: usize) -> Result<String, String> {
    if samples > MAX_SAMPLES {
        return Err(format!("at most {MAX_SAMPLES} samples"));
    }
    let rep = lemma_l2_audit(rank, e, samples).map_err(|err| err.to_string())?;
    Ok(json!({
        "grid": rep.grid,
        "values": rep.values,
        "fr_e": rep.fr_e,
        "max_value": rep.max_value,
        "left_slope": rep.left_slope,
        "passes": rep.passes(),
    })
    .to_string())
}

pub fn solve_json(edge_list: &str) -> Result<String, String> {
    let (h, duplicates) = Hypergraph::parse_edge_list(edge_list).map_err(|e| e.to_string())?;
    if h.rank() < 2 {
        return Err("rank must be at least 2".into());
    }
    let sol = spectral_radius(&h, &SolverOptions::default()).map_err(|e| e.to_string())?;
    let cert = BoundCertificate::new(&h, &sol).map_err(|e| e.to_string())?;
    Ok(json!({
        "rank": h.rank(),
        "vertex_count": h.vertex_count(),
        "edges": h.edge_count(),
        "duplicates": duplicates,
        "connected": h.is_connected(),
        "rho": sol.rho,
        "f_r": cert.fr_e,
        "gap": cert.gap,
        "equality_class": cert.equality_class,
        "perron": sol.perron,
        "iterations": sol.iterations,
        "converged": sol.converged,
    })
    .to_string())
}

/// `f_r` at `samples` equally spaced points of `[0, e_max]`.
#[wasm_bindgen]
pub fn fr_curve(rank: usize, e_max: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    fr_samples(rank, e_max, samples).map_err(|e| JsError::new(&e))
}

/// `F(x)` on `[f_r(e), e]` with the audit summary, as JSON.
#[wasm_bindgen]
pub fn lemma_curve(rank: usize, e: f64, samples: usize) -> Result<String, JsError> {
    lemma_json(rank, e, samples).map_err(|e| JsError::new(&e))
}

/// Spectral radius of an edge list (`r n` header, one edge per line), as JSON.
#[wasm_bindgen]
pub fn solve_edge_list(text: &str) -> Result<String, JsError> {
    solve_json(text).map_err(|e| JsError::new(&e))
}
