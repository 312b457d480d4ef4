//! Browser bindings: three operations returning JSON strings, each also
//! callable natively through the plain functions.

use abc_spectra::perturbations::{pendant_path_profile, pendant_paths};
use abc_spectra::spectra::perron_result;
use abc_spectra::{abc_matrix, build_family, FamilySpec, Graph};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Spectrum {
    graph6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    rho: f64,
    perron: Vec<f64>,
    degenerate: bool,
}

fn parse_graph(spec: &str) -> Result<Graph, String> {
    let spec = spec.trim();
    match spec.parse::<FamilySpec>() {
        Ok(family) => build_family(&family).map_err(|e| e.to_string()),
        // anything that is not a family spec is tried as graph6
        Err(family_err) => abc_spectra::graph6::from_graph6(spec).map_err(|_| family_err.to_string()),
    }
}

/// Radius and Perron vector of a family spec or graph6 string.
pub fn spectrum_json(spec: &str) -> Result<String, String> {
    let g = parse_graph(spec)?;
    let r = perron_result(&abc_matrix(&g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let out = Spectrum {
        graph6: abc_spectra::graph6::to_graph6(&g),
        n: g.order(),
        edges: g.edges().collect(),
        rho: r.radius,
        perron: r.vector,
        degenerate: r.degenerate,
    };
    Ok(serde_json::to_string(&out).expect("plain data"))
}

#[derive(Serialize)]
struct CrossoverPoint {
    n: usize,
    t1: f64,
    t2: f64,
}

/// `rho(T1)` and `rho(T2)` for every order in `lo..=hi`.
pub fn crossover_json(lo: usize, hi: usize) -> Result<String, String> {
    if lo < 6 || hi < lo || hi > 200 {
        return Err(format!("orders must satisfy 6 <= lo <= hi <= 200, got {lo}..{hi}"));
    }
    let radius = |index, n| -> Result<f64, String> {
        let g = build_family(&FamilySpec::TTree { index, n }).map_err(|e| e.to_string())?;
        let m = abc_matrix(&g).map_err(|e| e.to_string())?;
        Ok(perron_result(&m).map_err(|e| e.to_string())?.radius)
    };
    let points = (lo..=hi)
        .map(|n| Ok(CrossoverPoint { n, t1: radius(1, n)?, t2: radius(2, n)? }))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(serde_json::to_string(&points).expect("plain data"))
}

#[derive(Serialize)]
struct Profile {
    path: Vec<usize>,
    rho: f64,
    gamma: f64,
    observed: Vec<f64>,
    predicted: Vec<f64>,
    max_deviation: f64,
}

/// Observed and predicted Perron entries along each pendant path.
pub fn pendant_profiles_json(spec: &str) -> Result<String, String> {
    let g = parse_graph(spec)?;
    let profiles = pendant_paths(&g)
        .into_iter()
        .map(|path| {
            let p = pendant_path_profile(&g, &path).map_err(|e| e.to_string())?;
            Ok(Profile {
                path,
                rho: p.rho,
                gamma: p.gamma,
                observed: p.observed,
                predicted: p.predicted,
                max_deviation: p.max_deviation,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(serde_json::to_string(&profiles).expect("plain data"))
}

#[wasm_bindgen]
pub fn spectrum(spec: &str) -> Result<String, JsValue> {
    spectrum_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn crossover(lo: usize, hi: usize) -> Result<String, JsValue> {
    crossover_json(lo, hi).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn pendant_profiles(spec: &str) -> Result<String, JsValue> {
    pendant_profiles_json(spec).map_err(|e| JsValue::from_str(&e))
}
