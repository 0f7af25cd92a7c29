//! Browser bindings for the static demo page in `www/`.
//!
//! Each export returns JSON text; the plain functions behind them are
//! ordinary Rust so the native test suite exercises them too.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use skelgraph::lineage::{Generator, GradedGraph};
use skelgraph::multigrid::{parse_algorithms, run_benchmark, Bc};
use skelgraph::skeletal::{skeletal_product, thicken, Kind, ProductSpec};

/// Largest top level the page may request; keeps products browser-sized.
pub const MAX_TOP: usize = 6;
pub const MAX_K: usize = 6;

fn generator(name: &str, top: usize) -> Result<GradedGraph, String> {
    if top > MAX_TOP {
        return Err(format!("top level {top} exceeds {MAX_TOP}"));
    }
    let g: Generator = name.parse().map_err(|e: skelgraph::Error| e.to_string())?;
    Ok(g.build(top, true))
}

fn describe(gg: &GradedGraph) -> Value {
    let levels: Vec<Value> = gg
        .levels
        .iter()
        .enumerate()
        .map(|(l, g)| {
            json!({
                "level": l,
                "vertices": g.order(),
                "edges": g.edge_count(),
                "links": gg.inter.get(l).map_or(0, |s| s.nnz()),
            })
        })
        .collect();
    let top = &gg.levels[gg.top()];
    // Edges of the smallest nontrivial levels, for drawing.
    let drawable: Vec<Value> = gg
        .levels
        .iter()
        .take_while(|g| g.order() <= 64)
        .map(|g| {
            let e: Vec<[usize; 2]> = g
                .adj()
                .entries()
                .iter()
                .filter(|e| e.0 < e.1)
                .map(|e| [e.0, e.1])
                .collect();
            json!({ "vertices": g.order(), "edges": e })
        })
        .collect();
    json!({
        "name": gg.name,
        "levels": levels,
        "topVertices": top.order(),
        "blocks": gg.metadata.get("blocks").cloned().unwrap_or(Value::Null),
        "drawable": drawable,
    })
}

pub fn product_json(kind: &str, a: &str, b: &str, top: usize) -> Result<String, String> {
    let kind: Kind = kind.parse().map_err(|e: skelgraph::Error| e.to_string())?;
    let (a, b) = (generator(a, top)?, generator(b, top)?);
    let gg = skeletal_product(&[&a, &b], &ProductSpec::new(kind)).map_err(|e| e.to_string())?;
    Ok(describe(&gg).to_string())
}

pub fn thicken_json(name: &str, top: usize) -> Result<String, String> {
    Ok(describe(&thicken(&generator(name, top)?)).to_string())
}

pub fn bench_json(k: usize, bc: &str, budget: f64, algorithms: &str) -> Result<String, String> {
    if k > MAX_K {
        return Err(format!("k = {k} exceeds {MAX_K}"));
    }
    let bc: Bc = bc.parse().map_err(|e: skelgraph::Error| e.to_string())?;
    let algs = parse_algorithms(algorithms).map_err(|e| e.to_string())?;
    let trace = run_benchmark(k, bc, &algs, budget).map_err(|e| e.to_string())?;
    let series: Vec<Value> = algs
        .iter()
        .map(|&a| {
            let pts: Vec<[f64; 2]> = trace
                .for_algorithm(a)
                .map(|r| [r.work, r.residual])
                .collect();
            json!({ "algorithm": a.name(), "points": pts })
        })
        .collect();
    Ok(json!({ "k": k, "bc": bc.to_string(), "budget": budget, "series": series }).to_string())
}

#[wasm_bindgen]
pub fn product_structure(kind: &str, a: &str, b: &str, top: usize) -> Result<String, JsError> {
    product_json(kind, a, b, top).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn thickening_structure(name: &str, top: usize) -> Result<String, JsError> {
    thicken_json(name, top).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bench_curves(k: usize, bc: &str, budget: f64, algorithms: &str) -> Result<String, JsError> {
    bench_json(k, bc, budget, algorithms).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_sizes() {
        let v: Value =
            serde_json::from_str(&product_json("cross", "path", "path", 3).unwrap()).unwrap();
        let sizes: Vec<u64> = v["levels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l["vertices"].as_u64().unwrap())
            .collect();
        assert_eq!(sizes, vec![1, 4, 12, 32]);
        assert!(product_json("cross", "path", "path", 9).is_err());
        assert!(product_json("sum", "path", "path", 2).is_err());
    }

    #[test]
    fn thickening_sizes() {
        let v: Value = serde_json::from_str(&thicken_json("nhat", 3).unwrap()).unwrap();
        assert_eq!(v["topVertices"], 4);
    }

    #[test]
    fn bench_series() {
        let v: Value =
            serde_json::from_str(&bench_json(3, "2", 1e4, "gauss_seidel,classical_mg_v").unwrap())
                .unwrap();
        let s = v["series"].as_array().unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0]["points"][0][0], 0.0);
        assert!(bench_json(3, "2", 1e4, "nope").is_err());
    }
}
