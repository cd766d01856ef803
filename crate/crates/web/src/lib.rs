//! Browser bindings. Each export wraps a plain function returning
//! `Result<String, String>` so the logic is testable natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use quiverknot::complex::n_directed_clique_complex;
use quiverknot::fixtures;
use quiverknot::homology::{homology_profile, Coefficients};
use quiverknot::persistence::{link_persistence, EndoFiltration};
use quiverknot::render::render_svg;
use quiverknot::{build_quiver, colorings, endomorphisms, in_degree_polynomial, Biquandle, LinkDiagram};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse_inputs(biquandle: &str, diagram: &str) -> Result<(Biquandle, LinkDiagram), String> {
    let text = biquandle.trim();
    let x = if text.starts_with("alexander:") {
        fixtures::biquandle(text)
    } else {
        Biquandle::parse(text)
    }
    .map_err(|e| format!("biquandle: {e}"))?;
    let report = x.validate();
    if !report.is_valid() {
        return Err(format!("biquandle: {report}"));
    }
    let d = LinkDiagram::parse(diagram).map_err(|e| format!("diagram: {e}"))?;
    Ok((x, d))
}

/// Colorings, the full quiver and its in-degree polynomial, as JSON.
pub fn quiver_report(biquandle: &str, diagram: &str) -> Result<String, String> {
    let (x, d) = parse_inputs(biquandle, diagram)?;
    let endos = endomorphisms(&x);
    let q = build_quiver(&d, &x, &endos).map_err(err)?;
    let cs: Vec<Vec<usize>> = colorings(&d, &x)
        .iter()
        .map(|c| c.iter().map(|v| v + 1).collect())
        .collect();
    Ok(json!({
        "count": cs.len(),
        "colorings": cs,
        "endomorphisms": endos.len(),
        "polynomial": in_degree_polynomial(&q).to_string(),
        "dot": q.to_dot(),
    })
    .to_string())
}

/// Homology of the N-directed clique complex of the full quiver.
pub fn clique_homology(
    biquandle: &str,
    diagram: &str,
    threshold: usize,
    max_dim: usize,
    integer: bool,
) -> Result<String, String> {
    let (x, d) = parse_inputs(biquandle, diagram)?;
    if threshold == 0 {
        return Err("threshold must be at least 1".into());
    }
    let q = build_quiver(&d, &x, &endomorphisms(&x)).map_err(err)?;
    let k = n_directed_clique_complex(&q, threshold, max_dim);
    let coeff = if integer { Coefficients::Z } else { Coefficients::Gf2 };
    let profile = homology_profile(&k, coeff).map_err(err)?;
    Ok(profile.describe().join("\n"))
}

/// Barcode SVG for a filtration given as 1-indexed JSON stages.
pub fn barcode_svg(
    biquandle: &str,
    diagram: &str,
    filtration: &str,
    threshold: usize,
    max_dim: usize,
) -> Result<String, String> {
    let (x, d) = parse_inputs(biquandle, diagram)?;
    let f = EndoFiltration::from_json(filtration, &x).map_err(|e| format!("filtration: {e}"))?;
    let pp = link_persistence(&d, &x, &f, threshold, max_dim).map_err(err)?;
    Ok(render_svg(&pp))
}

/// Raw text of a bundled example: kind is `diagram`, `biquandle` or `filtration`.
pub fn bundled_text(kind: &str, name: &str) -> Result<String, String> {
    let table = match kind {
        "diagram" => fixtures::DIAGRAMS,
        "biquandle" => fixtures::BIQUANDLES,
        "filtration" => fixtures::FILTRATIONS,
        _ => return Err(format!("unknown kind `{kind}`")),
    };
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| format!("no bundled {kind} `{name}`"))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = quiverReport)]
pub fn quiver_report_js(biquandle: &str, diagram: &str) -> Result<String, JsError> {
    js(quiver_report(biquandle, diagram))
}

#[wasm_bindgen(js_name = cliqueHomology)]
pub fn clique_homology_js(
    biquandle: &str,
    diagram: &str,
    threshold: usize,
    max_dim: usize,
    integer: bool,
) -> Result<String, JsError> {
    js(clique_homology(biquandle, diagram, threshold, max_dim, integer))
}

#[wasm_bindgen(js_name = barcodeSvg)]
pub fn barcode_svg_js(
    biquandle: &str,
    diagram: &str,
    filtration: &str,
    threshold: usize,
    max_dim: usize,
) -> Result<String, JsError> {
    js(barcode_svg(biquandle, diagram, filtration, threshold, max_dim))
}

#[wasm_bindgen(js_name = bundledText)]
pub fn bundled_text_js(kind: &str, name: &str) -> Result<String, JsError> {
    js(bundled_text(kind, name))
}
