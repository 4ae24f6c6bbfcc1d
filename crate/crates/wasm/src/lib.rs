//! Browser bindings for the lattice and refinement demo.
//!
//! Each exported function wraps a plain Rust function of the same shape so the
//! rendering logic can be exercised natively.

use std::fmt::Write;

use serde_json::json;
use smirnov_core::counting;
use smirnov_core::lattice::{self, LatticePath};
use smirnov_core::refinement;
use wasm_bindgen::prelude::*;

/// Largest grid the page will draw.
pub const MAX_SIDE: usize = 16;

const CELL: usize = 28;
const MARGIN: usize = 24;

fn check_side(m: usize, n: usize) -> Result<(), String> {
    if m == 0 || n == 0 || m > MAX_SIDE || n > MAX_SIDE {
        return Err(format!(
            "sample sizes must lie in 1..={MAX_SIDE}, got ({m},{n})"
        ));
    }
    Ok(())
}

fn px(n: usize, x: f64, y: f64) -> (f64, f64) {
    (
        MARGIN as f64 + x * CELL as f64,
        MARGIN as f64 + (n as f64 - y) * CELL as f64,
    )
}

fn svg_open(out: &mut String, m: usize, n: usize) {
    let w = 2 * MARGIN + m * CELL;
    let h = 2 * MARGIN + n * CELL;
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    );
    out.push_str(r##"<g stroke="#ddd" stroke-width="1">"##);
    for x in 0..=m {
        let (a, b) = px(n, x as f64, 0.0);
        let (_, c) = px(n, x as f64, n as f64);
        let _ = write!(out, r#"<line x1="{a}" y1="{b}" x2="{a}" y2="{c}"/>"#);
    }
    for y in 0..=n {
        let (a, b) = px(n, 0.0, y as f64);
        let (c, _) = px(n, m as f64, y as f64);
        let _ = write!(out, r#"<line x1="{a}" y1="{b}" x2="{c}" y2="{b}"/>"#);
    }
    out.push_str("</g>");
}

fn polyline(out: &mut String, p: &LatticePath, color: &str, width: f64, title: &str) {
    let n = p.n();
    let pts: Vec<String> = p
        .vertices()
        .into_iter()
        .map(|(x, y)| {
            let (a, b) = px(n, x as f64, y as f64);
            format!("{a},{b}")
        })
        .collect();
    let _ = write!(
        out,
        r#"<polyline fill="none" stroke="{color}" stroke-width="{width}" stroke-linejoin="round" points="{}"><title>{title}</title></polyline>"#,
        pts.join(" ")
    );
}

fn hue(i: usize, count: usize) -> String {
    let h = if count <= 1 { 0 } else { 240 * i / (count - 1) };
    format!("hsl({h},70%,45%)")
}

/// The grid with every distinct profile drawn and each line `nx - my = r`
/// through the lattice dashed.
pub fn lattice_svg(m: usize, n: usize) -> Result<String, String> {
    check_side(m, n)?;
    let family = lattice::distinct_profiles(m, n).map_err(|e| e.to_string())?;
    let mut out = String::new();
    svg_open(&mut out, m, n);
    out.push_str(r##"<g stroke="#bbb" stroke-dasharray="3 3" stroke-width="1">"##);
    for e in &family.entries[1..] {
        // r > 0, so the segment runs from the bottom edge to x = m
        let r = e.r as f64;
        let (mf, nf) = (m as f64, n as f64);
        let y1 = ((nf * mf - r) / mf).min(nf);
        let (a, b) = px(n, r / nf, 0.0);
        let (c, d) = px(n, (r + mf * y1) / nf, y1);
        let _ = write!(
            out,
            r#"<line x1="{a:.1}" y1="{b:.1}" x2="{c:.1}" y2="{d:.1}"/>"#
        );
    }
    out.push_str("</g>");
    let count = family.len();
    for (i, e) in family.entries.iter().enumerate() {
        polyline(
            &mut out,
            &e.path,
            &hue(i, count),
            2.0,
            &format!("r = {}: {}", e.r, e.path),
        );
    }
    out.push_str("</svg>");
    Ok(out)
}

/// Natural levels of the `(m,n)` test as a JSON array, smallest level first.
pub fn level_table_json(m: usize, n: usize, digits: u32) -> Result<String, String> {
    check_side(m, n)?;
    let table = counting::level_table(m, n).map_err(|e| e.to_string())?;
    let rows: Vec<_> = table
        .entries
        .iter()
        .map(|e| {
            json!({
                "r": e.r,
                "profile": e.profile.to_string(),
                "down_set": e.down_set.to_string(),
                "level": e.level.to_string(),
                "decimal": e.level.to_sig_decimal(digits).to_string(),
            })
        })
        .collect();
    let doc = json!({
        "m": m,
        "n": n,
        "total_paths": table.total.to_string(),
        "natural_levels": counting::natural_level_count(m, n).map_err(|e| e.to_string())?.to_string(),
        "saturated_levels": counting::saturated_level_count(m, n).map_err(|e| e.to_string())?.to_string(),
        "refinements": counting::refinement_count(m, n).map_err(|e| e.to_string())?.to_string(),
        "saturated_refinements": counting::saturated_refinement_count(m, n).map_err(|e| e.to_string())?.to_string(),
        "levels": rows,
    });
    Ok(doc.to_string())
}

/// The `index`-th refinement chain in enumeration order, profiles in bold.
pub fn refinement_svg(
    m: usize,
    n: usize,
    index: usize,
    saturated_only: bool,
) -> Result<String, String> {
    check_side(m, n)?;
    let chain = refinement::enumerate_refinements(m, n, saturated_only)
        .map_err(|e| e.to_string())?
        .nth(index)
        .ok_or_else(|| format!("no refinement with index {index}"))?;
    let family = lattice::distinct_profiles(m, n).map_err(|e| e.to_string())?;
    let profiles: Vec<&LatticePath> = family.paths().collect();
    let mut out = String::new();
    svg_open(&mut out, m, n);
    let count = chain.paths.len();
    for (i, p) in chain.paths.iter().enumerate() {
        let bold = profiles.contains(&p);
        let width = if bold { 3.0 } else { 1.25 };
        polyline(
            &mut out,
            p,
            &hue(i, count),
            width,
            &format!("step {i}: {p}"),
        );
    }
    let _ = write!(
        out,
        r##"<text x="{MARGIN}" y="14" font-size="12" fill="#333">{count} paths</text></svg>"##
    );
    Ok(out)
}

#[wasm_bindgen(js_name = latticeSvg)]
pub fn lattice_svg_js(m: usize, n: usize) -> Result<String, String> {
    lattice_svg(m, n)
}

#[wasm_bindgen(js_name = levelTable)]
pub fn level_table_js(m: usize, n: usize, digits: u32) -> Result<String, String> {
    level_table_json(m, n, digits)
}

#[wasm_bindgen(js_name = refinementSvg)]
pub fn refinement_svg_js(
    m: usize,
    n: usize,
    index: usize,
    saturated_only: bool,
) -> Result<String, String> {
    refinement_svg(m, n, index, saturated_only)
}
