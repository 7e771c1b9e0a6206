//! JSON-in, JSON-out entry points for the browser demo in `www/`.
//!
//! Every function returns a JSON object; failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use mahler::measure::boyd_lawton;
use mahler::surgery::sweep as run_sweep;
use mahler::{catalog, parse, parse_with_vars, LinkPoly, MeasureConfig, UniPoly};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn roots_value(text: &str) -> Result<Value, String> {
    let f = parse(text).map_err(err)?;
    let (g, _) = f.compress();
    if g.num_vars() != 1 {
        return Err(format!(
            "roots need a polynomial in one variable, this one uses {}",
            g.num_vars()
        ));
    }
    let p = UniPoly::from_laurent(&g).map_err(err)?;
    let rs = p.find_roots().map_err(err)?;
    let measure = p.mahler_jensen().map_err(err)?;
    let class = if p.leading().is_some_and(|c| c.magnitude() == &1u8.into()) {
        Some(p.classify_measure().map_err(err)?)
    } else {
        None
    };
    Ok(json!({
        "polynomial": p.to_string(),
        "roots": rs.roots.iter().map(|r| [r.value.re, r.value.im]).collect::<Vec<_>>(),
        "measure": measure,
        "class": class,
        "reciprocal": p.is_reciprocal(),
    }))
}

/// Roots, Jensen measure and PV/Salem class of a one-variable polynomial.
#[wasm_bindgen]
pub fn roots(poly: &str) -> String {
    respond(roots_value(poly))
}

fn trace_value(text: &str, max_n: u32) -> Result<Value, String> {
    let f = parse(text).map_err(err)?;
    let (g, _) = f.compress();
    if g.num_vars() < 2 {
        return Err("the Boyd-Lawton trace needs at least two variables".into());
    }
    let mut schedule = Vec::new();
    let mut n = 4u64;
    while n <= max_n.max(16) as u64 {
        schedule.push(n);
        n *= 2;
    }
    let est = boyd_lawton(&g, &schedule).map_err(err)?;
    let iterates: Vec<Value> = schedule
        .iter()
        .filter_map(|n| est.diagnostic(&format!("n={n}")).map(|v| json!({ "n": n, "value": v })))
        .collect();
    Ok(json!({
        "polynomial": g.to_string(),
        "iterates": iterates,
        "estimate": est,
    }))
}

/// Boyd-Lawton iterates `M(f(u, u^n, ..., u^{n^{d-1}}))` for n = 4, 8, ..., max_n.
#[wasm_bindgen]
pub fn boyd_lawton_trace(poly: &str, max_n: u32) -> String {
    respond(trace_value(poly, max_n))
}

fn sweep_value(source: &str, linking: &str, q_max: u32) -> Result<Value, String> {
    let (link, entry) = if linking.trim().is_empty() {
        let e = catalog::get(source.trim()).map_err(err)?;
        let l = e
            .link
            .clone()
            .ok_or_else(|| format!("`{}` is not a link; give linking numbers", e.key))?;
        (l, Some(e))
    } else {
        let lk = linking
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|e| format!("linking number `{s}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        let f = parse_with_vars(source, lk.len() + 1).map_err(err)?;
        (LinkPoly::new(f, lk).map_err(err)?, None)
    };
    let family = entry.and_then(|e| e.family.as_ref());
    let s = run_sweep(&link, q_max.max(1) as u64, family, &MeasureConfig::default()).map_err(err)?;
    let table = entry.map(|e| e.sweep_table.clone()).unwrap_or_default();
    let limit = s.limit_target.as_ref().map(|m| m.value).or_else(|| {
        entry.and_then(|e| e.limit_reference.or(e.reference)).map(|r| r.value)
    });
    let rows: Vec<Value> = s
        .rows
        .iter()
        .map(|r| {
            json!({
                "q": r.q,
                "measure": r.scaled_value(),
                "error": r.scaled_error(),
                "scale": r.scale.to_string(),
                "method": r.measure.method,
                "reference": table.iter().find(|t| t.0 == r.q).map(|t| t.1),
            })
        })
        .collect();
    Ok(json!({
        "polynomial": link.delta().to_string(),
        "linking": link.linking(),
        "limit_target": s.limit_target,
        "limit": limit,
        "rows": rows,
        "warnings": s.warnings,
    }))
}

/// Measures of the surgered links for q = 1..=q_max. `source` is a catalog
/// key when `linking` is empty, otherwise a polynomial.
#[wasm_bindgen]
pub fn sweep(source: &str, linking: &str, q_max: u32) -> String {
    respond(sweep_value(source, linking, q_max))
}

/// Catalog keys, polynomials and linking numbers.
#[wasm_bindgen]
pub fn catalog_entries() -> String {
    let v: Vec<Value> = catalog::list()
        .iter()
        .map(|e| {
            json!({
                "key": e.key,
                "text": e.text,
                "vars": e.poly.num_vars(),
                "linking": e.link.as_ref().map(|l| l.linking().to_vec()),
                "reference": e.reference.map(|r| r.value),
            })
        })
        .collect();
    Value::Array(v).to_string()
}
