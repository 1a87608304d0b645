//! Browser bindings for the demo page: a Hasse diagram of the subgroup
//! lattice, a series explorer and a complement checker.
//!
//! Each operation returns a JSON string; errors come back as
//! `{"error": "..."}` so the page needs no exception handling.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;
use xseries::complements::{find_complements, w_condition, x_condition, ConditionCheck};
use xseries::construct::catalog_names;
use xseries::series::{series, GoodVariant, SeriesKind};
use xseries::subgroups::SubgroupCache;
use xseries::{build_with, BuildOptions, FiniteGroup, GroupExpr, Guards, Subgroup};

/// Demo pages stay responsive below this order.
pub const DEMO_MAX_ORDER: usize = 128;

fn group(src: &str) -> Result<(GroupExpr, FiniteGroup), String> {
    let expr: GroupExpr = src.parse().map_err(|e: xseries::construct::dsl::ParseError| e.diagnostic())?;
    let g = build_with(
        &expr,
        &BuildOptions {
            max_order: DEMO_MAX_ORDER,
        },
    )
    .map_err(|e| e.to_string())?;
    Ok((expr, g))
}

fn describe(g: &FiniteGroup, s: &Subgroup) -> String {
    if s.is_trivial() {
        return "1".into();
    }
    let gens: Vec<String> = g.generators_of(s).into_iter().map(|x| g.element_name(x)).collect();
    format!("<{}>", gens.join(", "))
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Nodes with their layer and flags, the covering edges, and which node is
/// each X_i(G).
pub fn lattice_data(src: &str) -> Result<Value, String> {
    let (expr, g) = group(src)?;
    let cache = SubgroupCache::new(&g);
    let guards = Guards {
        lattice_max_order: DEMO_MAX_ORDER,
        ..Guards::default()
    };
    let lat = cache.lattice(&guards, true).map_err(|e| e.to_string())?;
    let full = g.full();
    let x_terms = cache.x_terms(&full);
    let nodes: Vec<Value> = lat
        .nodes
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let layer = lat.layer_start.iter().rposition(|&st| st <= k).expect("layer 0 starts at 0");
            let x: Vec<usize> = x_terms.iter().enumerate().filter(|(_, t)| *t == s).map(|(i, _)| i).collect();
            json!({
                "id": k,
                "layer": layer,
                "order": s.order(),
                "label": describe(&g, s),
                "normal": lat.normal[k],
                "characteristic": lat.characteristic.as_ref().map(|c| c[k]),
                "class": lat.class_of[k],
                "x": x,
            })
        })
        .collect();
    Ok(json!({
        "group": expr.to_string(),
        "order": g.order(),
        "p": g.p(),
        "layers": lat.layer_start.len(),
        "nodes": nodes,
        "covers": lat.covers,
    }))
}

/// Every series kind with its terms' orders and generators.
pub fn series_data(src: &str) -> Result<Value, String> {
    let (expr, g) = group(src)?;
    let cache = SubgroupCache::new(&g);
    let full = g.full();
    let kinds: Vec<Value> = SeriesKind::ALL
        .iter()
        .map(|&k| {
            let t = series(&cache, &full, k);
            let terms: Vec<Value> = t
                .terms
                .iter()
                .enumerate()
                .map(|(i, s)| json!({"index": i + t.offset, "order": s.order(), "label": describe(&g, s)}))
                .collect();
            json!({"kind": k.name(), "terms": terms, "quotient_ranks": t.quotient_ranks})
        })
        .collect();
    Ok(json!({"group": expr.to_string(), "order": g.order(), "p": g.p(), "series": kinds}))
}

#[derive(Serialize)]
struct ConditionView {
    name: String,
    holds: bool,
    failing_index: Option<u32>,
    rows: Vec<xseries::complements::IndexRow>,
}

fn view(name: &str, c: &ConditionCheck) -> ConditionView {
    ConditionView {
        name: name.to_string(),
        holds: c.holds,
        failing_index: c.failure.map(|f| f.index),
        rows: c.rows.clone(),
    }
}

/// Complements of the subgroup generated by `gens`, with the x- and
/// w-conditions.
pub fn complement_data(src: &str, gens: &str) -> Result<Value, String> {
    let (expr, g) = group(src)?;
    let a = g.parse_generated(gens).map_err(|e| e.to_string())?;
    let cache = SubgroupCache::new(&g);
    let report = find_complements(&cache, &a);
    let mut conditions = vec![view("x", &x_condition(&cache, &a))];
    for v in GoodVariant::ALL {
        conditions.push(view(&format!("w:{}", v.name()), &w_condition(&cache, &a, v)));
    }
    let list = |hs: &[Subgroup]| -> Vec<Value> {
        hs.iter()
            .map(|h| json!({"label": describe(&g, h), "order": h.order(), "normal": report.normal_complements.contains(h)}))
            .collect()
    };
    Ok(json!({
        "group": expr.to_string(),
        "subject": {"label": describe(&g, &a), "order": a.order(), "abelian": g.is_abelian_subgroup(&a)},
        "conditions": conditions,
        "complements": list(&report.complements),
    }))
}

/// Element names and generator labels, for the input hints.
pub fn elements_data(src: &str) -> Result<Value, String> {
    let (_, g) = group(src)?;
    let names: Vec<String> = (0..g.order()).map(|x| g.element_name(x)).collect();
    let gens: Vec<&str> = g.labels().generators.iter().map(|(l, _)| l.as_str()).collect();
    Ok(json!({"elements": names, "generators": gens}))
}

#[wasm_bindgen]
pub fn lattice(expr: &str) -> String {
    respond(lattice_data(expr))
}

#[wasm_bindgen]
pub fn series_explorer(expr: &str) -> String {
    respond(series_data(expr))
}

#[wasm_bindgen]
pub fn complement_checker(expr: &str, gens: &str) -> String {
    respond(complement_data(expr, gens))
}

#[wasm_bindgen]
pub fn elements(expr: &str) -> String {
    respond(elements_data(expr))
}

#[wasm_bindgen]
pub fn catalog() -> String {
    let v: Vec<Value> = catalog_names()
        .iter()
        .map(|(n, d)| json!({"name": n, "description": d}))
        .collect();
    Value::Array(v).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_of_sd443() {
        let v = lattice_data("sd(4,4,3)").unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 15);
        let x1: Vec<&Value> = v["nodes"].as_array().unwrap().iter().filter(|n| n["x"].as_array().unwrap().contains(&json!(1))).collect();
        assert_eq!(x1.len(), 1);
        assert_eq!(x1[0]["order"], 4);
    }

    #[test]
    fn series_orders() {
        let v = series_data("Q8").unwrap();
        let x = &v["series"][0];
        assert_eq!(x["kind"], "X");
        let orders: Vec<u64> = x["terms"].as_array().unwrap().iter().map(|t| t["order"].as_u64().unwrap()).collect();
        assert_eq!(orders, [8, 2, 2, 1]);
    }

    #[test]
    fn complement_of_center() {
        let v = complement_data("Q8", "a^2").unwrap();
        assert_eq!(v["complements"], json!([]));
        assert_eq!(v["conditions"][0]["holds"], false);
        let v = complement_data("C2 x C4", "L.a").unwrap();
        assert_eq!(v["complements"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn errors_are_json() {
        let s = lattice("Q9");
        let v: Value = serde_json::from_str(&s).unwrap();
        assert!(v["error"].as_str().unwrap().contains("unknown group"));
        let v: Value = serde_json::from_str(&lattice("C2 x C2 x C2 x C2 x C2 x C2 x C2 x C2")).unwrap();
        assert!(v["error"].is_string());
    }
}
