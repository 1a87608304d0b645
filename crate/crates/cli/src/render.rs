use std::fmt::Write;

use serde_json::{json, Value};
use xseries::complements::{ComplementReport, ConditionCheck, ConditionKind};
use xseries::construct::catalog_names;
use xseries::series::{QuotientComparison, SeriesReport};
use xseries::subgroups::Lattice;
use xseries::verify::VerificationReport;
use xseries::{FiniteGroup, GroupExpr, Subgroup};

/// `<gens> (order n)`, naming generators by their element names.
pub fn describe(g: &FiniteGroup, s: &Subgroup) -> String {
    if s.is_trivial() {
        return "1 (order 1)".into();
    }
    let gens: Vec<String> = g.generators_of(s).into_iter().map(|x| g.element_name(x)).collect();
    format!("<{}> (order {})", gens.join(", "), s.order())
}

pub fn catalog_list(json: bool) {
    if json {
        let v: Vec<Value> = catalog_names()
            .iter()
            .map(|(n, d)| json!({"name": n, "description": d}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&v).expect("serialisable"));
        return;
    }
    println!("C<p^k>    cyclic group of prime-power order");
    for (name, desc) in catalog_names() {
        println!("{name:<9} {desc}");
    }
    println!();
    println!("Forms: A x B, sd(n,m,k), wr(B,p), L(p,i), file:PATH");
}

pub fn show_json(expr: &GroupExpr, g: &FiniteGroup) -> Value {
    let gens: Vec<Value> = g
        .labels()
        .generators
        .iter()
        .map(|(l, x)| json!({"label": l, "index": x}))
        .collect();
    let elems: Vec<Value> = (0..g.order())
        .map(|x| json!({"index": x, "name": g.element_name(x), "order": g.elem_order(x)}))
        .collect();
    json!({
        "expr": expr.to_string(),
        "p": g.p(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "generators": gens,
        "elements": elems,
    })
}

pub fn show_text(expr: &GroupExpr, g: &FiniteGroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{expr}");
    let _ = writeln!(out, "order {} = {}^{}, exponent {}{}", g.order(), g.p(), g.n(), g.exponent(), if g.is_abelian() { ", abelian" } else { "" });
    let gens: Vec<String> = g.labels().generators.iter().map(|(l, x)| format!("{l} = {x}")).collect();
    if !gens.is_empty() {
        let _ = writeln!(out, "generators: {}", gens.join(", "));
    }
    let _ = writeln!(out, "{:>5}  {:>5}  name", "index", "order");
    for x in 0..g.order() {
        let _ = writeln!(out, "{x:>5}  {:>5}  {}", g.elem_order(x), g.element_name(x));
    }
    out
}

pub fn series_text(g: &FiniteGroup, r: &SeriesReport) -> String {
    let mut out = String::new();
    for (k, orders) in &r.series.0 {
        let o: Vec<String> = orders.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{k}: [{}]", o.join(", "));
    }
    if let Some(elems) = &r.elements {
        for (k, terms) in &elems.0 {
            let _ = writeln!(out, "{k} terms:");
            for (i, t) in terms.iter().enumerate() {
                let _ = writeln!(out, "  {i}: {}", describe(g, t));
            }
        }
    }
    out
}

pub fn lattice_json(g: &FiniteGroup, lat: &Lattice, verbose: bool) -> Value {
    let layer_of = |k: usize| lat.layer_start.iter().rposition(|&s| s <= k).expect("layer 0 starts at 0");
    let nodes: Vec<Value> = lat
        .nodes
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let mut v = json!({
                "id": k,
                "order": s.order(),
                "layer": layer_of(k),
                "normal": lat.normal[k],
                "class": lat.class_of[k],
                "generators": g.generators_of(s),
            });
            if let Some(c) = &lat.characteristic {
                v["characteristic"] = json!(c[k]);
            }
            if verbose {
                v["elements"] = json!(s.to_vec());
            }
            v
        })
        .collect();
    json!({
        "order": g.order(),
        "p": g.p(),
        "subgroups": lat.len(),
        "classes": lat.classes.len(),
        "nodes": nodes,
        "covers": lat.covers,
    })
}

pub fn lattice_text(g: &FiniteGroup, lat: &Lattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} subgroups in {} conjugacy classes", lat.len(), lat.classes.len());
    for i in 0..lat.layer_start.len() {
        let layer = lat.layer(i);
        let _ = writeln!(out, "pc_{i}: {} subgroups of order {}", layer.len(), layer.first().map_or(0, Subgroup::order));
        for (off, s) in layer.iter().enumerate() {
            let k = lat.layer_start[i] + off;
            let mut flags = String::new();
            if lat.normal[k] {
                flags.push_str(" normal");
            }
            if lat.characteristic.as_ref().is_some_and(|c| c[k]) {
                flags.push_str(" characteristic");
            }
            let _ = writeln!(out, "  [{k}] {} class {}{flags}", describe(g, s), lat.class_of[k]);
        }
    }
    out
}

fn rows_text(out: &mut String, check: &ConditionCheck) {
    let _ = writeln!(out, "{:>3}  {:>8}  {:>8}  holds", "i", "|A∩S_i|", "|S_i(A)|");
    for r in &check.rows {
        let _ = writeln!(out, "{:>3}  {:>8}  {:>8}  {}", r.index, r.meet, r.term, if r.holds { "yes" } else { "no" });
    }
}

pub fn complements_text(g: &FiniteGroup, r: &ComplementReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "A = {} in a group of order {}", describe(g, &r.subject), r.ambient_order);
    match (r.condition_holds, r.failing_index) {
        (Some(true), _) => {
            let _ = writeln!(out, "x-condition: holds");
        }
        (Some(false), Some(i)) => {
            let _ = writeln!(out, "x-condition: fails at i = {i}");
        }
        _ => {}
    }
    if r.complements.is_empty() {
        let _ = writeln!(out, "complements: none");
        return out;
    }
    let _ = writeln!(out, "complements: {} ({} normal)", r.complements.len(), r.normal_complements.len());
    for h in &r.complements {
        let tag = if r.normal_complements.contains(h) { "  normal" } else { "" };
        let _ = writeln!(out, "  {}{tag}", describe(g, h));
    }
    out
}

pub fn condition_text(g: &FiniteGroup, a: &Subgroup, check: &ConditionCheck) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "A = {}", describe(g, a));
    let kind = match check.kind {
        ConditionKind::XCondition => "x-condition".to_string(),
        ConditionKind::WCondition(v) => format!("w-condition ({})", v.name()),
        ConditionKind::AgemoCondition => "agemo condition".to_string(),
        ConditionKind::Purity => "purity".to_string(),
        ConditionKind::FrattiniAvoidance => "Frattini avoidance".to_string(),
        ConditionKind::None => "condition".to_string(),
    };
    let _ = writeln!(out, "{kind}: {}", if check.holds { "holds" } else { "fails" });
    rows_text(&mut out, check);
    if let Some(f) = &check.failure {
        let _ = writeln!(out, "first failure at i = {}: A ∩ S_i = {}, S_i(A) = {}", f.index, describe(g, &f.meet), describe(g, &f.term));
    }
    out
}

pub fn quotient_json(cmp: &QuotientComparison) -> Value {
    let rows: Vec<Value> = cmp
        .rows
        .iter()
        .map(|r| {
            json!({
                "index": r.index,
                "of_quotient": r.of_quotient.order(),
                "image": r.image.order(),
                "normal_below": r.normal_below,
                "equal": r.of_quotient == r.image,
            })
        })
        .collect();
    json!({"quotient_order": cmp.quotient.order(), "rows": rows})
}

pub fn quotient_text(g: &FiniteGroup, n: &Subgroup, cmp: &QuotientComparison) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "N = {}, |G/N| = {}", describe(g, n), cmp.quotient.order());
    let _ = writeln!(out, "{:>3}  {:>10}  {:>11}  {:>8}  equal", "i", "|X_i(G/N)|", "|X_i(G)N/N|", "N≤X_i(G)");
    for r in &cmp.rows {
        let _ = writeln!(
            out,
            "{:>3}  {:>10}  {:>11}  {:>8}  {}",
            r.index,
            r.of_quotient.order(),
            r.image.order(),
            if r.normal_below { "yes" } else { "no" },
            if r.of_quotient == r.image { "yes" } else { "no" }
        );
    }
    out
}

pub fn verify_text(reports: &[VerificationReport], every_check: bool) -> String {
    let mut out = String::new();
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for r in reports {
        pass += r.passed();
        fail += r.failed();
        skip += r.skipped();
        let partial = if r.partial { " (partial: budget exceeded)" } else { "" };
        let _ = writeln!(
            out,
            "{:<30} order {:>4}: {:>2} passed, {} failed, {:>2} skipped{partial}",
            r.group,
            r.order,
            r.passed(),
            r.failed(),
            r.skipped()
        );
        for c in &r.results {
            if every_check || c.outcome.is_fail() {
                let _ = writeln!(out, "  {:<4}  {:<40} {} ({:.1} ms)", c.outcome.label(), c.id.slug(), c.outcome.text(), c.millis);
            }
        }
    }
    if reports.len() > 1 {
        let _ = writeln!(out, "{} groups: {pass} passed, {fail} failed, {skip} skipped", reports.len());
    }
    out
}
