//! JSON and text renderings of engine results.

use num::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use wgenus_core::charclass::SplitBundle;
use wgenus_core::cohomology::file::{int_poly_to_terms, poly_to_terms};
use wgenus_core::conditions::Witnesses;
use wgenus_core::{CohomClass, ConditionReport, FanoReport, GenusResult, LineBundleSum, ManifoldModel, Rational};

/// Pretty JSON with keys sorted at every level and a trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn sorted(v: &Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), sorted(&map[k]));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.iter().map(sorted).collect()),
        other => other.clone(),
    }
}

/// `2 - 48q - 144q^2`, with non-integers in parentheses.
pub fn series_text(series: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in series.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let q = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        if k > 0 && mag.is_one() {
            out.push_str(&q);
        } else if mag.is_integer() {
            out.push_str(&format!("{mag}{q}"));
        } else {
            out.push_str(&format!("({mag}){q}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn roots_text(roots: &[Vec<i64>]) -> String {
    if roots.is_empty() {
        return "0".into();
    }
    roots
        .iter()
        .map(|r| format!("({})", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn genus_json(res: &GenusResult, _names: &[String]) -> Value {
    json!({
        "manifold": res.manifold_id,
        "bundle": res.bundle,
        "w_bundle": res.w_bundle,
        "c1c": res.c1c_used.as_linear().unwrap_or_default(),
        "q_order": res.q_order,
        "path": res.path.as_str(),
        "coefficients": res.coefficient_strings(),
        "verdict": res.verdict(),
    })
}

pub fn genus_text(res: &GenusResult, names: &[String]) -> String {
    let mut s = format!("manifold: {}\nbundle: {}\n", res.manifold_id, roots_text(&res.bundle));
    if !res.w_bundle.is_empty() {
        s.push_str(&format!("w_bundle: {}\n", roots_text(&res.w_bundle)));
    }
    s.push_str(&format!(
        "c1c: {}\npath: {}\nseries: {} + O(q^{})\nverdict: {}\n",
        res.c1c_used.display_with(names),
        res.path.as_str(),
        series_text(&res.series),
        res.q_order + 1,
        res.verdict()
    ));
    s
}

fn class_json(c: &CohomClass, names: &[String]) -> Value {
    json!({ "display": c.display_with(names), "terms": poly_to_terms(c) })
}

fn witnesses_json(w: &Witnesses, names: &[String]) -> Value {
    json!({
        "w2_m": { "display": w.w2_m.display_with(names), "terms": int_poly_to_terms(&w.w2_m.to_int()) },
        "w2_v": { "display": w.w2_v.display_with(names), "terms": int_poly_to_terms(&w.w2_v.to_int()) },
        "p1_m": class_json(&w.p1_m, names),
        "p1_v": class_json(&w.p1_v, names),
    })
}

pub fn check_json(m: &ManifoldModel, v: &LineBundleSum, rep: &ConditionReport) -> Value {
    let names = m.generators();
    json!({
        "manifold": m.name(),
        "bundle": v.root_vectors(),
        "w2_match": rep.w2_match,
        "p1_match": rep.p1_match,
        "x_spin": rep.x_spin,
        "string": rep.is_string_pair(),
        "theorem_applicable": rep.theorem_applicable.as_str(),
        "witnesses": witnesses_json(&rep.witnesses, names),
        "notes": rep.notes,
    })
}

pub fn check_text(m: &ManifoldModel, v: &LineBundleSum, rep: &ConditionReport) -> String {
    let names = m.generators();
    let w = &rep.witnesses;
    let mut s = format!("manifold: {}\nbundle: {}\n", m.name(), roots_text(&v.root_vectors()));
    s.push_str(&format!(
        "w2: {} (M: {}, V: {})\n",
        if rep.w2_match { "match" } else { "MISMATCH" },
        w.w2_m.display_with(names),
        w.w2_v.display_with(names)
    ));
    s.push_str(&format!(
        "p1: {} (M: {}, V: {})\n",
        if rep.p1_match { "match" } else { "MISMATCH" },
        w.p1_m.display_with(names),
        w.p1_v.display_with(names)
    ));
    s.push_str(&format!("string: {}\ntheorem: {}\n", rep.is_string_pair(), rep.theorem_applicable.as_str()));
    for n in &rep.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

pub fn fano_json(m: &ManifoldModel, degrees: &[i64], rep: &FanoReport) -> Value {
    json!({
        "manifold": m.name(),
        "degrees": degrees,
        "c1_coefficient": rep.c1_coefficient,
        "fano": rep.fano,
        "exceptional": rep.exceptional,
    })
}

pub fn fano_text(m: &ManifoldModel, degrees: &[i64], rep: &FanoReport) -> String {
    format!(
        "manifold: {}\ndegrees: {:?}\nc1(X) = {}{}\nfano: {}\nexceptional: {}\n",
        m.name(),
        degrees,
        rep.c1_coefficient,
        m.generators()[0],
        rep.fano,
        rep.exceptional
    )
}

pub fn search_json(m: &ManifoldModel, max_degree: u32, max_bundles: usize, hits: &[(LineBundleSum, ConditionReport)]) -> Value {
    let results: Vec<Value> = hits
        .iter()
        .map(|(v, r)| {
            json!({
                "bundle": v.root_vectors(),
                "dim_x": m.dim() as i64 - v.rank() as i64,
                "theorem_applicable": r.theorem_applicable.as_str(),
            })
        })
        .collect();
    json!({
        "manifold": m.name(),
        "max_degree": max_degree,
        "max_bundles": max_bundles,
        "count": results.len(),
        "results": results,
    })
}

pub fn search_text(m: &ManifoldModel, hits: &[(LineBundleSum, ConditionReport)]) -> String {
    let mut s = String::new();
    for (v, r) in hits {
        s.push_str(&format!(
            "{}  dim_X={}  theorem={}\n",
            roots_text(&v.root_vectors()),
            m.dim() as i64 - v.rank() as i64,
            r.theorem_applicable.as_str()
        ));
    }
    s.push_str(&format!("{} string configuration(s) on {}\n", hits.len(), m.name()));
    s
}
