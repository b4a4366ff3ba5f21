//! Browser bindings. Every export takes and returns JSON text so the page
//! needs no glue beyond the generated module.

mod svg;

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use antimagic_core::export::{import_json, ResultDocument};
use antimagic_core::legs::{
    closed_form_internal_sum, closed_form_leaf_sum, orient_leg, pattern_labels, PatternKind,
};
use antimagic_core::{verify_antimagic, CaterpillarSpec, ConstructionTrace, Direction};

#[derive(Serialize)]
struct Constructed<'a> {
    result: ResultDocument,
    trace: &'a ConstructionTrace,
    svg: String,
}

/// Builds a labeled orientation for an instance `{"p","k","legs"}`.
/// Returns `{result, trace, svg}`.
#[wasm_bindgen]
pub fn construct(instance: &str) -> Result<String, String> {
    let spec: CaterpillarSpec = serde_json::from_str(instance).map_err(|e| e.to_string())?;
    let (lo, trace) = antimagic_core::construct(&spec).map_err(|e| e.to_string())?;
    let out = Constructed {
        result: ResultDocument::new(&spec, &lo),
        trace: &trace,
        svg: svg::render(&spec, &lo),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Checks a result document, possibly hand-edited. Returns
/// `{ok, violation, sums, svg}`; vertices sharing a sum are highlighted.
#[wasm_bindgen]
pub fn verify(result: &str) -> Result<String, String> {
    let (spec, lo) = import_json(result).map_err(|e| e.to_string())?;
    let verdict = verify_antimagic(&spec, &lo);
    let doc = ResultDocument::new(&spec, &lo);
    Ok(json!({
        "ok": verdict.is_ok(),
        "violation": verdict.as_ref().err().map(|v| v.to_string()),
        "sums": doc.sums,
        "svg": svg::render(&spec, &lo),
    })
    .to_string())
}

fn parse_kind(kind: &str) -> Result<PatternKind, String> {
    match kind {
        "I" => Ok(PatternKind::Big),
        "II" => Ok(PatternKind::SmallEven),
        "III" => Ok(PatternKind::SmallOdd),
        other => Err(format!("unknown pattern `{other}`, expected I, II or III")),
    }
}

/// Labels one leg with pattern `kind` ("I", "II" or "III") and reports the
/// sum at every leg vertex next to its closed form.
#[wasm_bindgen]
pub fn leg_pattern(kind: &str, k: usize, a: i32, s: i32) -> Result<String, String> {
    let (a, s) = (i64::from(a), i64::from(s));
    if k > 200 {
        return Err("k is limited to 200 here".into());
    }
    let kind = parse_kind(kind)?;
    let labels = pattern_labels(kind, a, s, k).map_err(|e| e.to_string())?;
    let dirs = orient_leg(k).map_err(|e| e.to_string())?;
    let mut sums = vec![0i64; k + 1];
    for (j, (&d, &l)) in dirs.iter().zip(&labels).enumerate() {
        let (tail, head) = if d == Direction::Forward {
            (j, j + 1)
        } else {
            (j + 1, j)
        };
        sums[head] += l;
        sums[tail] -= l;
    }
    let mut closed = Vec::with_capacity(k);
    for j in 1..k {
        closed.push(closed_form_internal_sum(kind, a, s, k, j).map_err(|e| e.to_string())?);
    }
    closed.push(closed_form_leaf_sum(kind, a, s, k).map_err(|e| e.to_string())?);
    Ok(json!({
        "labels": labels,
        "directions": dirs,
        "sums": &sums[1..],
        "closed_form": closed,
    })
    .to_string())
}
