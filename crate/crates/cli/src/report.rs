//! JSON and plain-text rendering of analysis results.
//!
//! Keys come out sorted because `serde_json::Map` is a `BTreeMap` here.
//! Rationals are `"p/q"` strings; floats appear only as oracle residuals.

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use stabdisj_core::bounds::{LevelBound, ToffoliVerdict};
use stabdisj_core::metrics::{ClassMetrics, DistanceInterval, Witness};
use stabdisj_core::oracle::sampling::ConsistencyReport;
use stabdisj_core::{Exactness, MetricsReport, Partition, RationalInterval, StabilizerCode};

pub const SCHEMA: u64 = 1;

pub fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

/// Hex SHA-256 of the dimension and the generator strings, one per line.
pub fn generator_hash(code: &StabilizerCode) -> String {
    let mut h = Sha256::new();
    h.update(format!("dim {}\n", code.dim()));
    for g in code.generators() {
        h.update(format!("{g}\n"));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn code_json(code: &StabilizerCode) -> Value {
    json!({
        "n": code.num_qudits(),
        "k": code.num_logical(),
        "m": code.dim().get(),
        "generator_hash": generator_hash(code),
    })
}

pub fn partition_json(p: &Partition) -> Value {
    json!({
        "num_parts": p.num_parts(),
        "part_sizes": p.part_sizes(),
    })
}

fn distance_json(d: &DistanceInterval) -> Value {
    json!({
        "lo": d.lo,
        "hi": d.hi,
        "source": d.source.as_str(),
        "exact": d.is_exact(),
    })
}

fn interval_json(r: &RationalInterval) -> Value {
    json!({
        "lo": rational(&r.lo),
        "hi": rational(&r.hi),
        "exact": r.is_exact(),
        "hi_reason": r.hi_reason.as_str(),
    })
}

fn class_json(code: &StabilizerCode, cm: &ClassMetrics, witnesses: bool) -> Value {
    let table: Vec<Value> = cm
        .disjointness
        .iter()
        .map(|e| {
            let mut v = interval_json(&e.interval);
            v["c"] = json!(e.c);
            if witnesses {
                if let Some(Witness::DisjointSet { members, .. }) = &e.interval.lo_witness {
                    v["witness"] = json!(members.iter().map(|p| p.unphased().to_string()).collect::<Vec<_>>());
                }
            }
            v
        })
        .collect();
    json!({
        "label": cm.class.to_string(),
        "name": cm.class.name(code.dim()),
        "distance": distance_json(&cm.distance),
        "weight_histogram": cm.weight_histogram,
        "disjointness": table,
    })
}

pub fn metrics_json(code: &StabilizerCode, r: &MetricsReport, witnesses: bool) -> Value {
    let mut delta = interval_json(&r.delta);
    delta["c"] = json!(r.delta_c);
    json!({
        "coset_size": r.coset_size.map(|s| s.to_string()),
        "d_min": distance_json(&r.d_min),
        "d_max": distance_json(&r.d_max),
        "delta": delta,
        "c_values": r.c_values,
        "classes": r.classes.iter().map(|c| class_json(code, c, witnesses)).collect::<Vec<_>>(),
        "exactness": r.exactness.as_str(),
    })
}

pub fn bound_json(b: &LevelBound) -> Value {
    let inputs: Map<String, Value> = b.inputs.iter().map(|(k, v)| (k.to_string(), rational(v))).collect();
    let trace: Vec<Value> = b
        .trace
        .iter()
        .map(|c| {
            json!({
                "level": c.level,
                "lhs": rational(&c.lhs),
                "rhs": rational(&c.rhs),
                "holds": c.holds,
            })
        })
        .collect();
    json!({
        "theorem": b.theorem.as_str(),
        "level": b.level,
        "inputs": inputs,
        "trace": trace,
        "cap": b.cap,
    })
}

pub fn toffoli_json(t: &ToffoliVerdict) -> Value {
    json!({ "excluded": t.excluded, "explanation": t.explanation })
}

pub fn consistency_json(r: &ConsistencyReport, bound: u32, seed: u64) -> Value {
    let levels: Map<String, Value> = r
        .levels
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(l, &n)| (if l == 0 { "above-cap".to_string() } else { l.to_string() }, json!(n)))
        .collect();
    json!({
        "seed": seed,
        "bound": bound,
        "attempts": r.attempts,
        "preserving": r.preserving,
        "levels": levels,
        "violations": r.violations,
    })
}

/// Human-readable summary of a metrics report and its bounds.
pub fn summary(code: &StabilizerCode, partition: &Partition, r: &MetricsReport, bounds: &[LevelBound]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "code: n = {}, k = {}, m = {}, N = {} parts\n",
        code.num_qudits(),
        code.num_logical(),
        code.dim(),
        partition.num_parts()
    ));
    let dist = |d: &DistanceInterval| {
        if d.lo == d.hi {
            d.lo.to_string()
        } else {
            format!("[{}, {}]", d.lo, d.hi)
        }
    };
    out.push_str(&format!("d_min = {}, d_max = {}\n", dist(&r.d_min), dist(&r.d_max)));
    out.push_str(&format!("Delta = {} (c = {})\n", r.delta, r.delta_c));
    for cm in &r.classes {
        let cells: Vec<String> = cm
            .disjointness
            .iter()
            .take(8)
            .map(|e| format!("c={}: {}", e.c, e.interval))
            .collect();
        let more = if cm.disjointness.len() > 8 { ", ..." } else { "" };
        out.push_str(&format!(
            "  {:<8} d = {:<8} {}{}\n",
            cm.class.name(code.dim()),
            dist(&cm.distance),
            cells.join(", "),
            more
        ));
    }
    for b in bounds {
        out.push_str(&format!("{}\n", b));
    }
    if r.exactness != Exactness::Exhaustive {
        out.push_str(&format!("note: results are {}\n", r.exactness.as_str()));
    }
    out
}
