//! Rendering shared by the command line and the test suites: expression
//! text that reparses through `parse`, and JSON values with deterministic
//! (sorted) key order.  Rationals serialize as strings; algebraic scalars
//! as minimal polynomial, isolating interval, and an advisory decimal.

use crate::alg::Coef;
use crate::arcs::{Arc, ArcLimit, LimitValue};
use crate::construct::EncodedSet;
use crate::geometry::ZeroSet;
use crate::mpoly::MPoly;
use crate::rat::{rat_to_string, BigRat};
use crate::ratfunc::RationalFunction;
use crate::resolve::{NodeDetail, ResolutionNode, ResolutionTree, ValueInterval};
use serde_json::{json, Value};

pub fn var_names(arity: usize) -> Vec<String> {
    if arity <= 3 {
        ["x", "y", "z"][..arity].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=arity).map(|k| format!("x{k}")).collect()
    }
}

pub fn poly_text(p: &MPoly) -> String {
    let names = var_names(p.nvars());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    p.display(&refs)
}

pub fn fraction_text(f: &RationalFunction) -> String {
    match f.den().as_constant() {
        Some(c) if c.value_eq(&Coef::one()) => poly_text(f.num()),
        Some(c) => format!("({})/({})", poly_text(f.num()), c),
        None => format!("({})/({})", poly_text(f.num()), poly_text(f.den())),
    }
}

pub fn scalar_text(c: &Coef) -> String {
    format!("{c}")
}

pub fn point_text(pt: &[Coef]) -> String {
    let coords: Vec<String> = pt.iter().map(scalar_text).collect();
    format!("({})", coords.join(", "))
}

pub fn interval_text(iv: &ValueInterval) -> String {
    format!("[{}, {}]", iv.lo, iv.hi)
}

pub fn limit_text(l: &ArcLimit) -> String {
    match &l.limit {
        LimitValue::Infinite => "infinite".to_string(),
        LimitValue::Finite(c) => scalar_text(c),
    }
}

pub fn rat_json(r: &BigRat) -> Value {
    Value::String(rat_to_string(r))
}

pub fn scalar_json(c: &Coef) -> Value {
    match c.as_rat() {
        Some(r) => rat_json(r),
        None => {
            let d = c.q_description();
            let coefs = d
                .poly
                .all_rational()
                .expect("rational descriptions of algebraic scalars");
            json!({
                "approx": c.approx(),
                "interval": [rat_to_string(&d.lo), rat_to_string(&d.hi)],
                "minpoly": coefs.iter().map(rat_json).collect::<Vec<_>>(),
            })
        }
    }
}

pub fn point_json(pt: &[Coef]) -> Value {
    Value::Array(pt.iter().map(scalar_json).collect())
}

pub fn interval_json(iv: &ValueInterval) -> Value {
    json!({
        "hi": scalar_json(&iv.hi),
        "lo": scalar_json(&iv.lo),
        "single_value": iv.is_single_value(),
    })
}

pub fn fraction_json(f: &RationalFunction) -> Value {
    json!({
        "den": poly_text(f.den()),
        "num": poly_text(f.num()),
        "text": fraction_text(f),
    })
}

pub fn arc_json(a: &Arc) -> Value {
    let entries: Vec<Value> = a
        .entries()
        .iter()
        .map(|p| {
            let terms: Vec<Value> = p
                .terms()
                .iter()
                .map(|(e, c)| json!({"coef": scalar_json(c), "exp": rat_to_string(e)}))
                .collect();
            Value::Array(terms)
        })
        .collect();
    json!({
        "entries": entries,
        "ramification": a.ramification(),
        "text": a.display("t"),
    })
}

pub fn limit_json(l: &ArcLimit) -> Value {
    let limit = match &l.limit {
        LimitValue::Finite(c) => scalar_json(c),
        LimitValue::Infinite => Value::String("infinite".to_string()),
    };
    json!({
        "leading": l.leading.as_ref().map(scalar_json).unwrap_or(Value::Null),
        "limit": limit,
        "order": l.order.as_ref().map(|r| rat_json(r)).unwrap_or(Value::Null),
        "tends_to_zero": l.in_zero_set(),
    })
}

pub fn tree_json(t: &ResolutionTree) -> Value {
    json!({
        "center": point_json(&t.center),
        "depth": t.depth(),
        "max_tower_height": t.max_tower_height(),
        "node_count": t.node_count(),
        "root": node_json(&t.root),
    })
}

/// Every node is written in the local chart coordinates at its center.
fn node_json(n: &ResolutionNode) -> Value {
    let names = ["u", "v"];
    match &n.detail {
        NodeDetail::Regular => json!({
            "den": n.den.display(&names),
            "kind": "regular",
            "num": n.num.display(&names),
        }),
        NodeDetail::Blown { d, p_a, q_a, children, vertical } => json!({
            "children": children
                .iter()
                .map(|c| json!({
                    "direction": scalar_json(&c.root),
                    "node": node_json(&c.node),
                }))
                .collect::<Vec<_>>(),
            "den": n.den.display(&names),
            "exceptional_order": d,
            "kind": "blown",
            "num": n.num.display(&names),
            "pullback_den": q_a.display(&names),
            "pullback_num": p_a.display(&names),
            "vertical": node_json(vertical),
        }),
    }
}

pub fn zero_set_json(z: &ZeroSet) -> Value {
    let curve = if z.has_curve() {
        Value::String(poly_text(&z.curve_part))
    } else {
        Value::Null
    };
    json!({
        "curve": curve,
        "empty": z.is_empty(),
        "excluded": z.excluded_points.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "isolated": z.isolated_points.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "whole_plane": z.is_whole_plane(),
    })
}

pub fn encoded_set_json(e: &EncodedSet) -> Value {
    json!({
        "ambient": e.ambient,
        "embedding": e.embedding.iter().map(|p| Value::String(poly_text(p))).collect::<Vec<_>>(),
        "function": fraction_json(&e.h),
        "projection": e.projection.clone(),
    })
}
