//! Serialization: JSON for machine consumption, DOT for graph rendering,
//! CSV for the root-region plot. All output here is deterministic —
//! identical inputs give byte-identical text — so every format is safe to
//! pin in golden tests.

use crate::cover::{Color, LabeledSubtree};
use crate::error::Result;
use crate::field::{rational_string, Field, PrimeField, Rationals};
use crate::module::KroneckerModule;
use crate::root_system::{
    classify, cover_thin_exists, in_fundamental_domain, tits_form, ArrowCount, DimVector,
    RootKind,
};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// How a field's elements appear in JSON. Prime-field entries are plain
/// integers; rationals become integers when possible and "a/b" strings
/// otherwise.
pub trait JsonEntries: Field {
    fn entry_json(&self, e: &Self::Elem) -> Value;
}

impl JsonEntries for PrimeField {
    fn entry_json(&self, e: &u64) -> Value {
        json!(e)
    }
}

impl JsonEntries for Rationals {
    fn entry_json(&self, e: &<Rationals as Field>::Elem) -> Value {
        let s = rational_string(e);
        match s.parse::<i64>() {
            Ok(v) => json!(v),
            Err(_) => json!(s),
        }
    }
}

pub fn module_to_json<F: JsonEntries>(m: &KroneckerModule<F>) -> Value {
    let f = m.field();
    let d = m.dim();
    let matrices: Vec<Value> = m
        .matrices()
        .iter()
        .map(|mat| {
            let rows: Vec<Value> = (0..mat.rows())
                .map(|r| Value::Array(mat.row(r).iter().map(|e| f.entry_json(e)).collect()))
                .collect();
            Value::Array(rows)
        })
        .collect();
    let basis_tags = match m.tags() {
        Some(t) => json!({
            "sources": t.source_words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "sinks": t.sink_words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        }),
        None => Value::Null,
    };
    json!({
        "n": m.n().get(),
        "dim": [d.x, d.y],
        "field": f.name(),
        "matrices": matrices,
        "nonzeros": m.nonzero_count(),
        "basisTags": basis_tags,
    })
}

pub fn subtree_to_json(t: &LabeledSubtree) -> Value {
    let edges: Vec<Value> = t
        .edges()
        .iter()
        .map(|e| {
            json!({
                "source": e.source.to_string(),
                "sink": e.sink.to_string(),
                "label": e.label,
            })
        })
        .collect();
    json!({
        "n": t.n().get(),
        "dim": [t.dim().x, t.dim().y],
        "vertices": t.vertices().map(|w| w.to_string()).collect::<Vec<_>>(),
        "edges": edges,
        "code": t.canonical_code().to_hex(),
    })
}

/// The subtree as a directed graph, arrows running source to sink. Sinks
/// are drawn as boxes, sources as ellipses; vertex names are label words.
pub fn subtree_to_dot(t: &LabeledSubtree) -> String {
    let mut out = String::from("digraph cover_subtree {\n");
    for w in t.vertices() {
        let shape = match w.color() {
            Color::Sink => "box",
            Color::Source => "ellipse",
        };
        let _ = writeln!(out, "  \"{w}\" [shape={shape}];");
    }
    for e in t.edges() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.source, e.sink, e.label);
    }
    out.push_str("}\n");
    out
}

/// The coefficient quiver of a module: one node per basis vector, one edge
/// per nonzero entry, labeled by the arrow it sits on. When basis tags are
/// present the nodes carry their cover-vertex words.
pub fn coefficient_quiver_dot<F: Field>(m: &KroneckerModule<F>) -> String {
    let f = m.field();
    let d = m.dim();
    let source_label = |j: usize| match m.tags() {
        Some(t) => t.source_words[j].to_string(),
        None => format!("x{j}"),
    };
    let sink_label = |i: usize| match m.tags() {
        Some(t) => t.sink_words[i].to_string(),
        None => format!("y{i}"),
    };
    let mut out = String::from("digraph coefficient_quiver {\n");
    for j in 0..d.x as usize {
        let _ = writeln!(out, "  src{j} [label=\"{}\" shape=ellipse];", source_label(j));
    }
    for i in 0..d.y as usize {
        let _ = writeln!(out, "  snk{i} [label=\"{}\" shape=box];", sink_label(i));
    }
    for (l, mat) in m.matrices().iter().enumerate() {
        for (i, j, e) in mat.entries() {
            if !f.is_zero(e) {
                let _ = writeln!(out, "  src{j} -> snk{i} [label=\"α{}\"];", l + 1);
            }
        }
    }
    out.push_str("}\n");
    out
}

pub const REGION_CSV_HEADER: &str = "x,y,q,class,in_cone,in_F,cover_thin";

/// Lattice points 0 <= x, y <= max_coord, excluding the origin, one CSV row
/// each: Tits value, root class, imaginary-cone membership (q <= 0),
/// fundamental-domain membership, and the cover-thin existence verdict.
pub fn region_csv(n: ArrowCount, max_coord: i64) -> Result<String> {
    let mut out = String::from(REGION_CSV_HEADER);
    out.push('\n');
    for x in 0..=max_coord {
        for y in 0..=max_coord {
            if x == 0 && y == 0 {
                continue;
            }
            let v = DimVector::new(x, y);
            let q = tits_form(n, v)?;
            let class = match classify(n, v)?.kind {
                RootKind::Real => "real",
                RootKind::Imaginary => "imaginary",
                RootKind::NotARoot => "not_a_root",
            };
            let in_cone = q <= 0;
            let in_f = in_fundamental_domain(n, v)?;
            let thin = cover_thin_exists(n, v);
            let _ = writeln!(out, "{x},{y},{q},{class},{in_cone},{in_f},{thin}");
        }
    }
    Ok(out)
}
