//! Graphviz export of a Hasse diagram with a matching drawn on top.
//!
//! Covering relations are grey undirected edges; each matched pair is a red arrow from the face
//! to the coface, replacing its covering edge. Critical cells are drawn as filled double
//! octagons.

use std::fmt::Write as _;

use barymorse_core::prelude::*;

/// `name_of` gives each simplex its node label.
pub fn hasse_dot(
    c: &SimplicialComplex,
    field: Option<&DiscreteVectorField<'_>>,
    name_of: impl Fn(SimplexId) -> String,
) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    for k in 0..=c.dim().unwrap_or(0) {
        let _ = write!(out, "  {{ rank=same;");
        for id in c.ids_of_dim(k) {
            let _ = write!(out, " n{};", id.0);
        }
        out.push_str(" }\n");
    }
    for id in c.ids() {
        let critical = field.is_some_and(|f| f.is_critical(id));
        let style = if critical {
            ", shape=doubleoctagon, style=filled, fillcolor=gold"
        } else {
            ""
        };
        let _ = writeln!(out, "  n{} [label=\"{}\"{}];", id.0, name_of(id), style);
    }
    for id in c.ids() {
        for &f in c.facet_ids(id) {
            let matched = field.is_some_and(|fl| fl.up(f) == Some(id));
            if matched {
                let _ = writeln!(out, "  n{} -> n{} [color=red, penwidth=2];", f.0, id.0);
            } else {
                let _ = writeln!(out, "  n{} -> n{} [dir=none, color=gray];", f.0, id.0);
            }
        }
    }
    out.push_str("}\n");
    out
}
