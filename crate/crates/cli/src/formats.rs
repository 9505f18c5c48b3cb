//! On-disk formats. Every file is a JSON object whose fields are arrays, written with one
//! array entry per line so outputs diff cleanly and are byte-stable.
//!
//! ```text
//! complex:    { "maximal_simplices": [ [1, 2, 3], ... ] }
//! matching:   { "pairs": [ [[1], [1, 2]], ... ] }            (face, coface)
//! orderings:  { "orderings": [ [[1, 2, 3], [3, 2, 1]], ... ] } (simplex, vertex order)
//! ```
//!
//! A matching on `Δ(L)` uses vertex ids of `Δ(L)`: id `i` is the `i`-th simplex of `L` in
//! canonical order (dimension, then lexicographic), as listed by the subdivision export.

use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use barymorse_core::prelude::*;

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub maximal_simplices: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatchingFile {
    pub pairs: Vec<(Vec<VertexId>, Vec<VertexId>)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OrderingsFile {
    pub orderings: Vec<(Vec<VertexId>, Vec<VertexId>)>,
}

impl ComplexFile {
    pub fn from_complex(c: &SimplicialComplex) -> Self {
        ComplexFile {
            maximal_simplices: c.maximal_simplices().iter().map(|s| s.vertices().to_vec()).collect(),
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex, CliError> {
        SimplicialComplex::from_maximal(self.maximal_simplices.iter().cloned())
            .map_err(|e| CliError::Input(format!("complex: {e}")))
    }

    pub fn render(&self) -> String {
        render_arrays(&[("maximal_simplices", values(&self.maximal_simplices))])
    }
}

impl MatchingFile {
    pub fn from_field(f: &DiscreteVectorField<'_>) -> Self {
        let c = f.complex();
        MatchingFile {
            pairs: f
                .pairs()
                .into_iter()
                .map(|(a, b)| (c.simplex(a).vertices().to_vec(), c.simplex(b).vertices().to_vec()))
                .collect(),
        }
    }

    pub fn simplex_pairs(&self) -> Result<Vec<(Simplex, Simplex)>, barymorse_core::Error> {
        self.pairs
            .iter()
            .map(|(a, b)| Ok((Simplex::new(a.iter().copied())?, Simplex::new(b.iter().copied())?)))
            .collect()
    }

    /// Validates the pairs as a vector field on `c`.
    pub fn field<'c>(
        &self,
        c: &'c SimplicialComplex,
    ) -> Result<DiscreteVectorField<'c>, barymorse_core::Error> {
        let pairs = self.simplex_pairs()?;
        DiscreteVectorField::from_pairs(c, pairs.iter().map(|(a, b)| (a, b)))
    }

    pub fn render(&self) -> String {
        render_arrays(&[("pairs", values(&self.pairs))])
    }
}

impl OrderingsFile {
    pub fn from_orderings(o: &Orderings) -> Self {
        OrderingsFile {
            orderings: o
                .iter()
                .map(|x| (x.simplex().vertices().to_vec(), x.order().to_vec()))
                .collect(),
        }
    }

    pub fn entries(&self) -> Result<Vec<CriticalOrdering>, barymorse_core::Error> {
        self.orderings
            .iter()
            .map(|(s, o)| CriticalOrdering::new(Simplex::new(s.iter().copied())?, o.clone()))
            .collect()
    }

    pub fn render(&self) -> String {
        render_arrays(&[("orderings", values(&self.orderings))])
    }
}

fn values<T: Serialize>(items: &[T]) -> Vec<Value> {
    items
        .iter()
        .map(|x| serde_json::to_value(x).expect("plain data serializes"))
        .collect()
}

/// Writes `{ "field": [ entry, … ], … }` with one compact entry per line.
pub fn render_arrays(fields: &[(&str, Vec<Value>)]) -> String {
    let mut out = String::from("{\n");
    for (i, (name, items)) in fields.iter().enumerate() {
        let _ = write!(out, "  {}: [", Value::String((*name).to_string()));
        if items.is_empty() {
            out.push(']');
        } else {
            out.push('\n');
            for (j, item) in items.iter().enumerate() {
                let sep = if j + 1 < items.len() { "," } else { "" };
                let _ = writeln!(out, "    {item}{sep}");
            }
            out.push_str("  ]");
        }
        out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

/// Parses `text`; errors carry the line number and the offending line.
pub fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let line = e.line();
        let context = text.lines().nth(line.saturating_sub(1)).unwrap_or("").trim();
        CliError::Input(format!("{origin}:{line}:{}: {e}\n  | {context}", e.column()))
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}
