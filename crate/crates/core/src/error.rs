use thiserror::Error;

use crate::complex::{Simplex, VertexId};
use crate::subdivision::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("repeated vertex in {0:?}")]
    RepeatedVertex(Vec<VertexId>),
    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),
    #[error("pair ({0}, {1}): first is not a facet of second")]
    NotAFacet(Simplex, Simplex),
    #[error("simplex {0} is matched more than once")]
    MatchedTwice(Simplex),
    #[error("field has a closed path through {}", display_cycle(.0))]
    ClosedPath(Vec<Simplex>),
    #[error("gradient path exceeded {0} cells")]
    PathTooLong(usize),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("label {label} does not partition {expected}")]
    LabelOutOfScope { label: Label, expected: Simplex },
    #[error("ordering {order:?} is not a permutation of {simplex}")]
    BadOrdering {
        simplex: Simplex,
        order: Vec<VertexId>,
    },
    #[error("no ordering given for critical simplex {0}")]
    MissingOrdering(Simplex),
    #[error("more than one ordering given for {0}")]
    DuplicateOrdering(Simplex),
    #[error("ordering given for non-critical simplex {0}")]
    OrderingNotCritical(Simplex),
    #[error("pairing rule is not an involution at {0}")]
    NotAnInvolution(Label),
    #[error("vertex {vertex} is not a singleton block of {label}")]
    NotASingleton { vertex: VertexId, label: Label },
    #[error("{0}")]
    InvalidPath(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn display_cycle(cells: &[Simplex]) -> String {
    cells
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" -> ")
}
