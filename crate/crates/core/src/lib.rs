//! Discrete Morse matchings on simplicial complexes, and their transfer to the barycentric
//! subdivision with the same critical cells and the same gradient paths.
//!
//! The pieces, bottom-up:
//!
//! * [`complex`]: simplicial complexes with facet/cofacet incidence.
//! * [`morse`]: discrete vector fields, the closed-path check, critical cells and gradient
//!   path enumeration.
//! * [`subdivision`]: `Δ(L)` and the label (ordered partition) view of its cells.
//! * [`delta_morse`]: the matching `Δ(F)` built from a Morse matching `F` and one vertex
//!   ordering per critical simplex.
//! * [`paths`]: projection and lift of gradient paths, and the bijection check.
//! * [`oracle`], [`corpus`]: independent checks and built-in test complexes.
//!
//! ```
//! use barymorse_core::prelude::*;
//!
//! let l = SimplicialComplex::from_maximal([vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
//! let f = DiscreteVectorField::random_morse(&l, 1);
//! let sd = SubdividedComplex::new(&l, Execution::Sequential);
//! let ord = default_orderings(&f);
//! let df = build_delta_morse(&f, &sd, &ord, Execution::Sequential).unwrap();
//! assert_eq!(df.critical_cells().counts(), f.critical_cells().counts());
//! assert!(verify_bijection(&f, &sd, &df, &ord, Execution::Sequential).success());
//! ```

pub mod complex;
pub mod corpus;
pub mod delta_morse;
pub mod error;
pub mod exec;
pub mod morse;
pub mod oracle;
pub mod paths;
pub mod subdivision;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::complex::{Simplex, SimplexId, SimplicialComplex, VertexId};
    pub use crate::delta_morse::{
        build_delta_morse, default_orderings, pair_critical, pair_noncritical, random_orderings,
        CriticalOrdering, CriticalPairing, NoncriticalCase, NoncriticalPair, Orderings,
        PairingContext,
    };
    pub use crate::exec::Execution;
    pub use crate::morse::{CriticalSet, DiscreteVectorField, GradientPath};
    pub use crate::paths::{
        entrance_from_exit, lift_path, project_path, segment_from_critical,
        segment_through_noncritical, verify_bijection, BijectionReport, PathSegment,
    };
    pub use crate::subdivision::{Label, SubdividedComplex};
}
