//! Regular graphs with independent exact r-covers for every `r <= d`,
//! built as common coverings of small generalized graphs.
//!
//! Graphs are stored as darts with an incidence map and a pairing
//! involution, so loops, parallel edges and semi-edges are first class.

pub mod atlas;
pub mod bounds;
pub mod cover;
pub mod covering;
pub mod error;
pub mod factorize;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod transit;

pub use atlas::{AtlasEntry, ConstructionCase};
pub use bounds::{BoundReport, IntersectionReport};
pub use cover::{CoverCertificate, CoverReport};
pub use covering::{CoveringMap, CoveringReport, StructureReport};
pub use error::{Error, Result};
pub use factorize::Factorization;
pub use graph::{GeneralizedGraph, GraphBuilder, GraphClass, OrbitKind};
pub use num_bigint::BigUint;
pub use pipeline::{BuildResult, Strategy};
pub use transit::{Rat, RegionDd};
