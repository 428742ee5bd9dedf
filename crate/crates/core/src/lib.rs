//! Shortest path graphs: computation, recognition, and certified synthesis.
//!
//! Fix two vertices a and b of a connected graph. The shortest path graph
//! (SPG) of that triple has one vertex per a-b geodesic, with two geodesics
//! adjacent when they differ in exactly one vertex; each edge carries the
//! position of that difference as its index level. This crate computes
//! SPGs, decides which graphs without induced four-cycles arise this way,
//! and synthesizes certified base graphs realizing them.

pub mod budget;
pub mod classifier;
pub mod cliques;
pub mod corpus;
pub mod error;
pub mod geodesics;
pub mod graph;
pub mod holes;
pub mod induced;
pub mod io;
pub mod iso;
pub mod oracle;
pub mod synthesis;

pub use budget::{WorkBudget, DEFAULT_WORK_BUDGET};
pub use error::{Error, Result};
pub use geodesics::{
    build_spg, diff_indices, enumerate_geodesics, unique_vertex_geodesic, Geodesic, SpgGraph,
    DEFAULT_MAX_PATHS,
};
pub use graph::Graph;
pub use induced::{find_induced, InducedWitness, Pattern};
pub use iso::{canonical_key, is_isomorphic, CanonKey};
pub use oracle::{
    exhaustive_search, property_suite, refute, CatalogEntry, PropertyFinding, Refutation,
    SpgCatalog,
};
pub use synthesis::{
    replay, synthesize, verify_certificate, BaseGraphState, CertificateCheck, SynthStep,
    SynthesisCertificate, SynthesisMode,
};
