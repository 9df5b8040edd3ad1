//! Exact generalized Turán numbers `ex(n, K_r, F)` for families that combine
//! a matching with another forbidden graph.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`], [`graph6`], [`canon`]: bitset graphs, serialization and
//!   canonical labelling.
//! - [`invariants`]: clique counts, chromatic number, matching number and
//!   Tutte–Berge certificates.
//! - [`containment`]: (non-induced) subgraph containment and forbidden families.
//! - [`covering`]: vertex coverings, the covering family `F[p]`, independent
//!   covering number `p(F)` and colour-criticality.
//! - [`constructions`]: the extremal candidates `G(n, s, H)`, `K_{2s+1}`,
//!   Turán graphs and the forest constructions.
//! - [`solver`]: isomorph-free enumeration and exact `ex` with witnesses.
//! - [`verifier`] and [`report`]: closed forms replayed against the solver.

pub mod canon;
pub mod constructions;
pub mod containment;
pub mod covering;
mod error;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod report;
pub mod solver;
pub mod verifier;

pub use canon::{canonical_form, canonical_graph, is_isomorphic, CanonicalForm};
pub use containment::{contains_subgraph, is_family_free, minimalize, GraphFamily};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
