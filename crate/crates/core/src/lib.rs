//! Neumaier graphs: edge-regular graphs containing a regular clique.
//!
//! This crate constructs, searches for and verifies such graphs:
//!
//! - [`graph`]: immutable bitset-backed simple graphs with regularity
//!   analysis (edge-regular, co-edge-regular, strongly regular);
//! - [`g6`]: graph6 encoding/decoding and DOT export;
//! - [`cliques`]: maximal-clique enumeration, nexus computation, and the
//!   Neumaier / strictly Neumaier verification report;
//! - [`params`]: exact integer feasibility arithmetic for parameter tuples
//!   `(v,k,λ;m,s)` and the extremality classification table;
//! - [`affine`]: the binary affine polar graphs `VO⁺(2e,2)` with their
//!   quadratic form, generators, cosets and spreads;
//! - [`switching`]: edge switching, the two families of strictly Neumaier
//!   graphs built from `VO⁺(2e,2)`, and bounded exploration of switching
//!   sequences;
//! - [`iso`]: canonical forms, isomorphism testing and automorphism counts;
//! - [`search`]: clique-seeded exhaustive search for all graphs with given
//!   Neumaier parameters.

pub mod affine;
pub mod bitset;
pub mod cliques;
pub mod g6;
pub mod graph;
pub mod iso;
pub mod params;
pub mod search;
pub mod switching;

pub use bitset::VertexSet;
pub use graph::{Graph, RegularityClass};
pub use params::NeumaierParams;
