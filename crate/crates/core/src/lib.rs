//! Degree-sequence lower bounds on the independence number of k-uniform
//! hypergraphs.
//!
//! The crate provides:
//!
//! - [`hypergraph`]: a validated flat-storage hypergraph with degree
//!   sequences, link graphs, induced subhypergraphs and a plain-text file
//!   format;
//! - [`exact`]: arbitrary-precision rational combinatorics (factorials,
//!   binomials, the fractional binomial coefficient) and exact verifiers for
//!   the alternating-sum, inclusion-exclusion, tail and permutation-counting
//!   identities the probability formulas rest on;
//! - [`precise`]: rigorous interval enclosures for roots and logarithms, so
//!   irrational bound values come with proven digits instead of float
//!   round-off;
//! - [`perm`]: the random-permutation machinery: exact backward-edge
//!   probabilities, a brute-force distribution oracle, and the seeded
//!   two-stage pipeline that extracts independent sets;
//! - [`alpha`]: exact independence numbers by branch and bound, independent
//!   set counting, and the counting inequality check;
//! - [`bounds`]: Caro-Wei/Caro-Tuza sums, degree-sequence bounds for
//!   triangle-free, clique-free and linear instances, the average-degree
//!   bound, and comparison reports;
//! - [`construct`]: the extremal families (bipartite towers, grid-line
//!   units, their mixtures, pendant-decorated bipartite graphs) plus seeded
//!   random generators.
//!
//! All randomness is seeded explicitly and every emitted independent set is
//! re-validated, so results are reproducible and self-checking.

#![forbid(unsafe_code)]

pub mod alpha;
pub mod bounds;
pub mod caps;
pub mod construct;
pub mod error;
pub mod exact;
pub mod hypergraph;
pub mod perm;
pub mod precise;

pub use caps::Caps;
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
