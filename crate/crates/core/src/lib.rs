//! Exact pseudo-inversion and signability of small simple graphs.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`graph`]: bitset graphs, the graph6 codec, connectivity, canonical
//!   forms and an isomorphism-free generator of small connected graphs
//! - [`linalg`]: arbitrary-precision integer and rational matrices, Bareiss
//!   determinants, RREF and the exact Moore-Penrose pseudoinverse
//! - [`spectral`]: a cyclic Jacobi eigensolver and the HOMO-LUMO style
//!   spectral indices (gap, index, power)
//! - [`signability`]: positive/negative signability of the pseudoinverse,
//!   pseudo-inverse graphs, involution and homothety checks
//! - [`constructions`]: graph families with closed-form pseudoinverses and
//!   spectra (cycles, paths, complete multipartite blow-ups, coronas)
//! - [`stats`] and [`survey`]: mergeable moment accumulators, per-graph
//!   survey records and census count tables
//!
//! IO, parallelism, table serialization and the command line live in the
//! companion `specgraph` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constructions;
pub mod graph;
pub mod linalg;
pub mod signability;
pub mod spectral;
pub mod stats;
pub mod survey;

pub use graph::{Graph, WeightedGraph};
pub use linalg::{IntMatrix, RationalMatrix};
pub use signability::{Classification, SignabilityKind, SignatureVector};
pub use spectral::{SpectralIndices, Spectrum};
