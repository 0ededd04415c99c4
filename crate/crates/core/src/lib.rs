//! Laboratory library for circular colorings of graphs with bounded
//! tree-width and large odd-girth.
//!
//! The crate is split along the natural layers of the construction:
//!
//! * [`graph`] — simple undirected graphs with the metric and parity
//!   primitives everything else consumes (odd-girth, bipartitions,
//!   multi-source distances, closed-neighborhood contraction, and a
//!   small-graph canonical form).
//! * [`ktree`] — rooted partial k-trees carrying explicit k-tree build
//!   certificates, the gluing operation on roots, and separator splits.
//! * [`circular`] — exact (p,q)-colorability, circular chromatic number,
//!   and homomorphisms to odd cycles.
//! * [`precolor`] — root precolorings, the extendable-precoloring sets
//!   F(G), color spread along paths, and the empirical extension-distance
//!   probe.
//! * [`types`] — distance types of rooted partial k-trees, bipartite
//!   types, compatibility, and the ⪯ order.
//! * [`reduction`] — the type-reduction construction, F-set inclusion
//!   verification, gadget synthesis, the counterexample-replacement step,
//!   and the explicit girth bound.
//!
//! The library is `no_std` (with `alloc`); all IO, file formats and the
//! command-line surface live in the companion `girthlab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bound;
pub mod circular;
pub mod dist;
pub mod gadget;
pub mod graph;
pub mod ktree;
pub mod precolor;
pub mod reduction;
pub mod types;

pub use bound::{girth_bound, GirthBound};
pub use circular::{CircularColoring, Frac, PQParams, SolveOutcome};
pub use dist::Dist;
pub use graph::{Bipartition, Graph, OddCycleWitness};
pub use ktree::RootedPartialKTree;
pub use precolor::{FSet, Precoloring};
pub use types::TypeMatrix;
