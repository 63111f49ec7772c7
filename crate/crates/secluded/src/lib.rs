//! Exact solvers for secluded-subgraph problems on directed graphs.
//!
//! A set `S` of vertices is *k-secluded* (with respect to the in-, out-, or
//! total neighborhood) when at most `k` vertices outside `S` see it through
//! the chosen kind of edge. This crate looks for maximum-weight secluded sets
//! whose induced subgraph satisfies a property: strong connectivity, bounded
//! independence number, being a tournament or a clique, or avoiding a family
//! of forbidden induced subgraphs.
//!
//! The pieces fit together as follows:
//!
//! * [`digraph`] — the graph representation and neighborhood/connectivity
//!   primitives.
//! * [`oracle`] — brute-force reference solvers, used as ground truth by
//!   every other module's tests.
//! * [`branching`] — bounded-search-tree solvers for the α-bounded,
//!   tournament, and clique properties.
//! * [`extensions`] — graph extensions, their signatures, and the compression
//!   routine that shrinks an extension to a bounded-size equivalent one.
//! * [`reductions`] — the six reduction rules for boundaried
//!   maximum-strongly-connected instances, with undo traces.
//! * [`recursive`] — separations, set families, the unbreakable-case search,
//!   and the recursive driver for the total-secluded strongly connected
//!   problem.
//! * [`gadgets`] — hardness-reduction instance generators with solution
//!   back-maps.
//! * [`io`] — the plain-text instance format and seeded instance generators.
//!
//! The mdBook under `book/` walks through the same material chapter by
//! chapter with runnable examples.

pub mod branching;
pub mod digraph;
pub mod error;
pub mod extensions;
pub mod gadgets;
pub mod io;
pub mod oracle;
pub mod recursive;
pub mod reductions;

pub use digraph::{Digraph, NeighborhoodKind, VertexId, VertexSet};
pub use error::{GadgetError, GraphError, OracleError, RecursiveError};
pub use oracle::{Property, SecludedInstance, Solution};
