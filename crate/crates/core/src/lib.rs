//! Graph kernels for directed, weighted word-association networks.
//!
//! The crate is `no_std` (it needs `alloc`). The default `std` and `parallel`
//! features let per-source sweeps (breadth-first search, Brandes
//! accumulation, ensemble members) run on a rayon pool; every reduction is
//! carried out in a fixed order so results do not depend on the thread count.
//!
//! Module map:
//!
//! - [`graph`]: node/arc tables, adjacency indices, undirected projection
//! - [`ingest`]: norms and ratings parsing, endorsement filter, median split
//! - [`metrics`]: hop distances, diameter, ASPL, clustering, density, S
//! - [`randgraph`]: seeded G(n, m) benchmarks and ensemble summaries
//! - [`community`]: Newman modularity and Louvain detection
//! - [`influence`]: ingredient centralities and composite spreading scores
//! - [`stats`]: Welch's t-test on top of the regularized incomplete beta
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod community;
mod error;
pub mod graph;
pub mod influence;
pub mod ingest;
pub mod metrics;
mod par;
pub mod randgraph;
pub mod stats;

pub use error::{Error, ErrorKind, Result};
pub use graph::{Arc, AssociationNetwork, NodeId, WordNode};
