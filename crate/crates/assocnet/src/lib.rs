//! File formats, reports and the command-line front end for
//! word-association network analysis. The algorithms live in
//! [`assocnet_core`]; this crate reads and writes files around them.

pub mod error;
pub mod export;
pub mod io;
pub mod pipeline;
pub mod report;

pub use assocnet_core::{community, graph, influence, ingest, metrics, randgraph, stats};
pub use assocnet_core::{AssociationNetwork, NodeId};
pub use error::{Error, Result};
