//! Survivable-routing toolkit: connection setup with primary/backup path
//! pairs under a single-link-failure model with preemptive restoration.

pub mod cli;
pub mod cuts;
pub mod error;
pub mod graph;
pub mod netgen;
pub mod okcp;
pub mod failure;
pub mod paths;
pub mod sim;
pub mod twocp;

pub use error::{Error, Result};
pub use graph::{EdgePath, Link, LinkSet, Network, NodeId, PROB_TOL};
