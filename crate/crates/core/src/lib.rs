//! Recognition of opposition, generalized opposition and coalition graphs.
//!
//! A graph is an opposition graph if its edges can be oriented acyclically so
//! that every induced `P4` has its two end-edges pointing the same way
//! relative to the middle edge (both in or both out). Dropping acyclicity
//! gives generalized opposition graphs. Coalition graphs require the end-edges
//! of each `P4` to disagree.

pub mod constraint;
pub mod corpus;
pub mod detect;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod p4;
pub mod recognize;
pub mod sweep;
pub mod transitive;
pub mod verify;

pub use graph::{Graph, GraphError, Orientation, PartialOrientation};
