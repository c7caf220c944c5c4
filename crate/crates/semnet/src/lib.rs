#![forbid(unsafe_code)]

//! Ingestion, validation, and structural analysis of ConceptNet-4-style
//! relational dumps.
//!
//! The pipeline has three stages:
//!
//! 1. [`ingest`] parses the eight source tables and records which IDs exist.
//! 2. [`closure`] restricts to the English-language assertions, pulls in
//!    every transitively referenced row, classifies each assertion under
//!    four inconsistency indicators, and reads/writes the derived file set.
//! 3. [`graph`] induces filtered graph variants from the closure, on which
//!    [`metrics`], [`communities`], and [`rules`] run the analyses: degree
//!    distributions and power-law fits, components, cores, shortest paths,
//!    cliques, community detection, and relation-triple rule mining.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `semnet` binary for the command-line interface.

pub mod closure;
pub mod communities;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod report;
pub mod rng;
pub mod rules;

#[cfg(test)]
pub(crate) mod testkit;

pub use error::{Error, Result};
