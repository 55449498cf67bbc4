//! Threshold all-pairs shortest paths and exact diameter for directed
//! graphs with small integer weights.
//!
//! Two algorithms answer "which ordered pairs are at distance at most `d`":
//!
//! * [`threshold_neg::threshold_apsp_neg`] for weights in `{-M..M}`, Monte
//!   Carlo, built from a hitting-set pass for far pairs and per-level
//!   redundant path distance matrices for near pairs;
//! * [`threshold_pos::threshold_apsp_pos`] for weights in `{1..M}`,
//!   deterministic, built from a recursion over polynomial Boolean matrices.
//!
//! [`diameter::diameter`] binary-searches either one. [`oracle`] holds
//! brute-force reference implementations used by the tests.

pub mod approx;
pub mod cli;
pub mod config;
pub mod diameter;
pub mod error;
pub mod far_pairs;
pub mod graph;
pub mod matprod;
pub mod matrix;
pub mod ops;
pub mod oracle;
pub mod rng;
pub mod rpdm;
pub mod schedule;
pub mod threshold_neg;
pub mod threshold_pos;

pub use config::{Config, Kernel, Sssp};
pub use diameter::{diameter, DiameterResult, Mode};
pub use error::{Error, Result};
pub use graph::{gen_random, parse_graph, write_graph, Edge, GenParams, Graph};
pub use matrix::{BoolMatrix, WeightMatrix, INF};
pub use rng::Rng;
pub use threshold_neg::threshold_apsp_neg;
pub use threshold_pos::threshold_apsp_pos;
