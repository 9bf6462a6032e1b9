//! Graph pruning for budget-constrained combinatorial optimisation.
//!
//! The pipeline learns a discriminative subgraph embedding from
//! heuristic-labelled samples, trains a Q-network to navigate the space of
//! fixed-size subgraphs towards the high-quality region, and hands the
//! extracted subgraph to a classical solver. Everything runs in double
//! precision on the CPU; data-parallel inner loops (Monte Carlo cascades,
//! reverse-reachable sets, episodes, batch gradients) go through
//! [`exec::ExecMode`] and are bit-identical under sequential and parallel
//! execution.

pub mod error;
pub mod exec;
pub mod graph;
pub mod heuristics;
pub mod nn;
pub mod problems;
pub mod synth;

pub use error::{Error, Result};
