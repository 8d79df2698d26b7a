//! Nonatomic neighbourhood balancing games.
//!
//! A continuum of players of total mass `r` spreads over the `n` vertices of a
//! (possibly directed, weighted) graph. The cost paid on vertex `i` depends on
//! the mass sitting on `i` and on its in-neighbours. This crate builds such
//! games, verifies and computes equilibria (plain and δ-strong), evaluates
//! potentials and social costs, computes prices of anarchy and stability, and
//! carries the closed-form equilibria of α-uniform games on paths, cycles,
//! complete bipartite graphs and stars.
//!
//! Everything here is generic over [`Scalar`]: exact rationals, the quadratic
//! field `Q(√5)`, or `f64`. Iterative routines (descent, dynamics) work on
//! `f64` copies of a game.
//!
//! The crate is `no_std` and only needs `alloc`. Vertices are 0-indexed in the
//! API; file formats and command-line tools built on top of it use 1-indexed
//! vertices.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod closed_forms;
pub mod equilibrium;
pub mod error;
pub mod family;
pub mod game;
pub mod graph;
pub mod instances;
pub mod kernel;
pub mod linalg;
pub mod metrics;
pub mod optimize;
pub mod potential;
pub mod scalar;
pub mod supports;

pub use error::NbgError;
pub use game::{
    AffineCosts, Classification, CostEvaluator, Game, GameClass, GameKind, InfluenceMatrix,
    MassDistribution, VertexCostFn,
};
pub use scalar::{QSqrt5, Rational, Scalar};

pub type Result<T> = core::result::Result<T, NbgError>;
