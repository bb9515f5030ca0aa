//! Exact computations for the Fredkin spin chain and its colored SU(k)
//! generalization.
//!
//! The crate is organized bottom-up:
//!
//! - [`combinatorics`]: Dyck words, Fredkin moves, class counting.
//! - [`model`]: Hamiltonians as sparse or matrix-free [`Operator`]s.
//! - [`solver`]: dense and Lanczos eigensolvers, kernels, gaps.
//! - [`states`]: the exact ground states, their MPS form, the one-magnon sector.
//! - [`entanglement`]: Schmidt spectra and entanglement entropies.
//! - [`orbits`]: orbit partitions of the move graph and the orbit-count check.
//!
//! Data-parallel loops go through [`exec`]; build without the default
//! `parallel` feature to get the sequential fallback everywhere.

pub mod caps;
pub mod combinatorics;
pub mod dump;
pub mod entanglement;
pub mod error;
pub mod exec;
pub mod model;
pub mod orbits;
pub mod solver;
pub mod states;

pub use caps::Caps;
pub use error::{Error, Result};
pub use exec::Execution;
pub use model::Operator;
pub use solver::StateVector;
