//! Random-party entanglement distillation over a lossy star network.
//!
//! A central source distributes an `N`-qubit resource (W, GHZ or a
//! two-centered GHZ graph state) over i.i.d. erasure links; the parties then
//! run single-parameter local measurement rounds to concentrate bipartite
//! entanglement on some surviving pair. The crate computes the resulting
//! loss-averaged concurrence, the benchmarks it is compared against, the
//! loss thresholds where W states win, and Monte Carlo cross-checks.

pub mod analysis;
pub mod cli;
pub mod dense;
pub mod error;
pub mod format;
pub mod locc;
pub mod lossy;
pub mod oracle;
pub mod qcore;
pub mod resources;

pub use error::{Error, Result};
pub use nalgebra;
