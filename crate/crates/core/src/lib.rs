//! Simulation of sharing behavior driven by the friendship paradox.
//!
//! Nodes of a friendship network share content at some rate and compare the
//! feedback they get per post with the feedback their sharing friends get.
//! Because friends tend to have more friends, that comparison is usually
//! unfavorable; a disparity response function turns it into a new sharing
//! rate each step.
//!
//! - [`graph`]: immutable graphs, random generators, the Florentine families network
//! - [`paradox`]: local paradox, sharing bias, weighted local paradox, feedback disparity
//! - [`drf`]: the disparity response function families
//! - [`engine`]: the synchronous update loop
//! - [`analysis`]: step metrics, terminal statistics, sweeps and the replication suite

pub mod analysis;
pub mod drf;
pub mod engine;
pub mod graph;
pub mod numeric;
pub mod paradox;
pub mod rng;

pub use drf::DisparityResponse;
pub use engine::{run, SimConfig, SimState, Trajectory};
pub use graph::{Graph, GraphSpec, NetworkFamily, NodeId};
