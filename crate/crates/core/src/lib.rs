//! Fuzzy reputation-based trust management for semantic P2P grids.
//!
//! The crate bundles the building blocks of a super-peer trust overlay and a
//! deterministic simulator around them:
//!
//! - [`fuzzy`] — a three-term Mamdani inference engine (fuzzification,
//!   min rule firing, clipped-max aggregation, centroid defuzzification)
//!   that turns three feedback scores into one crisp trust value in `[0, 1]`.
//! - [`semantic`] — concept-set similarity (Tversky ratio model) and greedy
//!   clustering of nodes into virtual organizations, each with a
//!   deterministic coordinator.
//! - [`trust`] — the trust agent hosted at a VO coordinator: an append-only
//!   feedback ledger, order-statistics reduction of arbitrarily many scores
//!   to the engine's three inputs, threshold classification, the weighted-sum
//!   reputation baseline, and transitive (web-of-trust) propagation.
//! - [`chord`] — an in-memory Chord ring used purely for message-cost
//!   accounting of reputation lookups (O(log N) routing vs. the O(1)
//!   coordinator round trip).
//! - [`sim`] — seeded scenario execution with honest/lying populations,
//!   greedy provider selection, RMS aggregation error, detection metrics,
//!   and the canned experiments exposed by the CLI.
//!
//! Everything is plain value types and pure functions; a scenario seeded with
//! the same [`sim::ScenarioConfig`] reproduces byte-identical outputs
//! regardless of host or thread count.

pub mod chord;
pub mod error;
pub mod fuzzy;
pub mod semantic;
pub mod sim;
pub mod trust;

pub use error::{Error, Result};

/// Node identifier used across the overlay, the ledger, and the simulator.
pub type NodeId = u64;
