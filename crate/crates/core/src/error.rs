//! Crate-wide error type.

use crate::NodeId;

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An input left the unit interval (or was NaN).
    #[error("{what} = {value} is outside [0, 1]")]
    Domain { what: &'static str, value: f64 },

    /// Membership function breakpoints violate `0 <= a <= b <= c <= d <= 1`.
    #[error("invalid membership breakpoints ({0}, {1}, {2}, {3})")]
    Breakpoints(f64, f64, f64, f64),

    /// A fuzzy partition failed a structural check (coverage, label order).
    #[error("invalid fuzzy partition: {0}")]
    Partition(String),

    /// Rule base construction failed (duplicate or missing antecedents).
    #[error("invalid rule base: {0}")]
    RuleBase(String),

    /// Output curve resolution below the supported minimum.
    #[error("output resolution {0} is below the minimum of {min}", min = crate::fuzzy::MIN_RESOLUTION)]
    Resolution(usize),

    /// The aggregated output curve has zero area; no crisp value exists.
    #[error("no rule fired: aggregated output has zero area")]
    NoRuleFired,

    /// A node tried to rate itself.
    #[error("node {0} may not rate itself")]
    SelfRating(NodeId),

    /// No feedback is recorded for the node (callers usually fall back to a
    /// neutral trust value).
    #[error("no feedback recorded for node {0}")]
    UnknownNode(NodeId),

    /// An operation that needs at least one element got none.
    #[error("empty input: {0}")]
    Empty(&'static str),

    /// A virtual organization has no members.
    #[error("virtual organization has no members")]
    EmptyVo,

    /// A concept id is not part of the taxonomy.
    #[error("unknown concept `{0}`")]
    UnknownConcept(String),

    /// Parent links in the taxonomy contain a cycle.
    #[error("taxonomy is not a forest: cycle through `{0}`")]
    TaxonomyCycle(String),

    /// Ring construction or lookup argument error.
    #[error("invalid ring: {0}")]
    Ring(String),

    /// Lookup key outside the identifier space `[0, 2^m)`.
    #[error("key {0} is outside the identifier space")]
    KeyOutOfRange(u64),

    /// Lookup started at an id that is not part of the ring.
    #[error("node {0} is not a member of the ring")]
    NotInRing(u64),

    /// Scenario or engine configuration failed validation.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Every entry fell below the epsilon cutoff of the RMS denominator.
    #[error("all entries excluded from the RMS error (computed values below epsilon)")]
    RmsAllExcluded,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
