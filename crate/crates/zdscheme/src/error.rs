//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised while building groups, schemes and codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A group spec failed validation; `path` is a JSON pointer.
    #[error("invalid group spec at {path}: {message}")]
    Spec { path: String, message: String },
    /// A spec document is not well-formed JSON.
    #[error("malformed spec JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    /// The group is larger than the configured enumeration cap.
    #[error("group order {order} exceeds the element cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    /// A custom chain is not nested.
    #[error("chain level {level} is not contained in level {parent}")]
    NotNested { level: usize, parent: usize },
    /// A chain inclusion is not strict.
    #[error("chain levels {upper} and {lower} coincide")]
    NotStrict { upper: usize, lower: usize },
    /// `τ_−(0)` or `τ_+(r̄)` was requested.
    #[error("boundary radius {radius}: no {direction} neighbour")]
    BoundaryRadius {
        radius: usize,
        direction: &'static str,
    },
    /// A radius label outside `0..=d`.
    #[error("radius {radius} outside 0..={max}")]
    RadiusOutOfRange { radius: usize, max: usize },
    /// A block or basis label that does not exist.
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    /// Element residues of the wrong shape.
    #[error("element has {got} residues, group has {expected} factors")]
    ElementShape { got: usize, expected: usize },
    /// A set expected to be a subgroup is not closed.
    #[error("the given set is not a subgroup")]
    NotSubgroup,
    /// The zero function has no support.
    #[error("the zero function has empty support")]
    ZeroFunction,
    /// An empty subset was supplied where a nonempty one is required.
    #[error("empty subset")]
    EmptySubset,
    /// Witness counts disagree across pairs of the same class.
    #[error("not an association scheme: class {class} has non-constant counts")]
    NotAScheme { class: usize },
    /// A transform is not constant on a dual block.
    #[error("not constant on dual block {0}")]
    NotConstantOnDualBlock(String),
    /// A convolution left the algebra spanned by the basis.
    #[error("not in algebra: {0}")]
    NotInAlgebra(String),
    /// An operation needs a compact (non-windowed) chain.
    #[error("operation requires {0}")]
    Unsupported(&'static str),
    /// A distribution that no subgroup can have.
    #[error("inconsistent weight distribution: {0}")]
    InconsistentDistribution(String),
    /// Vectors of mismatched length.
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
