use thiserror::Error;

/// Errors raised by the circuit model and its analyses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("node {node} is out of range for a circuit with {num_nodes} nodes")]
    NodeOutOfRange { node: usize, num_nodes: usize },

    #[error("element {index} connects node {node} to itself")]
    SelfLoop { index: usize, node: usize },

    #[error("circuit is not connected: node {node} is unreachable from ground")]
    Disconnected { node: usize },

    #[error("node {node} has no capacitive path to ground; capacitance matrix is singular")]
    FloatingNode { node: usize },

    #[error("{which} matrix is not symmetric (entry ({row}, {col}))")]
    NotSymmetric {
        which: &'static str,
        row: usize,
        col: usize,
    },

    #[error("matrix dimensions differ: {0}")]
    DimensionMismatch(String),

    #[error("capacitance matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("mode {mode} is unstable: ω² = {omega_squared:e} (imaginary frequency)")]
    Unstable { mode: usize, omega_squared: f64 },

    #[error("modal solution does not belong to this circuit")]
    MismatchedSolution,

    #[error("unsupported flux bias {0} Φ₀ (only 0 and 0.5 are supported)")]
    UnsupportedFluxBias(f64),

    #[error("circuit topology is not a quarton ring modulator: {0}")]
    NotRingModulator(String),

    #[error("invalid coupler specification: {0}")]
    InvalidCoupler(String),

    #[error("netlist: {0}")]
    Netlist(String),
}

pub type Result<T> = std::result::Result<T, Error>;
