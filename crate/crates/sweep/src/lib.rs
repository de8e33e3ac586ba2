//! Parameter sweeps over quarton coupler circuits.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod emit;
pub mod run;

pub use config::SweepConfig;
pub use run::{find_zero_crossing, run_sweep, Table, ZeroCrossing};

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("config: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}

impl SweepError {
    /// Process exit status: 1 for config and I/O problems, 2 for numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Numerical(_) => 2,
            _ => 1,
        }
    }
}
