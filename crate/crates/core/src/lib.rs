//! Taylor-expanded potentials, linear circuit modes and quartic couplings
//! for superconducting circuits with quarton-style couplers.
//!
//! The numerical core is generic over [`scalar::Real`] (`f64`, `f32`).
//! Potential algebra and polynomial expansion only need [`scalar::Scalar`]
//! and also run on exact rationals.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod constants;
pub mod couplers;
pub mod error;
pub mod kerr;
pub mod modes;
pub mod netlist;
pub mod oracle;
pub mod poly;
pub mod potentials;
pub mod scalar;

pub use error::{Error, Result};

pub type Potential = potentials::TaylorPotential<f64>;
pub type Potential32 = potentials::TaylorPotential<f32>;
pub type ExactPotential = potentials::TaylorPotential<num_rational::Rational64>;
pub type ExactPolynomial = poly::Polynomial<num_rational::Rational64>;
pub type Circuit = circuit::CircuitGraph<f64>;
pub type Circuit32 = circuit::CircuitGraph<f32>;
pub type Modes = modes::ModalSolution<f64>;
pub type Tensor = kerr::QuarticTensor<f64>;
pub type Kerr = kerr::KerrReport<f64>;
pub type Coupler = couplers::CouplerSpec<f64>;
pub type Oracle = oracle::OracleInputs<f64>;
