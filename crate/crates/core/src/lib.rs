//! Quaternion-valued neural networks trained with GHR-calculus gradients.
//!
//! The crate provides quaternion arithmetic ([`quat`]), the split tanh
//! activation ([`activation`]), a single-layer nonlinear filter ([`slp`]) and a
//! one-hidden-layer MLP ([`mlp`]) whose analytic gradients drive two online
//! training rules ([`training`]): mean-square error and maximum correntropy.
//! [`timeseries`] generates Mackey–Glass prediction data with optional
//! Gaussian or impulsive target noise, [`gradcheck`] verifies the gradients
//! against finite differences, and [`harness`] runs paired MSE/MCC experiments
//! and writes CSV learning curves.

pub mod activation;
pub mod error;
pub mod gradcheck;
pub mod harness;
pub mod mlp;
pub mod par;
pub mod quat;
pub mod slp;
pub mod timeseries;
pub mod training;

pub use error::{Error, Result};
pub use mlp::{mlp_forward, mlp_gradients, ForwardTrace, MlpGradients, MlpParams};
pub use par::Execution;
pub use quat::{Axis, QMatrix, QVector, Quaternion};
pub use training::{Rule, StepReport, TrainConfig};
