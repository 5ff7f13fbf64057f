//! Entanglement-assisted quantum block and convolutional codes over exact arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod block_ea;
pub mod circuits;
pub mod conv_core;
pub mod distill;
pub mod error;
pub mod grandfather;
pub mod pauli;
pub mod ratio;
pub mod sim;

pub use error::{Error, Result};
