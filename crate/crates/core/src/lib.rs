//! Affine weights, level-k alcoves, cubic Dirac operators and the
//! quantization index of conjugacy classes in loop groups.

pub mod affine;
pub mod cli;
pub mod dirac;
pub mod error;
pub mod exact;
pub mod rational;
pub mod report;
pub mod repthy;
pub mod rootsys;
pub mod spinor;

pub use error::{Error, Result};
pub use rational::Q;
