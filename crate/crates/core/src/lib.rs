//! Pick-matrix inertia, finite singular values and classification of
//! pseudomultipliers of reproducing-kernel Hilbert spaces.

pub mod error;
pub mod kernelzoo;
pub mod spectral;

pub use error::{Error, Result};
pub mod pick;
pub mod finite;
pub mod classify;
pub mod report;
pub mod cases;
pub mod cli;
