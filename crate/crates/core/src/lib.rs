//! Exact computations with R-matrix presented quantized enveloping algebras
//! over truncated formal power series in ħ.

#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod classical;
pub mod cli;
pub mod hseries;
pub mod linalg;
pub mod ncalg;
pub mod qmatrix;
pub mod report;
pub mod suites;
pub mod urgcore;
