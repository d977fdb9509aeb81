//! Spectral bounds for Laplacians of complex unit gain graphs.
//!
//! A gain graph assigns a unit complex number to every oriented edge (the
//! reverse orientation carries the conjugate). This crate builds the gain
//! adjacency and Laplacian matrices, solves their spectra, computes exact
//! frustration index and frustration number, and evaluates a catalogue of
//! closed-form upper and lower bounds for the smallest and largest Laplacian
//! eigenvalues, assembled into comparison tables by [`report`].

pub mod bounds_max;
pub mod bounds_min;
pub mod coloring;
pub mod eig;
pub mod error;
pub mod frustration;
pub mod gen;
pub mod ggf;
pub mod graph;
pub mod matrix;
pub mod report;

pub use error::{GainError, Result};
pub use graph::{Balance, Edge, GainGraph, GainStats, SwitchingFunction, NEUTRAL_TOL};
pub use matrix::HermitianMatrix;
pub use num_complex::Complex64;
