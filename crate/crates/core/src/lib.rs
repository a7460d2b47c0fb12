//! Exact spectra of compact symmetric spaces, their Satake and painted
//! Dynkin diagrams, and the explicit polynomial eigenfunction families that
//! realize the eigenspaces.
//!
//! Modules, roughly bottom-up:
//!
//! - [`rootsys`]: root systems, weights, Weyl dimension formula.
//! - [`diagrams`]: Satake and painted Dynkin diagrams, second Betti numbers.
//! - [`catalog`]: descriptors of the supported symmetric spaces.
//! - [`spectrum`]: energy levels, eigenvalues, multiplicities, SU(3)/SO(3).
//! - [`polyalg`]: sparse polynomials over the Gaussian rationals.
//! - [`eigenfun`]: section and eigenfunction families and their checks.
//! - [`liediff`]: Lie derivatives and the Casimir operator on SU(n).
//! - [`reduction`]: chart maps between reduced phase spaces.

pub mod error;
pub mod liediff;
pub mod catalog;
pub mod diagrams;
pub mod eigenfun;
pub mod rootsys;
pub mod polyalg;
pub mod reduction;
pub mod spectrum;

pub use error::{Error, Result};
