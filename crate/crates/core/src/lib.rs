//! Laplacian spectra of the quotients of the non-hyperbolic triangle groups.
//!
//! Each multiplicity is available by at least two independent routes:
//!
//! * spherical groups: closed form, character sum over an angle census,
//!   explicit SO(3) matrices, and the numerical rank of the averaging
//!   projection on sampled spherical harmonics;
//! * euclidean groups: divisor-function formulas, brute-force lattice
//!   counts, and orbit counting under the dual rotation action.
//!
//! The [`verify`] module bundles the cross-checks into suites, and [`cli`]
//! exposes everything on the command line.

pub mod cli;
pub mod eigenlab;
pub mod error;
pub mod euclidean;
pub mod numtheory;
pub mod signature;
pub mod spherical;
pub mod verify;

pub use error::{Error, Result};
pub use signature::{classify, group_order, GeometryClass, SpectrumEntry, TriangleSignature};
