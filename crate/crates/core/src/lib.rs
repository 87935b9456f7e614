//! Følner-type quantities on `Z^d`: boundary calculus, quasi-tilings,
//! multi-scale covers, widths of finite-dimensional balls, spectral
//! counting functions of band-limited subspaces and the
//! limits of subadditive set functions along Følner sequences.

pub mod eigen;
pub mod cli;
pub mod error;
pub mod l1;
pub mod lattice;
pub mod ow_limit;
pub mod spectral;
pub mod tiling;
pub mod widths;

pub use error::{Error, Result};
pub use lattice::{FiniteSubset, FolnerFamily, FolnerSpec, LatticePoint, Rational};
