//! Exact computation of Goldie ranks for primitive quotients of torus
//! subquotients `B^chi` of localized extended Weyl algebras.
//!
//! The whole pipeline works over arbitrary-precision rationals; there is no
//! floating point anywhere. The main entry points are:
//!
//! - [`analysis::analyze`]: runs the full chain
//!   constraint system -> index partition -> sign configuration ->
//!   spanning assumption -> projected polytope -> lattice points,
//!   producing the region-closure data and the Goldie rank
//!   (= number of connected components of the closed region).
//! - [`analysis::goldie_family`]: fits the Ehrhart quasi-polynomial that
//!   computes the ranks of the whole dilation family `x -> B^{x chi}/J(x alpha)`.
//! - [`oracle::oracle_component_count`]: a brute-force component counter that
//!   never uses the partition machinery, for independent cross-checking.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `goldie-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod arrangement;
pub mod closure;
pub mod ehrhart;
pub mod error;
pub mod instances;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod polytope;
pub mod rat;
pub mod simplex;
pub mod weyl;

pub use error::Error;
pub use rat::Rat;
