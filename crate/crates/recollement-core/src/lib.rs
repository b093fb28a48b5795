//! Exact computational homological algebra over prime fields.
//!
//! The crate builds finite-dimensional basic algebras from bound quiver
//! presentations, realizes their module categories as explicit matrix data,
//! and implements the six functors of the idempotent recollement
//! `(mod Λ/ΛeΛ, mod Λ, mod eΛe)` together with the exact-sequence
//! constructions that transport Igusa-Todorov witness data between the three
//! categories.  Everything is computed exactly over `F_p`; every exact
//! sequence returned by a construction is rank-verified before it is handed
//! to the caller.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `recollement-cli` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod field;
pub mod mat;
pub mod poly;
pub mod rng;

pub mod algebra;
pub mod modcat;
pub mod syzygylab;
pub mod recollement;
pub mod itcert;

pub use error::{Error, Result};
pub use field::Field;
pub use mat::Mat;
