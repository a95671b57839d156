//! Topological Furstenberg systems at desk scale.
//!
//! Finite-group symbolic systems, windowed sequence analysis over ℤ, exact
//! rotation codings over real quadratic fields, sliding-block codes and
//! recurrence checks. Everything here is pure and allocation-only; file
//! formats and the command line live in the `furstenberg-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod codes;
pub mod recurrence;
pub mod rotation;
pub mod systems;
pub mod zshift;

/// Symbols of finite alphabets.
pub type Symbol = u32;
