//! Cluster-algebraic realisation of level-restricted T- and Y-systems of
//! types `C_r`, `F_4` and `G_2`, with the machinery needed to check their
//! periodicity, tropical sign structure, root-orbit descriptions,
//! dilogarithm identities and quiver mutation equivalences.
//!
//! The crate is `no_std` (it needs `alloc`); floating point functions come
//! from `libm`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod builders;
pub mod dilog;
pub mod dynkin;
pub mod mutclass;
pub mod error;
pub mod numeric;
pub mod quiver;
pub mod roots;
pub mod schedule;
pub mod tropical;

pub use error::Error;
