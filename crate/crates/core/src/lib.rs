//! Finite group and character machinery for deciding when two finite covers
//! of a space are equivalent, together with the discrete spectral bench
//! (twisted Laplacians on voltage-graph covers) that certifies the spectral
//! side exactly.
//!
//! Everything here is exact and runs without `std`; floating-point spectra,
//! file formats and the command line live in the `sunada` crate.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod catalog;
pub mod character;
pub mod cyclo;
pub mod error;
pub mod gassmann;
pub mod graph;
pub mod group;
pub mod homwide;
pub mod linalg;
pub mod monomial;
pub mod perm;
pub mod wreath;

/// Big-number types used in the public API.
pub mod num {
    pub use num_bigint::{BigInt, BigUint};
    pub use num_rational::BigRational;
}

pub use abelian::Abelianization;
pub use character::{ClassFunction, LinearCharacter};
pub use cyclo::{Cyclotomic, CyclotomicField};
pub use error::{Error, Result};
pub use group::{CosetTable, DoubleCoset, FiniteGroup, Subgroup};
pub use perm::Permutation;
