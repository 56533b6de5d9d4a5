//! Analysis over the double numbers: the two-dimensional real algebra with
//! basis {1, j} and j^2 = +1.
//!
//! Unlike the complex plane, the double plane carries an indefinite quadratic
//! form t^2 - x^2. The lines t = ±x are the null cone: its points are zero
//! divisors, and every notion that divides by a modulus (polar form, inverse,
//! conformal factor) degenerates there. The crate keeps that degeneracy
//! explicit through [`Error`] instead of papering over it with NaNs.
//!
//! The crate is `no_std`-compatible: disable default features and enable
//! `libm` to get the scalar math from [libm] instead of std.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("enable at least one of the `std` or `libm` features");

extern crate alloc;

mod math;

pub mod algebra;
pub mod contour;
pub mod elementary;
pub mod error;
pub mod expr;
pub mod grid;
pub mod holomorphy;
pub mod wave;

pub use algebra::{DoubleNumber, Polar, Region};
pub use error::{Error, Result};
