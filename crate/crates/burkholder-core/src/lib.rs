//! Planar matrix algebra in conformal coordinates, Burkholder-type energy
//! functionals, convexity diagnostics, radial quadrature, and a penalized
//! quasiconvexity minimizer.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm` feature
//! to build without `std`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("enable at least one of the `std` or `libm` features");

pub mod functional;
pub mod inequality;
pub mod mat2;
pub mod mesh;
pub mod minimize;
pub mod minors;
pub mod quad;
pub mod radial;
pub mod rank_one;
pub mod sample;
pub mod scalar;
pub mod split;
pub mod sum;

pub use functional::{critical_exponent, gamma_p, Functional, PExponent, ScalarFn};
pub use mat2::{LogSv, Mat2};
pub use scalar::ExtScalar;

/// Complex scalar used throughout: `num_complex::Complex<f64>`.
pub type C64 = num_complex::Complex<f64>;
