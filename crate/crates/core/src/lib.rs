//! Transverse correlations of the XX spin chain, computed two independent ways.
//!
//! The crate evaluates the equal-time correlator `<s^+_x s^-_0>` of the
//! isotropic XX chain at zero field both through its field-theory formfactor
//! expansion (Cauchy-determinant matrix elements dressed with Barnes-G
//! prefactors) and through the exact free-fermion determinant representation,
//! whose large-distance expansion is carried out in exact rational
//! arithmetic.  Comparing the two series term by term shows that they agree
//! only through the first two orders.
//!
//! Modules:
//! - [`numerics`]: special functions, exact rational formal power series,
//!   quadrature and sequence acceleration.
//! - [`xxchain`]: finite-chain eigenstates, the exact formfactor product
//!   formula, exact-diagonalization and determinant oracles.
//! - [`luttinger`]: field-theory formfactors, resummation identities,
//!   prefactor constants and the asymptotic prediction they assemble into.
//! - [`toeplitz`]: the exact determinant route and its full asymptotic
//!   series with rational coefficients.
//!
//! The crate is `no_std` (with `alloc`); all file and terminal handling
//! lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod luttinger;
pub mod numerics;
pub mod toeplitz;
pub mod xxchain;

pub use num_complex::Complex64;
pub use num_rational::BigRational;
