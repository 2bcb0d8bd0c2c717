//! Special functions, exact rational series algebra and generic numeric
//! helpers shared by every other module.

mod accel;
mod bernoulli;
mod constants;
mod gamma;
mod quadrature;
mod series;

pub use accel::wynn_epsilon;
pub use bernoulli::{bernoulli, bernoulli_all};
pub use constants::{Constants, A_PREFACTOR, BARNES_G_HALF, C0, C0_OVER_2_SQRT_PI, C0_OVER_SQRT_PI, LN_A, ZETA_PRIME_MINUS_1};
pub use gamma::{barnes_g_half_integer, factorial, gamma_signed, ln_barnes_g_half_integer, ln_gamma, pochhammer, pochhammer_rational, sin_pi};
pub use quadrature::{contour_coefficient, simpson_complex, tanh_sinh_circle, EndpointSide};
pub use series::{rational, rational_pow, FormalSeries};

use core::fmt;

/// Error type for every operation in this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumericsError {
    /// Argument outside the mathematical domain of the operation.
    Domain(&'static str),
    /// Gamma function evaluated at a non-positive integer.
    Pole,
    /// Series operands carry different variable tags.
    VariableMismatch,
    /// A series argument has a forbidden constant term.
    ConstantTerm(&'static str),
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::Domain(what) => write!(f, "domain error: {what}"),
            NumericsError::Pole => write!(f, "gamma pole at a non-positive integer"),
            NumericsError::VariableMismatch => write!(f, "formal series variable tags differ"),
            NumericsError::ConstantTerm(what) => write!(f, "constant term error: {what}"),
        }
    }
}
