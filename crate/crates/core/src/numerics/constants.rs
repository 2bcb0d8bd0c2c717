//! Frozen high-precision constants.
//!
//! Values are stored to 30 significant digits (more than f64 resolves) and
//! are guarded by the cross-identities tested in this crate:
//! `A = 2^(1/12) exp(3 zeta'(-1))`, `A^2 = pi G(1/2)^4 * C0-normalization`,
//! and `C0/sqrt(pi) = A^2/sqrt(2)`.

/// zeta'(-1), derivative of the Riemann zeta function at -1.
pub const ZETA_PRIME_MINUS_1: f64 = -0.165421143700450929213919660243;

/// ln A where A = 2^(1/12) exp(3 zeta'(-1)) is the leading amplitude of the
/// determinant asymptotics.
pub const LN_A: f64 = -0.438501166054690678523656303942;

/// A itself, approximately 0.6450024.
pub const A_PREFACTOR: f64 = 0.645002448509577084658961007722;

/// Barnes G at 1/2.
pub const BARNES_G_HALF: f64 = 0.603244281209446206191429224535;

/// C0, the squared-formfactor prefactor at m = 0.
pub const C0: f64 = 0.521413972673846983111941021126;

/// C0 / (2 sqrt(pi)), the leading coefficient of the correlator itself.
pub const C0_OVER_2_SQRT_PI: f64 = 0.147088166049419453021203916540;

/// C0 / sqrt(pi) = A^2 / sqrt(2).
pub const C0_OVER_SQRT_PI: f64 = 0.294176332098838906042407833079;

/// Bundle of the stored constants, convenient for passing around and for
/// serialization by the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub ln_a: f64,
    pub zeta_prime_minus_1: f64,
    pub barnes_g_half: f64,
    pub c0: f64,
}

impl Constants {
    pub const REFERENCE: Constants = Constants {
        ln_a: LN_A,
        zeta_prime_minus_1: ZETA_PRIME_MINUS_1,
        barnes_g_half: BARNES_G_HALF,
        c0: C0,
    };

    /// A = exp(ln A).
    pub fn a(&self) -> f64 {
        libm::exp(self.ln_a)
    }
}
