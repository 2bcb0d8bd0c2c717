//! Luttinger-liquid side of the correlator: Gamma-function factors for
//! particle-hole excitations, Cauchy-determinant formfactor combinations,
//! Barnes-G prefactors, the normalized expansion coefficients, the
//! truncated asymptotic prediction, and the resummation identities that
//! close the particle-hole sums.

mod quad;
mod sum;

pub use quad::{
    f_minus_left_quadrature, f_minus_right_quadrature, f_plus_left_quadrature,
    f_plus_right_quadrature,
};
pub use sum::{
    level_aggregate_exact, level_configs, sum_identity_accelerated, sum_identity_closed,
    sum_identity_partial, taylor_coefficient_exact,
};

use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::numerics::{
    ln_barnes_g_half_integer, ln_gamma, pochhammer, pochhammer_rational, Constants,
};
use crate::xxchain::{shifted_ground_formfactor, ChainSpec, XxChainError};

/// Errors from Luttinger-side evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum LuttingerError {
    /// A Gamma-factor parameter sits on a pole of the defining ratio.
    Pole(&'static str),
    /// Excitation configuration violates the branch sign conventions.
    InvalidConfig(&'static str),
    /// Out-of-domain argument.
    Domain(&'static str),
    /// Propagated chain error.
    Chain(XxChainError),
}

impl fmt::Display for LuttingerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LuttingerError::Pole(what) => write!(f, "gamma-factor pole: {what}"),
            LuttingerError::InvalidConfig(what) => write!(f, "invalid excitation config: {what}"),
            LuttingerError::Domain(what) => write!(f, "domain error: {what}"),
            LuttingerError::Chain(e) => write!(f, "chain error: {e}"),
        }
    }
}

impl From<XxChainError> for LuttingerError {
    fn from(e: XxChainError) -> Self {
        LuttingerError::Chain(e)
    }
}

/// The two Fermi-point branches of particle-hole excitations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Right Fermi point: particle offsets positive, hole offsets <= 0.
    Right,
    /// Left Fermi point: particle offsets negative, hole offsets >= 0.
    Left,
}

/// Luttinger-liquid parameters.  Only xi = 1 (the XX point) is validated;
/// other values are plumbed through as untested predictions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuttingerParams {
    pub xi: f64,
    pub fermi_momentum: f64,
}

impl Default for LuttingerParams {
    fn default() -> Self {
        LuttingerParams { xi: 1.0, fermi_momentum: core::f64::consts::FRAC_PI_2 }
    }
}

impl LuttingerParams {
    pub fn new(xi: f64) -> Result<Self, LuttingerError> {
        if !(xi > 0.0) {
            return Err(LuttingerError::Domain("xi must be positive"));
        }
        Ok(LuttingerParams { xi, ..Self::default() })
    }

    /// Right-branch exponent parameter: a = -sqrt(xi)/2 + m/sqrt(xi).
    pub fn a_param(&self, m: u32) -> f64 {
        let s = libm::sqrt(self.xi);
        -s / 2.0 + m as f64 / s
    }

    /// Left-branch exponent parameter: c = sqrt(xi)/2 + m/sqrt(xi).
    pub fn c_param(&self, m: u32) -> f64 {
        let s = libm::sqrt(self.xi);
        s / 2.0 + m as f64 / s
    }
}

fn is_integer(x: f64) -> bool {
    x == libm::floor(x)
}

fn int_factorial(n: i64) -> f64 {
    let mut acc = 1.0f64;
    for j in 2..=n {
        acc *= j as f64;
    }
    acc
}

/// Right-branch particle factor f+(p) = Gamma(p+a) / (Gamma(p) Gamma(a))
/// for integer p >= 1, evaluated as poch(a, p) / (p-1)!.
pub fn f_plus_right(p: i64, a: f64) -> Result<f64, LuttingerError> {
    if p < 1 {
        return Err(LuttingerError::Domain("right-branch particle offset must be >= 1"));
    }
    if a <= 0.0 && is_integer(a) {
        return Err(LuttingerError::Pole("Gamma(a) pole at non-positive integer a"));
    }
    Ok(pochhammer(a, p as u32) / int_factorial(p - 1))
}

/// Right-branch hole factor f-(q) = Gamma(1-q-a) / (Gamma(1-q) Gamma(1-a))
/// for integer q <= 0, evaluated as poch(1-a, h) / h! with h = -q.
pub fn f_minus_right(q: i64, a: f64) -> Result<f64, LuttingerError> {
    if q > 0 {
        return Err(LuttingerError::Domain("right-branch hole offset must be <= 0"));
    }
    if q == 0 {
        return Ok(1.0);
    }
    if a >= 1.0 && is_integer(a) {
        return Err(LuttingerError::Pole("Gamma(1-a) pole at integer a >= 1"));
    }
    let h = -q;
    Ok(pochhammer(1.0 - a, h as u32) / int_factorial(h))
}

/// Left-branch particle factor f+(p) = Gamma(-p-c) / (Gamma(-p) Gamma(1-c))
/// for integer p <= -1, evaluated as poch(1-c, -p-1) / (-p-1)!.
pub fn f_plus_left(p: i64, c: f64) -> Result<f64, LuttingerError> {
    if p > -1 {
        return Err(LuttingerError::Domain("left-branch particle offset must be <= -1"));
    }
    let big_p = -p;
    if big_p == 1 {
        return Ok(1.0);
    }
    if c >= 1.0 && is_integer(c) {
        return Err(LuttingerError::Pole("Gamma(1-c) pole at integer c >= 1"));
    }
    Ok(pochhammer(1.0 - c, (big_p - 1) as u32) / int_factorial(big_p - 1))
}

/// Left-branch hole factor f-(q) = Gamma(1+q+c) / (Gamma(1+q) Gamma(c))
/// for integer q >= 0, evaluated as poch(c, q+1) / q!.
pub fn f_minus_left(q: i64, c: f64) -> Result<f64, LuttingerError> {
    if q < 0 {
        return Err(LuttingerError::Domain("left-branch hole offset must be >= 0"));
    }
    if c <= 0.0 && is_integer(c) {
        return Err(LuttingerError::Pole("Gamma(c) pole at non-positive integer c"));
    }
    Ok(pochhammer(c, (q + 1) as u32) / int_factorial(q))
}

/// Both left-branch factors for a (particle, hole) pair.
pub fn f_factors_left(p: i64, q: i64, c: f64) -> Result<(f64, f64), LuttingerError> {
    Ok((f_plus_left(p, c)?, f_minus_left(q, c)?))
}

/// Exact-rational right-branch factors for rational parameters.
pub fn f_plus_right_exact(p: i64, a: &BigRational) -> BigRational {
    let mut v = pochhammer_rational(a, p as u32);
    for j in 2..p {
        v /= BigRational::from_integer(BigInt::from(j));
    }
    v
}

pub fn f_minus_right_exact(q: i64, a: &BigRational) -> BigRational {
    let h = -q;
    let mut v = pochhammer_rational(&(BigRational::one() - a), h as u32);
    for j in 2..=h {
        v /= BigRational::from_integer(BigInt::from(j));
    }
    v
}

fn validate_branch(
    particles: &[i64],
    holes: &[i64],
    branch: Branch,
) -> Result<(), LuttingerError> {
    if particles.len() != holes.len() {
        return Err(LuttingerError::InvalidConfig("particle and hole counts differ"));
    }
    let distinct = |v: &[i64]| -> bool {
        v.iter().enumerate().all(|(i, x)| v[..i].iter().all(|y| y != x))
    };
    if !distinct(particles) || !distinct(holes) {
        return Err(LuttingerError::InvalidConfig("offsets within a branch must be distinct"));
    }
    let (p_ok, h_ok) = match branch {
        Branch::Right => (particles.iter().all(|&p| p >= 1), holes.iter().all(|&q| q <= 0)),
        Branch::Left => (particles.iter().all(|&p| p <= -1), holes.iter().all(|&q| q >= 0)),
    };
    if !p_ok || !h_ok {
        return Err(LuttingerError::InvalidConfig("offsets violate branch sign conventions"));
    }
    Ok(())
}

/// One-branch combination F = det(1/(p_i - q_j)) prod f+(p_i) prod f-(q_j),
/// with the determinant in Cauchy closed form
/// prod_{i<j}(p_i-p_j)(q_j-q_i) / prod_{i,j}(p_i-q_j).
/// Inputs are sorted ascending internally so the determinant sign is fixed.
pub fn cauchy_determinant_factor(
    particles: &[i64],
    holes: &[i64],
    branch: Branch,
    exponent_param: f64,
) -> Result<f64, LuttingerError> {
    validate_branch(particles, holes, branch)?;
    let mut ps: Vec<i64> = particles.to_vec();
    let mut qs: Vec<i64> = holes.to_vec();
    ps.sort_unstable();
    qs.sort_unstable();
    let n = ps.len();
    let mut det = 1.0f64;
    for i in 0..n {
        for j in i + 1..n {
            det *= ((ps[i] - ps[j]) * (qs[j] - qs[i])) as f64;
        }
    }
    for &p in &ps {
        for &q in &qs {
            det /= (p - q) as f64;
        }
    }
    let mut f = det;
    for &p in &ps {
        f *= match branch {
            Branch::Right => f_plus_right(p, exponent_param)?,
            Branch::Left => f_plus_left(p, exponent_param)?,
        };
    }
    for &q in &qs {
        f *= match branch {
            Branch::Right => f_minus_right(q, exponent_param)?,
            Branch::Left => f_minus_left(q, exponent_param)?,
        };
    }
    Ok(f)
}

/// Particle-hole excitation on top of the m-shifted configuration, in the
/// signed offset conventions: right pairs (p >= 1, q <= 0), left pairs
/// (p <= -1, q >= 0).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExcitationConfig {
    pub m: u32,
    pub right: Vec<(i64, i64)>,
    pub left: Vec<(i64, i64)>,
}

impl ExcitationConfig {
    pub fn shift_only(m: u32) -> Self {
        ExcitationConfig { m, right: Vec::new(), left: Vec::new() }
    }
}

/// Luttinger prediction for the excited-state formfactor given the lowest
/// formfactor psi_m: psi_m * F_a(right) * F_c(left) with a and c from the
/// shift index m.
pub fn ph_formfactor_prediction(
    psi_m: f64,
    config: &ExcitationConfig,
    params: &LuttingerParams,
) -> Result<f64, LuttingerError> {
    let a = params.a_param(config.m);
    let c = params.c_param(config.m);
    let (rp, rq): (Vec<i64>, Vec<i64>) = config.right.iter().copied().unzip();
    let (lp, lq): (Vec<i64>, Vec<i64>) = config.left.iter().copied().unzip();
    let f_right = cauchy_determinant_factor(&rp, &rq, Branch::Right, a)?;
    let f_left = cauchy_determinant_factor(&lp, &lq, Branch::Left, c)?;
    Ok(psi_m * f_right * f_left)
}

/// Asymptotic lowest formfactor ratio of Eq.-level Barnes-G form:
/// psi_m = psi_0 (pi/L)^(m^2) (G(m+1/2)/(sqrt(pi) G(1/2)))^2
///         Gamma(m+1/2) / pi^(m-1/2),
/// assembled in log space.
pub fn psi_m_asymptotic(psi_0: f64, m: u32, l: u64) -> f64 {
    if m == 0 {
        return psi_0;
    }
    psi_0 * libm::exp(ln_psi_ratio(m, l))
}

fn ln_psi_ratio(m: u32, l: u64) -> f64 {
    let ln_pi = libm::log(core::f64::consts::PI);
    let mf = m as f64;
    mf * mf * (ln_pi - libm::log(l as f64))
        + 2.0 * (ln_barnes_g_half_integer(m) - 0.5 * ln_pi - ln_barnes_g_half_integer(0))
        + ln_gamma(mf + 0.5).expect("positive argument")
        - (mf - 0.5) * ln_pi
}

/// Prefactor C_m of the asymptotic expansion:
/// C_0 = 2^(-1/2) pi^(3/2) G(1/2)^4, and for m > 0
/// C_m = (-1)^m 2^(-(2m^2-1/2)) pi^(2m^2-2m+1/2) G(m+1/2)^4 Gamma(m+1/2)^2.
pub fn prefactor_c(m: u32) -> f64 {
    let (sign, ln_mag) = prefactor_c_log(m);
    sign * libm::exp(ln_mag)
}

/// Sign and natural-log magnitude of C_m.  The magnitude grows roughly
/// like (pi/2)^(2m^2) and overflows f64 near m = 15, so large-m callers
/// work in this form.
pub fn prefactor_c_log(m: u32) -> (f64, f64) {
    let ln2 = libm::log(2.0);
    let ln_pi = libm::log(core::f64::consts::PI);
    if m == 0 {
        return (1.0, -0.5 * ln2 + 1.5 * ln_pi + 4.0 * ln_barnes_g_half_integer(0));
    }
    let mf = m as f64;
    let ln_mag = -(2.0 * mf * mf - 0.5) * ln2
        + (2.0 * mf * mf - 2.0 * mf + 0.5) * ln_pi
        + 4.0 * ln_barnes_g_half_integer(m)
        + 2.0 * ln_gamma(mf + 0.5).expect("positive argument");
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    (sign, ln_mag)
}

/// Normalized expansion coefficient
/// y_m = (-1)^m 2^(-(2m^2-1)) (G(m+1/2)/(sqrt(pi) G(1/2)))^4
///       Gamma(m+1/2)^2 / pi^(2m-1).
pub fn coefficient_y(m: u32) -> Result<f64, LuttingerError> {
    let (sign, ln_mag) = coefficient_y_log(m)?;
    Ok(sign * libm::exp(ln_mag))
}

/// Sign and natural-log magnitude of y_m, for the same overflow reason as
/// `prefactor_c_log`.
pub fn coefficient_y_log(m: u32) -> Result<(f64, f64), LuttingerError> {
    if m < 1 {
        return Err(LuttingerError::Domain("y_m defined for m >= 1"));
    }
    let ln_pi = libm::log(core::f64::consts::PI);
    let mf = m as f64;
    let ln_mag = -(2.0 * mf * mf - 1.0) * libm::log(2.0)
        + 4.0 * (ln_barnes_g_half_integer(m) - 0.5 * ln_pi - ln_barnes_g_half_integer(0))
        + 2.0 * ln_gamma(mf + 0.5).expect("positive argument")
        - (2.0 * mf - 1.0) * ln_pi;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok((sign, ln_mag))
}

fn big_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// Exact rational value of y_m.  The pi powers cancel against the
/// half-integer Barnes-G and Gamma values, leaving
/// y_m = (-1)^m 2^(1-2m^2) g_m^4 ((2m)! / (4^m m!))^2
/// with g_m = prod_{j<m} (2j)! / (4^j j!).
pub fn coefficient_y_exact(m: u32) -> Result<BigRational, LuttingerError> {
    if m < 1 {
        return Err(LuttingerError::Domain("y_m defined for m >= 1"));
    }
    let mut g = BigRational::one();
    for j in 0..m as u64 {
        let num = big_factorial(2 * j);
        let den = (BigInt::one() << (2 * j) as usize) * big_factorial(j);
        g *= BigRational::new(num, den);
    }
    let t = BigRational::new(
        big_factorial(2 * m as u64),
        (BigInt::one() << (2 * m) as usize) * big_factorial(m as u64),
    );
    let mut y = g.clone() * g.clone() * g.clone() * g * t.clone() * t;
    let e = 2 * m * m - 1;
    y /= BigRational::from_integer(BigInt::one() << e as usize);
    if m % 2 == 1 {
        y = -y;
    }
    Ok(y)
}

/// Truncated asymptotic prediction
/// G(x) = (c0/sqrt(pi)) [x^(-1/2) + sum_m y_m cos(pi m x) x^(-1/2-2m^2)],
/// with cos(pi m x) = (-1)^(m x) exact for integer x.
pub fn luttinger_prediction_g(x: u64, m_max: u32, c0: f64) -> Result<f64, LuttingerError> {
    if x == 0 {
        return Err(LuttingerError::Domain("separation must be positive"));
    }
    let lnx = libm::log(x as f64);
    let mut s = libm::exp(-0.5 * lnx);
    for m in 1..=m_max {
        let y = coefficient_y(m)?;
        let sign = if (m as u64 * x) % 2 == 0 { 1.0 } else { -1.0 };
        let power = -(0.5 + 2.0 * (m as f64) * (m as f64));
        s += y * sign * libm::exp(power * lnx);
    }
    Ok(c0 / libm::sqrt(core::f64::consts::PI) * s)
}

/// One oscillating term of the correlator expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionTerm {
    pub m: u32,
    /// C_m, sign included.
    pub prefactor: f64,
    /// y_m relative to the leading term (y_0 = 1 by convention).
    pub coefficient: f64,
    /// Power of 1/x multiplying cos(pi m x): xi/2 + 2m^2/xi.
    pub exponent: f64,
}

/// The truncated expansion with one entry per harmonic m = 0..=m_max.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionSeries {
    pub m_max: u32,
    pub terms: Vec<PredictionTerm>,
}

pub fn prediction_series(m_max: u32, params: &LuttingerParams) -> Result<PredictionSeries, LuttingerError> {
    let mut terms = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max {
        let coefficient = if m == 0 { 1.0 } else { coefficient_y(m)? };
        let mf = m as f64;
        terms.push(PredictionTerm {
            m,
            prefactor: prefactor_c(m),
            coefficient,
            exponent: params.xi / 2.0 + 2.0 * mf * mf / params.xi,
        });
    }
    Ok(PredictionSeries { m_max, terms })
}

/// Scaling-relation target: |psi_m|^2 (L/2)^(xi/2 + 2m^2/xi) should tend to
/// (-1)^m C_m / (2 - delta_{m,0}).
pub fn scaling_target(m: u32) -> f64 {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let denom = if m == 0 { 1.0 } else { 2.0 };
    sign * prefactor_c(m) / denom
}

/// One point of the scaling-relation comparison.
#[derive(Debug, Clone, Copy)]
pub struct ScalingPoint {
    pub l: usize,
    /// |psi_m|^2 (L/2)^(xi/2 + 2m^2/xi) from the finite chain.
    pub lhs: f64,
    pub target: f64,
    pub relative_deviation: f64,
}

/// Compare the finite-L formfactor magnitude against the scaling law at one
/// chain length.
pub fn scaling_relation_check(
    spec: ChainSpec,
    m: u32,
    params: &LuttingerParams,
) -> Result<ScalingPoint, LuttingerError> {
    let psi = shifted_ground_formfactor(spec, m as usize)?;
    let exponent = params.xi / 2.0 + 2.0 * (m as f64) * (m as f64) / params.xi;
    let lhs = psi.norm_sqr() * libm::exp(exponent * libm::log(spec.l as f64 / 2.0));
    let target = scaling_target(m);
    Ok(ScalingPoint {
        l: spec.l,
        lhs,
        target,
        relative_deviation: libm::fabs(lhs - target) / libm::fabs(target),
    })
}

/// Least-squares slope of ln(dev) against ln(l): the expected finite-size
/// decay exponent comes out negative.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in points {
        let (lx, ly) = (libm::log(x), libm::log(y));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Convenience: C_m cross-check value C_0 y_m pi^(2m^2).
pub fn prefactor_from_y(m: u32) -> Result<f64, LuttingerError> {
    if m == 0 {
        return Ok(Constants::REFERENCE.c0);
    }
    let y = coefficient_y_exact(m)?;
    let yf = y.to_f64().ok_or(LuttingerError::Domain("coefficient overflow"))?;
    let mf = m as f64;
    Ok(Constants::REFERENCE.c0 * yf * libm::exp(2.0 * mf * mf * libm::log(core::f64::consts::PI)))
}
