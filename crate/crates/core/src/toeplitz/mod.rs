//! The exact determinant route to the correlator: the thermodynamic-limit
//! Cauchy product for R_N, the correlator factorization G(x) from adjacent
//! R_N, a dense Toeplitz-determinant oracle for small N, and the asymptotic
//! expansion of G(x) carried out entirely in exact rational arithmetic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::luttinger::{log_log_slope, luttinger_prediction_g, LuttingerError};
use crate::numerics::{
    bernoulli_all, rational, simpson_complex, FormalSeries, NumericsError, C0, C0_OVER_SQRT_PI,
};

/// Errors from the determinant route.
#[derive(Debug, Clone, PartialEq)]
pub enum ToeplitzError {
    Domain(&'static str),
    /// The two highest requested expansion coefficients changed when the
    /// working order was raised; the requested order cannot be trusted.
    TruncationUnstable,
    Numerics(NumericsError),
    Luttinger(LuttingerError),
}

impl fmt::Display for ToeplitzError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToeplitzError::Domain(what) => write!(f, "domain error: {what}"),
            ToeplitzError::TruncationUnstable => {
                write!(f, "expansion coefficients unstable under order increase")
            }
            ToeplitzError::Numerics(e) => write!(f, "numerics error: {e}"),
            ToeplitzError::Luttinger(e) => write!(f, "luttinger error: {e}"),
        }
    }
}

impl From<NumericsError> for ToeplitzError {
    fn from(e: NumericsError) -> Self {
        ToeplitzError::Numerics(e)
    }
}

impl From<LuttingerError> for ToeplitzError {
    fn from(e: LuttingerError) -> Self {
        ToeplitzError::Luttinger(e)
    }
}

/// Free-fermion kernel contraction G0(l) = 2 sin(pi l / 2) / (pi l),
/// with G0(0) = 1; vanishes at even l, alternates sign over odd l.
pub fn g0(l: i64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    if l % 2 == 0 {
        return 0.0;
    }
    let m = l.unsigned_abs();
    let sign = if ((m - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    2.0 * sign / (core::f64::consts::PI * m as f64)
}

/// ln of the factor 4k^2 / ((2k+1)(2k-1)) = 1 / (1 - 1/(4k^2)).
fn ln_factor(k: u64) -> f64 {
    -libm::log1p(-1.0 / (4 * k * k) as f64)
}

/// ln R_N from the thermodynamic-limit Cauchy product
/// R_N = (2/pi)^N prod_{k=1}^{N-1} [4k^2/((2k+1)(2k-1))]^(N-k),
/// accumulated with compensated summation.
pub fn ln_cauchy_r(n: u32) -> f64 {
    let ln_2_over_pi = libm::log(2.0 / core::f64::consts::PI);
    let mut sum = n as f64 * ln_2_over_pi;
    let mut comp = 0.0f64;
    for k in 1..n as u64 {
        let term = (n as u64 - k) as f64 * ln_factor(k);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

pub fn cauchy_r(n: u32) -> f64 {
    libm::exp(ln_cauchy_r(n))
}

/// ln R_0 ..= ln R_n in one pass: ln R_{N+1} = ln R_N + ln(2/pi) + C_N with
/// C_N the running prefix sum of the pairwise factors.
pub fn ln_cauchy_r_sweep(n_max: usize) -> Vec<f64> {
    let ln_2_over_pi = libm::log(2.0 / core::f64::consts::PI);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(0.0);
    let mut prefix = 0.0f64;
    let mut comp = 0.0f64;
    for n in 0..n_max as u64 {
        if n >= 1 {
            let y = ln_factor(n) - comp;
            let t = prefix + y;
            comp = (t - prefix) - y;
            prefix = t;
        }
        out.push(out[n as usize] + ln_2_over_pi + prefix);
    }
    out
}

/// Thermodynamic-limit correlator from the factorization
/// G(2N) = R_N^2 / 2, G(2N+1) = R_N R_{N+1} / 2.
pub fn exact_g(x: u64) -> Result<f64, ToeplitzError> {
    if x == 0 {
        return Err(ToeplitzError::Domain("separation must be positive"));
    }
    let n = (x / 2) as u32;
    let ln = if x % 2 == 0 {
        2.0 * ln_cauchy_r(n)
    } else {
        ln_cauchy_r(n) + ln_cauchy_r(n + 1)
    };
    Ok(libm::exp(ln - libm::log(2.0)))
}

/// G(1) ..= G(x_max) in O(x_max) total work.
pub fn exact_g_sweep(x_max: usize) -> Vec<f64> {
    let ln_r = ln_cauchy_r_sweep(x_max / 2 + 1);
    let ln2 = libm::log(2.0);
    (1..=x_max)
        .map(|x| {
            let n = x / 2;
            let ln = if x % 2 == 0 { 2.0 * ln_r[n] } else { ln_r[n] + ln_r[n + 1] };
            libm::exp(ln - ln2)
        })
        .collect()
}

/// Fourier coefficient M(l) of the generating symbol
/// f(y) = e^{iy} sign(pi/2 - |y|) on (-pi, pi), by split composite Simpson
/// over the three smooth pieces; M(l) = G0(l-1).
fn symbol_fourier_coefficient(l: i64, nodes: u32) -> f64 {
    use core::f64::consts::PI;
    let npiece = (nodes / 4).max(2) & !1;
    let f = |y: f64| Complex64::from_polar(1.0, (1 - l) as f64 * y);
    let v = -simpson_complex(f, -PI, -PI / 2.0, npiece)
        + simpson_complex(f, -PI / 2.0, PI / 2.0, 2 * npiece)
        - simpson_complex(f, PI / 2.0, PI, npiece);
    v.re / (2.0 * PI)
}

/// Dense determinant oracle R_N = det[(-1)^{i-j} G0(2i-2j-1)].  With
/// `fourier_nodes = 0` the kernel entries use the closed trigonometric form;
/// otherwise they come from split-Simpson Fourier coefficients of the
/// generating symbol with that many total nodes.
pub fn toeplitz_oracle_r(n: u32, fourier_nodes: u32) -> Result<f64, ToeplitzError> {
    if n > 16 {
        return Err(ToeplitzError::Domain("dense determinant oracle limited to N <= 16"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let entry = |d: i64| -> f64 {
        let sign = if d.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let value = if fourier_nodes == 0 {
            g0(2 * d - 1)
        } else {
            symbol_fourier_coefficient(2 * d, fourier_nodes)
        };
        sign * value
    };
    let m = DMatrix::from_fn(n as usize, n as usize, |i, j| entry(i as i64 - j as i64));
    Ok(m.lu().determinant())
}

/// The large-N expansion of ln R_N: a constant ln A, the -1/4 ln N piece,
/// and an even tail series in 1/N with exact rational coefficients
/// (2^{2k} - 1) B_{2k} / (k (k-1) 2^{2k}) at power N^{-2(k-1)}.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRSeries {
    pub ln_a: f64,
    pub log_n_coeff: BigRational,
    pub tail: FormalSeries,
}

impl LogRSeries {
    pub fn eval(&self, n: f64) -> f64 {
        self.ln_a + self.log_n_coeff.to_f64().unwrap() * libm::log(n)
            + self.tail.eval_f64(1.0 / n)
    }
}

pub fn log_r_series(order: u32) -> Result<LogRSeries, ToeplitzError> {
    if order < 2 {
        return Err(ToeplitzError::Domain("series order must be at least 2"));
    }
    Ok(LogRSeries {
        ln_a: crate::numerics::LN_A,
        log_n_coeff: rational(-1, 4),
        tail: log_r_tail(order, 2 * (order as usize - 1) + 1),
    })
}

/// The tail series alone, at an explicit truncation order in 1/N.
fn log_r_tail(k_max: u32, truncation: usize) -> FormalSeries {
    let bern = bernoulli_all(2 * k_max);
    let mut coeffs = alloc::vec![BigRational::zero(); truncation];
    for k in 2..=k_max as usize {
        let power = 2 * (k - 1);
        if power >= truncation {
            break;
        }
        let num = rational((1i64 << (2 * k)) - 1, (k * (k - 1)) as i64 * (1i64 << (2 * k)));
        coeffs[power] = num * &bern[2 * k];
    }
    FormalSeries::from_coeffs("1/N", coeffs)
}

/// The two parity branches of G(x)/((A^2/sqrt(2)) x^{-1/2}) as exact
/// rational series in 1/x, both truncated after x^{-order}:
/// even x = 2N gives E = exp(2 S(N)); odd x = 2N+1 gives
/// E~ = (1 - x^{-2})^{-1/4} exp(S(N) + S(N+1)).
pub fn branch_series(order: u32) -> Result<(FormalSeries, FormalSeries), ToeplitzError> {
    let truncation = order as usize + 1;
    let k_max = order / 2 + 1;
    let tail = log_r_tail(k_max, truncation);

    let even = tail
        .substitute_scaled(&rational(2, 1), "1/x")
        .truncate(truncation)
        .scale(&rational(2, 1))
        .exp()?;

    let s_minus = tail.substitute_shifted(-1, truncation)?;
    let s_plus = tail.substitute_shifted(1, truncation)?;
    let mut x_sq = alloc::vec![BigRational::zero(); truncation];
    if truncation > 2 {
        x_sq[2] = BigRational::one();
    }
    let quarter_root = FormalSeries::binomial_pow("t", &rational(-1, 4), truncation)
        .compose(&FormalSeries::from_coeffs("1/x", x_sq))?;
    let odd = quarter_root.mul(&s_minus.add(&s_plus)?.exp()?)?;

    Ok((even, odd))
}

/// The asymptotic expansion of G(x), split into the uniform part and the
/// (-1)^x staggered part: G(x) = normalization * x^{-1/2}
/// [sum_p uniform[p] x^{-p} + (-1)^x sum_p staggered[p] x^{-p}].
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    /// C0/sqrt(pi) = A^2/sqrt(2).
    pub normalization: f64,
    /// Fixed leading power -1/2.
    pub leading_exponent: f64,
    /// Even power -> exact coefficient of x^{-power}.
    pub uniform_terms: BTreeMap<u32, BigRational>,
    /// Even power -> exact coefficient of (-1)^x x^{-power}; no power-0 entry.
    pub staggered_terms: BTreeMap<u32, BigRational>,
    pub order: u32,
}

impl AsymptoticExpansion {
    pub fn eval(&self, x: u64) -> f64 {
        let inv = 1.0 / x as f64;
        let sum = |map: &BTreeMap<u32, BigRational>| -> f64 {
            map.iter()
                .map(|(&p, c)| c.to_f64().unwrap() * libm::pow(inv, p as f64))
                .sum()
        };
        let stagger = if x % 2 == 0 { 1.0 } else { -1.0 };
        self.normalization * libm::sqrt(inv) * (sum(&self.uniform_terms) + stagger * sum(&self.staggered_terms))
    }
}

fn split_parity(
    even: &FormalSeries,
    odd: &FormalSeries,
    order: u32,
) -> Result<(BTreeMap<u32, BigRational>, BTreeMap<u32, BigRational>), ToeplitzError> {
    let half = rational(1, 2);
    let uniform = even.add(odd)?.scale(&half);
    let staggered = even.sub(odd)?.scale(&half);
    let mut u = BTreeMap::new();
    let mut v = BTreeMap::new();
    for p in 0..=order as usize {
        let (cu, cv) = (uniform.coeff(p), staggered.coeff(p));
        if p % 2 == 1 {
            if !cu.is_zero() || !cv.is_zero() {
                return Err(ToeplitzError::Domain("parity split produced an odd power"));
            }
            continue;
        }
        u.insert(p as u32, cu);
        if p > 0 {
            v.insert(p as u32, cv);
        } else if !cv.is_zero() {
            return Err(ToeplitzError::Domain("staggered series has a constant term"));
        }
    }
    Ok((u, v))
}

/// Build the expansion to x^{-order}.  The engine recomputes at order + 2
/// and requires every requested coefficient to agree between the two runs,
/// guarding against silent truncation bias in the substitutions.
pub fn exact_expansion(order: u32) -> Result<AsymptoticExpansion, ToeplitzError> {
    if order < 4 || order % 2 != 0 {
        return Err(ToeplitzError::Domain("expansion order must be even and at least 4"));
    }
    let (even_hi, odd_hi) = branch_series(order + 2)?;
    let (even_lo, odd_lo) = branch_series(order)?;
    let (u_hi, v_hi) = split_parity(&even_hi, &odd_hi, order)?;
    let (u_lo, v_lo) = split_parity(&even_lo, &odd_lo, order)?;
    if u_hi != u_lo || v_hi != v_lo {
        return Err(ToeplitzError::TruncationUnstable);
    }
    Ok(AsymptoticExpansion {
        normalization: C0_OVER_SQRT_PI,
        leading_exponent: -0.5,
        uniform_terms: u_hi,
        staggered_terms: v_hi,
        order,
    })
}

/// One row of the two-route comparison at a given separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRow {
    pub x: u64,
    pub exact: f64,
    pub luttinger: f64,
    pub series: f64,
    pub luttinger_residual: f64,
    pub series_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub rows: Vec<ResidualRow>,
    /// Fitted decay exponent of |exact - luttinger| over the x range
    /// (positive: residual ~ x^{-exponent}).
    pub fitted_exponent: f64,
}

/// Tabulate exact G, the truncated Luttinger prediction and the exact
/// asymptotic series, with residuals and the fitted decay exponent of the
/// Luttinger disagreement.
pub fn series_residual_report(
    x_values: &[u64],
    m_max: u32,
    order: u32,
) -> Result<ResidualReport, ToeplitzError> {
    if x_values.len() < 2 {
        return Err(ToeplitzError::Domain("need at least two separations for a fit"));
    }
    if x_values.iter().any(|&x| x < 8) {
        return Err(ToeplitzError::Domain("residual fit expects separations x >= 8"));
    }
    let expansion = exact_expansion(order)?;
    let mut rows = Vec::with_capacity(x_values.len());
    let mut fit_points = Vec::with_capacity(x_values.len());
    for &x in x_values {
        let exact = exact_g(x)?;
        let luttinger = luttinger_prediction_g(x, m_max, C0)?;
        let series = expansion.eval(x);
        let row = ResidualRow {
            x,
            exact,
            luttinger,
            series,
            luttinger_residual: exact - luttinger,
            series_residual: exact - series,
        };
        fit_points.push((x as f64, libm::fabs(row.luttinger_residual)));
        rows.push(row);
    }
    let fitted_exponent = -log_log_slope(&fit_points);
    Ok(ResidualReport { rows, fitted_exponent })
}
