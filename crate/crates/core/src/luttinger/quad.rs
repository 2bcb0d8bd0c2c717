//! Integral representations of the Gamma-factor building blocks, evaluated
//! by quadrature.  These provide an independent numerical route to the same
//! f+ and f- values as the closed Gamma-function forms: the particle factors
//! arise as Fourier coefficients of the branch-cut power (1 - e^(+-iy))
//! restricted to the unit circle, the hole factors as Taylor coefficients of
//! the same power inside the unit disk.

use num_complex::Complex64;

use super::LuttingerError;
use crate::numerics::{contour_coefficient, tanh_sinh_circle, EndpointSide};

const MIN_NODES: u32 = 1 << 10;
const CONTOUR_RADIUS: f64 = 0.5;

fn check_nodes(nodes: u32) -> Result<(), LuttingerError> {
    if nodes < MIN_NODES {
        return Err(LuttingerError::InvalidConfig("node count below the supported minimum"));
    }
    Ok(())
}

fn y_from(d: f64, side: EndpointSide) -> f64 {
    match side {
        EndpointSide::Lower => d,
        EndpointSide::Upper => 2.0 * core::f64::consts::PI - d,
    }
}

/// Right-branch particle factor by tanh-sinh quadrature:
/// f+(p) = a int_0^2pi dy/2pi e^(-i(p-1)y) (1 - e^(iy))^(-(a+1))
/// with (1 - e^(iy)) = 2 sin(y/2) e^(i(y-pi)/2).  The endpoint power
/// y^(-(a+1)) is integrable only for a < 0.
pub fn f_plus_right_quadrature(p: i64, a: f64, nodes: u32) -> Result<Complex64, LuttingerError> {
    if p < 1 {
        return Err(LuttingerError::Domain("right-branch particle offset must be >= 1"));
    }
    if a >= 0.0 {
        return Err(LuttingerError::Domain(
            "endpoint singularity is non-integrable for a >= 0",
        ));
    }
    check_nodes(nodes)?;
    let pi = core::f64::consts::PI;
    let val = tanh_sinh_circle(
        |d, side| {
            let y = y_from(d, side);
            let mag = libm::pow(2.0 * libm::sin(d / 2.0), -(a + 1.0));
            let arg = -(p - 1) as f64 * y - (a + 1.0) * (y - pi) / 2.0;
            Complex64::from_polar(mag, arg)
        },
        nodes / 8,
        5.0,
    );
    Ok(val * (a / (2.0 * pi)))
}

/// Left-branch particle factor by tanh-sinh quadrature:
/// f+(p) = int_0^2pi dy/2pi e^(-i(p+1)y) (1 - e^(-iy))^(c-1)
/// with (1 - e^(-iy)) = 2 sin(y/2) e^(-i(y-pi)/2), for p <= -1.  The
/// endpoint power is integrable only for c > 0.
pub fn f_plus_left_quadrature(p: i64, c: f64, nodes: u32) -> Result<Complex64, LuttingerError> {
    if p > -1 {
        return Err(LuttingerError::Domain("left-branch particle offset must be <= -1"));
    }
    if c <= 0.0 {
        return Err(LuttingerError::Domain(
            "endpoint singularity is non-integrable for c <= 0",
        ));
    }
    check_nodes(nodes)?;
    let pi = core::f64::consts::PI;
    let val = tanh_sinh_circle(
        |d, side| {
            let y = y_from(d, side);
            let mag = libm::pow(2.0 * libm::sin(d / 2.0), c - 1.0);
            let arg = -(p + 1) as f64 * y - (c - 1.0) * (y - pi) / 2.0;
            Complex64::from_polar(mag, arg)
        },
        nodes / 8,
        5.0,
    );
    Ok(val / (2.0 * pi))
}

/// Right-branch hole factor as a Taylor coefficient:
/// f-(q) = [z^h] (1 - z)^(a-1) with h = -q, extracted by a Cauchy contour
/// integral over |z| = 1/2.
pub fn f_minus_right_quadrature(q: i64, a: f64, nodes: u32) -> Result<Complex64, LuttingerError> {
    if q > 0 {
        return Err(LuttingerError::Domain("right-branch hole offset must be <= 0"));
    }
    check_nodes(nodes)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(contour_coefficient(|z| (one - z).powf(a - 1.0), (-q) as u32, CONTOUR_RADIUS, nodes))
}

/// Left-branch hole factor as a Taylor coefficient:
/// f-(q) = c [w^q] (1 - w)^(-(c+1)), extracted over |w| = 1/2.
pub fn f_minus_left_quadrature(q: i64, c: f64, nodes: u32) -> Result<Complex64, LuttingerError> {
    if q < 0 {
        return Err(LuttingerError::Domain("left-branch hole offset must be >= 0"));
    }
    check_nodes(nodes)?;
    let one = Complex64::new(1.0, 0.0);
    let coeff = contour_coefficient(|w| (one - w).powf(-(c + 1.0)), q as u32, CONTOUR_RADIUS, nodes);
    Ok(coeff * c)
}
