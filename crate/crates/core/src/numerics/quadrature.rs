//! Quadrature rules tailored to the integrals appearing in this crate:
//! periodic integrands on (0, 2pi) with algebraic endpoint singularities,
//! piecewise-smooth Fourier coefficients, and Taylor coefficients of
//! functions analytic in a disk.

use num_complex::Complex64;

/// Which endpoint of (0, 2pi) a quadrature node is close to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointSide {
    /// Node at y = d.
    Lower,
    /// Node at y = 2pi - d.
    Upper,
}

/// Tanh-sinh integration of `f` over (0, 2pi) for integrands with
/// integrable endpoint singularities.
///
/// The integrand is evaluated through its exact distance `d` to the nearby
/// endpoint rather than through `y` itself: forming `y = 2pi - d` in floating
/// point and taking differences afterwards would erase the last decades of
/// the interval, which carry a finite share of the integral when the
/// singularity is as strong as `y^(-3/4)`.  Callers therefore receive
/// `(d, side)` and should express the integrand in terms of `d`
/// (note `sin(y/2) = sin(d/2)` on both sides).
///
/// `nper` is the node count per unit of the tanh-sinh parameter, `tmax` the
/// parameter cutoff; `nper = 200, tmax = 5.0` reaches full double precision
/// for the exponents used here.
pub fn tanh_sinh_circle<F>(f: F, nper: u32, tmax: f64) -> Complex64
where
    F: Fn(f64, EndpointSide) -> Complex64,
{
    use core::f64::consts::PI;
    let h = 1.0 / nper as f64;
    let steps = (tmax * nper as f64) as u32;
    // center node t = 0: y = pi, weight pi^2/2
    let mut acc = f(PI, EndpointSide::Lower) * (PI * PI / 2.0);
    for k in 1..=steps {
        let t = k as f64 * h;
        let g = 0.5 * PI * libm::sinh(t);
        let d = 2.0 * PI / (1.0 + libm::exp(2.0 * g));
        let cg = libm::cosh(g);
        let w = PI * 0.5 * PI * libm::cosh(t) / (cg * cg);
        if !(w > 1e-290) || d == 0.0 {
            break;
        }
        acc += (f(d, EndpointSide::Lower) + f(d, EndpointSide::Upper)) * w;
    }
    acc * h
}

/// Composite Simpson rule with `n` (even) subintervals.
pub fn simpson_complex<F>(f: F, a: f64, b: f64, n: u32) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    assert!(n >= 2 && n % 2 == 0, "simpson needs an even interval count");
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let y = a + k as f64 * h;
        acc += f(y) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * (h / 3.0)
}

/// Coefficient of `z^n` of a function analytic in `|z| < 1`, by the Cauchy
/// integral over a circle of the given radius (trapezoid rule, which is
/// exponentially accurate for periodic analytic integrands).
pub fn contour_coefficient<F>(g: F, n: u32, radius: f64, nodes: u32) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    use core::f64::consts::TAU;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = TAU * j as f64 / nodes as f64;
        let z = Complex64::from_polar(radius, theta);
        acc += g(z) * Complex64::from_polar(1.0, -(n as f64) * theta);
    }
    acc / (nodes as f64 * libm::pow(radius, n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn tanh_sinh_smooth() {
        // int_0^2pi sin(y/2) dy = 4
        let v = tanh_sinh_circle(
            |d, _| Complex64::new(libm::sin(d / 2.0), 0.0),
            100,
            4.0,
        );
        assert!((v.re - 4.0).abs() < 1e-13, "got {}", v.re);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // int_0^2pi y^(-1/2)-type: use (2 sin(y/2))^(-1/2);
        // exact value 2 B(1/4, 1/4) / 2^(1/2)? pin against beta-integral:
        // int_0^2pi (2 sin(y/2))^s dy = 2pi Gamma(1+s) / Gamma(1+s/2)^2
        for s in [-0.5, -0.75] {
            let v = tanh_sinh_circle(
                |d, _| Complex64::new(libm::pow(2.0 * libm::sin(d / 2.0), s), 0.0),
                200,
                5.0,
            );
            let exact = 2.0 * PI * crate::numerics::gamma_signed(1.0 + s).unwrap()
                / libm::exp(2.0 * crate::numerics::ln_gamma(1.0 + s / 2.0).unwrap());
            assert!((v.re / exact - 1.0).abs() < 1e-13, "s={s} got {} want {exact}", v.re);
        }
    }

    #[test]
    fn simpson_matches_trig() {
        let v = simpson_complex(|y| Complex64::new(libm::cos(3.0 * y), 0.0), 0.0, PI / 2.0, 1024);
        // int_0^{pi/2} cos 3y dy = sin(3pi/2)/3 = -1/3
        assert!((v.re + 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn contour_extracts_binomial() {
        // coefficients of (1-z)^(-1) are all 1
        let g = |z: Complex64| (Complex64::new(1.0, 0.0) - z).powf(-1.0);
        for n in 0..6 {
            let c = contour_coefficient(g, n, 0.5, 512);
            assert!((c.re - 1.0).abs() < 1e-12, "n={n}");
            assert!(c.im.abs() < 1e-12);
        }
    }
}
