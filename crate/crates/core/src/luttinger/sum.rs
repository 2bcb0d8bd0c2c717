//! Resummation of the particle-hole ladder on one branch.
//!
//! Grouping all excitations by their total momentum level k = sum(p) + sum(h)
//! turns the ladder into a power series whose k-th coefficient is the sum of
//! squared one-branch combinations over every configuration at that level.
//! That coefficient equals the k-th Taylor coefficient of (1 - z)^(-a^2), so
//! the full ladder closes to (1 - e^(i phi))^(-a^2) on the right branch and
//! to its conjugate with c in place of a on the left.  The series on the
//! boundary of convergence is summed with Wynn's epsilon algorithm.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{
    cauchy_determinant_factor, f_minus_right_exact, f_plus_right_exact, Branch, LuttingerError,
};
use crate::numerics::{pochhammer_rational, wynn_epsilon};

/// Ascending distinct integers >= `lo`, `count` of them, summing to `total`.
fn distinct_sets(count: usize, total: i64, lo: i64) -> Vec<Vec<i64>> {
    if count == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let c = count as i64;
    let mut v = lo;
    // smallest admissible head leaves v+1..v+c-1 for the tail
    while c * v + c * (c - 1) / 2 <= total {
        for tail in distinct_sets(count - 1, total - v, v + 1) {
            let mut set = Vec::with_capacity(count);
            set.push(v);
            set.extend(tail);
            out.push(set);
        }
        v += 1;
    }
    out
}

/// All particle-hole configurations at momentum level k, as
/// (particle offsets >= 1 ascending, hole offsets >= 0 ascending) with
/// sum(p) + sum(h) = k.  A configuration with n pairs first appears at
/// level n^2.
pub fn level_configs(k: u32) -> Vec<(Vec<i64>, Vec<i64>)> {
    let k = k as i64;
    let mut out = Vec::new();
    if k == 0 {
        out.push((Vec::new(), Vec::new()));
        return out;
    }
    let mut n = 1i64;
    while n * n <= k {
        let lo = n * (n + 1) / 2;
        let hi = k - n * (n - 1) / 2;
        for psum in lo..=hi {
            let psets = distinct_sets(n as usize, psum, 1);
            let hsets = distinct_sets(n as usize, k - psum, 0);
            for p in &psets {
                for h in &hsets {
                    out.push((p.clone(), h.clone()));
                }
            }
        }
        n += 1;
    }
    out
}

fn level_aggregate_float(param: f64, k: u32, branch: Branch) -> Result<f64, LuttingerError> {
    let mut acc = 0.0f64;
    for (ps, hs) in level_configs(k) {
        let (particles, holes): (Vec<i64>, Vec<i64>) = match branch {
            Branch::Right => (ps, hs.iter().map(|&h| -h).collect()),
            Branch::Left => (ps.iter().map(|&p| -p).collect(), hs),
        };
        let f = cauchy_determinant_factor(&particles, &holes, branch, param)?;
        acc += f * f;
    }
    Ok(acc)
}

fn rational_det(ps: &[i64], qs: &[i64]) -> BigRational {
    let n = ps.len();
    let mut det = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            det *= BigRational::from_integer(((ps[i] - ps[j]) * (qs[j] - qs[i])).into());
        }
    }
    for &p in ps {
        for &q in qs {
            det /= BigRational::from_integer((p - q).into());
        }
    }
    det
}

/// Exact level-k aggregate sum of F^2 over right-branch configurations,
/// for a rational exponent parameter.
pub fn level_aggregate_exact(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for (ps, hs) in level_configs(k) {
        let qs: Vec<i64> = hs.iter().map(|&h| -h).collect();
        let mut f = rational_det(&ps, &qs);
        for &p in &ps {
            f *= f_plus_right_exact(p, a);
        }
        for &q in &qs {
            f *= f_minus_right_exact(q, a);
        }
        acc += f.clone() * f;
    }
    acc
}

/// k-th Taylor coefficient of (1 - z)^(-a^2): poch(a^2, k) / k!.
pub fn taylor_coefficient_exact(a: &BigRational, k: u32) -> BigRational {
    let a2 = a * a;
    let mut v = pochhammer_rational(&a2, k);
    for j in 2..=k as i64 {
        v /= BigRational::from_integer(j.into());
    }
    v
}

fn branch_phase(phase: f64, branch: Branch) -> Complex64 {
    match branch {
        Branch::Right => Complex64::from_polar(1.0, phase),
        Branch::Left => Complex64::from_polar(1.0, -phase),
    }
}

fn partial_sum_sequence(
    param: f64,
    phase: f64,
    cutoff: u32,
    branch: Branch,
) -> Result<Vec<Complex64>, LuttingerError> {
    let step = branch_phase(phase, branch);
    let mut z = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut seq = Vec::with_capacity(cutoff as usize + 1);
    for k in 0..=cutoff {
        acc += z * level_aggregate_float(param, k, branch)?;
        seq.push(acc);
        z *= step;
    }
    Ok(seq)
}

/// Raw ladder partial sum over all configurations with level <= cutoff.
pub fn sum_identity_partial(
    param: f64,
    phase: f64,
    cutoff: u32,
    branch: Branch,
) -> Result<Complex64, LuttingerError> {
    Ok(*partial_sum_sequence(param, phase, cutoff, branch)?
        .last()
        .expect("sequence is nonempty"))
}

/// Wynn-epsilon limit of the partial-sum sequence up to the cutoff level.
/// The series converges only on the open arc 0 < phi < 2pi and even there
/// merely conditionally; acceleration recovers the analytic value.
pub fn sum_identity_accelerated(
    param: f64,
    phase: f64,
    cutoff: u32,
    branch: Branch,
) -> Result<Complex64, LuttingerError> {
    if !(phase > 0.0 && phase < 2.0 * core::f64::consts::PI) {
        return Err(LuttingerError::Domain("phase must lie strictly inside (0, 2pi)"));
    }
    let seq = partial_sum_sequence(param, phase, cutoff, branch)?;
    Ok(wynn_epsilon(&seq))
}

/// Closed form of the full ladder: (1 - e^(i phi))^(-a^2) on the right
/// branch, (1 - e^(-i phi))^(-c^2) on the left, written through the real
/// factorization 1 - e^(i phi) = 2 sin(phi/2) e^(i (phi - pi)/2).
pub fn sum_identity_closed(
    param: f64,
    phase: f64,
    branch: Branch,
) -> Result<Complex64, LuttingerError> {
    if !(phase > 0.0 && phase < 2.0 * core::f64::consts::PI) {
        return Err(LuttingerError::Domain("phase must lie strictly inside (0, 2pi)"));
    }
    let e = -param * param;
    let mag = libm::pow(2.0 * libm::sin(phase / 2.0), e);
    let arg = e * (phase - core::f64::consts::PI) / 2.0;
    let v = Complex64::from_polar(mag, arg);
    Ok(match branch {
        Branch::Right => v,
        Branch::Left => v.conj(),
    })
}
