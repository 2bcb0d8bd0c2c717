//! Exact Bernoulli numbers.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NumericsError;

/// All Bernoulli numbers `B_0 ..= B_n` (convention `B_1 = -1/2`), computed
/// from the defining recurrence `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
pub fn bernoulli_all(n: u32) -> Vec<BigRational> {
    let n = n as usize;
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // binomials C(m+1, k) for k = 0..m, built incrementally
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * BigRational::from_integer(binom.clone());
            }
            // C(m+1, k+1) = C(m+1, k) * (m+1-k) / (k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        // C(m+1, m) = m+1
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Exact `B_n` for even `n >= 2`.
pub fn bernoulli(n: i64) -> Result<BigRational, NumericsError> {
    if n < 2 || n % 2 != 0 {
        return Err(NumericsError::Domain("bernoulli requires even n >= 2"));
    }
    Ok(bernoulli_all(n as u32).pop().expect("nonempty"))
}
