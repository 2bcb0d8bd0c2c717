//! Truncated formal power series with exact rational coefficients.
//!
//! A series carries a symbolic variable tag (such as `"1/N"` or `"1/x"`) so
//! that expansions in different variables cannot be combined by accident.
//! Coefficients are dense: the orders used anywhere in this crate stay below
//! twenty, so sparse storage would buy nothing.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::NumericsError;

/// Shorthand constructor for small rationals.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer power of a rational, allowing negative exponents.
pub fn rational_pow(base: &BigRational, exp: i32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Truncated power series `sum_{k < order} c_k t^k` over BigRational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    var: &'static str,
    coeffs: Vec<BigRational>,
}

impl FormalSeries {
    /// The zero series with the given (exclusive) truncation order.
    pub fn zero(var: &'static str, order: usize) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        FormalSeries {
            var,
            coeffs: vec![BigRational::zero(); order],
        }
    }

    /// A constant series.
    pub fn constant(var: &'static str, value: BigRational, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = value;
        s
    }

    /// Series from explicit low-to-high coefficients; the order is their count.
    pub fn from_coeffs(var: &'static str, coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be at least 1");
        FormalSeries { var, coeffs }
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    /// Exclusive truncation order.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^k` (zero at or beyond the truncation order).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(mut self, order: usize) -> Self {
        assert!(order >= 1);
        self.coeffs.truncate(order);
        while self.coeffs.len() < order {
            self.coeffs.push(BigRational::zero());
        }
        self
    }

    fn check_var(&self, other: &Self) -> Result<(), NumericsError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(NumericsError::VariableMismatch)
        }
    }

    /// Sum, truncated to the shorter operand.
    pub fn add(&self, other: &Self) -> Result<Self, NumericsError> {
        self.check_var(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        Ok(FormalSeries { var: self.var, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NumericsError> {
        self.check_var(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|k| &self.coeffs[k] - &other.coeffs[k])
            .collect();
        Ok(FormalSeries { var: self.var, coeffs })
    }

    /// Cauchy product, truncated to the shorter operand.
    pub fn mul(&self, other: &Self) -> Result<Self, NumericsError> {
        self.check_var(other)?;
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(FormalSeries { var: self.var, coeffs })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        FormalSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FormalSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// exp of a series with vanishing constant term, at the same order.
    pub fn exp(&self) -> Result<Self, NumericsError> {
        if !self.coeffs[0].is_zero() {
            return Err(NumericsError::ConstantTerm("exp needs a zero constant term"));
        }
        let order = self.order();
        let mut b = vec![BigRational::zero(); order];
        b[0] = BigRational::one();
        for n in 1..order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += BigRational::from_integer(BigInt::from(k))
                        * &self.coeffs[k]
                        * &b[n - k];
                }
            }
            b[n] = acc / BigRational::from_integer(BigInt::from(n));
        }
        Ok(FormalSeries { var: self.var, coeffs: b })
    }

    /// log of a series with unit constant term, at the same order.
    pub fn log(&self) -> Result<Self, NumericsError> {
        if !self.coeffs[0].is_one() {
            return Err(NumericsError::ConstantTerm("log needs a unit constant term"));
        }
        let order = self.order();
        let mut b = vec![BigRational::zero(); order];
        for n in 1..order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                if !self.coeffs[n - k].is_zero() && !b[k].is_zero() {
                    acc -= BigRational::from_integer(BigInt::from(k)) * &b[k] * &self.coeffs[n - k]
                        / BigRational::from_integer(BigInt::from(n));
                }
            }
            b[n] = acc;
        }
        Ok(FormalSeries { var: self.var, coeffs: b })
    }

    /// `(1 - t)^exponent` by the generalized binomial theorem.
    pub fn binomial_pow(var: &'static str, exponent: &BigRational, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order.max(1)];
        coeffs[0] = BigRational::one();
        for k in 1..coeffs.len() {
            let factor = -(exponent - BigRational::from_integer(BigInt::from(k as i64 - 1)))
                / BigRational::from_integer(BigInt::from(k));
            coeffs[k] = &coeffs[k - 1] * factor;
        }
        FormalSeries { var, coeffs }
    }

    /// Substitute `t -> factor * t`, optionally retagging the variable.
    pub fn substitute_scaled(&self, factor: &BigRational, var: &'static str) -> Self {
        let mut power = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &power;
                power = &power * factor;
                out
            })
            .collect();
        FormalSeries { var, coeffs }
    }

    /// Compose `self(inner(t))`; `inner` must have a vanishing constant term.
    /// The result carries the inner variable and the shorter order.
    pub fn compose(&self, inner: &Self) -> Result<Self, NumericsError> {
        if !inner.coeffs[0].is_zero() {
            return Err(NumericsError::ConstantTerm(
                "composition needs a zero inner constant term",
            ));
        }
        let order = self.order().min(inner.order());
        let inner = inner.clone().truncate(order);
        let mut res = FormalSeries::zero(inner.var, order);
        for k in (0..self.order()).rev() {
            res = res.mul(&inner)?;
            res.coeffs[0] += &self.coeffs[k];
        }
        Ok(res)
    }

    /// Re-expand a series in `1/N` as a series in `1/x` under `N = (x + shift)/2`
    /// with `shift = +1` or `-1`, i.e. `1/N = (2/x) sum_j (-shift/x)^j`.
    pub fn substitute_shifted(
        &self,
        shift: i8,
        order: usize,
    ) -> Result<FormalSeries, NumericsError> {
        if shift != 1 && shift != -1 {
            return Err(NumericsError::Domain("shift must be +1 or -1"));
        }
        let order = order.max(1);
        let s = rational(-shift as i64, 1);
        let mut inner = FormalSeries::zero("1/x", order);
        let mut c = rational(2, 1);
        for j in 1..order {
            inner.coeffs[j] = c.clone();
            c *= &s;
        }
        // widen the outer truncation so composition keeps all reachable powers
        let outer = self.clone().truncate(order.max(self.order()));
        outer.compose(&inner)
    }

    /// Numeric evaluation at a float argument (Horner).
    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + rational_to_f64(c);
        }
        acc
    }
}

/// Lossless-as-possible conversion of a BigRational to f64.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn geo(order: usize) -> FormalSeries {
        FormalSeries::from_coeffs("t", vec![BigRational::one(); order])
    }

    fn one_minus_t(order: usize) -> FormalSeries {
        let mut c = vec![BigRational::zero(); order];
        c[0] = BigRational::one();
        c[1] = rational(-1, 1);
        FormalSeries::from_coeffs("t", c)
    }

    #[test]
    fn mul_basics() {
        let a = FormalSeries::from_coeffs("t", vec![rational(1, 1), rational(1, 1), rational(0, 1)]);
        let b = one_minus_t(3);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.coeff(0), rational(1, 1));
        assert_eq!(prod.coeff(1), rational(0, 1));
        assert_eq!(prod.coeff(2), rational(-1, 1));

        let one = FormalSeries::constant("t", BigRational::one(), 3);
        assert_eq!(a.mul(&one).unwrap(), a);

        let g = geo(6).mul(&one_minus_t(6)).unwrap();
        assert_eq!(g.coeff(0), rational(1, 1));
        for k in 1..6 {
            assert!(g.coeff(k).is_zero(), "k={k}");
        }
    }

    #[test]
    fn var_mismatch_rejected() {
        let a = FormalSeries::zero("1/N", 3);
        let b = FormalSeries::zero("1/x", 3);
        assert_eq!(a.mul(&b), Err(NumericsError::VariableMismatch));
        assert_eq!(a.add(&b), Err(NumericsError::VariableMismatch));
    }

    #[test]
    fn exp_basics() {
        let zero = FormalSeries::zero("t", 4);
        assert_eq!(
            zero.exp().unwrap(),
            FormalSeries::constant("t", BigRational::one(), 4)
        );
        let t = FormalSeries::from_coeffs(
            "t",
            vec![rational(0, 1), rational(1, 1), rational(0, 1), rational(0, 1)],
        );
        let e = t.exp().unwrap();
        assert_eq!(e.coeff(0), rational(1, 1));
        assert_eq!(e.coeff(1), rational(1, 1));
        assert_eq!(e.coeff(2), rational(1, 2));
        assert_eq!(e.coeff(3), rational(1, 6));
        // nonzero constant term rejected
        assert!(e.exp().is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let a = FormalSeries::from_coeffs(
            "t",
            vec![
                rational(0, 1),
                rational(1, 3),
                rational(-2, 5),
                rational(7, 2),
                rational(1, 11),
            ],
        );
        assert_eq!(a.exp().unwrap().log().unwrap(), a);
    }

    #[test]
    fn binomial_pow_examples() {
        let lin = FormalSeries::binomial_pow("t", &rational(1, 1), 4);
        assert_eq!(lin.coeff(0), rational(1, 1));
        assert_eq!(lin.coeff(1), rational(-1, 1));
        assert!(lin.coeff(2).is_zero() && lin.coeff(3).is_zero());

        let inv = FormalSeries::binomial_pow("t", &rational(-1, 1), 5);
        for k in 0..5 {
            assert_eq!(inv.coeff(k), rational(1, 1), "k={k}");
        }

        let quarter = FormalSeries::binomial_pow("t", &rational(-1, 4), 3);
        assert_eq!(quarter.coeff(1), rational(1, 4));
    }

    #[test]
    fn substitute_shifted_examples() {
        let inv_n = FormalSeries::from_coeffs("1/N", vec![rational(0, 1), rational(1, 1)]);
        let minus = inv_n.substitute_shifted(-1, 5).unwrap();
        for k in 1..5 {
            assert_eq!(minus.coeff(k), rational(2, 1), "k={k}");
        }
        assert_eq!(minus.var(), "1/x");

        let plus = inv_n.substitute_shifted(1, 5).unwrap();
        for k in 1..5 {
            let want = if k % 2 == 1 { rational(2, 1) } else { rational(-2, 1) };
            assert_eq!(plus.coeff(k), want, "k={k}");
        }

        let c = FormalSeries::constant("1/N", rational(9, 7), 3);
        let sub = c.substitute_shifted(1, 6).unwrap();
        assert_eq!(sub.coeff(0), rational(9, 7));
        for k in 1..6 {
            assert!(sub.coeff(k).is_zero());
        }
    }

    #[test]
    fn compose_geometric_identity() {
        // 1/(1 - t) composed with t = u/(1+u) gives 1 + u
        let outer = geo(8);
        let inner = FormalSeries::binomial_pow("u", &rational(-1, 1), 8)
            .substitute_scaled(&rational(-1, 1), "u")
            .mul(&FormalSeries::from_coeffs(
                "u",
                {
                    let mut v = vec![BigRational::zero(); 8];
                    v[1] = BigRational::one();
                    v
                },
            ))
            .unwrap();
        let composed = outer.compose(&inner).unwrap();
        assert_eq!(composed.coeff(0), rational(1, 1));
        assert_eq!(composed.coeff(1), rational(1, 1));
        for k in 2..8 {
            assert!(composed.coeff(k).is_zero(), "k={k}");
        }
    }

    proptest! {
        #[test]
        fn mul_commutative(a in prop::collection::vec(-9i64..10, 1..6),
                           b in prop::collection::vec(-9i64..10, 1..6)) {
            let sa = FormalSeries::from_coeffs("t", a.iter().map(|&n| rational(n, 1)).collect());
            let sb = FormalSeries::from_coeffs("t", b.iter().map(|&n| rational(n, 1)).collect());
            prop_assert_eq!(sa.mul(&sb).unwrap(), sb.mul(&sa).unwrap());
        }

        #[test]
        fn mul_associative(a in prop::collection::vec(-5i64..6, 1..5),
                           b in prop::collection::vec(-5i64..6, 1..5),
                           c in prop::collection::vec(-5i64..6, 1..5)) {
            let sa = FormalSeries::from_coeffs("t", a.iter().map(|&n| rational(n, 1)).collect());
            let sb = FormalSeries::from_coeffs("t", b.iter().map(|&n| rational(n, 1)).collect());
            let sc = FormalSeries::from_coeffs("t", c.iter().map(|&n| rational(n, 1)).collect());
            let left = sa.mul(&sb).unwrap().mul(&sc).unwrap();
            let right = sa.mul(&sb.mul(&sc).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn exp_group_law(a in prop::collection::vec(-7i64..8, 2..6)) {
            let mut coeffs: Vec<BigRational> = a.iter().map(|&n| rational(n, 3)).collect();
            coeffs[0] = BigRational::zero();
            let s = FormalSeries::from_coeffs("t", coeffs);
            let prod = s.exp().unwrap().mul(&s.neg().exp().unwrap()).unwrap();
            prop_assert_eq!(prod.coeff(0), rational(1, 1));
            for k in 1..prod.order() {
                prop_assert!(prod.coeff(k).is_zero());
            }
        }
    }
}
