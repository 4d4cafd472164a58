//! Exact rational arithmetic over the limb integers. Used by the series and
//! continued-fraction machinery and as an independent oracle in tests.

use std::cmp::Ordering;

use crate::divgcd::{exact_div, gcd};
use crate::fastmul::mul_auto;
use crate::limbcore::{Integer, Natural};

/// An exact fraction num/den with den > 0. Always stored reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational {
    num: Integer,
    den: Natural,
}

impl Rational {
    pub fn zero() -> Self {
        Rational { num: Integer::zero(), den: Natural::one() }
    }

    pub fn one() -> Self {
        Rational { num: Integer::one(), den: Natural::one() }
    }

    pub fn new(num: Integer, den: Natural) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Rational { num, den };
        r.reduce();
        r
    }

    pub fn from_integer(num: Integer) -> Self {
        Rational { num, den: Natural::one() }
    }

    pub fn from_i64(v: i64) -> Self {
        Rational::from_integer(Integer::from_i64(v))
    }

    pub fn from_ratio(num: i64, den: u64) -> Self {
        Rational::new(Integer::from_i64(num), Natural::from_u64(den))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Natural::one();
            return;
        }
        let g = gcd(self.num.magnitude(), &self.den);
        if !g.is_one() {
            self.num = Integer::from_parts(
                self.num.is_negative(),
                exact_div(self.num.magnitude(), &g).unwrap(),
            );
            self.den = exact_div(&self.den, &g).unwrap();
        }
    }

    pub fn numerator(&self) -> &Integer {
        &self.num
    }

    pub fn denominator(&self) -> &Natural {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn add(&self, rhs: &Rational) -> Rational {
        let num = self
            .num
            .mul(&Integer::from_natural(rhs.den.clone()))
            .add(&rhs.num.mul(&Integer::from_natural(self.den.clone())));
        Rational::new(num, mul_auto(&self.den, &rhs.den))
    }

    pub fn sub(&self, rhs: &Rational) -> Rational {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Rational {
        Rational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn abs(&self) -> Rational {
        Rational { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Rational) -> Rational {
        Rational::new(self.num.mul(&rhs.num), mul_auto(&self.den, &rhs.den))
    }

    pub fn div(&self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational::new(
            Integer::from_parts(
                self.num.is_negative() != rhs.num.is_negative(),
                mul_auto(self.num.magnitude(), &rhs.den),
            ),
            mul_auto(&self.den, rhs.num.magnitude()),
        )
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational {
            num: Integer::from_parts(self.num.is_negative(), self.den.clone()),
            den: self.num.magnitude().clone(),
        }
    }

    pub fn cmp(&self, rhs: &Rational) -> Ordering {
        let lhs = self.num.mul(&Integer::from_natural(rhs.den.clone()));
        let rhs_x = rhs.num.mul(&Integer::from_natural(self.den.clone()));
        lhs.cmp(&rhs_x)
    }

    /// floor(log2 |x|) for nonzero x.
    pub fn ilog2(&self) -> i64 {
        assert!(!self.is_zero());
        let hi = self.num.magnitude().bit_len() as i64 - self.den.bit_len() as i64;
        // |x| is within a factor of two of 2^hi; compare to fix the estimate
        for cand in [hi, hi - 1] {
            let (n, d) = if cand >= 0 {
                (self.den.shl_bits(cand as u64), self.num.magnitude().clone())
            } else {
                (self.den.clone(), self.num.magnitude().shl_bits((-cand) as u64))
            };
            if d >= n {
                return cand;
            }
        }
        unreachable!("ilog2 estimate off by more than one")
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(Rational::cmp(self, other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        Rational::cmp(self, other)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_reduction() {
        let a = Rational::from_ratio(1, 6);
        let b = Rational::from_ratio(1, 3);
        assert_eq!(a.add(&b), Rational::from_ratio(1, 2));
        assert_eq!(b.sub(&a), a);
        assert_eq!(a.mul(&b), Rational::from_ratio(1, 18));
        assert_eq!(a.div(&b), Rational::from_ratio(1, 2));
        assert_eq!(Rational::from_ratio(-4, 8), Rational::from_ratio(-1, 2));
    }

    #[test]
    fn ordering() {
        assert!(Rational::from_ratio(1, 3) < Rational::from_ratio(1, 2));
        assert!(Rational::from_ratio(-1, 2) < Rational::from_ratio(-1, 3));
    }

    #[test]
    fn ilog2_cases() {
        assert_eq!(Rational::from_i64(1).ilog2(), 0);
        assert_eq!(Rational::from_i64(5).ilog2(), 2);
        assert_eq!(Rational::from_ratio(1, 2).ilog2(), -1);
        assert_eq!(Rational::from_ratio(3, 8).ilog2(), -2);
        assert_eq!(Rational::from_ratio(-7, 2).ilog2(), 1);
        assert_eq!(Rational::from_ratio(1, 3).ilog2(), -2);
    }
}
