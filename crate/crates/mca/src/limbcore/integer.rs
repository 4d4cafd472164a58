use std::cmp::Ordering;
use std::fmt;

use super::{Error, Natural};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Signed arbitrary-precision integer: sign plus magnitude.
///
/// Invariant: sign is `Zero` exactly when the magnitude is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Integer {
    sign: Sign,
    mag: Natural,
}

impl Integer {
    pub fn zero() -> Self {
        Integer { sign: Sign::Zero, mag: Natural::zero() }
    }

    pub fn one() -> Self {
        Integer::from_natural(Natural::one())
    }

    pub fn from_natural(mag: Natural) -> Self {
        let sign = if mag.is_zero() { Sign::Zero } else { Sign::Positive };
        Integer { sign, mag }
    }

    pub fn from_parts(negative: bool, mag: Natural) -> Self {
        let sign = if mag.is_zero() {
            Sign::Zero
        } else if negative {
            Sign::Negative
        } else {
            Sign::Positive
        };
        Integer { sign, mag }
    }

    pub fn from_i64(v: i64) -> Self {
        Integer::from_parts(v < 0, Natural::from_u64(v.unsigned_abs()))
    }

    pub fn from_u64(v: u64) -> Self {
        Integer::from_natural(Natural::from_u64(v))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn signum(&self) -> i32 {
        match self.sign {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn magnitude(&self) -> &Natural {
        &self.mag
    }

    pub fn into_magnitude(self) -> Natural {
        self.mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    pub fn abs(&self) -> Integer {
        Integer::from_natural(self.mag.clone())
    }

    pub fn neg(&self) -> Integer {
        Integer::from_parts(self.sign == Sign::Positive, self.mag.clone())
    }

    pub fn add(&self, rhs: &Integer) -> Integer {
        match (self.sign, rhs.sign) {
            (Sign::Zero, _) => rhs.clone(),
            (_, Sign::Zero) => self.clone(),
            (a, b) if a == b => Integer {
                sign: a,
                mag: self.mag.add(&rhs.mag),
            },
            _ => {
                let (mag, ord) = self.mag.abs_diff(&rhs.mag);
                let neg = match ord {
                    Ordering::Equal => return Integer::zero(),
                    Ordering::Greater => self.sign == Sign::Negative,
                    Ordering::Less => rhs.sign == Sign::Negative,
                };
                Integer::from_parts(neg, mag)
            }
        }
    }

    pub fn sub(&self, rhs: &Integer) -> Integer {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Integer) -> Integer {
        if self.is_zero() || rhs.is_zero() {
            return Integer::zero();
        }
        Integer::from_parts(
            (self.sign == Sign::Negative) != (rhs.sign == Sign::Negative),
            crate::fastmul::mul_auto(&self.mag, &rhs.mag),
        )
    }

    /// Truncating division: quotient rounds toward zero, the remainder takes
    /// the dividend's sign and satisfies |r| < |b|.
    pub fn divrem(&self, rhs: &Integer) -> Result<(Integer, Integer), Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = crate::divgcd::divrem_fast(&self.mag, &rhs.mag)
            .expect("nonzero divisor");
        let q_neg = (self.sign == Sign::Negative) != (rhs.sign == Sign::Negative);
        let r_neg = self.sign == Sign::Negative;
        Ok((Integer::from_parts(q_neg, q), Integer::from_parts(r_neg, r)))
    }

    pub fn cmp(&self, rhs: &Integer) -> Ordering {
        let s = self.signum().cmp(&rhs.signum());
        if s != Ordering::Equal {
            return s;
        }
        match self.sign {
            Sign::Negative => rhs.mag.cmp(&self.mag),
            _ => self.mag.cmp(&rhs.mag),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        let m = self.mag.to_u64()?;
        match self.sign {
            Sign::Negative if m <= 1 << 63 => Some((m as i64).wrapping_neg()),
            Sign::Negative => None,
            _ if m <= i64::MAX as u64 => Some(m as i64),
            _ => None,
        }
    }

    pub fn to_str_radix(&self, base: u32) -> Result<String, Error> {
        let mag = self.mag.to_str_radix(base)?;
        Ok(if self.sign == Sign::Negative {
            format!("-{mag}")
        } else {
            mag
        })
    }

    pub fn from_str_radix(s: &str, base: u32) -> Result<Integer, Error> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        Ok(Integer::from_parts(neg, Natural::from_str_radix(body, base)?))
    }

    /// Canonical serialized form: optional "-", then "0x" + lowercase hex.
    pub fn to_canonical_hex(&self) -> String {
        if self.sign == Sign::Negative {
            format!("-{}", self.mag.to_canonical_hex())
        } else {
            self.mag.to_canonical_hex()
        }
    }

    pub fn from_canonical_hex(s: &str) -> Result<Integer, Error> {
        match s.strip_prefix('-') {
            Some(rest) => Ok(Integer::from_parts(true, Natural::from_canonical_hex(rest)?)),
            None => Ok(Integer::from_natural(Natural::from_canonical_hex(s)?)),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(Integer::cmp(self, other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        Integer::cmp(self, other)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_str_radix(10).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from_i64(v)
    }

    #[test]
    fn truncating_divrem() {
        let (q, r) = int(-7).divrem(&int(2)).unwrap();
        assert_eq!((q, r), (int(-3), int(-1)));
        let (q, r) = int(7).divrem(&int(-2)).unwrap();
        assert_eq!((q, r), (int(-3), int(1)));
        assert!(int(1).divrem(&int(0)).is_err());
    }

    #[test]
    fn additive_inverse() {
        let a = Integer::from_str_radix("981723981729387192837", 10).unwrap();
        let s = a.add(&a.neg());
        assert!(s.is_zero());
        assert_eq!(s.sign(), Sign::Zero);
    }

    #[test]
    fn sign_rules() {
        assert_eq!(int(-3).mul(&int(-4)), int(12));
        assert_eq!(int(-3).mul(&int(4)), int(-12));
        assert_eq!(int(0).mul(&int(-4)), Integer::zero());
    }

    #[test]
    fn hex_round_trip() {
        for v in [0i64, 1, -1, 255, -256, i64::MAX] {
            let x = int(v);
            assert_eq!(Integer::from_canonical_hex(&x.to_canonical_hex()).unwrap(), x);
        }
        assert_eq!(int(0).to_canonical_hex(), "0x0");
        assert_eq!(int(-255).to_canonical_hex(), "-0xff");
    }
}
