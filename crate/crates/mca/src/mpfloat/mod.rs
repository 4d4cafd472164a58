//! Arbitrary-precision binary floating point with correct rounding.
//!
//! A finite value is (-1)^sign * m * 2^(E - p + 1) with a p-bit significand
//! m (top bit set). Every operation takes an explicit target precision and
//! rounding mode and returns the exact real result rounded once, together
//! with a flag telling whether (and in which direction) rounding moved it.
//!
//! There is no gradual underflow: magnitudes below 2^EXP_MIN flush to a
//! signed zero, magnitudes above the top of the 2^EXP_MAX binade overflow per
//! rounding mode. Both bounds are far outside anything ordinary computations
//! reach.

mod decimal;

use std::cmp::Ordering;

use crate::divgcd::{divrem_fast, sqrt_rem};
use crate::fastmul::mul_auto;
use crate::limbcore::{Integer, Natural};

pub use decimal::{from_decimal, to_decimal, ParseError};

/// Exponent range for finite values.
pub const EXP_MIN: i64 = -(1 << 40);
pub const EXP_MAX: i64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoundingMode {
    NearestEven,
    TowardZero,
    TowardPositive,
    TowardNegative,
}

/// Direction of the returned value relative to the exact real result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InexactFlag {
    Exact,
    RoundedDown,
    RoundedUp,
}

impl InexactFlag {
    fn from_rounding(inexact: bool, magnitude_up: bool, neg: bool) -> Self {
        if !inexact {
            InexactFlag::Exact
        } else if magnitude_up != neg {
            InexactFlag::RoundedUp
        } else {
            InexactFlag::RoundedDown
        }
    }
}

/// Equality is structural (bit-exact): +0 and -0 differ, NaN equals NaN.
/// Use [`Float::cmp_numeric`] for IEEE-style numeric comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Finite { neg: bool, exp: i64, prec: u32, mant: Natural },
    Zero { neg: bool },
    Inf { neg: bool },
    NaN,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Float {
    repr: Repr,
}

impl Float {
    pub fn nan() -> Self {
        Float { repr: Repr::NaN }
    }

    pub fn infinity(negative: bool) -> Self {
        Float { repr: Repr::Inf { neg: negative } }
    }

    pub fn zero(negative: bool) -> Self {
        Float { repr: Repr::Zero { neg: negative } }
    }

    pub fn is_nan(&self) -> bool {
        self.repr == Repr::NaN
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.repr, Repr::Inf { .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.repr, Repr::Finite { .. } | Repr::Zero { .. })
    }

    pub fn is_negative(&self) -> bool {
        match &self.repr {
            Repr::Finite { neg, .. } | Repr::Zero { neg } | Repr::Inf { neg } => *neg,
            Repr::NaN => false,
        }
    }

    /// Binary exponent E (floor(log2 |x|)) of a finite nonzero value.
    pub fn exponent(&self) -> Option<i64> {
        match &self.repr {
            Repr::Finite { exp, .. } => Some(*exp),
            _ => None,
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Finite { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    pub fn significand(&self) -> Option<&Natural> {
        match &self.repr {
            Repr::Finite { mant, .. } => Some(mant),
            _ => None,
        }
    }

    /// Exponent of one unit in the last place: value = +/- mant * 2^(unit).
    pub fn unit_exponent(&self) -> Option<i64> {
        match &self.repr {
            Repr::Finite { exp, prec, .. } => Some(exp - *prec as i64 + 1),
            _ => None,
        }
    }

    pub fn negate(&self) -> Float {
        let repr = match self.repr.clone() {
            Repr::Finite { neg, exp, prec, mant } => Repr::Finite { neg: !neg, exp, prec, mant },
            Repr::Zero { neg } => Repr::Zero { neg: !neg },
            Repr::Inf { neg } => Repr::Inf { neg: !neg },
            Repr::NaN => Repr::NaN,
        };
        Float { repr }
    }

    pub fn abs(&self) -> Float {
        if self.is_negative() { self.negate() } else { self.clone() }
    }

    /// Exact dyadic constructor: value = (-1)^neg * mant * 2^exp2, stored at
    /// the smallest sufficient precision (at least 2 bits). Panics if the
    /// exponent leaves the configured range.
    pub fn exact_dyadic(neg: bool, mant: &Natural, exp2: i64) -> Float {
        if mant.is_zero() {
            return Float::zero(neg);
        }
        let tz = mant.trailing_zeros().unwrap();
        let m = mant.shr_bits(tz);
        let raw_bits = m.bit_len();
        let bits = raw_bits.max(2);
        let m = m.shl_bits(bits - raw_bits);
        let exp = exp2 + tz as i64 + raw_bits as i64 - 1;
        assert!((EXP_MIN..=EXP_MAX).contains(&exp), "exact dyadic out of range");
        Float { repr: Repr::Finite { neg, exp, prec: bits as u32, mant: m } }
    }

    pub fn from_u64_exact(v: u64) -> Float {
        Float::exact_dyadic(false, &Natural::from_u64(v), 0)
    }

    pub fn from_i64_exact(v: i64) -> Float {
        Float::exact_dyadic(v < 0, &Natural::from_u64(v.unsigned_abs()), 0)
    }

    pub fn from_integer_exact(v: &Integer) -> Float {
        Float::exact_dyadic(v.is_negative(), v.magnitude(), 0)
    }

    /// Rounded integer constructor.
    pub fn from_natural(v: &Natural, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
        round_from_parts(false, v, 0, false, p, mode)
    }

    /// Re-rounds the exact value this float represents to p bits.
    pub fn round_to_precision(&self, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
        match &self.repr {
            Repr::Finite { neg, exp, prec, mant } => {
                round_from_parts(*neg, mant, exp - *prec as i64 + 1, false, p, mode)
            }
            _ => (self.clone(), InexactFlag::Exact),
        }
    }

    /// Numeric comparison: None iff either side is NaN; +0 equals -0.
    pub fn cmp_numeric(&self, rhs: &Float) -> Option<Ordering> {
        use Repr::*;
        match (&self.repr, &rhs.repr) {
            (NaN, _) | (_, NaN) => None,
            (Zero { .. }, Zero { .. }) => Some(Ordering::Equal),
            (Inf { neg: a }, Inf { neg: b }) => Some(b.cmp(a)),
            (Inf { neg }, _) => Some(if *neg { Ordering::Less } else { Ordering::Greater }),
            (_, Inf { neg }) => Some(if *neg { Ordering::Greater } else { Ordering::Less }),
            (Zero { .. }, Finite { neg, .. }) => {
                Some(if *neg { Ordering::Greater } else { Ordering::Less })
            }
            (Finite { neg, .. }, Zero { .. }) => {
                Some(if *neg { Ordering::Less } else { Ordering::Greater })
            }
            (
                Finite { neg: na, exp: ea, prec: pa, mant: ma },
                Finite { neg: nb, exp: eb, prec: pb, mant: mb },
            ) => {
                if na != nb {
                    return Some(if *na { Ordering::Less } else { Ordering::Greater });
                }
                let mag = match ea.cmp(eb) {
                    Ordering::Equal => {
                        ma.shl_bits(*pb as u64).cmp(&mb.shl_bits(*pa as u64))
                    }
                    ord => ord,
                };
                Some(if *na { mag.reverse() } else { mag })
            }
        }
    }

    /// Conversion to a host double; exact when p <= 53 and the exponent is in
    /// double range, otherwise rounds to nearest.
    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::NaN => f64::NAN,
            Repr::Inf { neg } => {
                if *neg { f64::NEG_INFINITY } else { f64::INFINITY }
            }
            Repr::Zero { neg } => {
                if *neg { -0.0 } else { 0.0 }
            }
            Repr::Finite { .. } => {
                let (r, _) = self.round_to_precision(53, RoundingMode::NearestEven);
                match r.repr {
                    Repr::Finite { neg, exp, prec, mant } => {
                        let m = mant.to_u64().expect("53-bit significand fits a word") as f64;
                        let e = (exp - prec as i64 + 1) as i32;
                        let v = m * exp2f64(e);
                        if neg { -v } else { v }
                    }
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Exact conversion from a host double (including subnormals). The
    /// result always carries a 53-bit significand so it is bit-identical to
    /// `round_from_parts(..., 53, ...)` on the same value.
    pub fn from_f64(v: f64) -> Float {
        if v.is_nan() {
            return Float::nan();
        }
        if v.is_infinite() {
            return Float::infinity(v < 0.0);
        }
        if v == 0.0 {
            return Float::zero(v.is_sign_negative());
        }
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mut mant, mut exp2) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | 1 << 52, biased - 1075)
        };
        // keep a full 53-bit significand, even for subnormal inputs
        while mant >> 52 == 0 {
            mant <<= 1;
            exp2 -= 1;
        }
        let exp = exp2 + 52;
        Float { repr: Repr::Finite { neg, exp, prec: 53, mant: Natural::from_u64(mant) } }
    }
}

fn exp2f64(e: i32) -> f64 {
    // exact for |e| < 1023; split to cover the full double range
    if e.abs() < 1000 {
        (2f64).powi(e)
    } else {
        (2f64).powi(e / 2) * (2f64).powi(e - e / 2)
    }
}

/// The rounding core. The exact value is
///   (-1)^neg * (mant + theta) * 2^exp2,   theta in (0,1) iff sticky else 0.
/// When sticky is set, mant must not have exactly p significant bits (callers
/// always supply at least p+2 bits), so the half-way comparison is decidable.
pub(crate) fn round_from_parts(
    neg: bool,
    mant: &Natural,
    exp2: i64,
    sticky: bool,
    p: u32,
    mode: RoundingMode,
) -> (Float, InexactFlag) {
    assert!(p >= 2, "precision must be at least 2");
    if mant.is_zero() {
        assert!(!sticky, "sticky with zero significand");
        return (Float::zero(neg), InexactFlag::Exact);
    }
    let bits = mant.bit_len() as i64;
    let drop = bits - p as i64;
    let (mut q, inexact, magnitude_up) = if drop <= 0 {
        if !sticky {
            (mant.shl_bits((-drop) as u64), false, false)
        } else {
            assert!(drop <= -1, "sticky requires a guard bit");
            // fraction is in (0, 1/2): never a tie, never reaches the next ulp
            let up = matches!(
                (mode, neg),
                (RoundingMode::TowardPositive, false) | (RoundingMode::TowardNegative, true)
            );
            (mant.shl_bits((-drop) as u64), true, up)
        }
    } else {
        let q = mant.shr_bits(drop as u64);
        let rem = mant.low_bits(drop as u64);
        let half = Natural::one().shl_bits(drop as u64 - 1);
        let inexact = !(rem.is_zero() && !sticky);
        let up = if !inexact {
            false
        } else {
            match mode {
                RoundingMode::TowardZero => false,
                RoundingMode::TowardPositive => !neg,
                RoundingMode::TowardNegative => neg,
                RoundingMode::NearestEven => match rem.cmp(&half) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal if sticky => true,
                    Ordering::Equal => q.bit(0), // tie: round to even
                },
            }
        };
        (q, inexact, up)
    };
    let mut exp = exp2 + bits - 1;
    if magnitude_up {
        q = q.add(&Natural::one());
        if q.bit_len() > p as u64 {
            q = q.shr_bits(1);
            exp += 1;
        }
    }
    let flag = InexactFlag::from_rounding(inexact, magnitude_up, neg);
    if exp > EXP_MAX {
        return overflow(neg, p, mode);
    }
    if exp < EXP_MIN {
        return underflow(neg, exp, &q, inexact, p, mode);
    }
    debug_assert_eq!(q.bit_len(), p as u64);
    (Float { repr: Repr::Finite { neg, exp, prec: p, mant: q } }, flag)
}

fn max_finite(neg: bool, p: u32) -> Float {
    let mant = Natural::one().shl_bits(p as u64).checked_sub(&Natural::one()).unwrap();
    Float { repr: Repr::Finite { neg, exp: EXP_MAX, prec: p, mant } }
}

fn overflow(neg: bool, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    let to_inf = match mode {
        RoundingMode::NearestEven => true,
        RoundingMode::TowardZero => false,
        RoundingMode::TowardPositive => !neg,
        RoundingMode::TowardNegative => neg,
    };
    if to_inf {
        (Float::infinity(neg), InexactFlag::from_rounding(true, true, neg))
    } else {
        (max_finite(neg, p), InexactFlag::from_rounding(true, false, neg))
    }
}

fn underflow(
    neg: bool,
    exp: i64,
    q: &Natural,
    inexact: bool,
    p: u32,
    mode: RoundingMode,
) -> (Float, InexactFlag) {
    let smallest = Float {
        repr: Repr::Finite { neg, exp: EXP_MIN, prec: p, mant: Natural::one().shl_bits(p as u64 - 1) },
    };
    let to_smallest = match mode {
        RoundingMode::NearestEven => {
            // above half of the smallest normal, i.e. strictly over 2^(EXP_MIN-1)
            exp == EXP_MIN - 1 && (q.bit_len() != q.trailing_zeros().map_or(0, |t| t + 1) || inexact)
        }
        RoundingMode::TowardZero => false,
        RoundingMode::TowardPositive => !neg,
        RoundingMode::TowardNegative => neg,
    };
    if to_smallest {
        (smallest, InexactFlag::from_rounding(true, true, neg))
    } else {
        (Float::zero(neg), InexactFlag::from_rounding(true, false, neg))
    }
}

/// Correctly rounded addition.
pub fn fadd(a: &Float, b: &Float, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    use Repr::*;
    match (&a.repr, &b.repr) {
        (NaN, _) | (_, NaN) => (Float::nan(), InexactFlag::Exact),
        (Inf { neg: na }, Inf { neg: nb }) => {
            if na == nb {
                (a.clone(), InexactFlag::Exact)
            } else {
                (Float::nan(), InexactFlag::Exact)
            }
        }
        (Inf { .. }, _) => (a.clone(), InexactFlag::Exact),
        (_, Inf { .. }) => (b.clone(), InexactFlag::Exact),
        (Zero { neg: na }, Zero { neg: nb }) => {
            let neg = if na == nb { *na } else { mode == RoundingMode::TowardNegative };
            (Float::zero(neg), InexactFlag::Exact)
        }
        (Zero { .. }, _) => b.round_to_precision(p, mode),
        (_, Zero { .. }) => a.round_to_precision(p, mode),
        (
            Finite { neg: na, exp: ea, prec: pa, mant: ma },
            Finite { neg: nb, exp: eb, prec: pb, mant: mb },
        ) => {
            let ua = ea - *pa as i64 + 1;
            let ub = eb - *pb as i64 + 1;
            // order by magnitude-exponent so "big" dominates
            let (big, small) = if ea >= eb {
                ((*na, *ea, *pa, ma, ua), (*nb, *eb, *pb, mb, ub))
            } else {
                ((*nb, *eb, *pb, mb, ub), (*na, *ea, *pa, ma, ua))
            };
            let gap = big.1 - small.1; // difference of value exponents
            let guard = p as i64 + 4;
            if gap > guard + big.2 as i64 + small.2 as i64 + 4 {
                // The small operand only contributes a sticky fraction.
                let shifted = big.3.shl_bits(guard as u64);
                let same_sign = big.0 == small.0;
                let mant = if same_sign {
                    shifted
                } else {
                    shifted.checked_sub(&Natural::one()).unwrap()
                };
                return round_from_parts(big.0, &mant, big.4 - guard, true, p, mode);
            }
            // exact path: align both operands to the smaller unit exponent
            let base = big.4.min(small.4);
            let big_int = Integer::from_parts(big.0, big.3.shl_bits((big.4 - base) as u64));
            let small_int =
                Integer::from_parts(small.0, small.3.shl_bits((small.4 - base) as u64));
            let sum = big_int.add(&small_int);
            if sum.is_zero() {
                return (
                    Float::zero(mode == RoundingMode::TowardNegative),
                    InexactFlag::Exact,
                );
            }
            round_from_parts(sum.is_negative(), sum.magnitude(), base, false, p, mode)
        }
    }
}

/// fsub(a, b) = fadd(a, -b), bit for bit.
pub fn fsub(a: &Float, b: &Float, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    fadd(a, &b.negate(), p, mode)
}

/// Correctly rounded multiplication.
pub fn fmul(a: &Float, b: &Float, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    use Repr::*;
    let sign = a.is_negative() != b.is_negative();
    match (&a.repr, &b.repr) {
        (NaN, _) | (_, NaN) => (Float::nan(), InexactFlag::Exact),
        (Inf { .. }, Zero { .. }) | (Zero { .. }, Inf { .. }) => {
            (Float::nan(), InexactFlag::Exact)
        }
        (Inf { .. }, _) | (_, Inf { .. }) => (Float::infinity(sign), InexactFlag::Exact),
        (Zero { .. }, _) | (_, Zero { .. }) => (Float::zero(sign), InexactFlag::Exact),
        (
            Finite { exp: ea, prec: pa, mant: ma, .. },
            Finite { exp: eb, prec: pb, mant: mb, .. },
        ) => {
            let prod = mul_auto(ma, mb);
            let exp2 = (ea - *pa as i64 + 1) + (eb - *pb as i64 + 1);
            round_from_parts(sign, &prod, exp2, false, p, mode)
        }
    }
}

/// Correctly rounded division.
pub fn fdiv(a: &Float, b: &Float, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    use Repr::*;
    let sign = a.is_negative() != b.is_negative();
    match (&a.repr, &b.repr) {
        (NaN, _) | (_, NaN) => (Float::nan(), InexactFlag::Exact),
        (Inf { .. }, Inf { .. }) | (Zero { .. }, Zero { .. }) => {
            (Float::nan(), InexactFlag::Exact)
        }
        (Inf { .. }, _) => (Float::infinity(sign), InexactFlag::Exact),
        (_, Inf { .. }) => (Float::zero(sign), InexactFlag::Exact),
        (Zero { .. }, _) => (Float::zero(sign), InexactFlag::Exact),
        (_, Zero { .. }) => (Float::infinity(sign), InexactFlag::Exact),
        (
            Finite { exp: ea, prec: pa, mant: ma, .. },
            Finite { exp: eb, prec: pb, mant: mb, .. },
        ) => {
            let s = *pb as u64 + p as u64 + 4;
            let num = ma.shl_bits(s);
            let (q, r) = divrem_fast(&num, mb).expect("nonzero divisor");
            let exp2 = (ea - *pa as i64 + 1) - (eb - *pb as i64 + 1) - s as i64;
            round_from_parts(sign, &q, exp2, !r.is_zero(), p, mode)
        }
    }
}

/// Correctly rounded square root.
pub fn fsqrt(a: &Float, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    use Repr::*;
    match &a.repr {
        NaN => (Float::nan(), InexactFlag::Exact),
        Zero { neg } => (Float::zero(*neg), InexactFlag::Exact),
        Inf { neg: false } => (Float::infinity(false), InexactFlag::Exact),
        Inf { neg: true } => (Float::nan(), InexactFlag::Exact),
        Finite { neg: true, .. } => (Float::nan(), InexactFlag::Exact),
        Finite { neg: false, exp, prec, mant } => {
            let mut unit = exp - *prec as i64 + 1;
            let mut m = mant.clone();
            if unit.rem_euclid(2) != 0 {
                m = m.shl_bits(1);
                unit -= 1;
            }
            let t = p as u64 + 4;
            let (s, rem) = sqrt_rem(&m.shl_bits(2 * t));
            round_from_parts(false, &s, unit / 2 - t as i64, !rem.is_zero(), p, mode)
        }
    }
}

#[cfg(test)]
mod tests;
