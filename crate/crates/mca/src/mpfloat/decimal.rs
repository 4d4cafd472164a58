//! Decimal and textual interchange conversions.
//!
//! Decimal strings follow the usual scientific grammar
//! `[+-]digits[.digits][e[+-]digits]`; output is always normalized
//! `d.ddd...e<K>` with the requested number of significant digits.
//!
//! The interchange form pins down a value bit for bit:
//! `+0x<hex significand>p<exp>:<prec>` where the significand is an integer
//! with exactly `prec` bits and the value is `significand * 2^exp`.

use thiserror::Error;

use crate::divgcd::divrem_fast;
use crate::fastmul::mul_auto;
use crate::limbcore::Natural;

use super::{overflow, round_from_parts, underflow, Float, InexactFlag, Repr, RoundingMode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid number `{0}`")]
    Invalid(String),
}

fn pow5(e: u64) -> Natural {
    let mut result = Natural::one();
    let mut base = Natural::from_u64(5);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_auto(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul_auto(&base, &base);
        }
    }
    result
}

fn pow10(e: u64) -> Natural {
    pow5(e).shl_bits(e)
}

struct ParsedDecimal {
    neg: bool,
    digits: Natural,
    /// value = digits * 10^exp10
    exp10: i64,
}

fn parse_decimal(s: &str) -> Result<ParsedDecimal, ParseError> {
    let bad = || ParseError::Invalid(s.to_string());
    let mut rest = s;
    let neg = match rest.as_bytes().first() {
        Some(b'-') => {
            rest = &rest[1..];
            true
        }
        Some(b'+') => {
            rest = &rest[1..];
            false
        }
        _ => false,
    };
    let (mantissa, exp_part) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let digits = Natural::from_str_radix(&all, 10).map_err(|_| bad())?;
    let mut exp10 = -(frac_part.len() as i64);
    if let Some(e) = exp_part {
        let stripped = e.strip_prefix('+').unwrap_or(e);
        if stripped.is_empty()
            || !stripped
                .strip_prefix('-')
                .unwrap_or(stripped)
                .bytes()
                .all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        // saturate absurd exponents; the range check below resolves them
        let parsed: i64 = stripped.parse().unwrap_or(if stripped.starts_with('-') {
            i64::MIN / 4
        } else {
            i64::MAX / 4
        });
        exp10 = exp10.saturating_add(parsed);
    }
    Ok(ParsedDecimal { neg, digits, exp10 })
}

/// Parses a decimal string and rounds it once to p bits.
pub fn from_decimal(s: &str, p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), ParseError> {
    let ParsedDecimal { neg, digits, exp10 } = parse_decimal(s)?;
    if digits.is_zero() {
        return Ok((Float::zero(neg), InexactFlag::Exact));
    }
    // 10^e10 spans more than 3e10 binary orders of magnitude; anything this
    // far out is already beyond the exponent range.
    if exp10 > 1 << 42 {
        return Ok(overflow(neg, p, mode));
    }
    if exp10 < -(1 << 42) {
        let tiny = Natural::one().shl_bits(p as u64 - 1);
        return Ok(underflow(neg, super::EXP_MIN - 2, &tiny, true, p, mode));
    }
    if exp10 >= 0 {
        let mant = mul_auto(&digits, &pow5(exp10 as u64));
        Ok(round_from_parts(neg, &mant, exp10, false, p, mode))
    } else {
        let den = pow5((-exp10) as u64);
        let shift = p as u64 + 4 + den.bit_len();
        let num = digits.shl_bits(shift);
        let (q, r) = divrem_fast(&num, &den).expect("power of five is nonzero");
        Ok(round_from_parts(neg, &q, exp10 - shift as i64, !r.is_zero(), p, mode))
    }
}

/// Renders x with `digits` significant decimal digits, correctly rounded.
pub fn to_decimal(x: &Float, digits: usize, mode: RoundingMode) -> String {
    assert!(digits >= 1);
    let (neg, mant, unit) = match &x.repr {
        Repr::NaN => return "nan".to_string(),
        Repr::Inf { neg } => return if *neg { "-inf".into() } else { "inf".into() },
        Repr::Zero { neg } => return if *neg { "-0".into() } else { "0".into() },
        Repr::Finite { neg, exp, prec, mant } => (*neg, mant, exp - *prec as i64 + 1),
    };
    let exp = x.exponent().unwrap();
    // first guess for floor(log10 |x|), then fix up after rounding
    let mut k = (exp as i128 * 30103).div_euclid(100_000) as i64;
    loop {
        let t = digits as i64 - 1 - k;
        // |x| * 10^t = mant * 2^unit * 2^t * 5^t as num/den
        let mut num = mant.clone();
        let mut den = Natural::one();
        if t >= 0 {
            num = mul_auto(&num, &pow5(t as u64));
        } else {
            den = pow5((-t) as u64);
        }
        let two_shift = unit + t;
        if two_shift >= 0 {
            num = num.shl_bits(two_shift as u64);
        } else {
            den = den.shl_bits((-two_shift) as u64);
        }
        let (q, r) = divrem_fast(&num, &den).expect("nonzero denominator");
        let n = round_decimal_quotient(q, r, &den, neg, mode);
        let lo = pow10(digits as u64 - 1);
        let hi = pow10(digits as u64);
        if n >= hi {
            k += 1;
            continue;
        }
        if n < lo && !n.is_zero() {
            k -= 1;
            continue;
        }
        let ds = n.to_str_radix(10).unwrap();
        debug_assert_eq!(ds.len(), digits);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&ds[..1]);
        out.push('.');
        if digits > 1 {
            out.push_str(&ds[1..]);
        } else {
            out.push('0');
        }
        out.push('e');
        out.push_str(&k.to_string());
        return out;
    }
}

fn round_decimal_quotient(
    q: Natural,
    r: Natural,
    den: &Natural,
    neg: bool,
    mode: RoundingMode,
) -> Natural {
    if r.is_zero() {
        return q;
    }
    let up = match mode {
        RoundingMode::TowardZero => false,
        RoundingMode::TowardPositive => !neg,
        RoundingMode::TowardNegative => neg,
        RoundingMode::NearestEven => {
            let twice = r.shl_bits(1);
            match twice.cmp(den) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => q.bit(0),
            }
        }
    };
    if up {
        q.add(&Natural::one())
    } else {
        q
    }
}

impl Float {
    /// Exact textual form; see the module docs for the grammar.
    pub fn to_interchange(&self) -> String {
        match &self.repr {
            Repr::NaN => "nan".to_string(),
            Repr::Inf { neg } => format!("{}inf", sign_char(*neg)),
            Repr::Zero { neg } => format!("{}0", sign_char(*neg)),
            Repr::Finite { neg, exp, prec, mant } => format!(
                "{}0x{}p{}:{}",
                sign_char(*neg),
                mant.to_str_radix(16).unwrap(),
                exp - *prec as i64 + 1,
                prec
            ),
        }
    }

    pub fn from_interchange(s: &str) -> Result<Float, ParseError> {
        let bad = || ParseError::Invalid(s.to_string());
        if s == "nan" {
            return Ok(Float::nan());
        }
        let (neg, rest) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        match rest {
            "inf" => return Ok(Float::infinity(neg)),
            "0" => return Ok(Float::zero(neg)),
            _ => {}
        }
        let body = rest.strip_prefix("0x").ok_or_else(bad)?;
        let pi = body.find('p').ok_or_else(bad)?;
        let mant = Natural::from_str_radix(&body[..pi], 16).map_err(|_| bad())?;
        let tail = &body[pi + 1..];
        let ci = tail.find(':').ok_or_else(bad)?;
        let unit: i64 = tail[..ci].parse().map_err(|_| bad())?;
        let prec: u32 = tail[ci + 1..].parse().map_err(|_| bad())?;
        if prec < 2 || mant.bit_len() != prec as u64 {
            return Err(bad());
        }
        let exp = unit + prec as i64 - 1;
        if !(super::EXP_MIN..=super::EXP_MAX).contains(&exp) {
            return Err(bad());
        }
        Ok(Float { repr: Repr::Finite { neg, exp, prec, mant } })
    }
}

fn sign_char(neg: bool) -> char {
    if neg { '-' } else { '+' }
}
