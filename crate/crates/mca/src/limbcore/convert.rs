use std::fmt;

use super::{Error, Natural};

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest power of `base` that fits in one limb, as (base^k, k).
fn limb_chunk(base: u32) -> (u64, u32) {
    let mut pow = base as u64;
    let mut k = 1;
    while let Some(next) = pow.checked_mul(base as u64) {
        pow = next;
        k += 1;
    }
    (pow, k)
}

impl Natural {
    /// Canonical lowercase digit string, no leading zeros, "0" for zero.
    pub fn to_str_radix(&self, base: u32) -> Result<String, Error> {
        if !(2..=36).contains(&base) {
            return Err(Error::InvalidBase(base));
        }
        if self.is_zero() {
            return Ok("0".to_string());
        }
        let mut out = Vec::new();
        if base.is_power_of_two() {
            let bits = base.trailing_zeros() as u64;
            let total = self.bit_len();
            let mut pos = 0;
            while pos < total {
                let mut d = 0u64;
                for b in (0..bits).rev() {
                    d = d << 1 | self.bit(pos + b) as u64;
                }
                out.push(DIGITS[d as usize]);
                pos += bits;
            }
        } else {
            // Quadratic baseline: peel off base^k chunks by limb division.
            let (chunk, k) = limb_chunk(base);
            let mut cur = self.clone();
            while !cur.is_zero() {
                let (q, mut r) = cur.divrem_limb(chunk);
                let last = q.is_zero();
                for _ in 0..k {
                    out.push(DIGITS[(r % base as u64) as usize]);
                    r /= base as u64;
                    if last && r == 0 {
                        break;
                    }
                }
                cur = q;
            }
        }
        while out.last() == Some(&b'0') {
            out.pop();
        }
        out.reverse();
        Ok(String::from_utf8(out).unwrap())
    }

    pub fn from_str_radix(s: &str, base: u32) -> Result<Natural, Error> {
        if !(2..=36).contains(&base) {
            return Err(Error::InvalidBase(base));
        }
        if s.is_empty() {
            return Err(Error::InvalidDigit(' ', base));
        }
        let (chunk, k) = limb_chunk(base);
        let mut acc = Natural::zero();
        let mut pending = 0u64;
        let mut pending_len = 0u32;
        let mut seen = false;
        for c in s.chars() {
            if c == '_' {
                continue;
            }
            let d = c
                .to_digit(36)
                .filter(|&d| d < base)
                .ok_or(Error::InvalidDigit(c, base))?;
            seen = true;
            pending = pending * base as u64 + d as u64;
            pending_len += 1;
            if pending_len == k {
                acc = acc
                    .mul_schoolbook(&Natural::from_u64(chunk))
                    .add(&Natural::from_u64(pending));
                pending = 0;
                pending_len = 0;
            }
        }
        if !seen {
            return Err(Error::InvalidDigit(' ', base));
        }
        if pending_len > 0 {
            let scale = (base as u64).pow(pending_len);
            acc = acc
                .mul_schoolbook(&Natural::from_u64(scale))
                .add(&Natural::from_u64(pending));
        }
        Ok(acc)
    }

    /// Canonical hex form used by the CLI and fixtures: "0x" + lowercase
    /// big-endian digits, "0x0" for zero.
    pub fn to_canonical_hex(&self) -> String {
        format!("0x{}", self.to_str_radix(16).unwrap())
    }

    pub fn from_canonical_hex(s: &str) -> Result<Natural, Error> {
        let body = s
            .strip_prefix("0x")
            .ok_or(Error::InvalidDigit('x', 16))?;
        Natural::from_str_radix(body, 16)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_str_radix(10).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_small() {
        assert_eq!(Natural::zero().to_str_radix(10).unwrap(), "0");
        assert_eq!(Natural::from_u64(255).to_str_radix(16).unwrap(), "ff");
        assert_eq!(Natural::from_str_radix("ff", 16).unwrap(), Natural::from_u64(255));
        assert_eq!(Natural::from_u64(255).to_canonical_hex(), "0xff");
        assert_eq!(Natural::zero().to_canonical_hex(), "0x0");
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(Natural::from_u64(1).to_str_radix(37), Err(Error::InvalidBase(37)));
        assert_eq!(
            Natural::from_str_radix("12g", 10),
            Err(Error::InvalidDigit('g', 10))
        );
        assert!(Natural::from_str_radix("", 10).is_err());
    }

    #[test]
    fn round_trip_large() {
        // deterministic pseudo-random 10k-bit value
        let mut v = Natural::one();
        let mut x = 0x9e3779b97f4a7c15u64;
        for _ in 0..160 {
            x = x.wrapping_mul(0xbf58476d1ce4e5b9).wrapping_add(0x94d049bb133111eb);
            v = v.shl_bits(64).add(&Natural::from_u64(x));
        }
        assert!(v.bit_len() > 10_000);
        for base in [2u32, 10, 36] {
            let s = v.to_str_radix(base).unwrap();
            assert_eq!(Natural::from_str_radix(&s, base).unwrap(), v);
        }
    }
}
