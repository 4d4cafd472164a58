use std::cmp::Ordering;

use super::{Error, WORD_BITS};

/// Unsigned arbitrary-precision integer.
///
/// Stored as little-endian limbs in radix 2^64. The representation is always
/// normalized: zero is the empty sequence, otherwise the top limb is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Natural {
    limbs: Vec<u64>,
}

impl Natural {
    pub fn zero() -> Self {
        Natural { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Natural { limbs: vec![1] }
    }

    pub fn from_u64(v: u64) -> Self {
        if v == 0 {
            Self::zero()
        } else {
            Natural { limbs: vec![v] }
        }
    }

    pub fn from_u128(v: u128) -> Self {
        Self::from_limbs(vec![v as u64, (v >> 64) as u64])
    }

    /// Builds a value from little-endian limbs, dropping high zero limbs.
    pub fn from_limbs(mut limbs: Vec<u64>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Natural { limbs }
    }

    pub fn as_limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn limb(&self, i: usize) -> u64 {
        self.limbs.get(i).copied().unwrap_or(0)
    }

    pub fn limb_len(&self) -> usize {
        self.limbs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    pub fn is_even(&self) -> bool {
        self.limbs.first().map_or(true, |l| l & 1 == 0)
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0] as u128),
            2 => Some(self.limbs[0] as u128 | (self.limbs[1] as u128) << 64),
            _ => None,
        }
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bit_len(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(&top) => {
                (self.limbs.len() as u64 - 1) * WORD_BITS as u64 + (64 - top.leading_zeros()) as u64
            }
        }
    }

    pub fn bit(&self, i: u64) -> bool {
        let limb = (i / WORD_BITS as u64) as usize;
        let off = (i % WORD_BITS as u64) as u32;
        self.limbs.get(limb).map_or(false, |l| (l >> off) & 1 == 1)
    }

    /// Index of the lowest set bit, or `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u64> {
        for (i, &l) in self.limbs.iter().enumerate() {
            if l != 0 {
                return Some(i as u64 * WORD_BITS as u64 + l.trailing_zeros() as u64);
            }
        }
        None
    }

    fn debug_check(&self) {
        debug_assert!(self.limbs.last() != Some(&0), "unnormalized natural");
    }

    pub fn add(&self, rhs: &Natural) -> Natural {
        let (long, short) = if self.limbs.len() >= rhs.limbs.len() {
            (&self.limbs, &rhs.limbs)
        } else {
            (&rhs.limbs, &self.limbs)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = 0u64;
        for i in 0..long.len() {
            let s = long[i] as u128 + short.get(i).copied().unwrap_or(0) as u128 + carry as u128;
            out.push(s as u64);
            carry = (s >> 64) as u64;
        }
        if carry != 0 {
            out.push(carry);
        }
        let r = Natural::from_limbs(out);
        r.debug_check();
        r
    }

    pub fn checked_sub(&self, rhs: &Natural) -> Option<Natural> {
        if self.cmp(rhs) == Ordering::Less {
            return None;
        }
        let mut out = Vec::with_capacity(self.limbs.len());
        let mut borrow = 0u64;
        for i in 0..self.limbs.len() {
            let r = rhs.limbs.get(i).copied().unwrap_or(0);
            let (d1, b1) = self.limbs[i].overflowing_sub(r);
            let (d2, b2) = d1.overflowing_sub(borrow);
            out.push(d2);
            borrow = (b1 | b2) as u64;
        }
        debug_assert_eq!(borrow, 0);
        Some(Natural::from_limbs(out))
    }

    pub fn sub(&self, rhs: &Natural) -> Result<Natural, Error> {
        self.checked_sub(rhs).ok_or(Error::Underflow)
    }

    /// |a - b| together with the ordering of a and b.
    pub fn abs_diff(&self, rhs: &Natural) -> (Natural, Ordering) {
        match self.cmp(rhs) {
            Ordering::Less => (rhs.checked_sub(self).unwrap(), Ordering::Less),
            ord => (self.checked_sub(rhs).unwrap(), ord),
        }
    }

    pub fn shl_bits(&self, k: u64) -> Natural {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let limb_shift = (k / WORD_BITS as u64) as usize;
        let bit_shift = (k % WORD_BITS as u64) as u32;
        let mut out = vec![0u64; limb_shift];
        if bit_shift == 0 {
            out.extend_from_slice(&self.limbs);
        } else {
            let mut carry = 0u64;
            for &l in &self.limbs {
                out.push((l << bit_shift) | carry);
                carry = l >> (64 - bit_shift);
            }
            if carry != 0 {
                out.push(carry);
            }
        }
        Natural::from_limbs(out)
    }

    pub fn shr_bits(&self, k: u64) -> Natural {
        let limb_shift = (k / WORD_BITS as u64) as usize;
        if limb_shift >= self.limbs.len() {
            return Natural::zero();
        }
        let bit_shift = (k % WORD_BITS as u64) as u32;
        let src = &self.limbs[limb_shift..];
        let mut out = Vec::with_capacity(src.len());
        if bit_shift == 0 {
            out.extend_from_slice(src);
        } else {
            for i in 0..src.len() {
                let hi = src.get(i + 1).copied().unwrap_or(0);
                out.push((src[i] >> bit_shift) | (hi.checked_shl(64 - bit_shift).unwrap_or(0)));
            }
        }
        Natural::from_limbs(out)
    }

    /// floor(a * 2^k) for any signed bit count k.
    pub fn shift(&self, k: i64) -> Natural {
        if k >= 0 {
            self.shl_bits(k as u64)
        } else {
            self.shr_bits(k.unsigned_abs())
        }
    }

    /// Low `k` bits of the value.
    pub fn low_bits(&self, k: u64) -> Natural {
        let full = (k / WORD_BITS as u64) as usize;
        if full >= self.limbs.len() {
            return self.clone();
        }
        let mut limbs = self.limbs[..full].to_vec();
        let rem = (k % WORD_BITS as u64) as u32;
        if rem > 0 {
            limbs.push(self.limbs[full] & ((1u64 << rem) - 1));
        }
        Natural::from_limbs(limbs)
    }

    pub fn mul_schoolbook(&self, rhs: &Natural) -> Natural {
        if self.is_zero() || rhs.is_zero() {
            return Natural::zero();
        }
        let mut out = vec![0u64; self.limbs.len() + rhs.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut carry = 0u64;
            for (j, &b) in rhs.limbs.iter().enumerate() {
                let t = a as u128 * b as u128 + out[i + j] as u128 + carry as u128;
                out[i + j] = t as u64;
                carry = (t >> 64) as u64;
            }
            out[i + rhs.limbs.len()] = carry;
        }
        Natural::from_limbs(out)
    }

    /// Schoolbook squaring; exploits the symmetry of cross terms.
    pub fn square_schoolbook(&self) -> Natural {
        let n = self.limbs.len();
        if n == 0 {
            return Natural::zero();
        }
        let mut out = vec![0u64; 2 * n];
        // off-diagonal products, each counted once
        for i in 0..n {
            let mut carry = 0u64;
            for j in (i + 1)..n {
                let t = self.limbs[i] as u128 * self.limbs[j] as u128
                    + out[i + j] as u128
                    + carry as u128;
                out[i + j] = t as u64;
                carry = (t >> 64) as u64;
            }
            out[i + n] = carry;
        }
        // double and add the diagonal
        let mut carry = 0u64;
        for i in 0..n {
            let sq = self.limbs[i] as u128 * self.limbs[i] as u128;
            let lo = out[2 * i] as u128 * 2 + (sq as u64) as u128 + carry as u128;
            out[2 * i] = lo as u64;
            let hi = out[2 * i + 1] as u128 * 2 + (sq >> 64) + (lo >> 64);
            out[2 * i + 1] = hi as u64;
            carry = (hi >> 64) as u64;
        }
        debug_assert_eq!(carry, 0);
        Natural::from_limbs(out)
    }

    /// Knuth-style long division with divisor normalization and a two-limb
    /// quotient-digit estimate. Returns (q, r) with a = q*b + r, 0 <= r < b.
    pub fn divrem_schoolbook(&self, rhs: &Natural) -> Result<(Natural, Natural), Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.cmp(rhs) == Ordering::Less {
            return Ok((Natural::zero(), self.clone()));
        }
        if rhs.limbs.len() == 1 {
            let (q, r) = self.divrem_limb(rhs.limbs[0]);
            return Ok((q, Natural::from_u64(r)));
        }
        // Normalize so the divisor's top bit is set.
        let shift = rhs.limbs.last().unwrap().leading_zeros() as u64;
        let u = self.shl_bits(shift);
        let v = rhs.shl_bits(shift);
        let (q, r) = divrem_knuth(u.as_limbs(), v.as_limbs());
        Ok((Natural::from_limbs(q), Natural::from_limbs(r).shr_bits(shift)))
    }

    /// Division by a single limb.
    pub fn divrem_limb(&self, d: u64) -> (Natural, u64) {
        assert!(d != 0);
        let mut q = vec![0u64; self.limbs.len()];
        let mut rem = 0u64;
        for i in (0..self.limbs.len()).rev() {
            let cur = (rem as u128) << 64 | self.limbs[i] as u128;
            q[i] = (cur / d as u128) as u64;
            rem = (cur % d as u128) as u64;
        }
        (Natural::from_limbs(q), rem)
    }

    pub fn cmp(&self, rhs: &Natural) -> Ordering {
        match self.limbs.len().cmp(&rhs.limbs.len()) {
            Ordering::Equal => {
                for i in (0..self.limbs.len()).rev() {
                    match self.limbs[i].cmp(&rhs.limbs[i]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Natural {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(Natural::cmp(self, other))
    }
}

impl Ord for Natural {
    fn cmp(&self, other: &Self) -> Ordering {
        Natural::cmp(self, other)
    }
}

/// Core of algorithm D. `u` is the (normalized-shifted) dividend, `v` the
/// divisor with top bit set and at least two limbs.
fn divrem_knuth(u: &[u64], v: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let n = v.len();
    debug_assert!(n >= 2 && v[n - 1] >> 63 == 1);
    if u.len() < n {
        return (Vec::new(), u.to_vec());
    }
    let m = u.len() - n;
    let mut rem = u.to_vec();
    rem.push(0);
    let mut q = vec![0u64; m + 1];
    let v_top = v[n - 1];
    let v_next = v[n - 2];
    for j in (0..=m).rev() {
        // Estimate the quotient digit from the top two limbs of the current
        // remainder window against the top limb of the divisor. The window
        // invariant guarantees rem[j+n] <= v_top.
        let hi = (rem[j + n] as u128) << 64 | rem[j + n - 1] as u128;
        let (mut qhat, mut rhat) = if rem[j + n] >= v_top {
            let q = (1u128 << 64) - 1;
            (q, hi - q * v_top as u128)
        } else {
            (hi / v_top as u128, hi % v_top as u128)
        };
        // Downward corrections using the second divisor limb; qhat < 2^64
        // throughout, so the products below cannot overflow.
        while rhat >> 64 == 0
            && qhat * v_next as u128 > (rhat << 64 | rem[j + n - 2] as u128)
        {
            qhat -= 1;
            rhat += v_top as u128;
        }
        let mut qd = qhat as u64;
        // rem[j..j+n+1] -= qd * v
        let mut borrow = 0i128;
        let mut carry = 0u128;
        for i in 0..n {
            let p = qd as u128 * v[i] as u128 + carry;
            carry = p >> 64;
            let d = rem[j + i] as i128 - (p as u64) as i128 + borrow;
            rem[j + i] = d as u64;
            borrow = d >> 64;
        }
        let d = rem[j + n] as i128 - carry as i128 + borrow;
        rem[j + n] = d as u64;
        if d < 0 {
            // Estimate was one too large; add the divisor back.
            qd -= 1;
            let mut carry = 0u64;
            for i in 0..n {
                let s = rem[j + i] as u128 + v[i] as u128 + carry as u128;
                rem[j + i] = s as u64;
                carry = (s >> 64) as u64;
            }
            rem[j + n] = rem[j + n].wrapping_add(carry);
        }
        q[j] = qd;
    }
    rem.truncate(n);
    (q, rem)
}
