//! Fast division via Newton's reciprocal iteration, exact division, integer
//! square root, and the GCD family.

use std::cmp::Ordering;

use crate::fastmul::{mul_auto, square_auto};
use crate::limbcore::{Integer, Natural};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dividend is not divisible by the divisor")]
    NotDivisible,
    #[error("element is not invertible modulo n")]
    NotInvertible,
    #[error("modulus must be at least 2")]
    ModulusTooSmall,
}

/// Default limb count above which division switches to the Newton path.
pub const FASTDIV_THRESHOLD: usize = 50;

/// Approximation of floor(B^(2n) / b) for an n-limb divisor b with its top
/// bit set, where B = 2^64. The stored value is corrected to the exact floor,
/// so divisions need at most two quotient fix-ups.
#[derive(Debug, Clone)]
pub struct Reciprocal {
    value: Natural,
    limbs: usize,
}

impl Reciprocal {
    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn limbs(&self) -> usize {
        self.limbs
    }
}

/// Newton iteration x <- x + x (B^(2n) - x b) / B^(2n), doubling the working
/// limb count each round, starting from a two-limb schoolbook seed.
pub fn newton_reciprocal(b: &Natural, n: usize) -> Result<Reciprocal, Error> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    assert_eq!(b.limb_len(), n, "divisor must have exactly n limbs");
    assert!(b.bit(64 * n as u64 - 1), "divisor top bit must be set");

    let k0 = n.min(2);
    let b_top = b.shr_bits(64 * (n - k0) as u64);
    let big = Natural::one().shl_bits(128 * k0 as u64);
    let (mut v, _) = big.divrem_schoolbook(&b_top).expect("nonzero divisor");
    let mut k = k0;
    while k < n {
        let k2 = (2 * k).min(n);
        let b_k2 = b.shr_bits(64 * (n - k2) as u64);
        let x = v.shl_bits(64 * (k2 - k) as u64);
        let prod = mul_auto(&x, &b_k2);
        let big = Natural::one().shl_bits(128 * k2 as u64);
        let (err_mag, ord) = big.abs_diff(&prod);
        let corr = mul_auto(&v, &err_mag).shr_bits(64 * (k2 + k) as u64);
        v = match ord {
            Ordering::Less => x.checked_sub(&corr).unwrap_or_else(Natural::zero),
            _ => x.add(&corr),
        };
        k = k2;
    }
    // Truncation errors square with every doubling, so after ~8 rounds the
    // estimate can be off by more than a handful of units. One extra step at
    // full width brings it back within a few units of the floor.
    let target = Natural::one().shl_bits(128 * n as u64);
    if n > k0 {
        let prod = mul_auto(&v, b);
        let (err_mag, ord) = target.abs_diff(&prod);
        let corr = mul_auto(&v, &err_mag).shr_bits(128 * n as u64);
        v = match ord {
            Ordering::Less => v.checked_sub(&corr).unwrap_or_else(Natural::zero),
            _ => v.add(&corr),
        };
    }
    // Correct to the exact floor. Newton now leaves the value within a few
    // units; adjust incrementally, falling back to long division if that ever
    // fails.
    let mut rem = Integer::from_natural(target.clone()).sub(&Integer::from_natural(mul_auto(&v, b)));
    let b_int = Integer::from_natural(b.clone());
    let mut steps = 0;
    loop {
        if rem.is_negative() {
            v = v.checked_sub(&Natural::one()).unwrap_or_else(Natural::zero);
            rem = rem.add(&b_int);
        } else if rem.magnitude() >= b {
            v = v.add(&Natural::one());
            rem = rem.sub(&b_int);
        } else {
            break;
        }
        steps += 1;
        if steps > 64 {
            debug_assert!(false, "Newton reciprocal failed to converge");
            let (q, _) = target.divrem_schoolbook(b).expect("nonzero divisor");
            v = q;
            break;
        }
    }
    Ok(Reciprocal { value: v, limbs: n })
}

/// Division with output identical to `divrem_schoolbook`, switching to the
/// Newton reciprocal above the size threshold.
pub fn divrem_fast(a: &Natural, b: &Natural) -> Result<(Natural, Natural), Error> {
    divrem_fast_with_threshold(a, b, FASTDIV_THRESHOLD)
}

pub fn divrem_fast_with_threshold(
    a: &Natural,
    b: &Natural,
    threshold: usize,
) -> Result<(Natural, Natural), Error> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if b.limb_len() < threshold.max(3) || a < b {
        return a.divrem_schoolbook(b).map_err(|_| Error::DivisionByZero);
    }
    let n = b.limb_len();
    let shift = 64 * n as u64 - b.bit_len();
    let an = a.shl_bits(shift);
    let bn = b.shl_bits(shift);
    debug_assert_eq!(bn.limb_len(), n);
    let rec = newton_reciprocal(&bn, n)?;

    let mut quotient = Natural::zero();
    let mut rem = an;
    loop {
        if rem < bn {
            break;
        }
        let t = rem.limb_len();
        if t <= 2 * n {
            let (q, r) = quotient_step(&rem, &bn, &rec);
            quotient = quotient.add(&q);
            rem = r;
        } else {
            let off = (t - 2 * n) as u64;
            let hi = rem.shr_bits(64 * off);
            let lo = rem.low_bits(64 * off);
            let (q, r) = quotient_step(&hi, &bn, &rec);
            quotient = quotient.add(&q.shl_bits(64 * off));
            rem = r.shl_bits(64 * off).add(&lo);
        }
    }
    Ok((quotient, rem.shr_bits(shift)))
}

/// One reciprocal-based division step for a dividend of at most 2n limbs.
fn quotient_step(a: &Natural, b: &Natural, rec: &Reciprocal) -> (Natural, Natural) {
    let n = rec.limbs;
    let mut q = mul_auto(a, &rec.value).shr_bits(128 * n as u64);
    let mut r = Integer::from_natural(a.clone()).sub(&Integer::from_natural(mul_auto(&q, b)));
    let b_int = Integer::from_natural(b.clone());
    let mut steps = 0;
    loop {
        if r.is_negative() {
            q = q.checked_sub(&Natural::one()).expect("quotient underflow");
            r = r.add(&b_int);
        } else if r.magnitude() >= b {
            q = q.add(&Natural::one());
            r = r.sub(&b_int);
        } else {
            break;
        }
        steps += 1;
        assert!(steps <= 8, "reciprocal quotient estimate out of bounds");
    }
    (q, r.into_magnitude())
}

/// Exact quotient a / b; it is a caller error if b does not divide a.
pub fn exact_div(a: &Natural, b: &Natural) -> Result<Natural, Error> {
    let (q, r) = divrem_fast(a, b)?;
    if !r.is_zero() {
        return Err(Error::NotDivisible);
    }
    Ok(q)
}

/// Binary (shift/subtract) GCD. gcd(0, 0) = 0 by convention.
pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let ta = a.trailing_zeros().unwrap();
    let tb = b.trailing_zeros().unwrap();
    let common = ta.min(tb);
    let mut x = a.shr_bits(ta);
    let mut y = b.shr_bits(tb);
    loop {
        match x.cmp(&y) {
            Ordering::Equal => break,
            Ordering::Less => std::mem::swap(&mut x, &mut y),
            Ordering::Greater => {}
        }
        x = x.checked_sub(&y).unwrap();
        x = x.shr_bits(x.trailing_zeros().unwrap());
    }
    x.shl_bits(common)
}

/// Extended Euclid: returns (g, u, v) with u a + v b = g = gcd(|a|, |b|).
///
/// Coefficients are canonicalized to |u| <= |b|/(2g) and |v| <= |a|/(2g)
/// where both operands are nonzero, with the positive coefficient chosen on
/// the exact half-way tie.
pub fn extgcd(a: &Integer, b: &Integer) -> (Natural, Integer, Integer) {
    if b.is_zero() {
        return (
            a.magnitude().clone(),
            Integer::from_i64(a.signum() as i64),
            Integer::zero(),
        );
    }
    if a.is_zero() {
        return (
            b.magnitude().clone(),
            Integer::zero(),
            Integer::from_i64(b.signum() as i64),
        );
    }
    let mut r0 = Integer::from_natural(a.magnitude().clone());
    let mut r1 = Integer::from_natural(b.magnitude().clone());
    let mut u0 = Integer::one();
    let mut u1 = Integer::zero();
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
        let next_u = u0.sub(&q.mul(&u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, next_u);
    }
    let g = r0.into_magnitude();
    // Center u modulo |b|/g into (-bb/2, bb/2].
    let bb = exact_div(b.magnitude(), &g).expect("gcd divides");
    let bb_int = Integer::from_natural(bb.clone());
    let mut u = u0;
    if !bb.is_one() {
        let (_, r) = u.divrem(&bb_int).expect("nonzero");
        u = if r.is_negative() { r.add(&bb_int) } else { r };
        let twice = u.magnitude().shl_bits(1);
        if twice > bb || (twice == bb && u.is_negative()) {
            u = u.sub(&bb_int);
        }
    } else {
        u = Integer::zero();
    }
    // v = (g - u |a|) / |b|, exactly.
    let num = Integer::from_natural(g.clone()).sub(&u.mul(&Integer::from_natural(a.magnitude().clone())));
    let v_mag = exact_div(num.magnitude(), b.magnitude()).expect("Bezout residue divides");
    let v = Integer::from_parts(num.is_negative(), v_mag);
    // Fold the operand signs back in.
    let u = if a.is_negative() { u.neg() } else { u };
    let v = if b.is_negative() { v.neg() } else { v };
    (g, u, v)
}

/// Inverse of a modulo n: the unique x in [1, n) with a x = 1 (mod n).
pub fn mod_inverse(a: &Natural, n: &Natural) -> Result<Natural, Error> {
    if n < &Natural::from_u64(2) {
        return Err(Error::ModulusTooSmall);
    }
    let (_, r) = divrem_fast(a, n)?;
    let (g, u, _) = extgcd(
        &Integer::from_natural(r),
        &Integer::from_natural(n.clone()),
    );
    if !g.is_one() {
        return Err(Error::NotInvertible);
    }
    let x = if u.is_negative() {
        n.checked_sub(u.magnitude()).expect("|u| < n")
    } else if u.magnitude() >= n {
        divrem_fast(u.magnitude(), n)?.1
    } else {
        u.magnitude().clone()
    };
    debug_assert!(!x.is_zero() && &x < n);
    Ok(x)
}

/// Integer square root with remainder: (s, r) with s^2 + r = a and
/// s^2 <= a < (s+1)^2.
pub fn sqrt_rem(a: &Natural) -> (Natural, Natural) {
    if a.is_zero() {
        return (Natural::zero(), Natural::zero());
    }
    // Newton on x -> (x + a/x) / 2 from an over-estimate seed.
    let mut x = Natural::one().shl_bits(a.bit_len().div_ceil(2));
    loop {
        let (q, _) = divrem_fast(a, &x).expect("nonzero");
        let next = x.add(&q).shr_bits(1);
        if next >= x {
            break;
        }
        x = next;
    }
    while square_auto(&x) > *a {
        x = x.checked_sub(&Natural::one()).unwrap();
    }
    let r = a.checked_sub(&square_auto(&x)).unwrap();
    debug_assert!(r <= x.shl_bits(1));
    (x, r)
}
