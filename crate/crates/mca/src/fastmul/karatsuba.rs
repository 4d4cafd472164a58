use crate::limbcore::Natural;

use super::{mul_rec, split_limbs, MulThresholds, Strategy};

/// Karatsuba three-multiplication split:
///   a = a0 + a1 B,  b = b0 + b1 B,  B = 2^(64 m)
///   a b = z0 + ((a0+a1)(b0+b1) - z0 - z2) B + z2 B^2
pub(super) fn mul(a: &Natural, b: &Natural, t: &MulThresholds, max: Strategy) -> Natural {
    let n = a.limb_len().max(b.limb_len());
    let m = (n + 1) / 2;
    let (a0, a1) = split_limbs(a, m);
    let (b0, b1) = split_limbs(b, m);
    let z0 = mul_rec(&a0, &b0, t, max);
    let z2 = mul_rec(&a1, &b1, t, max);
    let z1 = mul_rec(&a0.add(&a1), &b0.add(&b1), t, max)
        .checked_sub(&z0)
        .and_then(|d| d.checked_sub(&z2))
        .expect("middle Karatsuba term is nonnegative");
    z0.add(&z1.shl_bits(64 * m as u64))
        .add(&z2.shl_bits(128 * m as u64))
}
