use crate::limbcore::{Integer, Natural};

use super::{mul_rec, split_limbs, MulThresholds, Strategy};

/// Toom-Cook 3-way with evaluation points {0, 1, -1, 2, inf} and exact
/// small-constant interpolation (divisions by 2 and 3 only).
pub(super) fn mul(a: &Natural, b: &Natural, t: &MulThresholds, max: Strategy) -> Natural {
    let n = a.limb_len().max(b.limb_len());
    let k = (n + 2) / 3;
    let (a0, a12) = split_limbs(a, k);
    let (a1, a2) = split_limbs(&a12, k);
    let (b0, b12) = split_limbs(b, k);
    let (b1, b2) = split_limbs(&b12, k);

    let eval = |x0: &Natural, x1: &Natural, x2: &Natural| -> (Natural, Natural, Integer, Natural) {
        let at1 = x0.add(x1).add(x2);
        let atm1 = Integer::from_natural(x0.add(x2)).sub(&Integer::from_natural(x1.clone()));
        let at2 = x0.add(&x1.shl_bits(1)).add(&x2.shl_bits(2));
        (x0.clone(), at1, atm1, at2)
    };
    let (pa0, pa1, pam1, pa2) = eval(&a0, &a1, &a2);
    let (pb0, pb1, pbm1, pb2) = eval(&b0, &b1, &b2);

    let mul_n = |x: &Natural, y: &Natural| mul_rec(x, y, t, max);
    let r0 = mul_n(&pa0, &pb0);
    let r1 = mul_n(&pa1, &pb1);
    let rm1 = Integer::from_parts(
        pam1.is_negative() != pbm1.is_negative(),
        mul_n(pam1.magnitude(), pbm1.magnitude()),
    );
    let r2 = mul_n(&pa2, &pb2);
    let rinf = mul_n(&a2, &b2);

    // Interpolation, solving for the five product coefficients:
    //   c2 = (r1 + r(-1))/2 - c0 - c4
    //   A  = (r1 - r(-1))/2 = c1 + c3
    //   B  = r2 - c0 - 4 c2 - 16 c4 = 2 c1 + 8 c3
    //   c3 = (B/2 - A)/3,  c1 = A - c3
    let c0 = Integer::from_natural(r0);
    let c4 = Integer::from_natural(rinf);
    let r1 = Integer::from_natural(r1);
    let r2 = Integer::from_natural(r2);
    let c2 = half(&r1.add(&rm1)).sub(&c0).sub(&c4);
    let a_sum = half(&r1.sub(&rm1));
    let b_sum = r2.sub(&c0).sub(&shl(&c2, 2)).sub(&shl(&c4, 4));
    let c3 = third(&half(&b_sum).sub(&a_sum));
    let c1 = a_sum.sub(&c3);

    let shift = 64 * k as u64;
    let mut acc = nonneg(c0);
    for (i, c) in [c1, c2, c3, c4].into_iter().enumerate() {
        acc = acc.add(&nonneg(c).shl_bits(shift * (i as u64 + 1)));
    }
    acc
}

fn shl(x: &Integer, bits: u64) -> Integer {
    Integer::from_parts(x.is_negative(), x.magnitude().shl_bits(bits))
}

fn half(x: &Integer) -> Integer {
    debug_assert!(x.magnitude().is_even(), "halving an odd interpolation value");
    Integer::from_parts(x.is_negative(), x.magnitude().shr_bits(1))
}

fn third(x: &Integer) -> Integer {
    let (q, r) = x.magnitude().divrem_limb(3);
    debug_assert_eq!(r, 0, "interpolation value not divisible by 3");
    Integer::from_parts(x.is_negative(), q)
}

fn nonneg(x: Integer) -> Natural {
    debug_assert!(!x.is_negative(), "negative product coefficient");
    x.into_magnitude()
}
