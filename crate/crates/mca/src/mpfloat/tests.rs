use std::cmp::Ordering;

use super::*;

const ALL_MODES: [RoundingMode; 4] = [
    RoundingMode::NearestEven,
    RoundingMode::TowardZero,
    RoundingMode::TowardPositive,
    RoundingMode::TowardNegative,
];

fn f(v: f64) -> Float {
    Float::from_f64(v)
}

#[test]
fn exact_dyadic_normalizes() {
    let x = Float::exact_dyadic(false, &Natural::from_u64(12), 0); // 1100b
    assert_eq!(x.exponent(), Some(3));
    assert_eq!(x.precision(), Some(2));
    assert_eq!(x.significand().unwrap(), &Natural::from_u64(3));
    let one = Float::from_u64_exact(1);
    assert_eq!(one.precision(), Some(2));
    assert_eq!(one.exponent(), Some(0));
    assert_eq!(one.to_f64(), 1.0);
}

#[test]
fn mul_ties_to_even() {
    // 1.5 * 1.5 = 2.25, exactly halfway between the 3-bit values 2.0 and 2.5
    let (r, flag) = fmul(&f(1.5), &f(1.5), 3, RoundingMode::NearestEven);
    assert_eq!(r.to_f64(), 2.0);
    assert_eq!(flag, InexactFlag::RoundedDown);
    let (r, flag) = fmul(&f(1.5), &f(1.5), 3, RoundingMode::TowardPositive);
    assert_eq!(r.to_f64(), 2.5);
    assert_eq!(flag, InexactFlag::RoundedUp);
}

#[test]
fn add_below_half_truncates() {
    let (r, flag) = fadd(&f(1.0), &f(0.125), 2, RoundingMode::NearestEven);
    assert_eq!(r.to_f64(), 1.0);
    assert_eq!(flag, InexactFlag::RoundedDown);
    let (r, flag) = fadd(&f(1.0), &f(0.125), 2, RoundingMode::TowardPositive);
    assert_eq!(r.to_f64(), 1.5);
    assert_eq!(flag, InexactFlag::RoundedUp);
}

#[test]
fn add_exact_and_cancellation() {
    let (r, flag) = fadd(&f(1.25), &f(0.25), 10, RoundingMode::NearestEven);
    assert_eq!(r.to_f64(), 1.5);
    assert_eq!(flag, InexactFlag::Exact);
    // exact cancellation gives +0 (-0 when rounding toward negative)
    let (r, _) = fadd(&f(3.5), &f(-3.5), 8, RoundingMode::NearestEven);
    assert!(r.is_zero() && !r.is_negative());
    let (r, _) = fadd(&f(3.5), &f(-3.5), 8, RoundingMode::TowardNegative);
    assert!(r.is_zero() && r.is_negative());
    // massive cancellation exposes low-order bits exactly
    let big = Float::exact_dyadic(false, &Natural::one().shl_bits(100), 0);
    let (x, fl) = fadd(&big, &f(1.0), 8, RoundingMode::NearestEven);
    let (y, _) = fadd(&x, &big.negate(), 8, RoundingMode::NearestEven);
    assert_eq!(fl, InexactFlag::RoundedDown);
    assert_eq!(y.to_f64(), 0.0);
}

#[test]
fn far_path_matches_exact_path() {
    // |b| is so far below |a| that the shortcut path triggers; its answer
    // must agree with rounding the exactly computed sum.
    let a_m = Natural::from_u64(0b1011);
    for &a_neg in &[false, true] {
        for &b_neg in &[false, true] {
            let a = Float::exact_dyadic(a_neg, &a_m, 0);
            let b = Float::exact_dyadic(b_neg, &Natural::from_u64(7), -500);
            for mode in ALL_MODES {
                let (got, gflag) = fadd(&a, &b, 10, mode);
                // exact sum: +/-(1011 << 500) +/- 7, scaled by 2^-500
                let big = Integer::from_parts(a_neg, a_m.shl_bits(500));
                let small = Integer::from_parts(b_neg, Natural::from_u64(7));
                let sum = big.add(&small);
                let (want, wflag) =
                    round_from_parts(sum.is_negative(), sum.magnitude(), -500, false, 10, mode);
                assert_eq!(got, want, "mode {mode:?} a_neg {a_neg} b_neg {b_neg}");
                assert_eq!(gflag, wflag);
            }
        }
    }
}

#[test]
fn div_and_sqrt_against_inequalities() {
    // toward-zero results must satisfy r <= exact < r + ulp
    let (r, flag) = fdiv(&f(1.0), &f(3.0), 40, RoundingMode::TowardZero);
    assert_eq!(flag, InexactFlag::RoundedDown);
    let m = r.significand().unwrap().clone();
    let u = r.unit_exponent().unwrap();
    // 3 * m * 2^u < 1 <= 3 * (m+1) * 2^u, with u = -41 here
    let three_m = m.mul_schoolbook(&Natural::from_u64(3));
    let one_scaled = Natural::one().shl_bits((-u) as u64);
    assert!(three_m < one_scaled);
    let three_m1 = m.add(&Natural::one()).mul_schoolbook(&Natural::from_u64(3));
    assert!(three_m1 > one_scaled);

    let (s, flag) = fsqrt(&f(2.0), 20, RoundingMode::TowardZero);
    assert_eq!(flag, InexactFlag::RoundedDown);
    let m = s.significand().unwrap().clone();
    let u = s.unit_exponent().unwrap();
    let two_scaled = Natural::from_u64(2).shl_bits(2 * (-u) as u64);
    assert!(m.square_schoolbook() < two_scaled);
    assert!(m.add(&Natural::one()).square_schoolbook() > two_scaled);
}

#[test]
fn sqrt_exact_squares() {
    let (s, flag) = fsqrt(&f(9.0), 12, RoundingMode::NearestEven);
    assert_eq!(s.to_f64(), 3.0);
    assert_eq!(flag, InexactFlag::Exact);
    let (s, flag) = fsqrt(&f(0.25), 12, RoundingMode::TowardPositive);
    assert_eq!(s.to_f64(), 0.5);
    assert_eq!(flag, InexactFlag::Exact);
}

#[test]
fn ieee_specials() {
    let inf = Float::infinity(false);
    assert!(fadd(&inf, &inf.negate(), 8, RoundingMode::NearestEven).0.is_nan());
    assert!(fmul(&inf, &Float::zero(false), 8, RoundingMode::NearestEven).0.is_nan());
    assert!(fdiv(&Float::zero(false), &Float::zero(true), 8, RoundingMode::NearestEven)
        .0
        .is_nan());
    let (r, _) = fdiv(&f(-1.0), &Float::zero(false), 8, RoundingMode::NearestEven);
    assert!(r.is_infinite() && r.is_negative());
    assert!(fsqrt(&f(-2.0), 8, RoundingMode::NearestEven).0.is_nan());
    let (r, _) = fsqrt(&Float::zero(true), 8, RoundingMode::NearestEven);
    assert!(r.is_zero() && r.is_negative());
    assert_eq!(f(f64::NAN).cmp_numeric(&f(1.0)), None);
    assert_eq!(
        Float::zero(true).cmp_numeric(&Float::zero(false)),
        Some(Ordering::Equal)
    );
}

#[test]
fn compare_mixed_precision() {
    let a = f(1.5); // p = 53 image of the double
    let b = Float::exact_dyadic(false, &Natural::from_u64(0b1100), -3); // also 1.5
    assert_eq!(a.cmp_numeric(&b), Some(Ordering::Equal));
    assert_eq!(f(1.4).cmp_numeric(&b), Some(Ordering::Less));
    assert_eq!(f(-2.0).cmp_numeric(&f(1.0)), Some(Ordering::Less));
}

#[test]
fn rounding_matches_hardware_doubles() {
    // random double arithmetic at p = 53 must reproduce the host FPU
    // (default x86-64/aarch64 mode is nearest-even)
    let mut seed = 0x243f6a8885a308d3u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    for i in 0..500 {
        let a = f64::from_bits(next() >> 2 | 0x3ff0_0000_0000_0000);
        let b = f64::from_bits(next() >> 2 | 0x3ff0_0000_0000_0000);
        let (a, b) = (a * ((next() % 65536) as f64 + 0.5), b);
        if !a.is_finite() || !b.is_finite() {
            continue;
        }
        let fa = Float::from_f64(a);
        let fb = Float::from_f64(b);
        let mode = RoundingMode::NearestEven;
        assert_eq!(fadd(&fa, &fb, 53, mode).0.to_f64(), a + b, "add case {i}");
        assert_eq!(fmul(&fa, &fb, 53, mode).0.to_f64(), a * b, "mul case {i}");
        assert_eq!(fdiv(&fa, &fb, 53, mode).0.to_f64(), a / b, "div case {i}");
        assert_eq!(fsqrt(&fa, 53, mode).0.to_f64(), a.sqrt(), "sqrt case {i}");
    }
}

#[test]
fn decimal_parsing() {
    let (x, flag) = from_decimal("0.1", 53, RoundingMode::NearestEven).unwrap();
    assert_eq!(x, Float::from_f64(0.1));
    assert_eq!(flag, InexactFlag::RoundedUp); // 0.1 rounds up in binary64
    let (x, flag) = from_decimal("-3.5e2", 30, RoundingMode::NearestEven).unwrap();
    assert_eq!(x.to_f64(), -350.0);
    assert_eq!(flag, InexactFlag::Exact);
    let (x, _) = from_decimal("2.5e-1", 10, RoundingMode::NearestEven).unwrap();
    assert_eq!(x.to_f64(), 0.25);
    assert!(from_decimal("1.2.3", 10, RoundingMode::NearestEven).is_err());
    assert!(from_decimal("e5", 10, RoundingMode::NearestEven).is_err());
    assert!(from_decimal("", 10, RoundingMode::NearestEven).is_err());
    // saturating exponents resolve to overflow / underflow
    let (x, _) = from_decimal("1e99999999999999999999", 10, RoundingMode::NearestEven).unwrap();
    assert!(x.is_infinite());
    let (x, _) = from_decimal("1e-99999999999999999999", 10, RoundingMode::NearestEven).unwrap();
    assert!(x.is_zero());
}

#[test]
fn decimal_rendering() {
    let (third, _) = fdiv(&f(1.0), &f(3.0), 120, RoundingMode::NearestEven);
    assert_eq!(
        to_decimal(&third, 10, RoundingMode::NearestEven),
        "3.333333333e-1"
    );
    assert_eq!(to_decimal(&f(-350.0), 4, RoundingMode::NearestEven), "-3.500e2");
    assert_eq!(to_decimal(&f(1.0), 1, RoundingMode::NearestEven), "1.0e0");
    assert_eq!(to_decimal(&Float::zero(false), 5, RoundingMode::NearestEven), "0");
    assert_eq!(to_decimal(&Float::infinity(true), 5, RoundingMode::NearestEven), "-inf");
    // carry across a power of ten: 9.97 at 2 digits is 1.0e1
    let (x, _) = from_decimal("9.97", 60, RoundingMode::NearestEven).unwrap();
    assert_eq!(to_decimal(&x, 2, RoundingMode::NearestEven), "1.0e1");
    assert_eq!(to_decimal(&x, 2, RoundingMode::TowardZero), "9.9e0");
}

#[test]
fn decimal_round_trip_doubles() {
    // 17 significant digits uniquely identify a binary64 value
    let mut bits = 0x400921fb54442d18u64; // pi
    for _ in 0..100 {
        bits = bits.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let v = f64::from_bits(bits % (0x7fe << 52));
        if !v.is_finite() || v == 0.0 {
            continue;
        }
        let s = to_decimal(&Float::from_f64(v), 17, RoundingMode::NearestEven);
        let (back, _) = from_decimal(&s, 53, RoundingMode::NearestEven).unwrap();
        assert_eq!(back.to_f64(), v, "string {s}");
    }
}

#[test]
fn interchange_round_trip() {
    for v in [1.0, -0.1, 1.5e300, -3.0e-200, 0.0, -0.0, f64::INFINITY] {
        let x = Float::from_f64(v);
        let s = x.to_interchange();
        assert_eq!(Float::from_interchange(&s).unwrap(), x, "via {s}");
    }
    assert_eq!(Float::from_interchange("nan").unwrap(), Float::nan());
    let x = Float::exact_dyadic(false, &Natural::from_u64(3), -1);
    assert_eq!(x.to_interchange(), "+0x3p-1:2");
    // significand width must match the declared precision
    assert!(Float::from_interchange("+0x3p-1:5").is_err());
    assert!(Float::from_interchange("0x3p-1").is_err());
}

#[test]
fn overflow_and_underflow_per_mode() {
    let huge = Float {
        repr: Repr::Finite { neg: false, exp: EXP_MAX, prec: 4, mant: Natural::from_u64(15) },
    };
    let (r, flag) = fmul(&huge, &f(2.0), 4, RoundingMode::NearestEven);
    assert!(r.is_infinite() && !r.is_negative());
    assert_eq!(flag, InexactFlag::RoundedUp);
    let (r, _) = fmul(&huge, &f(2.0), 4, RoundingMode::TowardZero);
    assert_eq!(r.exponent(), Some(EXP_MAX));
    assert_eq!(r.significand().unwrap(), &Natural::from_u64(15));
    let (r, _) = fmul(&huge.negate(), &f(2.0), 4, RoundingMode::TowardPositive);
    assert_eq!(r.exponent(), Some(EXP_MAX));
    assert!(r.is_negative());

    let tiny = Float {
        repr: Repr::Finite { neg: false, exp: EXP_MIN, prec: 4, mant: Natural::from_u64(8) },
    };
    let (r, flag) = fmul(&tiny, &f(0.25), 4, RoundingMode::NearestEven);
    assert!(r.is_zero());
    assert_eq!(flag, InexactFlag::RoundedDown);
    let (r, _) = fmul(&tiny, &f(0.25), 4, RoundingMode::TowardPositive);
    assert_eq!(r.exponent(), Some(EXP_MIN));
    // 0.75 * smallest normal rounds up to the smallest normal under nearest
    let (r, flag) = fmul(&tiny, &f(0.75), 4, RoundingMode::NearestEven);
    assert_eq!(r.exponent(), Some(EXP_MIN));
    assert_eq!(flag, InexactFlag::RoundedUp);
}

#[test]
fn round_to_precision_widening_is_exact() {
    let x = f(0.1);
    let (y, flag) = x.round_to_precision(200, RoundingMode::NearestEven);
    assert_eq!(flag, InexactFlag::Exact);
    assert_eq!(y.cmp_numeric(&x), Some(Ordering::Equal));
    let (z, flag) = x.round_to_precision(10, RoundingMode::TowardZero);
    assert_eq!(flag, InexactFlag::RoundedDown);
    assert!(z.cmp_numeric(&x) == Some(Ordering::Less));
}
