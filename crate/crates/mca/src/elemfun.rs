//! Correctly rounded elementary functions and constants.
//!
//! Every function here follows the same recipe: evaluate the value as an
//! exact rational enclosure `[v - err, v + err] * 2^scale` at some working
//! precision, round both endpoints to the target precision, and if they
//! agree that rounding is provably correct. If they disagree the working
//! precision is increased and the evaluation repeated ([`ziv_round`]). Since
//! exp, ln, sin and cos of a nonzero dyadic rational are transcendental, the
//! loop terminates for every input; the iteration cap exists purely as a
//! circuit breaker.
//!
//! Series are summed exactly by binary splitting, so a single evaluation at
//! n-bit working precision costs a small number of n-bit multiplications
//! rather than O(terms) full-precision divisions.

use std::sync::Mutex;

use thiserror::Error;

use crate::limbcore::{Integer, Natural};
use crate::mpfloat::{round_from_parts, Float, InexactFlag, RoundingMode};
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// The enclosure straddled a rounding boundary at every working
    /// precision up to the cap. `lo`/`hi` are the last enclosure endpoints.
    #[error("cannot decide correct rounding of a {prec}-bit result (enclosure {lo} .. {hi})")]
    CannotDecide { prec: u32, lo: String, hi: String },
    /// sin/cos of arguments with astronomically large exponents would need
    /// an equally astronomical approximation of pi.
    #[error("argument exponent {exp} too large for trigonometric reduction")]
    ReductionOverflow { exp: i64 },
}

// ---------------------------------------------------------------------------
// series machinery

/// A hypergeometric-style series: term 0 is `first`, and
/// t_k = t_{k-1} * step_num(k) / step_den(k) for k >= 1.
pub struct SeriesSpec<'a> {
    pub first: Rational,
    pub step_num: Box<dyn Fn(u64) -> Integer + 'a>,
    pub step_den: Box<dyn Fn(u64) -> Integer + 'a>,
}

impl SeriesSpec<'_> {
    fn p(&self, k: u64) -> Integer {
        if k == 0 {
            self.first.numerator().clone()
        } else {
            (self.step_num)(k)
        }
    }

    fn q(&self, k: u64) -> Integer {
        if k == 0 {
            Integer::from_natural(self.first.denominator().clone())
        } else {
            (self.step_den)(k)
        }
    }
}

/// Binary splitting over the index range [a, b). Returns (P, Q, T) with
/// P = p(a)..p(b-1), Q = q(a)..q(b-1) and
/// sum_{k=a}^{b-1} prod_{j=a}^{k} p(j)/q(j) = T / Q.
pub fn binary_split(spec: &SeriesSpec, a: u64, b: u64) -> (Integer, Integer, Integer) {
    assert!(a < b);
    if b - a == 1 {
        let p = spec.p(a);
        (p.clone(), spec.q(a), p)
    } else {
        let m = a + (b - a) / 2;
        let (pl, ql, tl) = binary_split(spec, a, m);
        let (pr, qr, tr) = binary_split(spec, m, b);
        (pl.mul(&pr), ql.mul(&qr), tl.mul(&qr).add(&pl.mul(&tr)))
    }
}

/// Exact sum of the first `terms` terms.
pub fn series_sum(spec: &SeriesSpec, terms: u64) -> Rational {
    if terms == 0 {
        return Rational::zero();
    }
    let (_, q, t) = binary_split(spec, 0, terms);
    Rational::from_integer(t).div(&Rational::from_integer(q))
}

/// Evaluates the continued fraction b(0) + a(1)/(b(1) + a(2)/(b(2) + ...))
/// with `depth` levels (depth 1 gives b(0)) via the convergent recurrence
/// h_i = b_i h_{i-1} + a_i h_{i-2}.
pub fn cf_eval(
    b: impl Fn(u64) -> Integer,
    a: impl Fn(u64) -> Integer,
    depth: u64,
) -> Rational {
    assert!(depth >= 1);
    let (mut h1, mut h2) = (Integer::one(), Integer::zero());
    let (mut k1, mut k2) = (Integer::zero(), Integer::one());
    for i in 0..depth {
        let bi = b(i);
        let ai = if i == 0 { Integer::one() } else { a(i) };
        let h = bi.mul(&h1).add(&ai.mul(&h2));
        let k = bi.mul(&k1).add(&ai.mul(&k2));
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
    }
    Rational::from_integer(h1).div(&Rational::from_integer(k1))
}

// ---------------------------------------------------------------------------
// interval rounding (Ziv's strategy)

/// One evaluation: the true result lies in [value - abs_err, value + abs_err]
/// scaled by 2^scale2. Keeping the power of two separate lets callers avoid
/// astronomically large exact numerators.
pub struct Approx {
    pub value: Rational,
    pub abs_err: Rational,
    pub scale2: i64,
}

/// Working-precision growth for the rounding loop.
#[derive(Debug, Clone, Copy)]
pub struct ZivSchedule {
    pub initial_guard: u32,
    pub guard_cap: u32,
}

impl ZivSchedule {
    pub fn for_precision(p: u32) -> Self {
        ZivSchedule { initial_guard: 32, guard_cap: p.saturating_mul(64).max(256) }
    }
}

/// Rounds `x * 2^scale2` (x an exact rational) once, correctly.
pub fn round_scaled_rational(
    x: &Rational,
    scale2: i64,
    p: u32,
    mode: RoundingMode,
) -> (Float, InexactFlag) {
    if x.is_zero() {
        return (Float::zero(false), InexactFlag::Exact);
    }
    let num = x.numerator().magnitude();
    let den = x.denominator();
    let s = p as u64 + 4 + den.bit_len();
    let (q, r) = crate::divgcd::divrem_fast(&num.shl_bits(s), den).expect("nonzero denominator");
    round_from_parts(x.is_negative(), &q, scale2 - s as i64, !r.is_zero(), p, mode)
}

/// Rounds an exact rational to p bits.
pub fn round_rational(x: &Rational, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    round_scaled_rational(x, 0, p, mode)
}

/// Exact rational value of a finite float.
pub fn rational_from_float(x: &Float) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let mant = x.significand().expect("finite nonzero");
    let unit = x.unit_exponent().unwrap();
    let num = Integer::from_parts(x.is_negative(), mant.clone());
    scale_rational(&Rational::from_integer(num), unit)
}

fn scale_rational(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        x.mul(&Rational::from_integer(Integer::from_natural(
            Natural::one().shl_bits(e as u64),
        )))
    } else {
        Rational::new(x.numerator().clone(), x.denominator().shl_bits((-e) as u64))
    }
}

fn pow2_rational(e: i64) -> Rational {
    assert!(e.unsigned_abs() < 1 << 32, "power of two out of sane range");
    if e >= 0 {
        Rational::from_integer(Integer::from_natural(Natural::one().shl_bits(e as u64)))
    } else {
        Rational::new(Integer::one(), Natural::one().shl_bits((-e) as u64))
    }
}

fn float_as_scaled_rational(x: &Float, scale2: i64) -> Option<Rational> {
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let mant = x.significand()?;
    let num = Integer::from_parts(x.is_negative(), mant.clone());
    Some(scale_rational(
        &Rational::from_integer(num),
        x.unit_exponent().unwrap() - scale2,
    ))
}

/// Repeatedly evaluates `eval` at growing working precision until the whole
/// enclosure rounds to a single p-bit value; that value is then the correct
/// rounding of the true result.
pub fn ziv_round<F>(mut eval: F, p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error>
where
    F: FnMut(u32) -> Approx,
{
    let sched = ZivSchedule::for_precision(p);
    let mut guard = sched.initial_guard;
    loop {
        let a = eval(p + guard);
        debug_assert!(!a.abs_err.is_negative());
        if a.abs_err.is_zero() {
            return Ok(round_scaled_rational(&a.value, a.scale2, p, mode));
        }
        let lo = a.value.sub(&a.abs_err);
        let hi = a.value.add(&a.abs_err);
        let (rl, _) = round_scaled_rational(&lo, a.scale2, p, mode);
        let (rh, _) = round_scaled_rational(&hi, a.scale2, p, mode);
        if rl == rh {
            if rl.is_infinite() {
                let f = if rl.is_negative() {
                    InexactFlag::RoundedDown
                } else {
                    InexactFlag::RoundedUp
                };
                return Ok((rl, f));
            }
            // the flag is decidable once the rounded value leaves the enclosure
            let rq = float_as_scaled_rational(&rl, a.scale2).unwrap();
            if rq < lo {
                return Ok((rl, InexactFlag::RoundedDown));
            }
            if rq > hi {
                return Ok((rl, InexactFlag::RoundedUp));
            }
            // otherwise the true value might equal rl exactly; narrow further
        }
        if guard >= sched.guard_cap {
            let lo_f = round_scaled_rational(&lo, a.scale2, p, RoundingMode::TowardNegative).0;
            let hi_f = round_scaled_rational(&hi, a.scale2, p, RoundingMode::TowardPositive).0;
            return Err(Error::CannotDecide {
                prec: p,
                lo: lo_f.to_interchange(),
                hi: hi_f.to_interchange(),
            });
        }
        guard = (guard + (guard / 2).max(32)).min(sched.guard_cap);
    }
}

// ---------------------------------------------------------------------------
// constants

struct CachedConst {
    /// |value - constant| <= 2^err_exp
    err_exp: i64,
    value: Rational,
}

static LN2_CACHE: Mutex<Option<CachedConst>> = Mutex::new(None);
static PI_CACHE: Mutex<Option<CachedConst>> = Mutex::new(None);

fn cached(cache: &Mutex<Option<CachedConst>>, need_exp: i64) -> Option<Rational> {
    let guard = cache.lock().unwrap();
    guard.as_ref().filter(|c| c.err_exp <= need_exp).map(|c| c.value.clone())
}

fn store(cache: &Mutex<Option<CachedConst>>, err_exp: i64, value: &Rational) {
    let mut guard = cache.lock().unwrap();
    // monotone: only ever replace with a strictly better approximation
    if guard.as_ref().map_or(true, |c| err_exp < c.err_exp) {
        *guard = Some(CachedConst { err_exp, value: value.clone() });
    }
}

/// ln 2 = sum_{j>=1} 1/(j 2^j), accurate to 2^-w.
fn ln2_rational(w: u32) -> Rational {
    let need = -(w as i64);
    if let Some(v) = cached(&LN2_CACHE, need) {
        return v;
    }
    let n = w as u64 + 2;
    let spec = SeriesSpec {
        first: Rational::from_ratio(1, 2),
        step_num: Box::new(|k| Integer::from_u64(k)),
        step_den: Box::new(|k| Integer::from_u64(2 * (k + 1))),
    };
    let v = series_sum(&spec, n);
    store(&LN2_CACHE, -(n as i64), &v);
    v
}

/// arctan(1/q) as an exact partial sum with `terms` terms.
fn arctan_inv_sum(q: u64, terms: u64) -> Rational {
    let q2 = Integer::from_u64(q).mul(&Integer::from_u64(q));
    let spec = SeriesSpec {
        first: Rational::from_ratio(1, q),
        step_num: Box::new(|k| Integer::from_i64(-((2 * k - 1) as i64))),
        step_den: Box::new(move |k| q2.mul(&Integer::from_u64(2 * k + 1))),
    };
    series_sum(&spec, terms)
}

/// pi via Machin's identity 16 arctan(1/5) - 4 arctan(1/239), accurate
/// to 2^-(w+3).
fn pi_rational(w: u32) -> Rational {
    let need = -(w as i64) - 3;
    if let Some(v) = cached(&PI_CACHE, need) {
        return v;
    }
    let n5 = (w as u64 + 8) / 4 + 2;
    let n239 = (w as u64 + 8) / 15 + 2;
    let v = Rational::from_i64(16)
        .mul(&arctan_inv_sum(5, n5))
        .sub(&Rational::from_i64(4).mul(&arctan_inv_sum(239, n239)));
    store(&PI_CACHE, need, &v);
    v
}

pub fn const_ln2(p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error> {
    ziv_round(
        |w| Approx {
            value: ln2_rational(w),
            abs_err: pow2_rational(-(w as i64)),
            scale2: 0,
        },
        p,
        mode,
    )
}

pub fn const_pi(p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error> {
    ziv_round(
        |w| Approx {
            value: pi_rational(w),
            abs_err: pow2_rational(-(w as i64) - 3),
            scale2: 0,
        },
        p,
        mode,
    )
}

// ---------------------------------------------------------------------------
// exp and ln

/// Smallest N with N! >= 2^bits.
fn factorial_terms(bits: u32) -> u64 {
    let mut lg = 0f64;
    let mut n = 0u64;
    while lg < bits as f64 {
        n += 1;
        lg += (n as f64).log2();
    }
    n + 1
}

pub fn f_exp(x: &Float, p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error> {
    if x.is_nan() {
        return Ok((Float::nan(), InexactFlag::Exact));
    }
    if x.is_infinite() {
        return Ok(if x.is_negative() {
            (Float::zero(false), InexactFlag::Exact)
        } else {
            (Float::infinity(false), InexactFlag::Exact)
        });
    }
    if x.is_zero() {
        return Ok(Float::from_u64_exact(1).round_to_precision(p, mode));
    }
    let e = x.exponent().unwrap();
    if e >= 42 {
        // |x| >= 2^42: the result is far outside the exponent range
        return Ok(if x.is_negative() {
            round_from_parts(false, &Natural::one(), crate::mpfloat::EXP_MIN - p as i64 - 64, true, p, mode)
        } else {
            round_from_parts(false, &Natural::one(), crate::mpfloat::EXP_MAX + 8, true, p, mode)
        });
    }
    if e < -(2 * p as i64 + 64) {
        // exp(x) = 1 + x + O(x^2) sits strictly between 1 and 1 +/- 2^-(p+3)
        return Ok(one_plus_tiny(x.is_negative(), p, mode));
    }
    let m = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
    let xr = rational_from_float(x);
    let mbits = 64 - (m.unsigned_abs() | 1).leading_zeros();
    ziv_round(
        |w| {
            // x = m ln2 + r with |r| < 0.7; exp(x) = 2^m exp(r)
            let l = ln2_rational(w + mbits + 8);
            let r = xr.sub(&l.mul(&Rational::from_i64(m)));
            let rn = r.numerator().clone();
            let rd = Integer::from_natural(r.denominator().clone());
            let spec = SeriesSpec {
                first: Rational::one(),
                step_num: Box::new(move |_| rn.clone()),
                step_den: Box::new(move |k| rd.mul(&Integer::from_u64(k))),
            };
            let s = series_sum(&spec, factorial_terms(w + 9));
            Approx { value: s, abs_err: pow2_rational(-(w as i64) - 4), scale2: m }
        },
        p,
        mode,
    )
}

/// A correctly rounded stand-in for any value in (1, 1 + 2^-(p+3)) or
/// (1 - 2^-(p+3), 1): no p-bit representable value or rounding tie lies in
/// either window, so one representative decides the whole interval.
fn one_plus_tiny(below_one: bool, p: u32, mode: RoundingMode) -> (Float, InexactFlag) {
    let scale = Natural::one().shl_bits(p as u64 + 3);
    let mant = if below_one {
        scale.checked_sub(&Natural::one()).unwrap()
    } else {
        scale
    };
    round_from_parts(false, &mant, -(p as i64) - 3, true, p, mode)
}

pub fn f_ln(x: &Float, p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error> {
    if x.is_nan() || x.is_negative() && !x.is_zero() {
        return Ok((Float::nan(), InexactFlag::Exact));
    }
    if x.is_zero() {
        return Ok((Float::infinity(true), InexactFlag::Exact));
    }
    if x.is_infinite() {
        return Ok((Float::infinity(false), InexactFlag::Exact));
    }
    let mant = x.significand().unwrap();
    let prec = x.precision().unwrap() as u64;
    let e = x.exponent().unwrap();
    if e == 0 && mant.trailing_zeros() == Some(prec - 1) {
        return Ok((Float::zero(false), InexactFlag::Exact));
    }
    // x = 2^e * m with m in [1, 2); fold m >= 1.5 into the next binade so the
    // atanh argument stays small on both sides
    let balanced = mant.shl_bits(2) >= Natural::from_u64(3).shl_bits(prec);
    let (zn, zd, e_eff) = if balanced {
        (
            Integer::from_parts(true, Natural::one().shl_bits(prec).checked_sub(mant).unwrap()),
            mant.add(&Natural::one().shl_bits(prec)),
            e + 1,
        )
    } else {
        (
            Integer::from_natural(mant.checked_sub(&Natural::one().shl_bits(prec - 1)).unwrap()),
            mant.add(&Natural::one().shl_bits(prec - 1)),
            e,
        )
    };
    // ln x = e ln2 + 2 atanh(z), z = (m-1)/(m+1)
    let zr = Rational::new(zn, zd);
    let ebits = 64 - (e_eff.unsigned_abs() | 1).leading_zeros();
    ziv_round(
        |w| {
            let mut value = if e_eff == 0 {
                Rational::zero()
            } else {
                ln2_rational(w + ebits + 6).mul(&Rational::from_i64(e_eff))
            };
            if !zr.is_zero() {
                // |z| < 2^-(c-1) with c >= 2, so each extra term is only
                // guaranteed c-1 further bits; sizing by c itself leaves the
                // tail above the claimed error when z sits low in its binade
                let c = (-zr.ilog2()) as u64;
                let n = (w as u64 + 8) / (2 * (c - 1).max(1)) + 2;
                let zn = zr.numerator().clone();
                let zd = Integer::from_natural(zr.denominator().clone());
                let zn2 = zn.mul(&zn);
                let zd2 = zd.mul(&zd);
                let spec = SeriesSpec {
                    first: zr.clone(),
                    step_num: Box::new(move |k| zn2.mul(&Integer::from_u64(2 * k - 1))),
                    step_den: Box::new(move |k| zd2.mul(&Integer::from_u64(2 * k + 1))),
                };
                value = value.add(&Rational::from_i64(2).mul(&series_sum(&spec, n)));
            }
            Approx { value, abs_err: pow2_rational(-(w as i64) - 3), scale2: 0 }
        },
        p,
        mode,
    )
}

// ---------------------------------------------------------------------------
// sin and cos

/// Smallest N with (2N+1)! >= 2^bits (|r| <= 1 tail bound for sin/cos).
fn trig_terms(bits: u32) -> u64 {
    let mut lg = 0f64;
    let mut n = 0u64;
    while lg < bits as f64 {
        n += 1;
        lg += ((2 * n) as f64).log2() + ((2 * n + 1) as f64).log2();
    }
    n + 1
}

/// floor(x + 1/2) of an exact rational.
fn nearest_integer(x: &Rational) -> Integer {
    let num = x
        .numerator()
        .mul(&Integer::from_u64(2))
        .add(&Integer::from_natural(x.denominator().clone()));
    let den = Integer::from_natural(x.denominator().shl_bits(1));
    let (q, r) = num.divrem(&den).unwrap();
    if r.is_negative() {
        q.sub(&Integer::one())
    } else {
        q
    }
}

fn sin_series(r: &Rational, terms: u64) -> Rational {
    let rn = r.numerator().clone();
    let rd = Integer::from_natural(r.denominator().clone());
    let rn2 = rn.mul(&rn).neg();
    let rd2 = rd.mul(&rd);
    let spec = SeriesSpec {
        first: r.clone(),
        step_num: Box::new(move |_| rn2.clone()),
        step_den: Box::new(move |k| rd2.mul(&Integer::from_u64(2 * k * (2 * k + 1)))),
    };
    series_sum(&spec, terms)
}

fn cos_series(r: &Rational, terms: u64) -> Rational {
    let rn = r.numerator().clone();
    let rd = Integer::from_natural(r.denominator().clone());
    let rn2 = rn.mul(&rn).neg();
    let rd2 = rd.mul(&rd);
    let spec = SeriesSpec {
        first: Rational::one(),
        step_num: Box::new(move |_| rn2.clone()),
        step_den: Box::new(move |k| rd2.mul(&Integer::from_u64((2 * k - 1) * 2 * k))),
    };
    series_sum(&spec, terms)
}

fn sin_cos(x: &Float, want_sin: bool, p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error> {
    if x.is_nan() || x.is_infinite() {
        return Ok((Float::nan(), InexactFlag::Exact));
    }
    if x.is_zero() {
        return Ok(if want_sin {
            (x.clone(), InexactFlag::Exact)
        } else {
            Float::from_u64_exact(1).round_to_precision(p, mode)
        });
    }
    let e = x.exponent().unwrap();
    if e > 1 << 21 {
        // would need pi to ~2^e bits
        return Err(Error::ReductionOverflow { exp: e });
    }
    let prec = x.precision().unwrap() as i64;
    if !want_sin && 2 * e <= -(p as i64 + 6) {
        // cos x lies strictly inside (1 - 2^-(p+3), 1)
        return Ok(one_plus_tiny(true, p, mode));
    }
    if want_sin && 2 * e <= -(prec + p as i64 + 8) {
        // sin x lies strictly inside (|x| - ulp-window, |x|), mirrored in
        // sign; a sticky representative in that window rounds identically
        let g = p as u64 + 4;
        let mant = x
            .significand()
            .unwrap()
            .shl_bits(g)
            .checked_sub(&Natural::one())
            .unwrap();
        return Ok(round_from_parts(
            x.is_negative(),
            &mant,
            x.unit_exponent().unwrap() - g as i64,
            true,
            p,
            mode,
        ));
    }
    let xr = rational_from_float(x);
    ziv_round(
        |w| {
            let wi = w as i64;
            // reduce modulo pi/2: x = n pi/2 + r, |r| <~ pi/4
            let lw = w + 10 + e.max(0) as u32 + 2;
            let pi = pi_rational(lw);
            let n = nearest_integer(&xr.mul(&Rational::from_i64(2)).div(&pi));
            let r = xr.sub(&Rational::from_integer(n.clone()).mul(&pi).mul(&Rational::from_ratio(1, 2)));
            let quadrant = {
                let (_, rem) = n.divrem(&Integer::from_i64(4)).unwrap();
                ((rem.to_i64().unwrap() % 4) + 4) % 4
            };
            let terms = trig_terms(w + 8);
            // pick the series for the reduced quadrant
            let shifted = if want_sin { quadrant } else { (quadrant + 1) % 4 };
            let value = match shifted {
                0 => sin_series(&r, terms),
                1 => cos_series(&r, terms),
                2 => sin_series(&r, terms).neg(),
                _ => cos_series(&r, terms).neg(),
            };
            Approx { value, abs_err: pow2_rational(-(wi) - 6), scale2: 0 }
        },
        p,
        mode,
    )
}

pub fn f_sin(x: &Float, p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error> {
    sin_cos(x, true, p, mode)
}

pub fn f_cos(x: &Float, p: u32, mode: RoundingMode) -> Result<(Float, InexactFlag), Error> {
    sin_cos(x, false, p, mode)
}
