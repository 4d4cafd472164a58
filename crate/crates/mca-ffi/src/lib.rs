//! C ABI for the mca library.
//!
//! Conventions:
//! - `McaInt` and `McaFloat` are opaque heap handles; every constructor has a
//!   matching `_free`, and strings returned through `char **` must be released
//!   with `mca_str_free`.
//! - Every fallible call returns an `McaStatus`; out-parameters are written
//!   only on `MCA_STATUS_OK`.
//! - No call unwinds across the boundary; internal panics surface as
//!   `MCA_STATUS_INTERNAL_PANIC`.

use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mca::elemfun;
use mca::limbcore::{Integer, Natural};
use mca::modring;
use mca::mpfloat::{self, Float, InexactFlag, RoundingMode};

/// Result code of every fallible FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum McaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    MathError = 5,
    CannotDecide = 6,
    InternalPanic = 7,
}

/// Rounding mode selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum McaRound {
    Nearest = 0,
    Zero = 1,
    Up = 2,
    Down = 3,
}

impl From<McaRound> for RoundingMode {
    fn from(m: McaRound) -> Self {
        match m {
            McaRound::Nearest => RoundingMode::NearestEven,
            McaRound::Zero => RoundingMode::TowardZero,
            McaRound::Up => RoundingMode::TowardPositive,
            McaRound::Down => RoundingMode::TowardNegative,
        }
    }
}

/// Direction of the returned value relative to the exact result.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum McaTernary {
    Exact = 0,
    Low = 1,
    High = 2,
}

impl From<InexactFlag> for McaTernary {
    fn from(f: InexactFlag) -> Self {
        match f {
            InexactFlag::Exact => McaTernary::Exact,
            InexactFlag::RoundedDown => McaTernary::Low,
            InexactFlag::RoundedUp => McaTernary::High,
        }
    }
}

/// Opaque arbitrary-precision integer.
pub struct McaInt(Integer);

/// Opaque correctly rounded float.
pub struct McaFloat(Float);

fn guarded(f: impl FnOnce() -> McaStatus) -> McaStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(McaStatus::InternalPanic)
}

/// # Safety: `p` must be a valid NUL-terminated string or null.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, McaStatus> {
    if p.is_null() {
        return Err(McaStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| McaStatus::InvalidUtf8)
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, McaStatus> {
    p.as_ref().ok_or(McaStatus::NullArgument)
}

fn write_handle<T>(out: *mut *mut T, v: T) -> McaStatus {
    if out.is_null() {
        return McaStatus::NullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(v)) };
    McaStatus::Ok
}

fn write_string(out: *mut *mut c_char, s: String) -> McaStatus {
    if out.is_null() {
        return McaStatus::NullArgument;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            McaStatus::Ok
        }
        Err(_) => McaStatus::InternalPanic,
    }
}

fn write_flag(flag_out: *mut McaTernary, flag: InexactFlag) {
    if !flag_out.is_null() {
        unsafe { *flag_out = flag.into() };
    }
}

/// Releases a string returned by any `*_to_str` / `*_to_decimal` call.
#[no_mangle]
pub unsafe extern "C" fn mca_str_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// integers

/// Parses an integer in the given base (2..=36); a `0x` prefix is honored
/// when base is 16.
#[no_mangle]
pub unsafe extern "C" fn mca_int_from_str(
    s: *const c_char,
    base: u32,
    out: *mut *mut McaInt,
) -> McaStatus {
    guarded(|| {
        let s = match read_str(s) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let body = if base == 16 { s.strip_prefix("0x").unwrap_or(s) } else { s };
        match Integer::from_str_radix(body, base) {
            Ok(v) => write_handle(out, McaInt(v)),
            Err(_) => McaStatus::ParseError,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mca_int_to_str(
    x: *const McaInt,
    base: u32,
    out: *mut *mut c_char,
) -> McaStatus {
    guarded(|| {
        let x = match deref(x) {
            Ok(x) => x,
            Err(e) => return e,
        };
        match x.0.to_str_radix(base) {
            Ok(s) => write_string(out, s),
            Err(_) => McaStatus::InvalidArgument,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mca_int_free(x: *mut McaInt) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

macro_rules! int_binop {
    ($name:ident, $method:ident) => {
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a: *const McaInt,
            b: *const McaInt,
            out: *mut *mut McaInt,
        ) -> McaStatus {
            guarded(|| {
                let (a, b) = match (deref(a), deref(b)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => return e,
                };
                write_handle(out, McaInt(a.0.$method(&b.0)))
            })
        }
    };
}

int_binop!(mca_int_add, add);
int_binop!(mca_int_sub, sub);
int_binop!(mca_int_mul, mul);

/// Truncating division; the remainder has the dividend's sign.
#[no_mangle]
pub unsafe extern "C" fn mca_int_divrem(
    a: *const McaInt,
    b: *const McaInt,
    quot: *mut *mut McaInt,
    rem: *mut *mut McaInt,
) -> McaStatus {
    guarded(|| {
        let (a, b) = match (deref(a), deref(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        match a.0.divrem(&b.0) {
            Ok((q, r)) => {
                let st = write_handle(quot, McaInt(q));
                if st != McaStatus::Ok {
                    return st;
                }
                write_handle(rem, McaInt(r))
            }
            Err(_) => McaStatus::MathError,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mca_int_cmp(
    a: *const McaInt,
    b: *const McaInt,
    out: *mut c_int,
) -> McaStatus {
    guarded(|| {
        let (a, b) = match (deref(a), deref(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        if out.is_null() {
            return McaStatus::NullArgument;
        }
        *out = match a.0.cmp(&b.0) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        };
        McaStatus::Ok
    })
}

fn nonneg(x: &Integer) -> Result<&Natural, McaStatus> {
    if x.is_negative() {
        Err(McaStatus::InvalidArgument)
    } else {
        Ok(x.magnitude())
    }
}

#[no_mangle]
pub unsafe extern "C" fn mca_int_gcd(
    a: *const McaInt,
    b: *const McaInt,
    out: *mut *mut McaInt,
) -> McaStatus {
    guarded(|| {
        let (a, b) = match (deref(a), deref(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let g = mca::divgcd::gcd(a.0.magnitude(), b.0.magnitude());
        write_handle(out, McaInt(Integer::from_natural(g)))
    })
}

/// a^e mod n for non-negative a, e and n >= 2.
#[no_mangle]
pub unsafe extern "C" fn mca_int_powmod(
    a: *const McaInt,
    e: *const McaInt,
    n: *const McaInt,
    out: *mut *mut McaInt,
) -> McaStatus {
    guarded(|| {
        let (a, e, n) = match (deref(a), deref(e), deref(n)) {
            (Ok(a), Ok(e), Ok(n)) => (a, e, n),
            (Err(er), _, _) | (_, Err(er), _) | (_, _, Err(er)) => return er,
        };
        let (a, e, n) = match (nonneg(&a.0), nonneg(&e.0), nonneg(&n.0)) {
            (Ok(a), Ok(e), Ok(n)) => (a, e, n),
            _ => return McaStatus::InvalidArgument,
        };
        match modring::mod_pow(a, e, n) {
            Ok(r) => write_handle(out, McaInt(Integer::from_natural(r))),
            Err(_) => McaStatus::MathError,
        }
    })
}

/// Modular inverse of a mod n; fails with `MCA_STATUS_MATH_ERROR` when
/// gcd(a, n) != 1.
#[no_mangle]
pub unsafe extern "C" fn mca_int_invmod(
    a: *const McaInt,
    n: *const McaInt,
    out: *mut *mut McaInt,
) -> McaStatus {
    guarded(|| {
        let (a, n) = match (deref(a), deref(n)) {
            (Ok(a), Ok(n)) => (a, n),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let (a, n) = match (nonneg(&a.0), nonneg(&n.0)) {
            (Ok(a), Ok(n)) => (a, n),
            _ => return McaStatus::InvalidArgument,
        };
        match mca::divgcd::mod_inverse(a, n) {
            Ok(r) => write_handle(out, McaInt(Integer::from_natural(r))),
            Err(_) => McaStatus::MathError,
        }
    })
}

// ---------------------------------------------------------------------------
// floats

#[no_mangle]
pub unsafe extern "C" fn mca_float_free(x: *mut McaFloat) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Parses a decimal string ("1.25e-3") and rounds it once to `prec` bits.
#[no_mangle]
pub unsafe extern "C" fn mca_float_from_decimal(
    s: *const c_char,
    prec: u32,
    round: McaRound,
    out: *mut *mut McaFloat,
    flag_out: *mut McaTernary,
) -> McaStatus {
    guarded(|| {
        let s = match read_str(s) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if prec < 2 {
            return McaStatus::InvalidArgument;
        }
        match mpfloat::from_decimal(s, prec, round.into()) {
            Ok((v, flag)) => {
                write_flag(flag_out, flag);
                write_handle(out, McaFloat(v))
            }
            Err(_) => McaStatus::ParseError,
        }
    })
}

/// Renders the value with `digits` significant decimal digits.
#[no_mangle]
pub unsafe extern "C" fn mca_float_to_decimal(
    x: *const McaFloat,
    digits: usize,
    round: McaRound,
    out: *mut *mut c_char,
) -> McaStatus {
    guarded(|| {
        let x = match deref(x) {
            Ok(x) => x,
            Err(e) => return e,
        };
        if digits < 1 {
            return McaStatus::InvalidArgument;
        }
        write_string(out, mpfloat::to_decimal(&x.0, digits, round.into()))
    })
}

/// Exact textual form (`+0x<hex>p<exp>:<prec>`), reparsable bit for bit.
#[no_mangle]
pub unsafe extern "C" fn mca_float_to_interchange(
    x: *const McaFloat,
    out: *mut *mut c_char,
) -> McaStatus {
    guarded(|| {
        let x = match deref(x) {
            Ok(x) => x,
            Err(e) => return e,
        };
        write_string(out, x.0.to_interchange())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mca_float_from_interchange(
    s: *const c_char,
    out: *mut *mut McaFloat,
) -> McaStatus {
    guarded(|| {
        let s = match read_str(s) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match Float::from_interchange(s) {
            Ok(v) => write_handle(out, McaFloat(v)),
            Err(_) => McaStatus::ParseError,
        }
    })
}

macro_rules! float_binop {
    ($name:ident, $func:path) => {
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a: *const McaFloat,
            b: *const McaFloat,
            prec: u32,
            round: McaRound,
            out: *mut *mut McaFloat,
            flag_out: *mut McaTernary,
        ) -> McaStatus {
            guarded(|| {
                let (a, b) = match (deref(a), deref(b)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => return e,
                };
                if prec < 2 {
                    return McaStatus::InvalidArgument;
                }
                let (v, flag) = $func(&a.0, &b.0, prec, round.into());
                write_flag(flag_out, flag);
                write_handle(out, McaFloat(v))
            })
        }
    };
}

float_binop!(mca_float_add, mpfloat::fadd);
float_binop!(mca_float_sub, mpfloat::fsub);
float_binop!(mca_float_mul, mpfloat::fmul);
float_binop!(mca_float_div, mpfloat::fdiv);

#[no_mangle]
pub unsafe extern "C" fn mca_float_sqrt(
    a: *const McaFloat,
    prec: u32,
    round: McaRound,
    out: *mut *mut McaFloat,
    flag_out: *mut McaTernary,
) -> McaStatus {
    guarded(|| {
        let a = match deref(a) {
            Ok(a) => a,
            Err(e) => return e,
        };
        if prec < 2 {
            return McaStatus::InvalidArgument;
        }
        let (v, flag) = mpfloat::fsqrt(&a.0, prec, round.into());
        write_flag(flag_out, flag);
        write_handle(out, McaFloat(v))
    })
}

fn elem_result(
    r: Result<(Float, InexactFlag), elemfun::Error>,
    out: *mut *mut McaFloat,
    flag_out: *mut McaTernary,
) -> McaStatus {
    match r {
        Ok((v, flag)) => {
            write_flag(flag_out, flag);
            write_handle(out, McaFloat(v))
        }
        Err(elemfun::Error::CannotDecide { .. }) => McaStatus::CannotDecide,
        Err(elemfun::Error::ReductionOverflow { .. }) => McaStatus::MathError,
    }
}

macro_rules! float_elem {
    ($name:ident, $func:path) => {
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a: *const McaFloat,
            prec: u32,
            round: McaRound,
            out: *mut *mut McaFloat,
            flag_out: *mut McaTernary,
        ) -> McaStatus {
            guarded(|| {
                let a = match deref(a) {
                    Ok(a) => a,
                    Err(e) => return e,
                };
                if prec < 2 {
                    return McaStatus::InvalidArgument;
                }
                elem_result($func(&a.0, prec, round.into()), out, flag_out)
            })
        }
    };
}

float_elem!(mca_float_exp, elemfun::f_exp);
float_elem!(mca_float_ln, elemfun::f_ln);
float_elem!(mca_float_sin, elemfun::f_sin);
float_elem!(mca_float_cos, elemfun::f_cos);

macro_rules! float_const {
    ($name:ident, $func:path) => {
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            prec: u32,
            round: McaRound,
            out: *mut *mut McaFloat,
            flag_out: *mut McaTernary,
        ) -> McaStatus {
            guarded(|| {
                if prec < 2 {
                    return McaStatus::InvalidArgument;
                }
                elem_result($func(prec, round.into()), out, flag_out)
            })
        }
    };
}

float_const!(mca_float_pi, elemfun::const_pi);
float_const!(mca_float_ln2, elemfun::const_ln2);

/// Numeric comparison; fails with `MCA_STATUS_MATH_ERROR` when either side
/// is NaN. +0 and -0 compare equal.
#[no_mangle]
pub unsafe extern "C" fn mca_float_cmp(
    a: *const McaFloat,
    b: *const McaFloat,
    out: *mut c_int,
) -> McaStatus {
    guarded(|| {
        let (a, b) = match (deref(a), deref(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        if out.is_null() {
            return McaStatus::NullArgument;
        }
        match a.0.cmp_numeric(&b.0) {
            Some(ord) => {
                *out = match ord {
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1,
                };
                McaStatus::Ok
            }
            None => McaStatus::MathError,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn int_from(s: &str) -> *mut McaInt {
        let mut out = ptr::null_mut();
        assert_eq!(mca_int_from_str(cstr(s).as_ptr(), 10, &mut out), McaStatus::Ok);
        out
    }

    unsafe fn take_str(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        mca_str_free(p);
        s
    }

    #[test]
    fn integer_round_trip_and_arithmetic() {
        unsafe {
            let a = int_from("123456789123456789123456789");
            let b = int_from("-987654321");
            let mut sum = ptr::null_mut();
            assert_eq!(mca_int_add(a, b, &mut sum), McaStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(mca_int_to_str(sum, 10, &mut s), McaStatus::Ok);
            assert_eq!(take_str(s), "123456789123456788135802468");
            let mut q = ptr::null_mut();
            let mut r = ptr::null_mut();
            assert_eq!(mca_int_divrem(a, b, &mut q, &mut r), McaStatus::Ok);
            let zero = int_from("0");
            let mut q2 = ptr::null_mut();
            let mut r2 = ptr::null_mut();
            assert_eq!(mca_int_divrem(a, zero, &mut q2, &mut r2), McaStatus::MathError);
            for h in [a, b, sum, q, r, zero] {
                mca_int_free(h);
            }
        }
    }

    #[test]
    fn null_and_parse_errors() {
        unsafe {
            let mut out = ptr::null_mut();
            assert_eq!(mca_int_from_str(ptr::null(), 10, &mut out), McaStatus::NullArgument);
            assert_eq!(
                mca_int_from_str(cstr("12x").as_ptr(), 10, &mut out),
                McaStatus::ParseError
            );
            let mut fout = ptr::null_mut();
            assert_eq!(
                mca_float_from_decimal(cstr("1..2").as_ptr(), 53, McaRound::Nearest, &mut fout, ptr::null_mut()),
                McaStatus::ParseError
            );
        }
    }

    #[test]
    fn modular_helpers() {
        unsafe {
            let (a, e, n) = (int_from("2"), int_from("10"), int_from("1000"));
            let mut out = ptr::null_mut();
            assert_eq!(mca_int_powmod(a, e, n, &mut out), McaStatus::Ok);
            let mut s = ptr::null_mut();
            mca_int_to_str(out, 10, &mut s);
            assert_eq!(take_str(s), "24");
            let neg = int_from("-3");
            assert_eq!(mca_int_powmod(neg, e, n, &mut out), McaStatus::InvalidArgument);
            let (x, m) = (int_from("2"), int_from("4"));
            assert_eq!(mca_int_invmod(x, m, &mut out), McaStatus::MathError);
            for h in [a, e, n, out, neg, x, m] {
                mca_int_free(h);
            }
        }
    }

    #[test]
    fn float_pipeline() {
        unsafe {
            let mut x = ptr::null_mut();
            let mut flag = McaTernary::Exact;
            assert_eq!(
                mca_float_from_decimal(cstr("0.1").as_ptr(), 53, McaRound::Nearest, &mut x, &mut flag),
                McaStatus::Ok
            );
            assert_eq!(flag, McaTernary::High);
            let mut y = ptr::null_mut();
            assert_eq!(
                mca_float_mul(x, x, 53, McaRound::Nearest, &mut y, &mut flag),
                McaStatus::Ok
            );
            let mut s = ptr::null_mut();
            assert_eq!(mca_float_to_decimal(y, 20, McaRound::Nearest, &mut s), McaStatus::Ok);
            assert_eq!(take_str(s), "1.0000000000000001943e-2"); // (nearest(0.1))^2
            let mut pi = ptr::null_mut();
            assert_eq!(mca_float_pi(113, McaRound::Nearest, &mut pi, &mut flag), McaStatus::Ok);
            let mut spi = ptr::null_mut();
            let mut sin_pi = ptr::null_mut();
            assert_eq!(mca_float_sin(pi, 53, McaRound::Nearest, &mut sin_pi, &mut flag), McaStatus::Ok);
            assert_eq!(mca_float_to_decimal(sin_pi, 3, McaRound::Nearest, &mut spi), McaStatus::Ok);
            let rendered = take_str(spi);
            assert!(rendered.ends_with("e-35"), "sin(round(pi)) tiny, got {rendered}");
            // interchange round trip
            let mut txt = ptr::null_mut();
            assert_eq!(mca_float_to_interchange(y, &mut txt), McaStatus::Ok);
            let text = take_str(txt);
            let mut back = ptr::null_mut();
            assert_eq!(mca_float_from_interchange(cstr(&text).as_ptr(), &mut back), McaStatus::Ok);
            let mut ord = -7;
            assert_eq!(mca_float_cmp(y, back, &mut ord), McaStatus::Ok);
            assert_eq!(ord, 0);
            for h in [x, y, pi, sin_pi, back] {
                mca_float_free(h);
            }
        }
    }
}
