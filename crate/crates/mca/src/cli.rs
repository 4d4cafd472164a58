//! Command-line front end: expression evaluation, constant digits, modular
//! tools, and the benchmark harness.
//!
//! Exit codes: 0 success, 2 usage/parse error, 3 domain/math error.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::divgcd;
use crate::elemfun::{self, const_ln2, const_pi, f_cos, f_exp, f_ln, f_sin};
use crate::fastmul::{self, MulThresholds};
use crate::limbcore::{Integer, Natural};
use crate::modring;
use crate::mpfloat::{
    fadd, fdiv, fmul, from_decimal, fsqrt, fsub, to_decimal, Float, RoundingMode,
};

#[derive(Parser)]
#[command(name = "mca", about = "arbitrary-precision arithmetic toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Working precision in bits
    #[arg(short = 'p', long = "precision", default_value_t = 128, global = true)]
    precision: u32,
    /// Rounding mode
    #[arg(long = "mode", value_enum, default_value_t = ModeArg::Nearest, global = true)]
    mode: ModeArg,
    /// Multiplication thresholds config file
    #[arg(long = "thresholds", global = true)]
    thresholds: Option<String>,
    /// Output base for integer subcommands
    #[arg(long = "base", default_value_t = 10, global = true)]
    base: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Nearest,
    Zero,
    Up,
    Down,
}

impl From<ModeArg> for RoundingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Nearest => RoundingMode::NearestEven,
            ModeArg::Zero => RoundingMode::TowardZero,
            ModeArg::Up => RoundingMode::TowardPositive,
            ModeArg::Down => RoundingMode::TowardNegative,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an arithmetic expression
    Eval { expr: String },
    /// Print decimal digits of a constant (pi, e, ln2, sqrt2)
    Digits {
        constant: String,
        #[arg(short = 'n', long = "count", default_value_t = 50)]
        n: usize,
    },
    /// a^e mod n
    Powmod { a: String, e: String, n: String },
    /// Greatest common divisor
    Gcd { a: String, b: String },
    /// Modular inverse of a mod n
    Inv { a: String, n: String },
    /// Chinese remainder reconstruction from residue@modulus pairs
    Crt { pairs: Vec<String> },
    /// Timing table for core operations
    Bench {
        op: String,
        #[arg(long, value_delimiter = ',', default_values_t = [256u64, 512, 1024])]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = 9)]
        reps: u32,
    },
    /// Measure multiplication crossover points and print a thresholds file
    Tune,
}

pub struct CliConfig {
    pub precision: u32,
    pub mode: RoundingMode,
    pub thresholds: MulThresholds,
    pub base: u32,
}

enum CmdError {
    Usage(String),
    Math(String),
}

impl CmdError {
    fn code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Math(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Usage(m) | CmdError::Math(m) => m,
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let thresholds = match &cli.thresholds {
        None => MulThresholds::default(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read thresholds file {path}: {e}");
                    return 2;
                }
            };
            match MulThresholds::parse_config(&text) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: bad thresholds file {path}: {e}");
                    return 2;
                }
            }
        }
    };
    if cli.precision < 2 {
        eprintln!("error: precision must be at least 2 bits");
        return 2;
    }
    if !(2..=36).contains(&cli.base) {
        eprintln!("error: base must be between 2 and 36");
        return 2;
    }
    let cfg = CliConfig {
        precision: cli.precision,
        mode: cli.mode.into(),
        thresholds,
        base: cli.base,
    };
    let result = match &cli.cmd {
        Cmd::Eval { expr } => cmd_eval(expr, &cfg),
        Cmd::Digits { constant, n } => cmd_digits(constant, *n),
        Cmd::Powmod { a, e, n } => cmd_powmod(a, e, n, &cfg),
        Cmd::Gcd { a, b } => cmd_gcd(a, b, &cfg),
        Cmd::Inv { a, n } => cmd_inv(a, n, &cfg),
        Cmd::Crt { pairs } => cmd_crt(pairs, &cfg),
        Cmd::Bench { op, sizes, reps } => cmd_bench(op, sizes, *reps, &cfg),
        Cmd::Tune => cmd_tune(),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

// ---------------------------------------------------------------------------
// integer subcommands

fn parse_natural(s: &str) -> Result<Natural, CmdError> {
    let r = if let Some(hex) = s.strip_prefix("0x") {
        Natural::from_str_radix(hex, 16)
    } else {
        Natural::from_str_radix(s, 10)
    };
    r.map_err(|e| CmdError::Usage(format!("bad integer `{s}`: {e}")))
}

fn show_natural(v: &Natural, base: u32) -> String {
    if base == 16 {
        v.to_canonical_hex()
    } else {
        v.to_str_radix(base).unwrap()
    }
}

fn cmd_powmod(a: &str, e: &str, n: &str, cfg: &CliConfig) -> Result<(), CmdError> {
    let (a, e, n) = (parse_natural(a)?, parse_natural(e)?, parse_natural(n)?);
    let r = modring::mod_pow(&a, &e, &n).map_err(|err| CmdError::Math(err.to_string()))?;
    println!("{}", show_natural(&r, cfg.base));
    Ok(())
}

fn cmd_gcd(a: &str, b: &str, cfg: &CliConfig) -> Result<(), CmdError> {
    let g = divgcd::gcd(&parse_natural(a)?, &parse_natural(b)?);
    println!("{}", show_natural(&g, cfg.base));
    Ok(())
}

fn cmd_inv(a: &str, n: &str, cfg: &CliConfig) -> Result<(), CmdError> {
    let r = divgcd::mod_inverse(&parse_natural(a)?, &parse_natural(n)?)
        .map_err(|err| CmdError::Math(err.to_string()))?;
    println!("{}", show_natural(&r, cfg.base));
    Ok(())
}

fn cmd_crt(pairs: &[String], cfg: &CliConfig) -> Result<(), CmdError> {
    if pairs.is_empty() {
        return Err(CmdError::Usage("crt needs at least one residue@modulus pair".into()));
    }
    let mut residues = Vec::new();
    for p in pairs {
        let (r, n) = p
            .split_once('@')
            .ok_or_else(|| CmdError::Usage(format!("bad pair `{p}`, expected residue@modulus")))?;
        residues.push((parse_natural(r)?, parse_natural(n)?));
    }
    let (x, n) = modring::crt_reconstruct(&residues).map_err(|e| CmdError::Math(e.to_string()))?;
    println!("{} mod {}", show_natural(&x, cfg.base), show_natural(&n, cfg.base));
    Ok(())
}

// ---------------------------------------------------------------------------
// eval

fn cmd_eval(expr: &str, cfg: &CliConfig) -> Result<(), CmdError> {
    let v = eval_expression(expr, cfg.precision, cfg.mode)
        .map_err(|e| match e {
            EvalError::Parse(m) => CmdError::Usage(m),
            EvalError::Math(m) => CmdError::Math(m),
        })?;
    let digits = decimal_digits_for(cfg.precision);
    println!("{}", to_decimal(&v, digits, cfg.mode));
    Ok(())
}

fn decimal_digits_for(p: u32) -> usize {
    ((p as f64 * std::f64::consts::LOG10_2).ceil() as usize).max(1)
}

#[derive(Debug)]
pub enum EvalError {
    Parse(String),
    Math(String),
}

/// Evaluates the expression grammar, rounding after every operator.
pub fn eval_expression(src: &str, p: u32, mode: RoundingMode) -> Result<Float, EvalError> {
    let tokens = lex(src)?;
    let mut parser = ExprParser { tokens, pos: 0, p, mode };
    let v = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(EvalError::Parse(format!(
            "unexpected trailing input at token {}",
            parser.pos
        )));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(src: &str) -> Result<Vec<Tok>, EvalError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent part, only when followed by digits (or sign+digits)
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Num(src[start..i].to_string()));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit())
                {
                    i += 1;
                }
                out.push(Tok::Ident(src[start..i].to_string()));
            }
            _ => return Err(EvalError::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct ExprParser {
    tokens: Vec<Tok>,
    pos: usize,
    p: u32,
    mode: RoundingMode,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), EvalError> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(EvalError::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Float, EvalError> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let r = self.term()?;
                    v = fadd(&v, &r, self.p, self.mode).0;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let r = self.term()?;
                    v = fsub(&v, &r, self.p, self.mode).0;
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> Result<Float, EvalError> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let r = self.unary()?;
                    v = fmul(&v, &r, self.p, self.mode).0;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let r = self.unary()?;
                    v = fdiv(&v, &r, self.p, self.mode).0;
                }
                Some(Tok::Ident(id)) if id == "mod" => {
                    self.bump();
                    let r = self.unary()?;
                    v = integer_mod(&v, &r, self.p, self.mode);
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<Float, EvalError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            let v = self.unary()?;
            return Ok(v.negate());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Float, EvalError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let exp = self.unary()?; // right-associative
            return Ok(self.pow(&base, &exp));
        }
        Ok(base)
    }

    fn pow(&mut self, base: &Float, exp: &Float) -> Float {
        // integer exponents only; anything else is a domain error -> nan
        let Some(e) = float_to_integer(exp).and_then(|i| i.to_i64()) else {
            return Float::nan();
        };
        let mut acc = Float::from_u64_exact(1).round_to_precision(self.p, self.mode).0;
        let mut sq = base.clone();
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = fmul(&acc, &sq, self.p, self.mode).0;
            }
            n >>= 1;
            if n > 0 {
                sq = fmul(&sq, &sq, self.p, self.mode).0;
            }
        }
        if e < 0 {
            let one = Float::from_u64_exact(1);
            acc = fdiv(&one, &acc, self.p, self.mode).0;
        }
        acc
    }

    fn atom(&mut self) -> Result<Float, EvalError> {
        match self.bump() {
            Some(Tok::Num(s)) => from_decimal(&s, self.p, self.mode)
                .map(|(v, _)| v)
                .map_err(|e| EvalError::Parse(e.to_string())),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Some(Tok::Ident(id)) => match id.as_str() {
                "pi" => map_math(const_pi(self.p, self.mode)),
                "ln2" => map_math(const_ln2(self.p, self.mode)),
                "sqrt" | "exp" | "ln" | "sin" | "cos" => {
                    self.expect(Tok::LParen)?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    match id.as_str() {
                        "sqrt" => Ok(fsqrt(&arg, self.p, self.mode).0),
                        "exp" => map_math(f_exp(&arg, self.p, self.mode)),
                        "ln" => map_math(f_ln(&arg, self.p, self.mode)),
                        "sin" => map_math(f_sin(&arg, self.p, self.mode)),
                        _ => map_math(f_cos(&arg, self.p, self.mode)),
                    }
                }
                "gcd" => {
                    self.expect(Tok::LParen)?;
                    let a = self.expr()?;
                    self.expect(Tok::Comma)?;
                    let b = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(integer_gcd(&a, &b, self.p, self.mode))
                }
                other => Err(EvalError::Parse(format!("unknown name `{other}`"))),
            },
            t => Err(EvalError::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

fn map_math(
    r: Result<(Float, crate::mpfloat::InexactFlag), elemfun::Error>,
) -> Result<Float, EvalError> {
    r.map(|(v, _)| v).map_err(|e| EvalError::Math(e.to_string()))
}

/// Exact integer value of a float, when it has one.
fn float_to_integer(x: &Float) -> Option<Integer> {
    if x.is_zero() {
        return Some(Integer::zero());
    }
    let mant = x.significand()?;
    let unit = x.unit_exponent()?;
    if unit >= 0 {
        Some(Integer::from_parts(x.is_negative(), mant.shl_bits(unit as u64)))
    } else {
        let shift = (-unit) as u64;
        if mant.trailing_zeros().unwrap_or(0) >= shift {
            Some(Integer::from_parts(x.is_negative(), mant.shr_bits(shift)))
        } else {
            None
        }
    }
}

fn integer_mod(a: &Float, b: &Float, p: u32, mode: RoundingMode) -> Float {
    match (float_to_integer(a), float_to_integer(b)) {
        (Some(a), Some(b)) if !b.is_zero() => {
            let (_, r) = a.divrem(&b).unwrap();
            Float::from_integer_exact(&r).round_to_precision(p, mode).0
        }
        _ => Float::nan(),
    }
}

fn integer_gcd(a: &Float, b: &Float, p: u32, mode: RoundingMode) -> Float {
    match (float_to_integer(a), float_to_integer(b)) {
        (Some(a), Some(b)) => {
            let g = divgcd::gcd(a.magnitude(), b.magnitude());
            Float::exact_dyadic(false, &g, 0).round_to_precision(p, mode).0
        }
        _ => Float::nan(),
    }
}

// ---------------------------------------------------------------------------
// digits

fn cmd_digits(constant: &str, n: usize) -> Result<(), CmdError> {
    if n < 1 {
        return Err(CmdError::Usage("digit count must be at least 1".into()));
    }
    let s = constant_digits(constant, n)
        .ok_or_else(|| CmdError::Usage(format!("unknown constant `{constant}`")))?;
    println!("{s}");
    Ok(())
}

/// First n significant decimal digits, correct in the last digit; None for an
/// unknown constant name. Digits stream in 50-digit lines.
pub fn constant_digits(constant: &str, n: usize) -> Option<String> {
    // evaluate a two-sided enclosure and widen until both ends print alike
    let mut w = (n as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
    loop {
        let (lo, hi) = constant_enclosure(constant, w)?;
        let down = to_decimal(&lo, n, RoundingMode::NearestEven);
        let up = to_decimal(&hi, n, RoundingMode::NearestEven);
        if down == up {
            return Some(layout_digits(&down, n));
        }
        w += w / 2;
    }
}

fn constant_enclosure(constant: &str, w: u32) -> Option<(Float, Float)> {
    let down = RoundingMode::TowardNegative;
    let up = RoundingMode::TowardPositive;
    let pair = match constant {
        "pi" => (const_pi(w, down).unwrap().0, const_pi(w, up).unwrap().0),
        "ln2" => (const_ln2(w, down).unwrap().0, const_ln2(w, up).unwrap().0),
        "e" => {
            let one = Float::from_u64_exact(1);
            (f_exp(&one, w, down).unwrap().0, f_exp(&one, w, up).unwrap().0)
        }
        "sqrt2" => {
            let two = Float::from_u64_exact(2);
            (fsqrt(&two, w, down).0, fsqrt(&two, w, up).0)
        }
        _ => return None,
    };
    Some(pair)
}

/// Converts "d.ffffe<K>" into positional digits wrapped at 50 per line.
fn layout_digits(sci: &str, n: usize) -> String {
    let (mant, exp) = sci.split_once('e').expect("scientific form");
    let k: i64 = exp.parse().unwrap();
    let mut digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.truncate(n); // drop the "d.0" padding that single-digit output carries
    // constants here are all in (0, 10); lay out around the decimal point
    let (head, tail) = if k >= 0 {
        let split = (k as usize + 1).min(n);
        (format!("{}{}", &digits[..split], if split < n { "." } else { "" }), &digits[split..])
    } else {
        let zeros: String = std::iter::repeat('0').take((-k) as usize - 1).collect();
        (format!("0.{zeros}"), &digits[..])
    };
    let mut out = String::new();
    out.push_str(&head);
    let mut col = 0;
    for c in tail.chars() {
        if col == 50 {
            out.push('\n');
            col = 0;
        }
        out.push(c);
        col += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// bench and tune

fn pseudo_random_natural(limbs: u64, seed: u64) -> Natural {
    let mut x = seed | 1;
    let mut v = Vec::with_capacity(limbs as usize);
    for _ in 0..limbs {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        v.push(x);
    }
    if let Some(top) = v.last_mut() {
        *top |= 1 << 63; // keep the size exact
    }
    Natural::from_limbs(v)
}

fn median_ns(reps: u32, mut f: impl FnMut()) -> u128 {
    for _ in 0..2 {
        f(); // warm-up
    }
    let mut times: Vec<u128> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_nanos()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

fn bench_variants(op: &str, cfg: &CliConfig) -> Result<Vec<(&'static str, Box<dyn Fn(u64)>)>, CmdError> {
    let t = cfg.thresholds;
    Ok(match op {
        "mul" => vec![
            ("schoolbook", Box::new(|s| {
                let a = pseudo_random_natural(s, 0x9e37);
                let b = pseudo_random_natural(s, 0x85eb);
                std::hint::black_box(a.mul_schoolbook(&b));
            }) as Box<dyn Fn(u64)>),
            ("karatsuba", Box::new(|s| {
                let a = pseudo_random_natural(s, 0x9e37);
                let b = pseudo_random_natural(s, 0x85eb);
                std::hint::black_box(fastmul::mul_karatsuba(&a, &b));
            })),
            ("toom3", Box::new(|s| {
                let a = pseudo_random_natural(s, 0x9e37);
                let b = pseudo_random_natural(s, 0x85eb);
                std::hint::black_box(fastmul::mul_toom3(&a, &b));
            })),
            ("ntt", Box::new(|s| {
                let a = pseudo_random_natural(s, 0x9e37);
                let b = pseudo_random_natural(s, 0x85eb);
                std::hint::black_box(fastmul::mul_ntt(&a, &b).unwrap());
            })),
            ("dispatch", Box::new(move |s| {
                let a = pseudo_random_natural(s, 0x9e37);
                let b = pseudo_random_natural(s, 0x85eb);
                std::hint::black_box(fastmul::mul(&a, &b, &t));
            })),
        ],
        "div" => vec![
            ("schoolbook", Box::new(|s| {
                let a = pseudo_random_natural(2 * s, 0x9e37);
                let b = pseudo_random_natural(s, 0x85eb);
                std::hint::black_box(a.divrem_schoolbook(&b).unwrap());
            }) as Box<dyn Fn(u64)>),
            ("newton", Box::new(|s| {
                let a = pseudo_random_natural(2 * s, 0x9e37);
                let b = pseudo_random_natural(s, 0x85eb);
                std::hint::black_box(divgcd::divrem_fast(&a, &b).unwrap());
            })),
        ],
        "gcd" => vec![("binary", Box::new(|s| {
            let a = pseudo_random_natural(s, 0x9e37);
            let b = pseudo_random_natural(s, 0x85eb);
            std::hint::black_box(divgcd::gcd(&a, &b));
        }) as Box<dyn Fn(u64)>)],
        "exp" => vec![("exp", Box::new(|s: u64| {
            let x = Float::from_f64(1.0);
            std::hint::black_box(f_exp(&x, s.max(4) as u32, RoundingMode::NearestEven).unwrap());
        }) as Box<dyn Fn(u64)>)],
        other => {
            return Err(CmdError::Usage(format!(
                "unknown bench op `{other}` (expected mul, div, gcd, or exp)"
            )))
        }
    })
}

fn cmd_bench(op: &str, sizes: &[u64], reps: u32, cfg: &CliConfig) -> Result<(), CmdError> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CmdError::Usage("sizes must be a strictly ascending list".into()));
    }
    let variants = bench_variants(op, cfg)?;
    println!("algo,size,median_ns,ratio_vs_prev,log2_ratio");
    for (name, f) in &variants {
        let mut prev: Option<u128> = None;
        for &s in sizes {
            let ns = median_ns(reps, || f(s));
            match prev {
                None => println!("{name},{s},{ns},,"),
                Some(p) => {
                    let ratio = ns as f64 / p as f64;
                    println!("{name},{s},{ns},{ratio:.3},{:.3}", ratio.log2());
                }
            }
            prev = Some(ns);
        }
    }
    Ok(())
}

fn cmd_tune() -> Result<(), CmdError> {
    let crossover = |mk_a: &dyn Fn(&Natural, &Natural) -> Natural,
                     mk_b: &dyn Fn(&Natural, &Natural) -> Natural,
                     candidates: &[u64],
                     fallback: usize| {
        for &s in candidates {
            let x = pseudo_random_natural(s, 0x9e37);
            let y = pseudo_random_natural(s, 0x85eb);
            let ta = median_ns(5, || {
                std::hint::black_box(mk_a(&x, &y));
            });
            let tb = median_ns(5, || {
                std::hint::black_box(mk_b(&x, &y));
            });
            if tb < ta {
                return s as usize;
            }
        }
        fallback
    };
    let karatsuba_from = crossover(
        &|a, b| a.mul_schoolbook(b),
        &fastmul::mul_karatsuba,
        &[8, 12, 16, 24, 32, 48, 64],
        32,
    );
    let toom3_from = crossover(
        &fastmul::mul_karatsuba,
        &fastmul::mul_toom3,
        &[48, 64, 96, 128, 192, 256],
        128,
    )
    .max(karatsuba_from + 1);
    let ntt_from = crossover(
        &fastmul::mul_toom3,
        &|a, b| fastmul::mul_ntt(a, b).unwrap(),
        &[512, 1024, 2048, 4096, 8192],
        4096,
    )
    .max(toom3_from + 1);
    let t = MulThresholds { karatsuba_from, toom3_from, ntt_from };
    print!("{}", t.to_config_string());
    Ok(())
}
