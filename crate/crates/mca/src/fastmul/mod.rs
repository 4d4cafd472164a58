//! Subquadratic and quasi-linear multiplication: Karatsuba, Toom-3 and a
//! three-prime NTT with CRT recombination, behind a size-dispatching front
//! door. All paths produce output bit-identical to schoolbook.

mod karatsuba;
mod ntt;
mod toom3;

use crate::limbcore::Natural;

pub use ntt::{mul_ntt, ntt_forward, ntt_inverse, NttPlan, NttPrime};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operand size exceeds the supported transform length")]
    SizeUnsupported,
    #[error("transform length must be a power of two within the plan limit")]
    BadLength,
    #[error("bad threshold config: {0}")]
    BadConfig(String),
}

/// Crossover sizes, in limbs, between the multiplication algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MulThresholds {
    pub karatsuba_from: usize,
    pub toom3_from: usize,
    pub ntt_from: usize,
}

impl Default for MulThresholds {
    fn default() -> Self {
        MulThresholds { karatsuba_from: 32, toom3_from: 128, ntt_from: 4096 }
    }
}

impl MulThresholds {
    pub fn validate(&self) -> Result<(), Error> {
        if self.karatsuba_from < 2
            || self.karatsuba_from > self.toom3_from
            || self.toom3_from > self.ntt_from
        {
            return Err(Error::BadConfig(format!(
                "need 2 <= karatsuba_from <= toom3_from <= ntt_from, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Parses "key = integer" lines; '#' starts a comment. Unknown keys are
    /// rejected except `fastdiv_from`, which belongs to the same file but is
    /// consumed by the division code.
    pub fn parse_config(text: &str) -> Result<Self, Error> {
        let mut t = MulThresholds::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::BadConfig(format!("expected key = value: {line:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::BadConfig(format!("bad integer in {line:?}")))?;
            match key.trim() {
                "karatsuba_from" => t.karatsuba_from = value,
                "toom3_from" => t.toom3_from = value,
                "ntt_from" => t.ntt_from = value,
                "fastdiv_from" => {}
                other => {
                    return Err(Error::BadConfig(format!("unknown key {other:?}")));
                }
            }
        }
        t.validate()?;
        Ok(t)
    }

    pub fn to_config_string(&self) -> String {
        format!(
            "karatsuba_from = {}\ntoom3_from = {}\nntt_from = {}\n",
            self.karatsuba_from, self.toom3_from, self.ntt_from
        )
    }
}

/// Upper bound on which algorithms the recursion may pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Strategy {
    Schoolbook,
    Karatsuba,
    Toom3,
    Ntt,
}

/// Size-dispatching multiplication.
pub fn mul(a: &Natural, b: &Natural, t: &MulThresholds) -> Natural {
    mul_rec(a, b, t, Strategy::Ntt)
}

/// Multiplication with the default thresholds.
pub fn mul_auto(a: &Natural, b: &Natural) -> Natural {
    mul(a, b, &MulThresholds::default())
}

/// Dedicated squaring path.
pub fn square(a: &Natural, t: &MulThresholds) -> Natural {
    let n = a.limb_len();
    if n < t.karatsuba_from {
        a.square_schoolbook()
    } else {
        mul(a, a, t)
    }
}

pub fn square_auto(a: &Natural) -> Natural {
    square(a, &MulThresholds::default())
}

/// Karatsuba all the way down (bottoming out in schoolbook).
pub fn mul_karatsuba(a: &Natural, b: &Natural) -> Natural {
    mul_rec(a, b, &MulThresholds::default(), Strategy::Karatsuba)
}

/// Toom-3 at the top, Karatsuba/schoolbook below the thresholds.
pub fn mul_toom3(a: &Natural, b: &Natural) -> Natural {
    mul_rec(a, b, &MulThresholds::default(), Strategy::Toom3)
}

fn mul_rec(a: &Natural, b: &Natural, t: &MulThresholds, max: Strategy) -> Natural {
    let (short, long) = if a.limb_len() <= b.limb_len() { (a, b) } else { (b, a) };
    let n = short.limb_len();
    if n == 0 {
        return Natural::zero();
    }
    // Strongly unbalanced operands: multiply block-by-block so the recursive
    // calls stay balanced.
    if long.limb_len() > 2 * n && n >= t.karatsuba_from {
        return mul_unbalanced(short, long, t, max);
    }
    let strategy = if n < t.karatsuba_from || max == Strategy::Schoolbook {
        Strategy::Schoolbook
    } else if n < t.toom3_from || max == Strategy::Karatsuba {
        Strategy::Karatsuba
    } else if n < t.ntt_from || max == Strategy::Toom3 {
        Strategy::Toom3
    } else {
        Strategy::Ntt
    };
    match strategy {
        Strategy::Schoolbook => short.mul_schoolbook(long),
        Strategy::Karatsuba => karatsuba::mul(short, long, t, max),
        Strategy::Toom3 => toom3::mul(short, long, t, max),
        Strategy::Ntt => match ntt::mul_ntt(short, long) {
            Ok(p) => p,
            Err(_) => toom3::mul(short, long, t, max),
        },
    }
}

fn mul_unbalanced(short: &Natural, long: &Natural, t: &MulThresholds, max: Strategy) -> Natural {
    let n = short.limb_len();
    let limbs = long.as_limbs();
    let mut acc = Natural::zero();
    let mut base = 0u64;
    for block in limbs.chunks(n) {
        let part = Natural::from_limbs(block.to_vec());
        let prod = mul_rec(short, &part, t, max);
        acc = acc.add(&prod.shl_bits(base * 64));
        base += n as u64;
    }
    acc
}

/// Splits off the low `m` limbs: returns (low, high) with
/// value = low + high * 2^(64 m).
pub(crate) fn split_limbs(a: &Natural, m: usize) -> (Natural, Natural) {
    let limbs = a.as_limbs();
    if limbs.len() <= m {
        return (a.clone(), Natural::zero());
    }
    (
        Natural::from_limbs(limbs[..m].to_vec()),
        Natural::from_limbs(limbs[m..].to_vec()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rand_nat(limbs: usize, seed: &mut u64) -> Natural {
        let mut v = Vec::with_capacity(limbs);
        for _ in 0..limbs {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            v.push(*seed);
        }
        Natural::from_limbs(v)
    }

    #[test]
    fn dispatcher_degenerate_thresholds() {
        // All-infinite thresholds force the schoolbook path.
        let t = MulThresholds {
            karatsuba_from: usize::MAX,
            toom3_from: usize::MAX,
            ntt_from: usize::MAX,
        };
        let mut seed = 7;
        let a = rand_nat(100, &mut seed);
        let b = rand_nat(100, &mut seed);
        assert_eq!(mul(&a, &b, &t), a.mul_schoolbook(&b));
    }

    #[test]
    fn dispatcher_tiny_thresholds() {
        let t = MulThresholds { karatsuba_from: 2, toom3_from: 4, ntt_from: 8 };
        let mut seed = 11;
        let a = rand_nat(100, &mut seed);
        let b = rand_nat(97, &mut seed);
        assert_eq!(mul(&a, &b, &t), a.mul_schoolbook(&b));
    }

    #[test]
    fn square_small() {
        assert_eq!(square_auto(&Natural::from_u64(3)), Natural::from_u64(9));
        let mut seed = 3;
        let a = rand_nat(200, &mut seed);
        assert_eq!(square_auto(&a), a.mul_schoolbook(&a));
    }

    #[test]
    fn unbalanced_operands() {
        let mut seed = 13;
        for (la, lb) in [(1, 500), (33, 700), (64, 64), (130, 1000)] {
            let a = rand_nat(la, &mut seed);
            let b = rand_nat(lb, &mut seed);
            assert_eq!(mul_auto(&a, &b), a.mul_schoolbook(&b));
        }
    }

    #[test]
    fn config_parse() {
        let t = MulThresholds::parse_config(
            "# tuned\nkaratsuba_from = 20\ntoom3_from=99\n\nntt_from = 2048\nfastdiv_from = 64\n",
        )
        .unwrap();
        assert_eq!(t, MulThresholds { karatsuba_from: 20, toom3_from: 99, ntt_from: 2048 });
        assert!(MulThresholds::parse_config("karatsuba_from = 1").is_err());
        assert!(MulThresholds::parse_config("bogus = 1").is_err());
        let rt = MulThresholds::parse_config(&t.to_config_string()).unwrap();
        assert_eq!(rt, t);
    }
}
