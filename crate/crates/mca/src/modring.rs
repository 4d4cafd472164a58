//! Arithmetic in Z/nZ: Montgomery and Barrett reduction, sliding-window
//! modular exponentiation, and Chinese-Remainder reconstruction.
//!
//! Nothing here is constant-time; modexp in particular must not be used where
//! side-channel resistance matters.

use crate::divgcd::{self, divrem_fast, extgcd, mod_inverse};
use crate::fastmul::mul_auto;
use crate::limbcore::{Integer, Natural};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("Montgomery modulus must be odd")]
    EvenModulus,
    #[error("modulus must be at least {0}")]
    ModulusTooSmall(u64),
    #[error("reduction input exceeds the context bound")]
    InputTooLarge,
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("residue must be smaller than its modulus")]
    BadResidue,
}

/// Precomputed constants for REDC modulo an odd n.
#[derive(Debug, Clone)]
pub struct MontgomeryContext {
    n: Natural,
    k: usize,
    n_prime: u64,
    r2: Natural,
}

/// Whether a residue currently carries the Montgomery factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Plain,
    Montgomery,
}

/// A value reduced below its modulus, tagged with its representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    pub value: Natural,
    pub form: Form,
}

impl MontgomeryContext {
    /// n odd, n >= 3. Computes n' with n n' = -1 (mod 2^64) by Hensel
    /// lifting on words, and R^2 mod n by division.
    pub fn new(n: &Natural) -> Result<Self, Error> {
        if n.is_even() {
            return Err(Error::EvenModulus);
        }
        if *n < Natural::from_u64(3) {
            return Err(Error::ModulusTooSmall(3));
        }
        let n0 = n.limb(0);
        // five doubling steps: inverse of n0 mod 2^64
        let mut inv = n0; // correct mod 2^3
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n0.wrapping_mul(inv)));
        }
        debug_assert_eq!(n0.wrapping_mul(inv), 1);
        let n_prime = inv.wrapping_neg();
        let k = n.limb_len();
        let (_, r2) = divrem_fast(&Natural::one().shl_bits(128 * k as u64), n)
            .expect("nonzero modulus");
        Ok(MontgomeryContext { n: n.clone(), k, n_prime, r2 })
    }

    pub fn modulus(&self) -> &Natural {
        &self.n
    }

    pub fn limb_count(&self) -> usize {
        self.k
    }

    pub fn n_prime(&self) -> u64 {
        self.n_prime
    }

    pub fn r2(&self) -> &Natural {
        &self.r2
    }

    /// REDC: for t < n 2^(64k), returns t 2^(-64k) mod n.
    pub fn redc(&self, t: &Natural) -> Result<Natural, Error> {
        // t < n B^k  <=>  floor(t / B^k) < n
        if t.shr_bits(64 * self.k as u64) >= self.n {
            return Err(Error::InputTooLarge);
        }
        let k = self.k;
        let mut c = t.as_limbs().to_vec();
        c.resize(2 * k + 1, 0);
        for i in 0..k {
            let m = c[i].wrapping_mul(self.n_prime);
            // c += m * n << (64 i)
            let mut carry = 0u64;
            for (j, &nl) in self.n.as_limbs().iter().enumerate() {
                let s = c[i + j] as u128 + m as u128 * nl as u128 + carry as u128;
                c[i + j] = s as u64;
                carry = (s >> 64) as u64;
            }
            let mut j = i + self.n.limb_len();
            while carry != 0 {
                let s = c[j] as u128 + carry as u128;
                c[j] = s as u64;
                carry = (s >> 64) as u64;
                j += 1;
            }
        }
        let shifted = Natural::from_limbs(c[k..].to_vec());
        Ok(match shifted.checked_sub(&self.n) {
            Some(d) if shifted >= self.n => d,
            _ => shifted,
        })
    }

    pub fn to_mont(&self, x: &Natural) -> Result<Residue, Error> {
        if x >= &self.n {
            return Err(Error::BadResidue);
        }
        Ok(Residue {
            value: self.redc(&mul_auto(x, &self.r2))?,
            form: Form::Montgomery,
        })
    }

    pub fn from_mont(&self, r: &Residue) -> Result<Natural, Error> {
        debug_assert_eq!(r.form, Form::Montgomery);
        self.redc(&r.value)
    }

    pub fn mont_mul(&self, a: &Residue, b: &Residue) -> Result<Residue, Error> {
        debug_assert_eq!(a.form, Form::Montgomery);
        debug_assert_eq!(b.form, Form::Montgomery);
        Ok(Residue {
            value: self.redc(&mul_auto(&a.value, &b.value))?,
            form: Form::Montgomery,
        })
    }
}

/// Barrett reduction context: mu = floor(2^(128k) / n).
#[derive(Debug, Clone)]
pub struct BarrettContext {
    n: Natural,
    k: usize,
    mu: Natural,
}

impl BarrettContext {
    pub fn new(n: &Natural) -> Result<Self, Error> {
        if *n < Natural::from_u64(2) {
            return Err(Error::ModulusTooSmall(2));
        }
        let k = n.limb_len();
        let (mu, _) = divrem_fast(&Natural::one().shl_bits(128 * k as u64), n)
            .expect("nonzero modulus");
        Ok(BarrettContext { n: n.clone(), k, mu })
    }

    pub fn modulus(&self) -> &Natural {
        &self.n
    }

    pub fn mu(&self) -> &Natural {
        &self.mu
    }

    /// t mod n for t < 2^(128k), with at most two correction subtractions
    /// after the mu estimate.
    pub fn reduce(&self, t: &Natural) -> Result<Natural, Error> {
        if t.bit_len() > 128 * self.k as u64 {
            return Err(Error::InputTooLarge);
        }
        let shift = 64 * (self.k as u64 - 1);
        let q = mul_auto(&t.shr_bits(shift), &self.mu).shr_bits(64 * (self.k as u64 + 1));
        let mut r = t.checked_sub(&mul_auto(&q, &self.n)).expect("estimate is a lower bound");
        let mut steps = 0;
        while r >= self.n {
            r = r.checked_sub(&self.n).unwrap();
            steps += 1;
            assert!(steps <= 2, "Barrett estimate off by more than two");
        }
        Ok(r)
    }
}

/// Window width for a given exponent bit length: 1 below 32 bits, then the
/// smallest w with (w+1) 2^w >= bits, capped at 6.
fn window_width(exp_bits: u64) -> u32 {
    if exp_bits < 32 {
        return 1;
    }
    for w in 2..6u32 {
        if (w as u64 + 1) << w >= exp_bits {
            return w;
        }
    }
    6
}

/// base^exp mod n via sliding windows; Montgomery form for odd n, Barrett
/// for even n.
pub fn mod_pow(base: &Natural, exp: &Natural, n: &Natural) -> Result<Natural, Error> {
    if *n < Natural::from_u64(2) {
        return Err(Error::ModulusTooSmall(2));
    }
    let (_, base) = divrem_fast(base, n).expect("nonzero modulus");
    if exp.is_zero() {
        return Ok(Natural::one());
    }
    if n.is_even() {
        let ctx = BarrettContext::new(n)?;
        pow_with(&base, exp, &|a, b| ctx.reduce(&mul_auto(a, b)).expect("t < n^2"), &Natural::one())
    } else {
        let ctx = MontgomeryContext::new(n)?;
        let one = ctx.to_mont(&Natural::one())?.value;
        let base_m = ctx.to_mont(&base)?.value;
        let out = pow_with(
            &base_m,
            exp,
            &|a, b| ctx.redc(&mul_auto(a, b)).expect("t < n B^k"),
            &one,
        )?;
        ctx.redc(&out)
    }
}

fn pow_with(
    base: &Natural,
    exp: &Natural,
    mul: &dyn Fn(&Natural, &Natural) -> Natural,
    one: &Natural,
) -> Result<Natural, Error> {
    let bits = exp.bit_len();
    let w = window_width(bits);
    // odd powers base^1, base^3, ..., base^(2^w - 1)
    let sq = mul(base, base);
    let mut odd_powers = vec![base.clone()];
    for _ in 1..(1usize << (w - 1)) {
        let prev = odd_powers.last().unwrap();
        odd_powers.push(mul(prev, &sq));
    }
    let mut acc = one.clone();
    let mut i = bits as i64 - 1;
    while i >= 0 {
        if !exp.bit(i as u64) {
            acc = mul(&acc, &acc);
            i -= 1;
            continue;
        }
        // greedy window [j, i] ending on a set bit
        let mut j = (i - w as i64 + 1).max(0);
        while !exp.bit(j as u64) {
            j += 1;
        }
        let mut val = 0usize;
        for b in (j..=i).rev() {
            val = val << 1 | exp.bit(b as u64) as usize;
        }
        for _ in j..=i {
            acc = mul(&acc, &acc);
        }
        acc = mul(&acc, &odd_powers[val >> 1]);
        i = j - 1;
    }
    Ok(acc)
}

/// Tree-CRT: combines (r_i, n_i) pairs balanced by modulus bit length into
/// the unique x < N = prod n_i with x = r_i (mod n_i).
pub fn crt_reconstruct(residues: &[(Natural, Natural)]) -> Result<(Natural, Natural), Error> {
    if residues.is_empty() {
        return Err(Error::ModulusTooSmall(2));
    }
    for (r, n) in residues {
        if *n < Natural::from_u64(2) {
            return Err(Error::ModulusTooSmall(2));
        }
        if r >= n {
            return Err(Error::BadResidue);
        }
    }
    // repeatedly combine the two smallest moduli
    let mut heap: Vec<(Natural, Natural)> = residues.to_vec();
    while heap.len() > 1 {
        heap.sort_by(|a, b| b.1.bit_len().cmp(&a.1.bit_len()));
        let (r1, n1) = heap.pop().unwrap();
        let (r2, n2) = heap.pop().unwrap();
        let (g, u, _) = extgcd(
            &Integer::from_natural(n1.clone()),
            &Integer::from_natural(n2.clone()),
        );
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        // x = r1 + n1 * ((r2 - r1) * inv(n1) mod n2)
        let inv = if u.is_negative() {
            n2.checked_sub(u.magnitude()).unwrap()
        } else {
            u.magnitude().clone()
        };
        let diff = Integer::from_natural(r2).sub(&Integer::from_natural(r1.clone()));
        let (_, d) = diff.divrem(&Integer::from_natural(n2.clone())).expect("nonzero");
        let d = if d.is_negative() {
            n2.checked_sub(d.magnitude()).unwrap()
        } else {
            d.into_magnitude()
        };
        let t = divrem_fast(&mul_auto(&d, &inv), &n2).expect("nonzero").1;
        let x = r1.add(&mul_auto(&n1, &t));
        let nn = mul_auto(&n1, &n2);
        debug_assert!(x < nn);
        heap.push((x, nn));
    }
    Ok(heap.pop().unwrap())
}

/// Convenience plain modular reduction used by callers that have no context.
pub fn reduce(a: &Natural, n: &Natural) -> Result<Natural, Error> {
    if n.is_zero() {
        return Err(Error::ModulusTooSmall(1));
    }
    Ok(divrem_fast(a, n).expect("nonzero").1)
}

/// Convenience modular inverse re-export with this module's error type.
pub fn inverse(a: &Natural, n: &Natural) -> Result<Natural, divgcd::Error> {
    mod_inverse(a, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from_u64(v)
    }

    fn rand_nat(limbs: usize, seed: &mut u64) -> Natural {
        let mut v = Vec::with_capacity(limbs);
        for _ in 0..limbs {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            v.push(*seed);
        }
        Natural::from_limbs(v)
    }

    #[test]
    fn setup_rejects_bad_moduli() {
        assert!(matches!(MontgomeryContext::new(&nat(2)), Err(Error::EvenModulus)));
        assert!(matches!(
            MontgomeryContext::new(&nat(1)),
            Err(Error::ModulusTooSmall(3))
        ));
        assert!(BarrettContext::new(&nat(1)).is_err());
    }

    #[test]
    fn n_prime_word_identity() {
        let ctx = MontgomeryContext::new(&nat(13)).unwrap();
        assert_eq!(13u64.wrapping_mul(ctx.n_prime()), u64::MAX);
        let mut seed = 3;
        let mut n = rand_nat(32, &mut seed);
        if n.is_even() {
            n = n.add(&Natural::one());
        }
        let ctx = MontgomeryContext::new(&n).unwrap();
        assert_eq!(n.limb(0).wrapping_mul(ctx.n_prime()), u64::MAX);
        assert!(*ctx.r2() < n);
    }

    #[test]
    fn redc_basics() {
        let ctx = MontgomeryContext::new(&nat(13)).unwrap();
        assert_eq!(ctx.redc(&Natural::zero()).unwrap(), Natural::zero());
        // redc(r2) = B^k mod n
        let (_, bk) = Natural::one().shl_bits(64).divrem_schoolbook(&nat(13)).unwrap();
        assert_eq!(ctx.redc(ctx.r2()).unwrap(), bk);
        // redc(t) = t B^-k mod n for all small t, against a direct oracle
        let b_inv = mod_inverse(&bk, &nat(13)).unwrap();
        for t in 0..169u64 {
            let got = ctx.redc(&nat(t)).unwrap();
            let want = nat(t)
                .mul_schoolbook(&b_inv)
                .divrem_schoolbook(&nat(13))
                .unwrap()
                .1;
            assert_eq!(got, want, "t = {t}");
        }
    }

    #[test]
    fn redc_input_bound() {
        let ctx = MontgomeryContext::new(&nat(13)).unwrap();
        let too_big = nat(13).shl_bits(64);
        assert_eq!(ctx.redc(&too_big), Err(Error::InputTooLarge));
    }

    #[test]
    fn mont_round_trip_and_mul() {
        let n = nat(13);
        let ctx = MontgomeryContext::new(&n).unwrap();
        for x in 0..13u64 {
            let m = ctx.to_mont(&nat(x)).unwrap();
            assert_eq!(ctx.from_mont(&m).unwrap(), nat(x));
        }
        let a = ctx.to_mont(&nat(5)).unwrap();
        let b = ctx.to_mont(&nat(7)).unwrap();
        let p = ctx.mont_mul(&a, &b).unwrap();
        assert_eq!(ctx.from_mont(&p).unwrap(), nat(9)); // 35 mod 13

        // random large odd modulus vs schoolbook remainder
        let mut seed = 17;
        let mut n = rand_nat(64, &mut seed);
        if n.is_even() {
            n = n.add(&Natural::one());
        }
        let ctx = MontgomeryContext::new(&n).unwrap();
        let a = rand_nat(60, &mut seed).divrem_schoolbook(&n).unwrap().1;
        let b = rand_nat(64, &mut seed).divrem_schoolbook(&n).unwrap().1;
        let am = ctx.to_mont(&a).unwrap();
        let bm = ctx.to_mont(&b).unwrap();
        let got = ctx.from_mont(&ctx.mont_mul(&am, &bm).unwrap()).unwrap();
        let want = a.mul_schoolbook(&b).divrem_schoolbook(&n).unwrap().1;
        assert_eq!(got, want);
    }

    #[test]
    fn barrett_cases() {
        let mut seed = 23;
        for parity in 0..2u64 {
            let mut n = rand_nat(10, &mut seed);
            if n.is_even() != (parity == 0) {
                n = n.add(&Natural::one());
            }
            let ctx = BarrettContext::new(&n).unwrap();
            let small = rand_nat(5, &mut seed).divrem_schoolbook(&n).unwrap().1;
            assert_eq!(ctx.reduce(&small).unwrap(), small);
            assert_eq!(ctx.reduce(&n).unwrap(), Natural::zero());
            let t = rand_nat(19, &mut seed);
            assert_eq!(ctx.reduce(&t).unwrap(), t.divrem_schoolbook(&n).unwrap().1);
        }
    }

    #[test]
    fn mod_pow_cases() {
        assert_eq!(mod_pow(&nat(7), &Natural::zero(), &nat(100)).unwrap(), nat(1));
        assert_eq!(mod_pow(&nat(2), &nat(10), &nat(1000)).unwrap(), nat(24));
        // naive square-and-multiply oracle, small exponents, odd and even n
        let mut seed = 29;
        for _ in 0..50 {
            let a = rand_nat(3, &mut seed);
            seed = seed.wrapping_add(1);
            let e = (seed >> 40) as u64 & 0xffff;
            let n = rand_nat(2, &mut seed).add(&nat(2));
            let mut want = Natural::one().divrem_schoolbook(&n).unwrap().1;
            let ar = a.divrem_schoolbook(&n).unwrap().1;
            for _ in 0..e {
                want = want.mul_schoolbook(&ar).divrem_schoolbook(&n).unwrap().1;
            }
            let got = mod_pow(&a, &nat(e), &n).unwrap();
            assert_eq!(got, want, "e = {e}");
        }
    }

    #[test]
    fn fermat_little() {
        let p = Natural::from_u64((1 << 61) - 1);
        let pm1 = p.checked_sub(&Natural::one()).unwrap();
        let mut seed = 31;
        for _ in 0..10 {
            let a = rand_nat(4, &mut seed);
            let a = a.divrem_schoolbook(&p).unwrap().1;
            if a.is_zero() {
                continue;
            }
            assert_eq!(mod_pow(&a, &pm1, &p).unwrap(), Natural::one());
        }
    }

    #[test]
    fn crt_cases() {
        // single pair is the identity
        let single = crt_reconstruct(&[(nat(5), nat(9))]).unwrap();
        assert_eq!(single, (nat(5), nat(9)));
        // classic triple
        let (x, n) = crt_reconstruct(&[
            (nat(2), nat(3)),
            (nat(3), nat(5)),
            (nat(2), nat(7)),
        ])
        .unwrap();
        assert_eq!((x, n), (nat(23), nat(105)));
        // errors
        assert_eq!(
            crt_reconstruct(&[(nat(1), nat(4)), (nat(1), nat(6))]),
            Err(Error::NotCoprime)
        );
        assert_eq!(
            crt_reconstruct(&[(nat(9), nat(4))]),
            Err(Error::BadResidue)
        );
        // residue round trip on word-sized coprime moduli
        let moduli = [nat(101), nat(103), nat(107), nat(109), nat(113)];
        let mut seed = 91u64;
        for _ in 0..20 {
            let pairs: Vec<(Natural, Natural)> = moduli
                .iter()
                .map(|m| {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                    (nat(seed % m.to_u64().unwrap()), m.clone())
                })
                .collect();
            let (x, _) = crt_reconstruct(&pairs).unwrap();
            for (r, m) in &pairs {
                assert_eq!(&x.divrem_schoolbook(m).unwrap().1, r);
            }
        }
    }
}
