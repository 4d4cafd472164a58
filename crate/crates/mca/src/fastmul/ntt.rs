use std::sync::OnceLock;

use crate::limbcore::Natural;

use super::Error;

/// One word-sized prime p = c * 2^m + 1 with a known generator.
#[derive(Debug, Clone, Copy)]
pub struct NttPrime {
    pub p: u64,
    pub generator: u64,
    pub two_adicity: u32,
}

/// Fixed three-prime transform plan. The primes are pairwise distinct, each
/// below 2^62, and each supports power-of-two transforms up to 2^55 points.
#[derive(Debug, Clone)]
pub struct NttPlan {
    pub primes: [NttPrime; 3],
    pub chunk_bits: u32,
    max_log_len: u32,
    // Garner constants for lifting (r1, r2, r3) to the value below p1 p2 p3.
    inv_p1_mod_p2: u64,
    inv_p1p2_mod_p3: u64,
    p1p2: u128,
}

const PRIMES: [NttPrime; 3] = [
    // 29 * 2^57 + 1
    NttPrime { p: 4_179_340_454_199_820_289, generator: 3, two_adicity: 57 },
    // 27 * 2^56 + 1
    NttPrime { p: 1_945_555_039_024_054_273, generator: 5, two_adicity: 56 },
    // 5 * 2^55 + 1
    NttPrime { p: 180_143_985_094_819_841, generator: 6, two_adicity: 55 },
];

const CHUNK_BITS: u32 = 16;
/// Transforms are capped at 2^32 points; the overflow certificate below is
/// checked against this bound at plan construction.
const MAX_LOG_LEN: u32 = 32;

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b; // both < p < 2^62
    if s >= p { s - p } else { s }
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b { a - b } else { a + p - b }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl NttPlan {
    fn build() -> NttPlan {
        for pr in &PRIMES {
            // p = c * 2^m + 1 with the claimed two-adicity.
            assert_eq!((pr.p - 1) % (1u64 << pr.two_adicity), 0);
            assert!(pr.two_adicity >= MAX_LOG_LEN);
            assert!(pr.p < 1u64 << 62);
            // generator sanity: g^((p-1)/2) must be -1
            assert_eq!(powmod(pr.generator, (pr.p - 1) / 2, pr.p), pr.p - 1);
        }
        // No-overflow certificate: the largest chunked-convolution
        // coefficient, (2^chunk_bits - 1)^2 * 2^max_log_len, must stay below
        // p1 p2 p3.
        let max_chunk = (1u128 << CHUNK_BITS) - 1;
        let max_coeff = Natural::from_u128(max_chunk * max_chunk).shl_bits(MAX_LOG_LEN as u64);
        let modulus = Natural::from_u64(PRIMES[0].p)
            .mul_schoolbook(&Natural::from_u64(PRIMES[1].p))
            .mul_schoolbook(&Natural::from_u64(PRIMES[2].p));
        assert!(max_coeff < modulus, "chunk size violates the CRT bound");

        let (p1, p2, p3) = (PRIMES[0].p, PRIMES[1].p, PRIMES[2].p);
        let inv_p1_mod_p2 = powmod(p1 % p2, p2 - 2, p2);
        let p1p2 = p1 as u128 * p2 as u128;
        let inv_p1p2_mod_p3 = powmod((p1p2 % p3 as u128) as u64, p3 - 2, p3);
        assert_eq!(mulmod(p1 % p2, inv_p1_mod_p2, p2), 1);
        assert_eq!(mulmod((p1p2 % p3 as u128) as u64, inv_p1p2_mod_p3, p3), 1);
        NttPlan {
            primes: PRIMES,
            chunk_bits: CHUNK_BITS,
            max_log_len: MAX_LOG_LEN,
            inv_p1_mod_p2,
            inv_p1p2_mod_p3,
            p1p2,
        }
    }

    pub fn shared() -> &'static NttPlan {
        static PLAN: OnceLock<NttPlan> = OnceLock::new();
        PLAN.get_or_init(NttPlan::build)
    }

    /// Primitive n-th root of unity mod the chosen prime.
    fn root_of_unity(&self, prime_index: usize, n: u64) -> u64 {
        let pr = &self.primes[prime_index];
        powmod(pr.generator, (pr.p - 1) / n, pr.p)
    }

    fn check_len(&self, len: usize) -> Result<(), Error> {
        if len == 0 || !len.is_power_of_two() || len.trailing_zeros() > self.max_log_len {
            return Err(Error::BadLength);
        }
        Ok(())
    }
}

/// In-place iterative radix-2 transform with bit-reversed input ordering.
/// Output index k holds the evaluation at root^k.
fn transform(values: &mut [u64], root: u64, p: u64) {
    let n = values.len();
    let log = n.trailing_zeros();
    // bit-reversal permutation
    for i in 0..n {
        let j = (i.reverse_bits() >> (usize::BITS - log)) as usize;
        if i < j {
            values.swap(i, j);
        }
    }
    let mut m = 1;
    while m < n {
        // stage root of order 2m
        let wm = powmod(root, (n / (2 * m)) as u64, p);
        let mut start = 0;
        while start < n {
            let mut w = 1u64;
            for i in start..start + m {
                let t = mulmod(w, values[i + m], p);
                values[i + m] = submod(values[i], t, p);
                values[i] = addmod(values[i], t, p);
                w = mulmod(w, wm, p);
            }
            start += 2 * m;
        }
        m *= 2;
    }
}

/// Forward transform of residues mod the plan's `prime_index`-th prime.
pub fn ntt_forward(coeffs: &[u64], plan: &NttPlan, prime_index: usize) -> Result<Vec<u64>, Error> {
    plan.check_len(coeffs.len())?;
    let p = plan.primes[prime_index].p;
    let mut v: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
    if v.len() > 1 {
        let root = plan.root_of_unity(prime_index, v.len() as u64);
        transform(&mut v, root, p);
    }
    Ok(v)
}

/// Inverse transform, including the 1/n scaling.
pub fn ntt_inverse(values: &[u64], plan: &NttPlan, prime_index: usize) -> Result<Vec<u64>, Error> {
    plan.check_len(values.len())?;
    let p = plan.primes[prime_index].p;
    let mut v: Vec<u64> = values.iter().map(|&c| c % p).collect();
    let n = v.len() as u64;
    if n > 1 {
        let root = plan.root_of_unity(prime_index, n);
        let inv_root = powmod(root, p - 2, p);
        transform(&mut v, inv_root, p);
        let inv_n = powmod(n % p, p - 2, p);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv_n, p);
        }
    }
    Ok(v)
}

/// Splits a natural into `chunk_bits`-bit coefficients, least significant
/// first.
fn to_chunks(a: &Natural, chunk_bits: u32, len: usize) -> Vec<u64> {
    let per_limb = (64 / chunk_bits) as usize;
    let mask = (1u64 << chunk_bits) - 1;
    let mut out = vec![0u64; len];
    for (i, &limb) in a.as_limbs().iter().enumerate() {
        for j in 0..per_limb {
            out[i * per_limb + j] = (limb >> (j as u32 * chunk_bits)) & mask;
        }
    }
    out
}

/// NTT multiplication: chunk, transform mod three primes, pointwise multiply,
/// inverse transform, CRT-lift each coefficient and propagate carries.
pub fn mul_ntt(a: &Natural, b: &Natural) -> Result<Natural, Error> {
    if a.is_zero() || b.is_zero() {
        return Ok(Natural::zero());
    }
    let plan = NttPlan::shared();
    let per_limb = (64 / plan.chunk_bits) as usize;
    let na = a.limb_len() * per_limb;
    let nb = b.limb_len() * per_limb;
    let conv_len = (na + nb - 1).next_power_of_two();
    if conv_len.trailing_zeros() > plan.max_log_len {
        return Err(Error::SizeUnsupported);
    }
    let a_chunks = to_chunks(a, plan.chunk_bits, conv_len);
    let b_chunks = to_chunks(b, plan.chunk_bits, conv_len);

    let mut residues: [Vec<u64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for idx in 0..3 {
        let p = plan.primes[idx].p;
        let mut fa = ntt_forward(&a_chunks, plan, idx)?;
        let fb = ntt_forward(&b_chunks, plan, idx)?;
        for (x, y) in fa.iter_mut().zip(fb.iter()) {
            *x = mulmod(*x, *y, p);
        }
        residues[idx] = ntt_inverse(&fa, plan, idx)?;
    }

    // Lift and accumulate. Each lifted coefficient is below p1 p2 p3 < 2^181
    // and lands at bit offset chunk_bits * i.
    let (p1, p2, p3) = (plan.primes[0].p, plan.primes[1].p, plan.primes[2].p);
    let out_limbs = a.limb_len() + b.limb_len() + 4;
    let mut out = vec![0u64; out_limbs];
    for i in 0..conv_len {
        let (r1, r2, r3) = (residues[0][i], residues[1][i], residues[2][i]);
        if r1 == 0 && r2 == 0 && r3 == 0 {
            continue;
        }
        // Garner mixed-radix lift
        let t2 = mulmod(submod(r2, r1 % p2, p2), plan.inv_p1_mod_p2, p2);
        let x12 = r1 as u128 + p1 as u128 * t2 as u128;
        let t3 = mulmod(
            submod(r3, (x12 % p3 as u128) as u64, p3),
            plan.inv_p1p2_mod_p3,
            p3,
        );
        // coeff = x12 + p1p2 * t3, as a 192-bit value
        let lo_prod = (plan.p1p2 as u64 as u128) * t3 as u128;
        let hi_prod = (plan.p1p2 >> 64) * t3 as u128;
        let w0 = (x12 as u64 as u128) + (lo_prod as u64 as u128);
        let w1 = (x12 >> 64) + (lo_prod >> 64) + (hi_prod as u64 as u128) + (w0 >> 64);
        let w2 = (hi_prod >> 64) + (w1 >> 64);
        let coeff = [w0 as u64, w1 as u64, w2 as u64];

        let bit_off = plan.chunk_bits as u64 * i as u64;
        let limb = (bit_off / 64) as usize;
        let sh = (bit_off % 64) as u32;
        // shift the 3-word coefficient left by sh into 4 words
        let mut words = [0u64; 4];
        for (w, &c) in words.iter_mut().zip(coeff.iter()) {
            *w = if sh == 0 { c } else { c << sh };
        }
        if sh != 0 {
            for j in (1..4).rev() {
                words[j] |= coeff.get(j - 1).copied().unwrap_or(0) >> (64 - sh);
            }
        }
        // add into the output with carry propagation
        let mut carry = 0u64;
        for (j, &w) in words.iter().enumerate() {
            let s = out[limb + j] as u128 + w as u128 + carry as u128;
            out[limb + j] = s as u64;
            carry = (s >> 64) as u64;
        }
        let mut j = limb + 4;
        while carry != 0 {
            let s = out[j] as u128 + carry as u128;
            out[j] = s as u64;
            carry = (s >> 64) as u64;
            j += 1;
        }
    }
    Ok(Natural::from_limbs(out))
}
