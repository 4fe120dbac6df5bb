//! Radix-p expansions and primality.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Digits `a_1..a_n` of `k = a_1 + a_2 p + ... + a_n p^{n-1}`, least significant first.
pub fn p_adic_digits(k: &BigInt, p: &BigInt, n: u32) -> Result<Vec<BigInt>> {
    if p < &BigInt::from(2) {
        return Err(Error::range(format!("radix {p} is below 2")));
    }
    let q = num_traits::pow(p.clone(), n as usize);
    if k.is_negative() || k >= &q {
        return Err(Error::range(format!("index {k} not in [0, {q})")));
    }
    let mut rest = k.clone();
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let (quot, digit) = rest.div_mod_floor(p);
        out.push(digit);
        rest = quot;
    }
    Ok(out)
}

/// Machine-word variant used when enumerating whole tables.
pub(crate) fn small_digits(mut k: usize, p: usize, n: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(k % p);
        k /= p;
    }
    out
}

/// Witness bases making Miller-Rabin deterministic below 3.3 * 10^24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin over a fixed witness set. Exact for every input below
/// 3.3 * 10^24; above that it is a strong-probable-prime test.
pub fn is_prime(p: &BigInt) -> bool {
    if p.sign() != Sign::Plus {
        return false;
    }
    let (_, p) = p.clone().into_parts();
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if p < two {
        return false;
    }
    for &base in &MR_BASES {
        let base = BigUint::from(base);
        if p == base {
            return true;
        }
        if (&p % &base).is_zero() {
            return false;
        }
    }
    let pm1 = &p - &one;
    let shift = pm1.trailing_zeros().unwrap_or(0);
    let odd = &pm1 >> shift;
    'witness: for &base in &MR_BASES {
        let mut x = BigUint::from(base).modpow(&odd, &p);
        if x == one || x == pm1 {
            continue;
        }
        for _ in 1..shift {
            x = x.modpow(&two, &p);
            if x == pm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn big_pow(base: &BigInt, exp: u32) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Ceiling of `a / b` for `b > 0`.
pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (quot, rem) = a.div_mod_floor(b);
    if rem.is_zero() {
        quot
    } else {
        quot + BigInt::one()
    }
}
