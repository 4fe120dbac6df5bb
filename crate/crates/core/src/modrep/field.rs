//! `F_{p^n}` as `F_p[x] / (f)` for the lexicographically smallest monic
//! irreducible `f` of degree `n`.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! for the residue `c_0 + c_1 x + ... + c_{n-1} x^{n-1}`.

use crate::digits::{is_prime, small_digits};
use crate::error::{Error, Result};

/// Largest field order the oracle will build.
pub const FIELD_LIMIT: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallField {
    p: usize,
    n: u32,
    order: usize,
    /// `f_0..f_{n-1}` of the monic modulus `x^n + f_{n-1} x^{n-1} + ... + f_0`.
    modulus: Vec<usize>,
}

/// Remainder of `a` modulo the monic `b` over `F_p`; coefficients low first.
fn poly_rem(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().expect("nonempty");
        if lead != 0 {
            let shift = r.len() - db;
            for (i, c) in b[..db].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn monic(code: usize, p: usize, deg: u32) -> Vec<usize> {
    let mut f = small_digits(code, p, deg);
    f.push(1);
    f
}

/// No monic factor of degree `1..=deg/2`.
fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = (f.len() - 1) as u32;
    (1..=deg / 2).all(|d| (0..p.pow(d)).all(|code| !poly_rem(f, &monic(code, p, d), p).is_empty()))
}

impl SmallField {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(&p.into()) {
            return Err(Error::range(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::range("field degree must be positive"));
        }
        let p = usize::try_from(p).map_err(|_| Error::unsupported("characteristic too large"))?;
        let order = p
            .checked_pow(n)
            .filter(|&q| q <= FIELD_LIMIT)
            .ok_or_else(|| Error::unsupported(format!("field of order {p}^{n} exceeds {FIELD_LIMIT}")))?;
        let modulus = (0..order)
            .map(|code| monic(code, p, n))
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        let mut modulus = modulus;
        modulus.pop();
        Ok(SmallField { p, n, order, modulus })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    /// The image of an integer under `Z -> F_p -> F_{p^n}`.
    pub fn from_int(&self, v: usize) -> usize {
        v % self.p
    }

    /// `1, x, ..., x^{n-1}`, an `F_p`-basis.
    pub fn power_basis(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.p.pow(i)).collect()
    }

    fn coeffs(&self, a: usize) -> Vec<usize> {
        small_digits(a, self.p, self.n)
    }

    fn encode(&self, c: &[usize]) -> usize {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let c: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&c)
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<usize> = self.coeffs(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&c)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0; 2 * self.n as usize - 1];
        for (i, x) in ca.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut f = self.modulus.clone();
        f.push(1);
        self.encode(&poly_rem(&prod, &f, self.p))
    }

    pub fn pow(&self, a: usize, mut e: usize) -> usize {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.pow(a, self.order - 2))
    }
}
