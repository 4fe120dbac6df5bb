//! Independent reference implementations on machine integers, used to check
//! the library from the outside.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use polydiff::ExtensionSpec;

pub fn small(v: &BigInt) -> i128 {
    v.to_i128().expect("test data fits in i128")
}

pub fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Least significant digit first.
pub fn digits(mut k: i128, p: i128, n: u32) -> Vec<i128> {
    (0..n)
        .map(|_| {
            let d = k % p;
            k /= p;
            d
        })
        .collect()
}

/// A flattened copy of a spec.
#[derive(Debug, Clone)]
pub enum Plain {
    Cyclic { p: i128, n: u32, g_base: i128, places: Vec<(u32, Vec<i128>)> },
    Elab { p: i128, n: u32, phis: Vec<i128> },
    Tame { n_deg: i128, g_base: i128, vus: Vec<i128> },
}

pub fn plain(spec: &ExtensionSpec) -> Plain {
    match spec {
        ExtensionSpec::CyclicTower { group, places, g_base } => Plain::Cyclic {
            p: small(group.p()),
            n: group.n(),
            g_base: small(g_base),
            places: places.iter().map(|pl| (pl.e, pl.phi.iter().map(small).collect())).collect(),
        },
        ExtensionSpec::ElementaryAbelian { group, places } => Plain::Elab {
            p: small(group.p()),
            n: group.n(),
            phis: places.iter().map(|pl| small(&pl.phi)).collect(),
        },
        ExtensionSpec::TameKummer { n_deg, places, g_base, .. } => Plain::Tame {
            n_deg: small(n_deg),
            g_base: small(g_base),
            vus: places.iter().map(|pl| small(&pl.vu)).collect(),
        },
    }
}

impl Plain {
    pub fn order(&self) -> i128 {
        match self {
            Plain::Cyclic { p, n, .. } | Plain::Elab { p, n, .. } => p.pow(*n),
            Plain::Tame { n_deg, .. } => *n_deg,
        }
    }

    pub fn g_base(&self) -> i128 {
        match self {
            Plain::Cyclic { g_base, .. } | Plain::Tame { g_base, .. } => *g_base,
            Plain::Elab { .. } => 0,
        }
    }

    pub fn is_wild(&self) -> bool {
        !matches!(self, Plain::Tame { .. })
    }

    /// (different exponent, places of F above) for every ramified place.
    pub fn ramification(&self) -> Vec<(i128, i128)> {
        match self {
            Plain::Cyclic { p, n, places, .. } => places
                .iter()
                .map(|(e, phi)| {
                    let mut delta = 0;
                    for j in 1..=*n {
                        if j > n - e {
                            delta += (phi[j as usize - 1] + 1) * p.pow(n - j);
                        }
                    }
                    ((p - 1) * delta, p.pow(n - e))
                })
                .collect(),
            Plain::Elab { p, n, phis } => phis.iter().map(|f| ((p.pow(*n) - 1) * (f + 1), 1)).collect(),
            Plain::Tame { n_deg, vus, .. } => vus
                .iter()
                .map(|v| {
                    let e = n_deg / gcd(*n_deg, *v);
                    (e - 1, n_deg / e)
                })
                .collect(),
        }
    }

    pub fn deg_diff(&self) -> i128 {
        self.ramification().iter().map(|(d, c)| d * c).sum()
    }

    pub fn genus(&self) -> i128 {
        let twice = self.order() * (2 * self.g_base() - 2) + self.deg_diff();
        assert_eq!(twice % 2, 0, "Riemann-Hurwitz parity");
        twice / 2 + 1
    }

    /// `ν_ik(m)` as (numerator, denominator).
    pub fn nu(&self, i: usize, k: i128, m: i128) -> (i128, i128) {
        let deltas = self.ramification();
        match self {
            Plain::Cyclic { p, n, places, .. } => {
                let (e, phi) = &places[i];
                let w: i128 =
                    digits(k, *p, *n).iter().enumerate().map(|(j, a)| a * phi[j] * p.pow(n - 1 - j as u32)).sum();
                ((m * deltas[i].0 - w).div_euclid(p.pow(*e)), 1)
            }
            Plain::Elab { p, n, phis } => ((m * deltas[i].0 - k * phis[i]).div_euclid(p.pow(*n)), 1),
            Plain::Tame { n_deg, vus, .. } => {
                let g = gcd(*n_deg, (k * vus[i]).rem_euclid(*n_deg));
                let num = (k * vus[i]).rem_euclid(*n_deg);
                (num / g.max(1), n_deg / g.max(1))
            }
        }
    }

    pub fn gamma(&self, m: i128) -> Vec<i128> {
        let s = self.ramification().len();
        (0..self.order())
            .map(|k| {
                let (mut num, mut den) = (0i128, 1i128);
                for i in 0..s {
                    let (a, b) = self.nu(i, k, m);
                    num = num * b + a * den;
                    den *= b;
                    let g = gcd(num, den).max(1);
                    num /= g;
                    den /= g;
                }
                assert_eq!(den, 1, "Γ_{k} is not an integer");
                num
            })
            .collect()
    }

    /// Multiplicities: `d_1..d_q` for wild kinds, `d_0..d_{n-1}` for tame.
    /// `None` where the formulas do not apply.
    pub fn decomposition(&self, m: i128) -> Option<Vec<i128>> {
        let g = self.gamma(m);
        let q = g.len();
        let g_base = self.g_base();
        match self {
            Plain::Tame { .. } => {
                (m == 1).then(|| (0..q).map(|j| if j == 0 { g_base } else { g[j] - 1 + g_base }).collect())
            }
            Plain::Cyclic { n, places, .. } if m == 1 => {
                if !places.iter().any(|(e, _)| e == n) {
                    return None;
                }
                let mut d: Vec<i128> = (1..q).map(|k| g[k - 1] - g[k]).collect();
                d[q - 2] -= 1;
                d.push(g_base);
                Some(d)
            }
            Plain::Elab { .. } if m == 1 => {
                let counts: Vec<i128> = (0..q).map(|k| if k + 1 < q { g[k] - 1 } else { 0 }).collect();
                let mut d: Vec<i128> = (1..q).map(|k| counts[k - 1] - counts[k]).collect();
                d.push(counts[q - 1]);
                Some(d)
            }
            _ => {
                let mut d: Vec<i128> = (1..q).map(|k| g[k - 1] - g[k]).collect();
                d.push(g[q - 1] + (g_base - 1) * (2 * m - 1));
                Some(d)
            }
        }
    }

    pub fn decomposition_dim(&self, d: &[i128]) -> i128 {
        if self.is_wild() {
            d.iter().enumerate().map(|(i, x)| (i as i128 + 1) * x).sum()
        } else {
            d.iter().sum()
        }
    }
}

pub fn expected_dim(g: i128, m: i128) -> i128 {
    if m == 1 {
        g
    } else {
        (2 * m - 1) * (g - 1)
    }
}

pub fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

pub fn ceil_div(a: i128, b: i128) -> i128 {
    -(-a).div_euclid(b)
}

/// `GF(p^n)` by addition and multiplication tables over the integer encoding
/// `Σ c_i x^i ↦ Σ c_i p^i`.
pub struct Gf {
    pub p: usize,
    pub n: u32,
    pub q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let n = modulus.len() - 1;
    let mut prod = vec![0; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (n..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for (t, m) in modulus.iter().enumerate() {
                let idx = top - n + t;
                prod[idx] = (prod[idx] + p - (c * m) % p) % p;
            }
        }
    }
    prod.truncate(n);
    prod.resize(n, 0);
    prod
}

fn encode(c: &[usize], p: usize) -> usize {
    c.iter().rev().fold(0, |acc, x| acc * p + x)
}

fn decode(mut v: usize, p: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

impl Gf {
    pub fn new(p: usize, n: u32) -> Gf {
        let q = p.pow(n);
        let nn = n as usize;
        // any monic degree-n polynomial whose multiplication table has no zero divisors
        let modulus = (0..q)
            .map(|low| {
                let mut m = decode(low, p, nn);
                m.push(1);
                m
            })
            .find(|m| {
                (1..q).all(|a| {
                    (1..q).all(|b| encode(&poly_mulmod(&decode(a, p, nn), &decode(b, p, nn), m, p), p) != 0)
                })
            })
            .expect("an irreducible polynomial exists");
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = decode(a, p, nn);
            for b in 0..q {
                let db = decode(b, p, nn);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum, p);
                mul[a * q + b] = encode(&poly_mulmod(&da, &db, &modulus, p), p);
            }
        }
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field");
        }
        Gf { p, n, q, add, mul, inv }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("field")
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Image of an integer under `Z -> F_p -> GF(p^n)`.
    pub fn embed(&self, c: usize) -> usize {
        c % self.p
    }
}

/// Incremental row reduction; stops early once `cap` independent rows are found.
pub struct RowSpace<'a> {
    f: &'a Gf,
    pivots: Vec<(usize, Vec<usize>)>,
}

impl<'a> RowSpace<'a> {
    pub fn new(f: &'a Gf) -> Self {
        RowSpace { f, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut row: Vec<usize>) {
        let f = self.f;
        for (col, prow) in &self.pivots {
            let c = row[*col];
            if c != 0 {
                let factor = f.neg(c);
                for (x, y) in row.iter_mut().zip(prow) {
                    *x = f.add(*x, f.mul(factor, *y));
                }
            }
        }
        if let Some(col) = row.iter().position(|&x| x != 0) {
            let inv = f.inv[row[col]];
            for x in row.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for (_, prow) in self.pivots.iter_mut() {
                let c = prow[col];
                if c != 0 {
                    let factor = f.neg(c);
                    for (x, y) in prow.iter_mut().zip(&row) {
                        *x = f.add(*x, f.mul(factor, *y));
                    }
                }
            }
            self.pivots.push((col, row));
        }
    }
}

/// `(σ_a - 1) t^i = (t + a)^i - t^i` as a coefficient vector of length `j`.
fn translation_deviation(f: &Gf, binom: &[Vec<usize>], a: usize, i: usize, j: usize) -> Vec<usize> {
    let mut row = vec![0; j];
    for l in 0..i {
        row[l] = f.mul(f.embed(binom[i][l]), f.pow(a, i - l));
    }
    row
}

fn pascal(rows: usize, p: usize) -> Vec<Vec<usize>> {
    let mut t = vec![vec![0; rows]; rows];
    for i in 0..rows {
        t[i][0] = 1;
        for l in 1..=i {
            t[i][l] = (t[i - 1][l - 1] + if l < i { t[i - 1][l] } else { 0 }) % p;
        }
    }
    t
}

/// `dim W_j / Σ_{a ∈ F} (σ_a - 1) W_j` with `W_j` realised as polynomials of
/// degree `< j` under translation.
pub fn covariant_dim(f: &Gf, j: usize) -> usize {
    let binom = pascal(j, f.p);
    let mut space = RowSpace::new(f);
    'outer: for a in 1..f.q {
        for i in 1..j {
            space.insert(translation_deviation(f, &binom, a, i, j));
            if space.rank() == j - 1 {
                break 'outer;
            }
        }
    }
    j - space.rank()
}

/// Dimension of the translation-invariant polynomials of degree `< j`.
pub fn fixed_dim(f: &Gf, j: usize) -> usize {
    let binom = pascal(j, f.p);
    let mut space = RowSpace::new(f);
    'outer: for a in 1..f.q {
        let rows: Vec<Vec<usize>> = (0..j).map(|i| translation_deviation(f, &binom, a, i, j)).collect();
        for l in 0..j {
            space.insert(rows.iter().map(|r| r[l]).collect());
            if space.rank() == j - 1 {
                break 'outer;
            }
        }
    }
    j - space.rank()
}
