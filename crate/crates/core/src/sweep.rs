//! Seeded random generation of valid extension data.
//!
//! Cyclic jump data is produced from upper ramification jumps `u_1 < ... < u_e`
//! (with `p ∤ u_1`, and `u_{t+1} = p u_t` or `p ∤ u_{t+1} > p u_t`) through the
//! Herbrand function, `l_{t+1} = l_t + p^t (u_{t+1} - u_t)`, so every tower
//! generated actually occurs.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extension::{validate_spec, CyclicPlace, ElabPlace, ExtensionSpec, GroupParams, TamePlace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    pub count: usize,
    pub primes: Vec<u64>,
    pub max_n: u32,
    pub max_places: usize,
    pub max_phi: u64,
    /// Largest tame degree tried.
    pub max_tame_degree: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { seed: 0, count: 500, primes: vec![2, 3, 5, 7], max_n: 3, max_places: 5, max_phi: 50, max_tame_degree: 12 }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coprime_below(rng: &mut impl Rng, p: u64, max: u64) -> u64 {
    loop {
        let v = rng.gen_range(1..=max);
        if v % p != 0 {
            return v;
        }
    }
}

/// Lower jumps of a totally ramified `Z/p^e` extension, all at most `max_phi`.
pub fn herbrand_jumps(rng: &mut impl Rng, p: u64, e: u32, max_phi: u64) -> Option<Vec<u64>> {
    for _ in 0..200 {
        let mut upper = vec![coprime_below(rng, p, max_phi)];
        for _ in 1..e {
            let lo = p * upper.last().expect("nonempty");
            let next = if rng.gen_bool(0.3) {
                lo
            } else {
                let mut v = lo + rng.gen_range(1..30);
                while v.is_multiple_of(p) {
                    v += 1;
                }
                v
            };
            upper.push(next);
        }
        let mut lower = vec![upper[0]];
        for t in 1..e as usize {
            let step = p.pow(t as u32) * (upper[t] - upper[t - 1]);
            lower.push(lower[t - 1] + step);
        }
        if lower.iter().all(|&l| l <= max_phi) {
            return Some(lower);
        }
    }
    None
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_cyclic(rng: &mut impl Rng, cfg: &SweepConfig) -> Option<ExtensionSpec> {
    let p = *cfg.primes.choose(rng)?;
    let n = rng.gen_range(1..=cfg.max_n);
    let g_base: u64 = *[0, 0, 1, 2].choose(rng)?;
    let s = rng.gen_range(if g_base >= 2 { 0 } else { 1 }..=cfg.max_places);
    let mut places = Vec::with_capacity(s);
    for i in 0..s {
        let e = if i == 0 && g_base == 0 { n } else { rng.gen_range(1..=n) };
        let jumps = herbrand_jumps(rng, p, e, cfg.max_phi)?;
        let mut phi = vec![0; (n - e) as usize];
        phi.extend(jumps);
        places.push(CyclicPlace::new(e, big(&phi)));
    }
    Some(ExtensionSpec::CyclicTower { group: GroupParams::new(p, n), places, g_base: BigInt::from(g_base) })
}

pub fn random_elab(rng: &mut impl Rng, cfg: &SweepConfig) -> Option<ExtensionSpec> {
    let p = *cfg.primes.choose(rng)?;
    let n = rng.gen_range(1..=cfg.max_n);
    let s = rng.gen_range(1..=cfg.max_places);
    let places = (0..s).map(|_| ElabPlace::new(coprime_below(rng, p, cfg.max_phi))).collect();
    Some(ExtensionSpec::ElementaryAbelian { group: GroupParams::new(p, n), places })
}

pub fn random_tame(rng: &mut impl Rng, cfg: &SweepConfig) -> Option<ExtensionSpec> {
    let p = *cfg.primes.choose(rng)?;
    let degrees: Vec<u64> = (2..=cfg.max_tame_degree).filter(|d| d % p != 0).collect();
    let n_deg = *degrees.choose(rng)?;
    let g_base: u64 = *[0, 0, 0, 1, 2].choose(rng)?;
    let s = rng.gen_range(2..=cfg.max_places.max(2));
    let mut vu: Vec<u64> = (0..s - 1).map(|_| rng.gen_range(1..n_deg)).collect();
    let last = (n_deg - vu.iter().sum::<u64>() % n_deg) % n_deg;
    if last == 0 {
        return None;
    }
    vu.push(last);
    let n = BigInt::from(n_deg);
    let places = vu.iter().map(|&v| TamePlace::new(v, &n)).collect();
    Some(ExtensionSpec::TameKummer { n_deg: n, p: BigInt::from(p), places, g_base: BigInt::from(g_base) })
}

/// A valid spec of a randomly chosen kind.
pub fn random_spec(rng: &mut impl Rng, cfg: &SweepConfig) -> ExtensionSpec {
    loop {
        let roll: f64 = rng.gen();
        let candidate = if roll < 0.45 {
            random_cyclic(rng, cfg)
        } else if roll < 0.8 {
            random_elab(rng, cfg)
        } else {
            random_tame(rng, cfg)
        };
        if let Some(spec) = candidate {
            if validate_spec(&spec, true).is_ok() {
                return spec;
            }
        }
    }
}

/// `cfg.count` valid specs, reproducible from `cfg.seed`.
pub fn generate_specs(cfg: &SweepConfig) -> Vec<ExtensionSpec> {
    let mut rng = rng_from_seed(cfg.seed);
    (0..cfg.count).map(|_| random_spec(&mut rng, cfg)).collect()
}

/// Single-place cyclic covers of the projective line, the setting of the
/// deformation formulas, with `δ ≤ max_delta` and `q ≤ max_order`.
pub fn katz_gabber_cyclic(rng: &mut impl Rng, primes: &[u64], max_delta: u64, max_order: u64) -> ExtensionSpec {
    loop {
        let Some(&p) = primes.choose(rng) else { panic!("no primes") };
        let max_n = (1..).take_while(|&n| p.pow(n) <= max_order).last().unwrap_or(0);
        if max_n == 0 {
            continue;
        }
        let n = rng.gen_range(1..=max_n);
        let Some(jumps) = herbrand_jumps(rng, p, n, max_delta) else { continue };
        let spec = ExtensionSpec::CyclicTower {
            group: GroupParams::new(p, n),
            places: vec![CyclicPlace::total(big(&jumps))],
            g_base: BigInt::from(0),
        };
        let delta = crate::boseck::different_exponent(&spec, 0);
        if delta <= BigInt::from(max_delta) && validate_spec(&spec, true).is_ok() {
            return spec;
        }
    }
}
