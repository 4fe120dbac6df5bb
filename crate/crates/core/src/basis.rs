//! Explicit bases of `Ω_F(m)` over a rational base field.
//!
//! Wild kinds: `x^ν · w_k · g_k(x)^{-1} · (dx)^m` with `0 ≤ ν ≤ Γ_k(m) - 2m`,
//! where `w_k = y_1^{a_1} ... y_n^{a_n}` (cyclic) or `y^k` (elementary
//! abelian) and `g_k = Π_i P_i(x)^{ν_ik(m)}`. For `m = 1` the index `k = q-1`
//! is dropped.
//!
//! Tame kind (`m = 1`): `x^ν · y^{-k} · g_k(x) · dx`, `1 ≤ k ≤ n-1`,
//! `0 ≤ ν ≤ Γ_k(1) - 2`, with `g_k = Π_i P_i(x)^{floor(k Φ(i) / e_i)}`.
//!
//! The effective part of a divisor away from the ramified places and infinity
//! (zeros of `w_k` or `y`, and of `x^ν`) is tracked by degree only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::boseck::{boseck_table_with, BoseckTable};
use crate::decomp::expected_dimension;
use crate::digits::small_digits;
use crate::error::{Error, Result};
use crate::extension::{ExtensionKind, ExtensionSpec};
use crate::par::ExecMode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub kind: ExtensionKind,
    pub k: usize,
    /// Exponents of the generators in the numerator: the radix-`p` digits of
    /// `k` for cyclic towers, `[k]` otherwise (for tame this is the exponent
    /// of `y^{-1}`).
    pub exponents: Vec<usize>,
    pub nu_x: BigInt,
    /// Exponent of each ramified `P_i(x)` in `g_k`.
    pub g_exponents: Vec<BigInt>,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceDivisor {
    /// Coefficient at each place of `F` above the `i`-th ramified place.
    pub ramified_coeffs: Vec<BigInt>,
    /// How many places of `F` lie above the `i`-th ramified place.
    pub ramified_counts: Vec<BigInt>,
    /// Coefficient at each place of `F` above infinity.
    pub infinity_coeff: BigInt,
    pub infinity_places: BigInt,
    pub residual_degree: BigInt,
}

impl PlaceDivisor {
    pub fn total_degree(&self) -> BigInt {
        let ramified: BigInt = self.ramified_coeffs.iter().zip(&self.ramified_counts).map(|(c, n)| c * n).sum();
        ramified + &self.infinity_coeff * &self.infinity_places + &self.residual_degree
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolomorphyCheck {
    pub holomorphic: bool,
    pub diagnostics: Vec<String>,
}

/// Number of basis elements with index `k`, indexed by `k`.
pub fn basis_counts(table: &BoseckTable) -> Vec<BigInt> {
    let zero = BigInt::zero();
    let q = table.gamma.len();
    table
        .gamma
        .iter()
        .enumerate()
        .map(|(k, gamma)| {
            let included = match table.kind {
                ExtensionKind::Tame => k >= 1,
                _ => table.m >= 2 || k + 2 <= q,
            };
            if included {
                (gamma - nu_bound_offset(table) + 1_i32).max(zero.clone())
            } else {
                zero.clone()
            }
        })
        .collect()
}

/// `2m` for wild kinds, `2` for tame.
fn nu_bound_offset(table: &BoseckTable) -> BigInt {
    match table.kind {
        ExtensionKind::Tame => BigInt::from(2),
        _ => BigInt::from(2 * table.m),
    }
}

fn require_rational_base(spec: &ExtensionSpec) -> Result<()> {
    if !spec.g_base().is_zero() {
        return Err(Error::unsupported("explicit bases are only constructed over a rational base field (g_base = 0)"));
    }
    Ok(())
}

fn g_exponents(spec: &ExtensionSpec, table: &BoseckTable, k: usize) -> Vec<BigInt> {
    match spec {
        ExtensionSpec::TameKummer { places, .. } => {
            let kb = BigInt::from(k);
            places.iter().map(|pl| (&kb * &pl.phi).div_floor(&pl.e)).collect()
        }
        _ => table.nu.iter().map(|row| row[k].clone()).collect(),
    }
}

fn exponents(spec: &ExtensionSpec, k: usize) -> Vec<usize> {
    match spec {
        ExtensionSpec::CyclicTower { group, .. } => {
            let (p, _) = group.small().expect("tabulated group is small");
            small_digits(k, p, group.n())
        }
        _ => vec![k],
    }
}

pub fn enumerate_basis(spec: &ExtensionSpec, m: u32) -> Result<Vec<BasisElement>> {
    enumerate_basis_with(spec, m, ExecMode::default())
}

/// Elements in lexicographic `(k, ν)` order; indices `k` are processed
/// independently under `mode`.
pub fn enumerate_basis_with(spec: &ExtensionSpec, m: u32, mode: ExecMode) -> Result<Vec<BasisElement>> {
    require_rational_base(spec)?;
    let table = boseck_table_with(spec, m, mode)?;
    let counts = basis_counts(&table);
    let chunks = mode.map_range(counts.len(), |k| {
        let count = counts[k].to_u64().expect("basis count fits in memory");
        if count == 0 {
            return Vec::new();
        }
        let g = g_exponents(spec, &table, k);
        let a = exponents(spec, k);
        (0..count)
            .map(|nu| BasisElement {
                kind: table.kind,
                k,
                exponents: a.clone(),
                nu_x: BigInt::from(nu),
                g_exponents: g.clone(),
                m,
            })
            .collect()
    });
    let out: Vec<BasisElement> = chunks.into_iter().flatten().collect();
    let want = expected_dimension(&table.g_top, m);
    if BigInt::from(out.len()) != want {
        return Err(Error::internal(format!("basis has {} elements, expected {want}", out.len())));
    }
    Ok(out)
}

fn check_element(elem: &BasisElement, spec: &ExtensionSpec, table: &BoseckTable) -> Result<()> {
    if elem.kind != table.kind || elem.m != table.m || table.kind != spec.kind() {
        return Err(Error::range("basis element, spec and table disagree on kind or order"));
    }
    if elem.k >= table.gamma.len() {
        return Err(Error::range(format!("index {} not in [0, {})", elem.k, table.gamma.len())));
    }
    Ok(())
}

/// Divisor of a basis element: coefficients at the ramified places and at
/// infinity, plus the degree of the remaining effective part.
pub fn divisor_of_element(elem: &BasisElement, spec: &ExtensionSpec, table: &BoseckTable) -> Result<PlaceDivisor> {
    check_element(elem, spec, table)?;
    require_rational_base(spec)?;
    let k = elem.k;
    let mb = BigInt::from(table.m);
    let kb = BigInt::from(k);
    let q = &table.group_order;

    let (ramified_coeffs, expected_residual): (Vec<BigInt>, BigInt) = match spec {
        ExtensionSpec::CyclicTower { group, places, .. } => {
            let n = group.n();
            let mut zeros_of_w = BigInt::zero();
            let coeffs = places
                .iter()
                .enumerate()
                .map(|(i, pl)| {
                    let w: BigInt = elem
                        .exponents
                        .iter()
                        .zip(&pl.phi)
                        .enumerate()
                        .map(|(j, (a, phi))| phi * *a * crate::digits::big_pow(group.p(), n - 1 - j as u32))
                        .sum();
                    zeros_of_w += &table.places_above[i] * &w;
                    (&mb * &table.delta[i] - w).mod_floor(&table.ramification[i])
                })
                .collect();
            (coeffs, zeros_of_w + &elem.nu_x * q)
        }
        ExtensionSpec::ElementaryAbelian { places, .. } => {
            let coeffs = places.iter().zip(&table.delta).map(|(pl, d)| (&mb * d - &kb * &pl.phi).mod_floor(q)).collect();
            let pole_degree: BigInt = places.iter().map(|pl| &pl.phi).sum();
            (coeffs, &kb * pole_degree + &elem.nu_x * q)
        }
        ExtensionSpec::TameKummer { places, .. } => {
            let coeffs = places.iter().map(|pl| &pl.e - 1 - (&kb * &pl.phi).mod_floor(&pl.e)).collect();
            (coeffs, &elem.nu_x * q)
        }
    };

    let infinity_coeff = &table.gamma[k] - nu_bound_offset(table) - &elem.nu_x;
    let canonical = &mb * (&table.g_top * 2 - 2);
    let mut div = PlaceDivisor {
        ramified_coeffs,
        ramified_counts: table.places_above.clone(),
        infinity_coeff,
        infinity_places: q.clone(),
        residual_degree: BigInt::zero(),
    };
    div.residual_degree = &canonical - div.total_degree();
    if div.residual_degree != expected_residual {
        return Err(Error::internal(format!(
            "divisor of element (k = {k}, ν = {}) leaves residual degree {} instead of {expected_residual}",
            elem.nu_x, div.residual_degree
        )));
    }
    Ok(div)
}

pub fn verify_holomorphic(elem: &BasisElement, spec: &ExtensionSpec, table: &BoseckTable) -> HolomorphyCheck {
    let div = match divisor_of_element(elem, spec, table) {
        Ok(div) => div,
        Err(e) => return HolomorphyCheck { holomorphic: false, diagnostics: vec![e.to_string()] },
    };
    let mut diagnostics = Vec::new();
    for (i, c) in div.ramified_coeffs.iter().enumerate() {
        if c.is_negative() {
            diagnostics.push(format!("coefficient {c} at places above ramified place {i}"));
        }
    }
    if div.infinity_coeff.is_negative() {
        diagnostics.push(format!("coefficient {} at places above infinity", div.infinity_coeff));
    }
    if div.residual_degree.is_negative() {
        diagnostics.push(format!("residual degree {}", div.residual_degree));
    }
    if elem.nu_x.is_negative() {
        diagnostics.push(format!("negative x exponent {}", elem.nu_x));
    }
    let bound = &table.gamma[elem.k] - nu_bound_offset(table);
    if elem.nu_x > bound {
        diagnostics.push(format!("x exponent {} exceeds Γ_{} - {} = {bound}", elem.nu_x, elem.k, nu_bound_offset(table)));
    }
    let excluded = match table.kind {
        ExtensionKind::Tame => elem.k == 0,
        _ => table.m == 1 && elem.k + 1 == table.gamma.len(),
    };
    if excluded {
        diagnostics.push(format!("index k = {} is not part of the basis", elem.k));
    }
    HolomorphyCheck { holomorphic: diagnostics.is_empty(), diagnostics }
}
