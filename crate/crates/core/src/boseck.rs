//! Different exponents, the invariants `ν_ik(m)` and their place sums
//! `Γ_k(m)` (Boseck invariants), and genera.
//!
//! For a wild place with ramification index `p^e`, different exponent `δ`
//! and `k`-th basis element of pole order `w` at a place above it,
//!
//! ```text
//! ν_ik(m) = floor((m δ - w) / p^e)
//! ```
//!
//! For the tame Kummer case only `m = 1` is covered, where `ν_ik(1)` is the
//! fractional part `<k Φ(i) / e_i>`, kept as an exact rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::digits::{big_pow, small_digits};
use crate::error::{Error, Result};
use crate::extension::{
    validate_spec, CyclicPlace, ElabPlace, ExtensionKind, ExtensionSpec, GroupParams, TamePlace, TABLE_LIMIT,
};
use crate::par::ExecMode;

/// `δ_i = (p-1) Σ_{j > n-e} (Φ(i,j) + 1) p^{n-j}`.
pub fn different_exponent_cyclic(place: &CyclicPlace, params: &GroupParams) -> BigInt {
    let p = params.p();
    let n = params.n();
    let first = n.saturating_sub(place.e) as usize;
    let sum: BigInt = place
        .phi
        .iter()
        .enumerate()
        .skip(first)
        .map(|(j, phi)| (phi + 1) * big_pow(p, n - 1 - j as u32))
        .sum();
    (p - 1) * sum
}

/// `δ_i = (p^n - 1)(Φ(i) + 1)`.
pub fn different_exponent_elab(place: &ElabPlace, params: &GroupParams) -> BigInt {
    (params.order() - 1) * (&place.phi + 1)
}

/// Tamely ramified: `δ_i = e_i - 1`.
pub fn different_exponent_tame(place: &TamePlace) -> BigInt {
    &place.e - 1
}

pub fn different_exponent(spec: &ExtensionSpec, i: usize) -> BigInt {
    match spec {
        ExtensionSpec::CyclicTower { group, places, .. } => different_exponent_cyclic(&places[i], group),
        ExtensionSpec::ElementaryAbelian { group, places } => different_exponent_elab(&places[i], group),
        ExtensionSpec::TameKummer { places, .. } => different_exponent_tame(&places[i]),
    }
}

/// Pole order `Σ_j a_j^{(k)} Φ(i,j) p^{n-j}` of `w_k = y_1^{a_1} ... y_n^{a_n}`
/// at a place above the given one.
pub fn basis_weight_cyclic(place: &CyclicPlace, k: &BigInt, params: &GroupParams) -> Result<BigInt> {
    let digits = crate::digits::p_adic_digits(k, params.p(), params.n())?;
    let n = params.n();
    Ok(digits
        .iter()
        .zip(&place.phi)
        .enumerate()
        .map(|(j, (a, phi))| a * phi * big_pow(params.p(), n - 1 - j as u32))
        .sum())
}

/// `floor((m δ + weight) / p^e)` where `weight` is the (signed) valuation of
/// the basis element. Exposes the general-abelian formula on user-supplied
/// valuations.
pub fn nu_generic(delta: &BigInt, e: u32, weight: &BigInt, p: &BigInt, m: u32) -> BigInt {
    (BigInt::from(m) * delta + weight).div_floor(&big_pow(p, e))
}

/// Degree of `Diff(F/E)`: each `δ_i` counted once per place of `F` above.
pub fn degree_of_different(spec: &ExtensionSpec) -> BigInt {
    (0..spec.place_count())
        .map(|i| spec.places_above(i) * different_exponent(spec, i))
        .sum()
}

/// Genus of `F` by Riemann-Hurwitz, `2g_F - 2 = |G|(2g_E - 2) + deg Diff`.
/// For elementary abelian data the closed form
/// `g_F = (q-1)/2 (-2 + Σ(Φ(i)+1))` is cross-checked.
pub fn genus(spec: &ExtensionSpec) -> Result<BigInt> {
    let two = BigInt::from(2);
    let g_base = spec.g_base();
    let twice: BigInt = spec.group_order() * (&g_base * 2 - 2) + degree_of_different(spec);
    if twice.is_odd() {
        return Err(Error::internal(format!("2g_F - 2 = {twice} is odd")));
    }
    let g = twice / &two + 1;
    if let ExtensionSpec::ElementaryAbelian { group, places } = spec {
        let s: BigInt = places.iter().map(|pl| &pl.phi + 1).sum();
        let closed = (group.order() - 1) * (s - 2);
        if closed != &g * 2 {
            return Err(Error::internal(format!("elementary abelian genus {g} disagrees with closed form {closed}/2")));
        }
    }
    Ok(g)
}

fn check_order(spec: &ExtensionSpec, m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::range("polydifferential order m must be at least 1"));
    }
    if spec.kind() == ExtensionKind::Tame && m != 1 {
        return Err(Error::unsupported(format!("tame extensions are only covered for m = 1 (got m = {m})")));
    }
    Ok(())
}

/// `ν_ik(m)` for a single place and index, as an exact rational (integral in
/// the wild cases).
pub fn nu(spec: &ExtensionSpec, i: usize, k: &BigInt, m: u32) -> Result<BigRational> {
    check_order(spec, m)?;
    if i >= spec.place_count() {
        return Err(Error::range(format!("place index {i} >= {}", spec.place_count())));
    }
    let order = spec.group_order();
    if k.is_negative() || k >= &order {
        return Err(Error::range(format!("index {k} not in [0, {order})")));
    }
    let delta = different_exponent(spec, i);
    let mb = BigInt::from(m);
    Ok(match spec {
        ExtensionSpec::CyclicTower { group, places, .. } => {
            let w = basis_weight_cyclic(&places[i], k, group)?;
            BigRational::from_integer((mb * delta - w).div_floor(&big_pow(group.p(), places[i].e)))
        }
        ExtensionSpec::ElementaryAbelian { group, places } => {
            let w = k * &places[i].phi;
            BigRational::from_integer((mb * delta - w).div_floor(group.order()))
        }
        ExtensionSpec::TameKummer { places, .. } => {
            let pl = &places[i];
            BigRational::new((k * &pl.phi).mod_floor(&pl.e), pl.e.clone())
        }
    })
}

/// All `ν_ik(m)` and `Γ_k(m)` of one extension at one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoseckTable {
    pub kind: ExtensionKind,
    pub m: u32,
    pub characteristic: BigInt,
    /// `|G|`, which is also the number of columns.
    pub group_order: BigInt,
    pub delta: Vec<BigInt>,
    pub ramification: Vec<BigInt>,
    /// Number of places of `F` above each ramified place.
    pub places_above: Vec<BigInt>,
    /// `ν_ik` numerators, indexed `[place][k]`.
    pub nu: Vec<Vec<BigInt>>,
    /// Per-place denominator of `ν_ik`: 1 for wild places, `e_i` for tame ones.
    pub nu_denominators: Vec<BigInt>,
    pub gamma: Vec<BigInt>,
    pub deg_diff: BigInt,
    pub g_base: BigInt,
    pub g_top: BigInt,
}

impl BoseckTable {
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn nu_at(&self, i: usize, k: usize) -> BigRational {
        BigRational::new(self.nu[i][k].clone(), self.nu_denominators[i].clone())
    }

    pub fn gamma_sum(&self) -> BigInt {
        self.gamma.iter().sum()
    }

    pub fn has_totally_ramified_place(&self) -> bool {
        self.ramification.iter().any(|e| e == &self.group_order)
    }
}

pub fn boseck_table(spec: &ExtensionSpec, m: u32) -> Result<BoseckTable> {
    boseck_table_with(spec, m, ExecMode::default())
}

/// Build the table, filling the columns `k` independently under `mode`.
pub fn boseck_table_with(spec: &ExtensionSpec, m: u32, mode: ExecMode) -> Result<BoseckTable> {
    let report = validate_spec(spec, false);
    if !report.is_ok() {
        return Err(Error::Validation(report));
    }
    check_order(spec, m)?;
    let width = spec
        .group_order()
        .to_usize()
        .filter(|&q| q <= TABLE_LIMIT)
        .ok_or_else(|| Error::unsupported(format!("group order {} too large to tabulate", spec.group_order())))?;

    let s = spec.place_count();
    let delta: Vec<BigInt> = (0..s).map(|i| different_exponent(spec, i)).collect();
    let ramification: Vec<BigInt> = (0..s).map(|i| spec.ramification_index(i)).collect();
    let places_above: Vec<BigInt> = (0..s).map(|i| spec.places_above(i)).collect();
    let mb = BigInt::from(m);
    let numerators: Vec<BigInt> = delta.iter().map(|d| &mb * d).collect();

    let (columns, nu_denominators): (Vec<Vec<BigInt>>, Vec<BigInt>) = match spec {
        ExtensionSpec::CyclicTower { group, places, .. } => {
            let (p, _) = group.small().expect("order already bounded");
            let n = group.n();
            // Φ(i,j) p^{n-j}, so that w_ik = Σ_j a_j c_ij
            let coeffs: Vec<Vec<BigInt>> = places
                .iter()
                .map(|pl| {
                    pl.phi.iter().enumerate().map(|(j, phi)| phi * big_pow(group.p(), n - 1 - j as u32)).collect()
                })
                .collect();
            let cols = mode.map_range(width, |k| {
                let digits = small_digits(k, p, n);
                (0..s)
                    .map(|i| {
                        let w: BigInt = digits
                            .iter()
                            .zip(&coeffs[i])
                            .filter(|(a, _)| **a != 0)
                            .map(|(a, c)| c * *a)
                            .sum();
                        (&numerators[i] - w).div_floor(&ramification[i])
                    })
                    .collect()
            });
            (cols, vec![BigInt::one(); s])
        }
        ExtensionSpec::ElementaryAbelian { group, places } => {
            let q = group.order();
            let cols = mode.map_range(width, |k| {
                let kb = BigInt::from(k);
                (0..s).map(|i| (&numerators[i] - &kb * &places[i].phi).div_floor(q)).collect()
            });
            (cols, vec![BigInt::one(); s])
        }
        ExtensionSpec::TameKummer { places, .. } => {
            let cols = mode.map_range(width, |k| {
                let kb = BigInt::from(k);
                places.iter().map(|pl| (&kb * &pl.phi).mod_floor(&pl.e)).collect()
            });
            (cols, places.iter().map(|pl| pl.e.clone()).collect())
        }
    };

    let gamma = columns
        .iter()
        .enumerate()
        .map(|(k, col)| {
            let total: BigRational = col
                .iter()
                .zip(&nu_denominators)
                .map(|(v, d)| BigRational::new(v.clone(), d.clone()))
                .sum();
            if total.is_integer() {
                Ok(total.to_integer())
            } else {
                Err(Error::internal(format!("Γ_{k} = {total} is not an integer")))
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut nu = vec![Vec::with_capacity(width); s];
    for col in columns {
        for (row, v) in nu.iter_mut().zip(col) {
            row.push(v);
        }
    }

    let deg_diff: BigInt = places_above.iter().zip(&delta).map(|(c, d)| c * d).sum();
    let table = BoseckTable {
        kind: spec.kind(),
        m,
        characteristic: spec.characteristic().clone(),
        group_order: spec.group_order(),
        delta,
        ramification,
        places_above,
        nu,
        nu_denominators,
        gamma,
        deg_diff,
        g_base: spec.g_base(),
        g_top: report.genus.clone().expect("valid spec has a genus"),
    };
    check_different_identity(&table)?;
    Ok(table)
}

/// `2 Σ_k Γ_k(m) = (2m-1) deg Diff` (wild), `2 Σ_k Γ_k(1) = deg Diff` (tame).
fn check_different_identity(table: &BoseckTable) -> Result<()> {
    let lhs = table.gamma_sum() * 2;
    let factor = if table.kind.is_wild() { BigInt::from(2 * table.m - 1) } else { BigInt::one() };
    let rhs = factor * &table.deg_diff;
    if lhs != rhs {
        return Err(Error::internal(format!("2 ΣΓ = {lhs} but (2m-1) deg Diff = {rhs}")));
    }
    Ok(())
}
