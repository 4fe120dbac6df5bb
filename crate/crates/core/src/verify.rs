//! The identity suite: every exact relation between tables, decompositions,
//! bases and deformation dimensions, checked on one spec at one order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::basis::{enumerate_basis_with, verify_holomorphic};
use crate::boseck::{boseck_table_with, BoseckTable};
use crate::decomp::{decompose, expected_dimension};
use crate::deform::{deform_cyclic, deform_report};
use crate::error::Error;
use crate::extension::{CyclicPlace, ElabPlace, ExtensionKind, ExtensionSpec};
use crate::par::ExecMode;
use crate::sweep::{generate_specs, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, status: Status::Pass, detail: detail.into() }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, status: Status::Fail, detail: detail.into() }
    }

    fn skip(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, status: Status::Skip, detail: detail.into() }
    }

    fn from_bool(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }

    /// Unsupported cases are skipped, anything else is a failure.
    fn from_error(name: &'static str, err: &Error) -> Self {
        match err {
            Error::Unsupported(msg) => Self::skip(name, msg.clone()),
            other => Self::fail(name, other.to_string()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status.label(), self.name, self.detail)
    }
}

pub const DIFFERENT_IDENTITY: &str = "different_identity";
pub const DIMENSION_IDENTITY: &str = "dimension_identity";
pub const NU_MONOTONE: &str = "nu_monotone";
pub const PRIME_ORDER_COINCIDENCE: &str = "prime_order_coincidence";
pub const BASIS_CONSISTENCY: &str = "basis_consistency";
pub const DEFORMATION: &str = "deformation";

fn different_identity(table: &BoseckTable) -> Check {
    let lhs = table.gamma_sum() * 2;
    let factor = if table.kind.is_wild() { BigInt::from(2 * table.m - 1) } else { BigInt::one() };
    let rhs = factor * &table.deg_diff;
    Check::from_bool(DIFFERENT_IDENTITY, lhs == rhs, format!("2ΣΓ = {lhs}, factor·deg Diff = {rhs}"))
}

fn dimension_identity(table: &BoseckTable) -> Check {
    match decompose(table) {
        Ok(dec) => {
            let want = expected_dimension(&table.g_top, table.m);
            let nonneg = dec.d.iter().all(|d| d >= &BigInt::zero());
            Check::from_bool(
                DIMENSION_IDENTITY,
                nonneg && dec.total_dim == want,
                format!("Σ dim·d = {}, expected {want}", dec.total_dim),
            )
        }
        Err(e) => Check::from_error(DIMENSION_IDENTITY, &e),
    }
}

fn nu_monotone(spec: &ExtensionSpec, table: &BoseckTable, mode: ExecMode) -> Check {
    if !table.kind.is_wild() || table.m < 2 {
        return Check::skip(NU_MONOTONE, "needs a wild spec and m >= 2");
    }
    match boseck_table_with(spec, table.m - 1, mode) {
        Ok(prev) => {
            let ok = prev.nu.iter().zip(&table.nu).all(|(a, b)| a.iter().zip(b).all(|(x, y)| x <= y));
            Check::from_bool(NU_MONOTONE, ok, format!("ν(m-1) ≤ ν(m) on {} places", table.nu.len()))
        }
        Err(e) => Check::from_error(NU_MONOTONE, &e),
    }
}

/// The same data read as the other wild kind, when the group has order `p`.
pub fn prime_order_counterpart(spec: &ExtensionSpec) -> Option<ExtensionSpec> {
    match spec {
        ExtensionSpec::CyclicTower { group, places, g_base } if group.n() == 1 && g_base.is_zero() => {
            Some(ExtensionSpec::ElementaryAbelian {
                group: group.clone(),
                places: places.iter().map(|pl| ElabPlace::new(pl.phi[0].clone())).collect(),
            })
        }
        ExtensionSpec::ElementaryAbelian { group, places } if group.n() == 1 => Some(ExtensionSpec::CyclicTower {
            group: group.clone(),
            places: places.iter().map(|pl| CyclicPlace::total(vec![pl.phi.clone()])).collect(),
            g_base: BigInt::zero(),
        }),
        _ => None,
    }
}

fn prime_order_coincidence(spec: &ExtensionSpec, table: &BoseckTable, mode: ExecMode) -> Check {
    let Some(other) = prime_order_counterpart(spec) else {
        return Check::skip(PRIME_ORDER_COINCIDENCE, "group order is not prime or base is not rational");
    };
    let other_table = match boseck_table_with(&other, table.m, mode) {
        Ok(t) => t,
        Err(e) => return Check::fail(PRIME_ORDER_COINCIDENCE, format!("counterpart table: {e}")),
    };
    if other_table.nu != table.nu || other_table.gamma != table.gamma || other_table.g_top != table.g_top {
        return Check::fail(PRIME_ORDER_COINCIDENCE, "ν or Γ differ");
    }
    let (a, b) = (decompose(table), decompose(&other_table));
    match (&a, &b) {
        (Ok(x), Ok(y)) if x.d != y.d => return Check::fail(PRIME_ORDER_COINCIDENCE, "multiplicities differ"),
        (Ok(_), Ok(_)) => {}
        _ => return Check::fail(PRIME_ORDER_COINCIDENCE, format!("decompositions: {a:?} / {b:?}")),
    }
    if spec.place_count() == 1 && table.m == 2 {
        match (deform_report(spec), deform_report(&other)) {
            (Ok(x), Ok(y)) if x.h1_local == y.h1_local && x.covariant_total == y.covariant_total => {}
            (x, y) => return Check::fail(PRIME_ORDER_COINCIDENCE, format!("deformation: {x:?} / {y:?}")),
        }
    }
    Check::pass(PRIME_ORDER_COINCIDENCE, format!("ν, Γ and d agree with the {} reading", other.kind()))
}

fn basis_consistency(spec: &ExtensionSpec, table: &BoseckTable, mode: ExecMode) -> Check {
    if !spec.g_base().is_zero() {
        return Check::skip(BASIS_CONSISTENCY, "bases are only built over a rational base");
    }
    let dec = match decompose(table) {
        Ok(d) => d,
        Err(e) => return Check::from_error(BASIS_CONSISTENCY, &e),
    };
    let basis = match enumerate_basis_with(spec, table.m, mode) {
        Ok(b) => b,
        Err(e) => return Check::from_error(BASIS_CONSISTENCY, &e),
    };
    if BigInt::from(basis.len()) != dec.total_dim {
        return Check::fail(BASIS_CONSISTENCY, format!("{} elements, decomposition dimension {}", basis.len(), dec.total_dim));
    }
    let offset = if table.kind.is_wild() { BigInt::from(2 * table.m) } else { BigInt::from(2) };
    let bad = mode.map_slice(&basis, |elem| {
        if !verify_holomorphic(elem, spec, table).holomorphic {
            return Some(format!("element (k = {}, ν = {}) not holomorphic", elem.k, elem.nu_x));
        }
        let mut over = elem.clone();
        over.nu_x = &table.gamma[elem.k] - &offset + 1;
        if verify_holomorphic(&over, spec, table).holomorphic {
            return Some(format!("perturbation (k = {}, ν = {}) accepted", over.k, over.nu_x));
        }
        None
    });
    match bad.into_iter().flatten().next() {
        Some(msg) => Check::fail(BASIS_CONSISTENCY, msg),
        None => Check::pass(BASIS_CONSISTENCY, format!("{} elements, all holomorphic, all perturbations rejected", basis.len())),
    }
}

fn deformation(spec: &ExtensionSpec, table: &BoseckTable) -> Check {
    if table.m != 2 || !spec.kind().is_wild() || spec.place_count() != 1 || !spec.g_base().is_zero() {
        return Check::skip(DEFORMATION, "needs m = 2 and a single-place wild cover of the line");
    }
    match deform_report(spec) {
        Ok(r) => {
            let mut ok = r.splitting_holds();
            if r.kind == ExtensionKind::Cyclic {
                ok &= r.h1_local == deform_cyclic(&r.delta, &r.group_order);
            }
            Check::from_bool(
                DEFORMATION,
                ok,
                format!("covariants {} = {} + {}", r.covariant_total, r.h1_quotient, r.h1_local),
            )
        }
        Err(e) => Check::from_error(DEFORMATION, &e),
    }
}

/// All checks for one spec at one order.
pub fn verify_spec(spec: &ExtensionSpec, m: u32, mode: ExecMode) -> Vec<Check> {
    let table = match boseck_table_with(spec, m, mode) {
        Ok(t) => t,
        Err(e) => return vec![Check::from_error(DIFFERENT_IDENTITY, &e)],
    };
    vec![
        different_identity(&table),
        dimension_identity(&table),
        nu_monotone(spec, &table, mode),
        prime_order_coincidence(spec, &table, mode),
        basis_consistency(spec, &table, mode),
        deformation(spec, &table),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub index: usize,
    pub spec: ExtensionSpec,
    pub m: u32,
    pub checks: Vec<Check>,
}

/// Orders to test for a spec: tame data only has `m = 1`.
pub fn orders_for(spec: &ExtensionSpec, orders: &[u32]) -> Vec<u32> {
    if spec.kind() == ExtensionKind::Tame {
        orders.iter().copied().filter(|&m| m == 1).collect()
    } else {
        orders.to_vec()
    }
}

/// Run the suite over `cfg.count` random specs; specs are processed
/// independently under `mode`, results come back in generation order.
pub fn verify_sweep(cfg: &SweepConfig, orders: &[u32], mode: ExecMode) -> Vec<SweepEntry> {
    let specs: Vec<(usize, ExtensionSpec)> = generate_specs(cfg).into_iter().enumerate().collect();
    mode.map_slice(&specs, |(index, spec)| {
        orders_for(spec, orders)
            .into_iter()
            .map(|m| SweepEntry { index: *index, spec: spec.clone(), m, checks: verify_spec(spec, m, ExecMode::Sequential) })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}
