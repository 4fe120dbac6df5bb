//! Tangent space of the local deformation functor for covers of the
//! projective line with a single, totally ramified branch point.
//!
//! `H^1(G, T_X)` splits as `H^1(X/G, π_*^G T_X) ⊕ H^1(G, T_{K[[t]]})`, and its
//! dimension is that of the covariants of `Ω_X(2)`, which is read off from
//! the decomposition at `m = 2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::boseck::{boseck_table, BoseckTable};
use crate::decomp::{decompose, Decomposition};
use crate::digits::ceil_div;
use crate::error::{Error, Result};
use crate::extension::{ExtensionKind, ExtensionSpec};
use crate::modrep::{covariant_dim_closed, covariant_dim_oracle, SmallField};

/// Largest group order for which the covariant dimensions are also computed
/// by the rank oracle.
pub const ORACLE_ORDER_LIMIT: u64 = 64;

/// `dim H^1(X/G, π_*^G T_X) = 3 g_{X/G} - 3 + ⌈δ/q⌉`.
pub fn h1_quotient_dim(g_quotient: &BigInt, delta: &BigInt, q: &BigInt) -> BigInt {
    g_quotient * 3 - 3 + ceil_div(delta, q)
}

/// `dim H^1(G, T_{K[[t]]}) = ⌊2δ/q⌋ - ⌈δ/q⌉` for cyclic `G`.
pub fn deform_cyclic(delta: &BigInt, q: &BigInt) -> BigInt {
    (delta * 2u32).div_floor(q) - ceil_div(delta, q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformReport {
    pub kind: ExtensionKind,
    pub delta: BigInt,
    pub group_order: BigInt,
    /// The decomposition of `Ω_X(2)`.
    pub decomposition: Decomposition,
    /// Covariant dimension of each summand, aligned with `decomposition.d`.
    pub covariant_dims: Vec<BigInt>,
    pub covariant_total: BigInt,
    /// The same total with covariant dimensions taken from the rank oracle,
    /// for groups of order at most [`ORACLE_ORDER_LIMIT`].
    pub covariant_total_oracle: Option<BigInt>,
    pub h1_quotient: BigInt,
    pub h1_local: BigInt,
    /// `Γ_0 + Γ_{p-1} - 6 - Σ_{p | ν, 0 < ν < q} (Γ_{ν-1} - Γ_ν)`, elementary
    /// abelian only.
    pub closed_form: Option<BigInt>,
}

impl DeformReport {
    pub fn closed_form_agrees(&self) -> Option<bool> {
        self.closed_form.as_ref().map(|c| c == &self.covariant_total)
    }

    pub fn splitting_holds(&self) -> bool {
        self.covariant_total == &self.h1_quotient + &self.h1_local
    }
}

fn single_branch_point(spec: &ExtensionSpec) -> Result<()> {
    if !spec.kind().is_wild() {
        return Err(Error::unsupported("deformation dimensions need a wild (p-group) extension"));
    }
    if !spec.g_base().is_zero() {
        return Err(Error::unsupported("deformation dimensions need a cover of the projective line (g_base = 0)"));
    }
    if spec.place_count() != 1 {
        return Err(Error::unsupported(format!(
            "deformation dimensions need exactly one ramified place, got {}",
            spec.place_count()
        )));
    }
    if !spec.has_totally_ramified_place() {
        return Err(Error::unsupported("the ramified place must be totally ramified"));
    }
    Ok(())
}

/// `Γ_0 + Γ_{p-1} - 6 - Σ_{p | ν, 0 < ν < q} (Γ_{ν-1} - Γ_ν)`.
pub fn elab_closed_form(table: &BoseckTable) -> BigInt {
    let g = &table.gamma;
    let p = table.characteristic.to_usize().expect("tabulated characteristic");
    let tail: BigInt = (p..g.len()).step_by(p).map(|v| &g[v - 1] - &g[v]).sum();
    &g[0] + &g[p - 1] - 6 - tail
}

fn oracle_dims(table: &BoseckTable, dec: &Decomposition) -> Result<Option<Vec<BigInt>>> {
    let q = table.group_order.to_u64().unwrap_or(u64::MAX);
    if q > ORACLE_ORDER_LIMIT {
        return Ok(None);
    }
    let p = table.characteristic.to_u64().expect("small characteristic");
    let n = q.ilog(p);
    let field = SmallField::new(p, n)?;
    dec.d
        .iter()
        .enumerate()
        .map(|(i, d)| if d.is_zero() { Ok(BigInt::zero()) } else { covariant_dim_oracle(i + 1, &field).map(BigInt::from) })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

pub fn deform_report(spec: &ExtensionSpec) -> Result<DeformReport> {
    single_branch_point(spec)?;
    let table = boseck_table(spec, 2)?;
    let dec = decompose(&table)?;
    let q = table.group_order.clone();
    let delta = table.delta[0].clone();
    let h1_quotient = h1_quotient_dim(&table.g_base, &delta, &q);

    let (covariant_dims, closed_form): (Vec<BigInt>, Option<BigInt>) = match spec {
        ExtensionSpec::ElementaryAbelian { group, .. } => {
            let p = group.p().to_u64().expect("small characteristic");
            let dims = (1..=dec.d.len())
                .map(|j| covariant_dim_closed(j as u64, p, group.n()).map(BigInt::from))
                .collect::<Result<_>>()?;
            (dims, Some(elab_closed_form(&table)))
        }
        _ => (vec![BigInt::from(1); dec.d.len()], None),
    };
    let covariant_total: BigInt = dec.d.iter().zip(&covariant_dims).map(|(d, c)| d * c).sum();
    let covariant_total_oracle = oracle_dims(&table, &dec)?
        .map(|dims| dec.d.iter().zip(&dims).map(|(d, c)| d * c).sum());
    let h1_local = &covariant_total - &h1_quotient;

    if spec.kind() == ExtensionKind::Cyclic {
        let gamma0 = (&delta * 2u32).div_floor(&q);
        if table.gamma[0] != gamma0 || covariant_total != &gamma0 - 3 {
            return Err(Error::internal(format!(
                "covariant total {covariant_total} disagrees with ⌊2δ/q⌋ - 3 = {}",
                &gamma0 - 3
            )));
        }
        if h1_local != deform_cyclic(&delta, &q) {
            return Err(Error::internal("local deformation dimension disagrees with ⌊2δ/q⌋ - ⌈δ/q⌉"));
        }
    }

    let report = DeformReport {
        kind: spec.kind(),
        delta,
        group_order: q,
        decomposition: dec,
        covariant_dims,
        covariant_total,
        covariant_total_oracle,
        h1_quotient,
        h1_local,
        closed_form,
    };
    if !report.splitting_holds() {
        return Err(Error::internal("tangent space splitting fails"));
    }
    Ok(report)
}

/// Cyclic cover with a single totally ramified place.
pub fn deform_cyclic_report(spec: &ExtensionSpec) -> Result<DeformReport> {
    if spec.kind() != ExtensionKind::Cyclic {
        return Err(Error::range("expected a cyclic extension"));
    }
    deform_report(spec)
}

/// Elementary abelian cover with a single ramified place.
pub fn deform_elab(spec: &ExtensionSpec) -> Result<DeformReport> {
    if spec.kind() != ExtensionKind::ElementaryAbelian {
        return Err(Error::range("expected an elementary abelian extension"));
    }
    deform_report(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{CyclicPlace, ElabPlace, GroupParams};

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn elab(p: i64, n: u32, phis: &[i64]) -> ExtensionSpec {
        ExtensionSpec::ElementaryAbelian {
            group: GroupParams::new(p, n),
            places: phis.iter().map(|&f| ElabPlace::new(f)).collect(),
        }
    }

    fn cyclic(p: i64, phi: &[i64]) -> ExtensionSpec {
        ExtensionSpec::CyclicTower {
            group: GroupParams::new(p, phi.len() as u32),
            places: vec![CyclicPlace::total(phi.iter().map(|&x| b(x)).collect())],
            g_base: b(0),
        }
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(h1_quotient_dim(&b(0), &b(10), &b(3)), b(1));
        assert_eq!(h1_quotient_dim(&b(0), &b(12), &b(4)), b(0));
        assert_eq!(h1_quotient_dim(&b(0), &b(35), &b(5)), b(4));
        assert_eq!(h1_quotient_dim(&b(2), &b(0), &b(5)), b(3));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(deform_cyclic(&b(10), &b(3)), b(2));
        assert_eq!(deform_cyclic(&b(8), &b(4)), b(2));
        assert_eq!(deform_cyclic(&b(28), &b(7)), b(4));
    }

    #[test]
    fn cyclic_report() {
        let r = deform_cyclic_report(&cyclic(3, &[4])).unwrap();
        assert_eq!(r.delta, b(10));
        assert_eq!(r.covariant_total, b(3));
        assert_eq!(r.h1_local, b(2));
        assert_eq!(r.closed_form, None);
        assert_eq!(r.covariant_total_oracle, Some(b(3)));

        // δ = 8, q = 4, but g_F = 1 so the data is rejected
        assert!(matches!(deform_cyclic_report(&cyclic(2, &[1, 3])), Err(Error::Validation(_))));
        let r = deform_cyclic_report(&cyclic(2, &[1, 5])).unwrap();
        assert_eq!(r.h1_local, deform_cyclic(&r.delta, &b(4)));
    }

    #[test]
    fn elab_examples() {
        let r = deform_elab(&elab(3, 1, &[4])).unwrap();
        assert_eq!(r.decomposition.d, vec![b(1); 3]);
        assert_eq!(r.covariant_dims, vec![b(1); 3]);
        assert_eq!(r.covariant_total, b(3));
        assert_eq!(r.h1_local, b(2));
        assert_eq!(r.closed_form, Some(b(4)));
        assert_eq!(r.closed_form_agrees(), Some(false));

        let r = deform_elab(&elab(2, 2, &[3])).unwrap();
        assert_eq!(r.decomposition.d, vec![b(1), b(1), b(1), b(0)]);
        assert_eq!(r.covariant_dims, vec![b(1), b(1), b(2), b(1)]);
        assert_eq!(r.covariant_total, b(4));
        assert_eq!(r.h1_local, b(4));
        assert_eq!(r.closed_form_agrees(), Some(true));
        assert_eq!(r.covariant_total_oracle, Some(b(4)));
    }

    #[test]
    fn closed_form_gap_is_top_multiplicity() {
        for phi in [1, 3, 5, 7, 9, 11, 13] {
            let Ok(r) = deform_elab(&elab(2, 2, &[phi])) else { continue };
            let gap = r.closed_form.clone().unwrap() - &r.covariant_total;
            assert_eq!(&gap, r.decomposition.d.last().unwrap());
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(deform_elab(&elab(3, 1, &[2, 2])), Err(Error::Unsupported(_))));
        assert!(matches!(deform_elab(&cyclic(3, &[4])), Err(Error::Range(_))));
        let unramified = ExtensionSpec::CyclicTower { group: GroupParams::new(3, 1), places: vec![], g_base: b(2) };
        assert!(matches!(deform_report(&unramified), Err(Error::Unsupported(_))));
    }

    #[test]
    fn prime_order_agreement() {
        for p in [2i64, 3, 5, 7] {
            for phi in (1..=30).filter(|f| f % p != 0) {
                let (Ok(c), Ok(e)) = (deform_report(&cyclic(p, &[phi])), deform_report(&elab(p, 1, &[phi]))) else {
                    continue;
                };
                assert_eq!(c.h1_local, e.h1_local);
                assert_eq!(c.covariant_total, e.covariant_total);
            }
        }
    }
}
