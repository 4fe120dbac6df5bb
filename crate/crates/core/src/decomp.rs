//! Multiplicities of the indecomposable `K[G]`-modules in `Ω_F(m)`.
//!
//! Wild kinds: `d[k-1]` counts the summand of dimension `k` (the Jordan block
//! `K[G]/⟨(σ-1)^k⟩` for cyclic groups, `W_k` for elementary abelian ones),
//! `k = 1..=q`. Tame kind: `d[j]` counts the character on which the generator
//! acts by `ζ^j`, `j = 0..n-1`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::boseck::BoseckTable;
use crate::error::{Error, Result};
use crate::extension::ExtensionKind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: ExtensionKind,
    pub m: u32,
    pub d: Vec<BigInt>,
    pub total_dim: BigInt,
}

impl Decomposition {
    fn build(kind: ExtensionKind, m: u32, d: Vec<BigInt>) -> Result<Self> {
        if let Some((pos, v)) = d.iter().enumerate().find(|(_, v)| v.is_negative()) {
            let index = if kind.is_wild() { pos + 1 } else { pos };
            return Err(Error::Realizability { index, value: v.clone() });
        }
        let mut out = Decomposition { kind, m, d, total_dim: BigInt::zero() };
        out.total_dim = (0..out.d.len()).map(|i| out.module_dim(i) * &out.d[i]).sum();
        Ok(out)
    }

    /// Dimension of the summand counted by `d[i]`.
    pub fn module_dim(&self, i: usize) -> BigInt {
        if self.kind.is_wild() {
            BigInt::from(i + 1)
        } else {
            BigInt::from(1)
        }
    }

    /// Label of `d[i]` as printed: `k` for wild kinds, `j` for tame ones.
    pub fn label(&self, i: usize) -> usize {
        if self.kind.is_wild() {
            i + 1
        } else {
            i
        }
    }
}

/// `dim Ω_F(m)`: `(2m-1)(g-1)` for `m ≥ 2`, `g` for `m = 1`.
pub fn expected_dimension(g: &BigInt, m: u32) -> BigInt {
    if m == 1 {
        g.clone()
    } else {
        BigInt::from(2 * m - 1) * (g - 1)
    }
}

fn require(table: &BoseckTable, kind: ExtensionKind, m1: bool) -> Result<()> {
    if table.kind != kind {
        return Err(Error::range(format!("expected a {kind} table, got {}", table.kind)));
    }
    if m1 && table.m != 1 {
        return Err(Error::range(format!("expected an m = 1 table, got m = {}", table.m)));
    }
    if !m1 && table.m < 2 {
        return Err(Error::range("expected a table with m >= 2"));
    }
    Ok(())
}

fn check_total(dec: Decomposition, g: &BigInt) -> Result<Decomposition> {
    let want = expected_dimension(g, dec.m);
    if dec.total_dim != want {
        return Err(Error::internal(format!("decomposition has dimension {} but Ω_F({}) has {want}", dec.total_dim, dec.m)));
    }
    Ok(dec)
}

/// `d_k = Γ_{k-1} - Γ_k` for `k < q`; the top entry is passed in.
fn differences(gamma: &[BigInt], top: BigInt) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = gamma.windows(2).map(|w| &w[0] - &w[1]).collect();
    d.push(top);
    d
}

pub fn decompose_cyclic(table: &BoseckTable) -> Result<Decomposition> {
    require(table, ExtensionKind::Cyclic, false)?;
    let last = table.gamma.last().expect("nonempty table");
    let top = last + (&table.g_base - 1) * BigInt::from(2 * table.m - 1);
    let dec = Decomposition::build(table.kind, table.m, differences(&table.gamma, top))?;
    check_total(dec, &table.g_top)
}

/// Holomorphic differentials of a cyclic cover with at least one totally
/// ramified place.
pub fn decompose_cyclic_m1(table: &BoseckTable) -> Result<Decomposition> {
    require(table, ExtensionKind::Cyclic, true)?;
    if !table.has_totally_ramified_place() {
        return Err(Error::unsupported(
            "m = 1 cyclic decomposition needs a totally ramified place (the general case is not covered)",
        ));
    }
    let mut d = differences(&table.gamma, table.g_base.clone());
    let q = d.len();
    if q >= 2 {
        d[q - 2] -= 1;
    }
    let dec = Decomposition::build(table.kind, 1, d)?;
    check_total(dec, &table.g_top)
}

pub fn decompose_elab(table: &BoseckTable) -> Result<Decomposition> {
    require(table, ExtensionKind::ElementaryAbelian, false)?;
    let last = table.gamma.last().expect("nonempty table");
    let top = last - BigInt::from(2 * table.m - 1);
    let dec = Decomposition::build(table.kind, table.m, differences(&table.gamma, top))?;
    check_total(dec, &table.g_top)
}

/// Reconstructed from the number of basis elements per index `k`:
/// `Γ_k(1) - 1` for `k ≤ q-2` and none for `k = q-1`.
pub fn decompose_elab_m1(table: &BoseckTable) -> Result<Decomposition> {
    require(table, ExtensionKind::ElementaryAbelian, true)?;
    let q = table.gamma.len();
    let counts: Vec<BigInt> =
        table.gamma.iter().enumerate().map(|(k, g)| if k + 1 < q { g - 1 } else { BigInt::zero() }).collect();
    let dec = Decomposition::build(table.kind, 1, differences(&counts, counts[q - 1].clone()))?;
    check_total(dec, &table.g_top)
}

/// `d_0 = g_E`, `d_j = Γ_j(1) - 1 + g_E`.
pub fn decompose_tame(table: &BoseckTable) -> Result<Decomposition> {
    require(table, ExtensionKind::Tame, true)?;
    let g = &table.g_base;
    let d = table
        .gamma
        .iter()
        .enumerate()
        .map(|(j, gamma)| if j == 0 { g.clone() } else { gamma - 1 + g })
        .collect();
    let dec = Decomposition::build(table.kind, 1, d)?;
    check_total(dec, &table.g_top)
}

/// Pick the decomposition matching the table's kind and order.
pub fn decompose(table: &BoseckTable) -> Result<Decomposition> {
    match (table.kind, table.m) {
        (ExtensionKind::Cyclic, 1) => decompose_cyclic_m1(table),
        (ExtensionKind::Cyclic, _) => decompose_cyclic(table),
        (ExtensionKind::ElementaryAbelian, 1) => decompose_elab_m1(table),
        (ExtensionKind::ElementaryAbelian, _) => decompose_elab(table),
        (ExtensionKind::Tame, _) => decompose_tame(table),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boseck::boseck_table;
    use crate::extension::{CyclicPlace, ElabPlace, ExtensionSpec, GroupParams, TamePlace};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn elab(p: i64, n: u32, phis: &[i64]) -> ExtensionSpec {
        ExtensionSpec::ElementaryAbelian {
            group: GroupParams::new(p, n),
            places: phis.iter().map(|&f| ElabPlace::new(f)).collect(),
        }
    }

    fn cyclic(p: i64, n: u32, places: Vec<CyclicPlace>, g_base: i64) -> ExtensionSpec {
        ExtensionSpec::CyclicTower { group: GroupParams::new(p, n), places, g_base: BigInt::from(g_base) }
    }

    fn dec(spec: &ExtensionSpec, m: u32) -> Result<Decomposition> {
        decompose(&boseck_table(spec, m)?)
    }

    #[test]
    fn cyclic_examples() {
        let c = cyclic(3, 1, vec![CyclicPlace::total(ints(&[2])); 2], 0);
        let d = dec(&c, 2).unwrap();
        assert_eq!(d.d, ints(&[2, 2, 1]));
        assert_eq!(d.total_dim, BigInt::from(9));

        let c = cyclic(2, 2, vec![CyclicPlace::total(ints(&[1, 3])); 2], 0);
        let d = dec(&c, 2).unwrap();
        assert_eq!(d.d, ints(&[2, 0, 2, 1]));
        assert_eq!(d.total_dim, BigInt::from(12));

        let d = dec(&cyclic(2, 2, vec![], 2), 2).unwrap();
        assert_eq!(d.d, ints(&[0, 0, 0, 3]));
    }

    #[test]
    fn cyclic_m1() {
        let c = cyclic(3, 1, vec![CyclicPlace::total(ints(&[2])); 2], 0);
        let d = dec(&c, 1).unwrap();
        assert_eq!(d.d, ints(&[2, 1, 0]));
        assert_eq!(d.total_dim, BigInt::from(4));

        assert!(matches!(dec(&cyclic(3, 1, vec![], 2), 1), Err(Error::Unsupported(_))));

        let c = cyclic(2, 2, vec![CyclicPlace::total(ints(&[1, 3])), CyclicPlace::new(1, ints(&[0, 1]))], 0);
        assert!(dec(&c, 1).is_ok());
    }

    #[test]
    fn elab_examples() {
        let t = boseck_table(&elab(2, 2, &[1, 1]), 2).unwrap();
        assert_eq!(t.gamma, ints(&[6, 4, 4, 4]));
        let d = decompose_elab(&t).unwrap();
        assert_eq!(d.d, ints(&[2, 0, 0, 1]));
        assert_eq!(d.total_dim, BigInt::from(6));

        assert_eq!(dec(&elab(3, 1, &[2, 2]), 2).unwrap().d, ints(&[2, 2, 1]));

        let t = boseck_table(&elab(3, 1, &[4]), 2).unwrap();
        assert_eq!(t.gamma, ints(&[6, 5, 4]));
        assert_eq!(decompose_elab(&t).unwrap().d, ints(&[1, 1, 1]));
    }

    #[test]
    fn elab_m1_examples() {
        assert_eq!(dec(&elab(3, 1, &[2, 2]), 1).unwrap().d, ints(&[2, 1, 0]));

        let t = boseck_table(&elab(2, 2, &[1, 1]), 1).unwrap();
        assert_eq!(t.gamma, ints(&[2, 2, 2, 0]));
        let d = decompose_elab_m1(&t).unwrap();
        assert_eq!(d.d, ints(&[0, 0, 1, 0]));
        assert_eq!(d.total_dim, BigInt::from(3));

        let d = dec(&elab(2, 2, &[5]), 1).unwrap();
        assert_eq!(d.total_dim, BigInt::from(6));
    }

    #[test]
    fn tame_example() {
        let n = BigInt::from(2);
        let spec = ExtensionSpec::TameKummer {
            n_deg: n.clone(),
            p: BigInt::from(3),
            places: vec![TamePlace::new(1, &n); 6],
            g_base: BigInt::zero(),
        };
        let d = dec(&spec, 1).unwrap();
        assert_eq!(d.d, ints(&[0, 2]));
        assert_eq!(d.total_dim, BigInt::from(2));
        assert_eq!(d.label(0), 0);
    }

    #[test]
    fn tame_base_genus_feeds_trivial_character() {
        let n = BigInt::from(2);
        let spec = ExtensionSpec::TameKummer {
            n_deg: n.clone(),
            p: BigInt::from(3),
            places: vec![TamePlace::new(1, &n); 2],
            g_base: BigInt::from(1),
        };
        let d = dec(&spec, 1).unwrap();
        // 2g - 2 = 2 * 0 + 2
        assert_eq!(d.d, ints(&[1, 1]));
    }

    #[test]
    fn negative_multiplicity_is_reported() {
        let t = boseck_table(&elab(3, 1, &[2, 2]), 2).unwrap();
        let mut bad = t.clone();
        bad.gamma = ints(&[8, 9, 4]);
        match decompose_elab(&bad) {
            Err(Error::Realizability { index, value }) => {
                assert_eq!(index, 1);
                assert_eq!(value, BigInt::from(-1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kind_mismatch() {
        let t = boseck_table(&elab(3, 1, &[2, 2]), 2).unwrap();
        assert!(matches!(decompose_cyclic(&t), Err(Error::Range(_))));
        assert!(matches!(decompose_elab_m1(&t), Err(Error::Range(_))));
    }
}
