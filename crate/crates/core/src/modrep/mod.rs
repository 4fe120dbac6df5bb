//! Explicit matrix models of the indecomposable modules, for checking
//! kernel, fixed-space and covariant dimensions by rank computations.
//!
//! Ranks are computed over `F_{p^n}`; extending scalars to an algebraically
//! closed field does not change a rank, so the dimensions are those over `K`.

mod field;
mod matrix;

pub use field::{SmallField, FIELD_LIMIT};
pub use matrix::ModMatrix;

use crate::error::{Error, Result};
use crate::par::ExecMode;

/// `C(i, l) mod p` for `0 ≤ l ≤ i < rows`, by Pascal's rule.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    p: usize,
    rows: Vec<Vec<usize>>,
}

impl BinomialTable {
    pub fn new(rows: usize, p: usize) -> Self {
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(rows);
        for i in 0..rows {
            let mut row = vec![1; i + 1];
            if let Some(prev) = out.last() {
                for l in 1..i {
                    row[l] = (prev[l - 1] + prev[l]) % p;
                }
            }
            out.push(row);
        }
        BinomialTable { p, rows: out }
    }

    pub fn get(&self, i: usize, l: usize) -> usize {
        if l > i {
            0
        } else {
            self.rows[i][l] % self.p
        }
    }
}

/// `C(i, l) mod p` as the product of digit binomials (Lucas).
pub fn binomial_lucas(mut i: usize, mut l: usize, p: usize) -> usize {
    let mut acc = 1;
    while i > 0 || l > 0 {
        let (a, b) = (i % p, l % p);
        if b > a {
            return 0;
        }
        let mut c = 1usize;
        for t in 0..b {
            c = c * (a - t) / (t + 1);
        }
        acc = acc * (c % p) % p;
        i /= p;
        l /= p;
    }
    acc
}

fn check_dim(j: usize, field: &SmallField) -> Result<()> {
    if j == 0 || j > field.order() {
        return Err(Error::range(format!("module dimension {j} not in [1, {}]", field.order())));
    }
    Ok(())
}

/// The nilpotent part `σ - 1` of a Jordan block: `θ_r ↦ θ_{r-1}`.
pub fn jordan_nilpotent(k: usize) -> ModMatrix {
    let mut m = ModMatrix::zeros(k, k);
    for r in 1..k {
        m.set(r, r - 1, 1);
    }
    m.with_label("σ-1")
}

/// Kernel dimension of `(σ-1)^i` on `K[G]/⟨(σ-1)^k⟩`, from the matrix power.
pub fn jordan_kernel_dim(k: usize, i: usize, p: u64, n: u32) -> Result<usize> {
    let field = SmallField::new(p, n)?;
    check_dim(k, &field)?;
    Ok(jordan_nilpotent(k).pow(i, &field).nullity(&field))
}

/// `σ_a(θ_i) = Σ_{l ≤ i} C(i, l) a^{i-l} θ_l` on `W_j = ⟨θ_0, ..., θ_{j-1}⟩`;
/// row `i` holds the image of `θ_i`.
pub fn wj_action_matrix(j: usize, a: usize, field: &SmallField) -> Result<ModMatrix> {
    check_dim(j, field)?;
    if a >= field.order() {
        return Err(Error::range(format!("field element {a} not in [0, {})", field.order())));
    }
    let binom = BinomialTable::new(j, field.p());
    let powers: Vec<usize> = std::iter::successors(Some(1), |&x| Some(field.mul(x, a))).take(j).collect();
    let mut m = ModMatrix::zeros(j, j);
    for i in 0..j {
        for l in 0..=i {
            let c = binom.get(i, l);
            if c != 0 {
                m.set(i, l, field.mul(field.from_int(c), powers[i - l]));
            }
        }
    }
    Ok(m.with_label(format!("σ_{a}")))
}

fn generator_deviations(j: usize, field: &SmallField) -> Result<Vec<ModMatrix>> {
    field.power_basis().into_iter().map(|a| Ok(wj_action_matrix(j, a, field)?.minus_identity(field))).collect()
}

/// `dim W_j / Σ_a (σ_a - 1) W_j` over the generators `a = 1, x, ..., x^{n-1}`.
pub fn covariant_dim_oracle(j: usize, field: &SmallField) -> Result<usize> {
    let stacked = ModMatrix::vstack(&generator_deviations(j, field)?);
    Ok(j - stacked.rank(field))
}

/// `1` for `j ≤ p` or `p | j`, otherwise `2`.
pub fn covariant_dim_closed(j: u64, p: u64, n: u32) -> Result<u64> {
    let q = p.checked_pow(n).ok_or_else(|| Error::unsupported("p^n overflows"))?;
    if j == 0 || j > q {
        return Err(Error::range(format!("module dimension {j} not in [1, {q}]")));
    }
    Ok(if j <= p || j.is_multiple_of(p) { 1 } else { 2 })
}

/// `dim W_j^G`, the common kernel of all `σ_a - 1`.
pub fn fixed_space_dim(j: usize, field: &SmallField) -> Result<usize> {
    let joined = ModMatrix::hstack(&generator_deviations(j, field)?);
    Ok(j - joined.rank(field))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRow {
    pub j: usize,
    pub covariant_oracle: usize,
    pub covariant_closed: usize,
    pub fixed_space: usize,
}

impl OracleRow {
    pub fn agrees(&self) -> bool {
        self.covariant_oracle == self.covariant_closed && self.fixed_space == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<usize>,
    pub rows: Vec<OracleRow>,
}

impl OracleReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(OracleRow::agrees)
    }
}

/// Every `1 ≤ j ≤ p^n`, processed independently under `mode`.
pub fn oracle_sweep(p: u64, n: u32, mode: ExecMode) -> Result<OracleReport> {
    let field = SmallField::new(p, n)?;
    let rows = mode.map_range(field.order(), |idx| {
        let j = idx + 1;
        Ok(OracleRow {
            j,
            covariant_oracle: covariant_dim_oracle(j, &field)?,
            covariant_closed: covariant_dim_closed(j as u64, p, n)? as usize,
            fixed_space: fixed_space_dim(j, &field)?,
        })
    });
    Ok(OracleReport { p, n, modulus: field.modulus().to_vec(), rows: rows.into_iter().collect::<Result<_>>()? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_matches_lucas() {
        for p in [2, 3, 5, 7] {
            let t = BinomialTable::new(80, p);
            for i in 0..80 {
                for l in 0..=i + 1 {
                    assert_eq!(t.get(i, l), binomial_lucas(i, l, p), "C({i},{l}) mod {p}");
                }
            }
        }
        assert_eq!(BinomialTable::new(7, 5).get(6, 3), 0);
        assert_eq!(BinomialTable::new(7, 7).get(6, 3), 6);
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_kernel_dim(4, 0, 2, 2).unwrap(), 0);
        assert_eq!(jordan_kernel_dim(4, 4, 2, 2).unwrap(), 4);
        assert_eq!(jordan_kernel_dim(5, 3, 2, 3).unwrap(), 3);
        assert_eq!(jordan_kernel_dim(5, 9, 2, 3).unwrap(), 5);
        assert!(matches!(jordan_kernel_dim(9, 1, 2, 3), Err(Error::Range(_))));
    }

    #[test]
    fn cyclic_generator_is_unipotent() {
        let f = SmallField::new(3, 2).unwrap();
        for k in 1..=9 {
            let n = jordan_nilpotent(k);
            assert!(n.pow(9, &f).is_zero());
            assert!(!n.pow(k - 1, &f).is_zero());
            assert!(n.pow(k, &f).is_zero());
        }
    }

    #[test]
    fn action_examples() {
        let f = SmallField::new(3, 2).unwrap();
        assert_eq!(wj_action_matrix(5, 0, &f).unwrap().minus_identity(&f), ModMatrix::zeros(5, 5).with_label("σ_0"));
        for a in 0..9 {
            let m = wj_action_matrix(2, a, &f).unwrap();
            assert_eq!((m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)), (1, 0, a, 1));
        }
    }

    #[test]
    fn action_is_additive_and_unipotent() {
        for (p, n) in [(2, 3), (3, 2), (5, 1)] {
            let f = SmallField::new(p, n).unwrap();
            let q = f.order();
            for j in [1, 2, q / 2 + 1, q] {
                for a in 0..q {
                    let ma = wj_action_matrix(j, a, &f).unwrap();
                    assert!(ma.is_lower_unitriangular());
                    assert!(ma.minus_identity(&f).pow(p as usize, &f).is_zero());
                    for b in (0..q).step_by(3) {
                        let mb = wj_action_matrix(j, b, &f).unwrap();
                        let sum = wj_action_matrix(j, f.add(a, b), &f).unwrap();
                        assert_eq!(ma.mul(&mb, &f).with_label(""), sum.with_label(""));
                    }
                }
            }
        }
    }

    #[test]
    fn covariant_examples() {
        let f = SmallField::new(3, 2).unwrap();
        assert_eq!(covariant_dim_oracle(1, &f).unwrap(), 1);
        assert_eq!(covariant_dim_oracle(4, &f).unwrap(), 2);
        assert_eq!(covariant_dim_oracle(6, &f).unwrap(), 1);
        assert_eq!(covariant_dim_closed(1, 3, 2).unwrap(), 1);
        assert_eq!(covariant_dim_closed(9, 3, 2).unwrap(), 1);
        assert_eq!(covariant_dim_closed(5, 3, 2).unwrap(), 2);
        assert!(covariant_dim_closed(10, 3, 2).is_err());
    }

    #[test]
    fn fixed_space_examples() {
        let f = SmallField::new(2, 3).unwrap();
        assert_eq!(fixed_space_dim(1, &f).unwrap(), 1);
        assert_eq!(fixed_space_dim(8, &f).unwrap(), 1);
    }

    #[test]
    fn closed_form_holds_up_to_two_generators() {
        for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)] {
            let r = oracle_sweep(p, n, ExecMode::Parallel).unwrap();
            assert_eq!(r.rows.len(), p.pow(n) as usize);
            let bad: Vec<_> = r.rows.iter().filter(|row| !row.agrees()).collect();
            assert!(bad.is_empty(), "p={p} n={n} {bad:?}");
        }
    }

    #[test]
    fn three_generators_have_larger_covariants() {
        // translation on polynomials of degree < j: the differences span 1, t, t^2, t^4
        let r = oracle_sweep(2, 3, ExecMode::Sequential).unwrap();
        let off: Vec<_> = r.rows.iter().filter(|row| !row.agrees()).map(|row| (row.j, row.covariant_oracle)).collect();
        assert_eq!(off, vec![(6, 2), (7, 3)]);
        assert!(r.rows.iter().all(|row| row.fixed_space == 1));
        let r = oracle_sweep(3, 3, ExecMode::Parallel).unwrap();
        let off: Vec<_> = r.rows.iter().filter(|row| !row.agrees()).map(|row| (row.j, row.covariant_oracle)).collect();
        assert_eq!(off[..3], [(12, 2), (13, 3), (14, 3)]);
        assert_eq!(off.len(), 12);
    }

    #[test]
    fn modes_agree() {
        assert_eq!(oracle_sweep(2, 4, ExecMode::Parallel).unwrap(), oracle_sweep(2, 4, ExecMode::Sequential).unwrap());
    }
}
