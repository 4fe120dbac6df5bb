//! Dense matrices over a [`SmallField`], rows acting on row vectors.

use super::field::SmallField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
    pub label: String,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ModMatrix { rows, cols, data: vec![0; rows * cols], label: String::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| (j < i) || (j == i && self.get(i, j) == 1) || self.get(i, j) == 0))
    }

    pub fn mul(&self, other: &ModMatrix, f: &SmallField) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = ModMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(t, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize, f: &SmallField) -> ModMatrix {
        let mut acc = ModMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// `self - I`.
    pub fn minus_identity(&self, f: &SmallField) -> ModMatrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out.set(i, i, f.sub(self.get(i, i), 1));
        }
        out
    }

    pub fn vstack(blocks: &[ModMatrix]) -> ModMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "dimension mismatch");
            data.extend_from_slice(&b.data);
        }
        ModMatrix { rows: data.len() / cols.max(1), cols, data, label: String::new() }
    }

    pub fn hstack(blocks: &[ModMatrix]) -> ModMatrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = ModMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "dimension mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j));
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Gaussian elimination.
    pub fn rank(&self, f: &SmallField) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pivot, rank);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let v = f.mul(m.get(rank, j), inv);
                m.set(rank, j, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == rank || factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn nullity(&self, f: &SmallField) -> usize {
        self.rows - self.rank(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[usize]]) -> ModMatrix {
        let mut m = ModMatrix::zeros(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn rank_over_prime_fields() {
        let f2 = SmallField::new(2, 1).unwrap();
        let m = from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(&f2), 2);
        let f3 = SmallField::new(3, 1).unwrap();
        assert_eq!(m.rank(&f3), 3);
        assert_eq!(ModMatrix::zeros(4, 2).rank(&f3), 0);
        assert_eq!(ModMatrix::identity(5).rank(&f3), 5);
    }

    #[test]
    fn stacking() {
        let f = SmallField::new(5, 1).unwrap();
        let a = from_rows(&[&[1, 2], &[2, 4]]);
        let b = from_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(ModMatrix::vstack(&[a.clone(), b.clone()]).rank(&f), 2);
        assert_eq!(ModMatrix::hstack(&[a.clone(), b]).rank(&f), 2);
        assert_eq!(a.nullity(&f), 1);
    }

    #[test]
    fn products() {
        let f = SmallField::new(3, 2).unwrap();
        let m = from_rows(&[&[1, 0], &[4, 1]]);
        assert_eq!(m.pow(3, &f), ModMatrix::identity(2));
        assert!(m.minus_identity(&f).pow(2, &f).is_zero());
        assert!(m.is_lower_unitriangular());
    }
}
