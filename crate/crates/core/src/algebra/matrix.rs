use alloc::vec;
use alloc::vec::Vec;

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = FieldMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, f: &Field, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.data[i * other.cols + j];
                    out.data[i * other.cols + j] = f.add(cur, f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    /// Gauss–Jordan inversion.
    pub fn invert(&self, f: &Field) -> Result<FieldMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = FieldMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0).ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let scale = f.inv(a.get(col, col)).expect("nonzero pivot");
            a.scale_row(f, col, scale);
            inv.scale_row(f, col, scale);
            for r in 0..n {
                let factor = a.get(r, col);
                if r == col || factor == 0 {
                    continue;
                }
                a.sub_row_multiple(f, r, col, factor);
                inv.sub_row_multiple(f, r, col, factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, f: &Field, r: usize, s: FieldElem) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, s);
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_row_multiple(&mut self, f: &Field, r: usize, src: usize, factor: FieldElem) {
        for j in 0..self.cols {
            let v = f.mul(factor, self.get(src, j));
            let cur = self.get(r, j);
            self.set(r, j, f.sub(cur, v));
        }
    }

    /// Given `self = M^-1`, turns it into `(M + delta * e_i e_j^T)^-1` by
    /// Sherman–Morrison. Leaves `self` untouched on error.
    pub fn rank1_update(&mut self, f: &Field, i: usize, j: usize, delta: FieldElem) -> Result<()> {
        if delta == 0 {
            return Ok(());
        }
        let n = self.rows;
        let denom = f.add(1, f.mul(delta, self.get(j, i)));
        let denom_inv = f.inv(denom).ok_or(Error::Singular)?;
        let factor = f.mul(delta, denom_inv);
        let col: Vec<FieldElem> = (0..n).map(|r| f.mul(self.get(r, i), factor)).collect();
        let row: Vec<FieldElem> = self.row(j).to_vec();
        for (r, &c) in col.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let base = r * self.cols;
            for (k, &x) in row.iter().enumerate() {
                if x != 0 {
                    self.data[base + k] = f.sub(self.data[base + k], f.mul(c, x));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_inverts_to_itself() {
        let f = Field::default();
        assert_eq!(FieldMatrix::identity(3).invert(&f).unwrap(), FieldMatrix::identity(3));
    }

    #[test]
    fn unitriangular_inverse() {
        let f = Field::default();
        let x = 12345;
        let m = FieldMatrix::from_rows(&[vec![1, x], vec![0, 1]]);
        let want = FieldMatrix::from_rows(&[vec![1, f.neg(x)], vec![0, 1]]);
        assert_eq!(m.invert(&f).unwrap(), want);
    }

    #[test]
    fn singular_detected() {
        let f = Field::new(7);
        let m = FieldMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.invert(&f), Err(Error::Singular));
    }

    #[test]
    fn zero_delta_is_noop() {
        let f = Field::default();
        let mut n = FieldMatrix::identity(3);
        n.rank1_update(&f, 0, 1, 0).unwrap();
        assert_eq!(n, FieldMatrix::identity(3));
    }
}
