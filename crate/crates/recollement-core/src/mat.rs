//! Dense matrices over `F_p` with exact Gaussian elimination.
//!
//! Convention, fixed crate-wide: vectors are rows and maps act by right
//! multiplication, so `v.apply(m)` is `v · m` and composition of maps reads
//! left to right as a matrix product.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize) -> Self {
        let mut m = Mat::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: u64, f: &Field) -> Mat {
        let mut m = self.clone();
        for x in &mut m.data {
            *x = f.mul(*x, c);
        }
        m
    }

    pub fn add(&self, other: &Mat, f: &Field) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(other.data.iter()) {
            *x = f.add(*x, *y);
        }
        m
    }

    pub fn sub(&self, other: &Mat, f: &Field) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(other.data.iter()) {
            *x = f.sub(*x, *y);
        }
        m
    }

    pub fn mul(&self, other: &Mat, f: &Field) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "product shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = f.modulus();
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = k * other.cols;
                let drow = i * other.cols;
                for j in 0..other.cols {
                    let v = out.data[drow + j] + a * other.data[orow + j] % p;
                    out.data[drow + j] = v % p;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u64], f: &Field) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vector/matrix shape mismatch");
        let p = f.modulus();
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = i * self.cols;
            for j in 0..self.cols {
                out[j] = (out[j] + a * self.data[row + j] % p) % p;
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut m = Mat::zero(self.rows + other.rows, self.cols);
        m.data[..self.data.len()].copy_from_slice(&self.data);
        m.data[self.data.len()..].copy_from_slice(&other.data);
        m
    }

    pub fn vstack_all(mats: &[Mat], cols: usize) -> Mat {
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut out = Mat::zero(rows, cols);
        let mut at = 0;
        for m in mats {
            assert_eq!(m.cols, cols);
            out.data[at..at + m.data.len()].copy_from_slice(&m.data);
            at += m.data.len();
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut m = Mat::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn direct_sum_all(mats: &[Mat]) -> Mat {
        let mut acc = Mat::zero(0, 0);
        for m in mats {
            acc = acc.direct_sum(m);
        }
        acc
    }

    /// Kronecker product; `(u ⊗ v)·(a ⊗ b) = (u·a) ⊗ (v·b)` with the index
    /// convention `(i, r) ↦ i·p + r`.
    pub fn kronecker(&self, other: &Mat, f: &Field) -> Mat {
        Mat::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                f.mul(self.get(i1, j1), other.get(i2, j2))
            },
        )
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self, f: &Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the row space, as the nonzero rows of the reduced form.
    pub fn row_space_basis(&self, f: &Field) -> Mat {
        let (r, pivots) = self.rref(f);
        let mut out = Mat::zero(pivots.len(), self.cols);
        for i in 0..pivots.len() {
            for j in 0..self.cols {
                out.set(i, j, r.get(i, j));
            }
        }
        out
    }

    /// Basis of the left kernel `{v : v · self = 0}` as matrix rows.
    pub fn kernel_basis(&self, f: &Field) -> Mat {
        let aug = self.hstack(&Mat::identity(self.rows));
        let (r, _) = aug.rref(f);
        let mut rows = Vec::new();
        for i in 0..r.rows {
            if (0..self.cols).all(|j| r.get(i, j) == 0)
                && (self.cols..aug.cols).any(|j| r.get(i, j) != 0)
            {
                rows.push(r.row(i)[self.cols..].to_vec());
            }
        }
        Mat::from_rows(&rows, self.rows)
    }

    /// A particular solution `x` of `x · a = b`, solving each row of `b`.
    pub fn solve(a: &Mat, b: &Mat, f: &Field) -> Result<Mat> {
        if a.cols != b.cols {
            return Err(Error::ShapeMismatch(
                "solve: column counts differ".to_string(),
            ));
        }
        let aug = a.hstack(&Mat::identity(a.rows));
        let (r, pivots) = aug.rref(f);
        // Keep only the pivot rows that describe the row space of `a`.
        let lead: Vec<(usize, usize)> = pivots
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c < a.cols)
            .collect();
        let mut x = Mat::zero(b.rows, a.rows);
        for bi in 0..b.rows {
            let mut res = b.row(bi).to_vec();
            let mut combo = vec![0u64; a.rows];
            for &(ri, c) in &lead {
                let coef = res[c];
                if coef == 0 {
                    continue;
                }
                for j in 0..a.cols {
                    res[j] = f.sub(res[j], f.mul(coef, r.get(ri, j)));
                }
                for j in 0..a.rows {
                    combo[j] = f.add(combo[j], f.mul(coef, r.get(ri, a.cols + j)));
                }
            }
            if res.iter().any(|&v| v != 0) {
                return Err(Error::NoSolution);
            }
            for j in 0..a.rows {
                x.set(bi, j, combo[j]);
            }
        }
        Ok(x)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self, f: &Field) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of non-square".to_string()));
        }
        let x = Mat::solve(self, &Mat::identity(self.rows), f).map_err(|_| Error::Singular)?;
        if x.mul(self, f) != Mat::identity(self.rows) || self.mul(&x, f) != Mat::identity(self.rows)
        {
            return Err(Error::Singular);
        }
        Ok(x)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Basis of the sum of the row spaces.
    pub fn row_space_sum(a: &Mat, b: &Mat, f: &Field) -> Mat {
        assert_eq!(a.cols, b.cols);
        a.vstack(b).row_space_basis(f)
    }

    /// Basis of the intersection of the row spaces (Zassenhaus).
    pub fn row_space_intersect(a: &Mat, b: &Mat, f: &Field) -> Mat {
        assert_eq!(a.cols, b.cols);
        let c = a.cols;
        let top = a.hstack(a);
        let bot = b.hstack(&Mat::zero(b.rows, c));
        let (r, _) = top.vstack(&bot).rref(f);
        let mut rows = Vec::new();
        for i in 0..r.rows {
            if (0..c).all(|j| r.get(i, j) == 0) && (c..2 * c).any(|j| r.get(i, j) != 0) {
                rows.push(r.row(i)[c..].to_vec());
            }
        }
        Mat::from_rows(&rows, c)
    }

    /// Reduce `v` against rows of a matrix already in reduced echelon form;
    /// returns the normal form.
    pub fn normal_form(v: &[u64], rref: &Mat, pivots: &[usize], f: &Field) -> Vec<u64> {
        let mut res = v.to_vec();
        for (ri, &c) in pivots.iter().enumerate() {
            let coef = res[c];
            if coef == 0 {
                continue;
            }
            for j in 0..rref.cols {
                res[j] = f.sub(res[j], f.mul(coef, rref.get(ri, j)));
            }
        }
        res
    }

    /// Does `v` lie in the row space of `self`? (`self` need not be reduced.)
    pub fn contains_in_row_space(&self, v: &[u64], f: &Field) -> bool {
        let (r, pivots) = self.rref(f);
        Mat::normal_form(v, &r, &pivots, f).iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn f5() -> Field {
        Field::new(5).unwrap()
    }

    #[test]
    fn rref_identity_fixed() {
        let f = Field::default();
        let id = Mat::identity(2);
        let (r, p) = id.rref(&f);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_zero_fixed() {
        let f = Field::default();
        let z = Mat::zero(3, 3);
        let (r, p) = z.rref(&f);
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one_over_f5() {
        // [[1,2],[2,4]] over F_5 row-reduces to [[1,2],[0,0]] with pivot 0.
        let f = f5();
        let m = Mat::from_rows(&[vec![1, 2], vec![2, 4]], 2);
        let (r, p) = m.rref(&f);
        assert_eq!(r, Mat::from_rows(&[vec![1, 2], vec![0, 0]], 2));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_of_injective_is_empty() {
        let f = Field::default();
        assert_eq!(Mat::identity(3).kernel_basis(&f).rows, 0);
    }

    #[test]
    fn kernel_of_zero_is_identity() {
        let f = Field::default();
        let k = Mat::zero(4, 2).kernel_basis(&f);
        assert_eq!(k.rank(&f), 4);
    }

    #[test]
    fn kernel_rank_one_over_f5() {
        // v with v0 + 2 v1 = 0, e.g. [3, 1].
        let f = f5();
        let m = Mat::from_rows(&[vec![1, 2], vec![2, 4]], 2);
        let k = m.kernel_basis(&f);
        assert_eq!(k.rows, 1);
        assert!(k.mul(&m, &f).is_zero());
        let v = vec![3u64, 1];
        assert!(k.contains_in_row_space(&v, &f));
    }

    #[test]
    fn solve_identity_and_zero() {
        let f = Field::default();
        let b = Mat::from_rows(&[vec![7, 9]], 2);
        assert_eq!(Mat::solve(&Mat::identity(2), &b, &f).unwrap(), b);
        let z = Mat::zero(2, 2);
        let x = Mat::solve(&z, &Mat::zero(1, 2), &f).unwrap();
        assert!(x.mul(&z, &f).is_zero());
    }

    #[test]
    fn solve_back_substitution_over_f7() {
        // x · [[1,1],[0,1]] = [[1,2]] has solution [1,1].
        let f = Field::new(7).unwrap();
        let a = Mat::from_rows(&[vec![1, 1], vec![0, 1]], 2);
        let b = Mat::from_rows(&[vec![1, 2]], 2);
        let x = Mat::solve(&a, &b, &f).unwrap();
        assert_eq!(x.mul(&a, &f), b);
        assert_eq!(x, Mat::from_rows(&[vec![1, 1]], 2));
    }

    #[test]
    fn solve_detects_no_solution() {
        let f = Field::default();
        let a = Mat::from_rows(&[vec![1, 0]], 2);
        let b = Mat::from_rows(&[vec![0, 1]], 2);
        assert_eq!(Mat::solve(&a, &b, &f), Err(Error::NoSolution));
    }

    #[test]
    fn intersect_and_sum() {
        let f = Field::default();
        let a = Mat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = Mat::from_rows(&[vec![0, 1, 0], vec![0, 0, 1]], 3);
        let i = Mat::row_space_intersect(&a, &b, &f);
        assert_eq!(i.rank(&f), 1);
        assert!(i.contains_in_row_space(&[0, 1, 0], &f));
        let s = Mat::row_space_sum(&a, &b, &f);
        assert_eq!(s.rank(&f), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let m = Mat::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), Mat::identity(2));
        assert!(Mat::from_rows(&[vec![1, 2], vec![2, 4]], 2)
            .inverse(&f)
            .is_err());
    }
}
