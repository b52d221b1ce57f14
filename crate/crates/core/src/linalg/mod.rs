//! Dense exact linear algebra: generic matrices over exact scalars,
//! prime-field elimination with a bit-packed F2 fast path, and integer
//! Hermite normal forms for lattice coset enumeration.

mod fp;
mod gf2;
mod hnf;

pub use fp::{FpEchelon, FpMat};
pub use gf2::{Gf2Echelon, Gf2Mat};
pub use hnf::{coset_reduce, hnf, CosetLattice};

use crate::ring::Scalar;

/// Dense row-major matrix over an exact scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<T>,
}

impl<T: Eq> Eq for Matrix<T> {}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![T::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.ncols.max(1))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let p = a.clone() * other[(k, j)].clone();
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    /// Determinant by Gaussian elimination; requires a field scalar.
    pub fn det_field(&self) -> T
    where
        T: std::ops::Div<Output = T>,
    {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / pivot.clone();
                for c in col..n {
                    let sub = factor.clone() * m[(col, c)].clone();
                    m[(r, c)] -= sub;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.ncols {
            self.data.swap(a * self.ncols + c, b * self.ncols + c);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.ncols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.ncols + j]
    }
}

/// Determinant of an integer submatrix, fraction-free (Bareiss).
/// Exact for the sizes used here (entries small, order <= 12).
pub fn det_submatrix(m: &Matrix<i64>, rows: &[usize], cols: &[usize]) -> i128 {
    assert_eq!(rows.len(), cols.len());
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<i128> = Vec::with_capacity(n * n);
    for &r in rows {
        for &c in cols {
            a.push(m[(r, c)] as i128);
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
        }
        prev = a[k * n + k];
    }
    sign * a[n * n - 1]
}

/// Basis of a kernel over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<u8>>,
    pub ambient: usize,
    pub ell: u32,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Rank over `F_ell`; dispatches to the packed path for `ell = 2`.
pub fn rank_ff(m: &FpMat) -> usize {
    if m.ell() == 2 {
        Gf2Mat::from_fp(m).rref().rank()
    } else {
        m.clone().rref().rank()
    }
}

/// Basis of `{v : v * M = 0}` over `F_ell`.
pub fn left_kernel(m: &FpMat) -> KernelBasis {
    right_kernel(&m.transpose())
}

/// Basis of `{v : M * v = 0}` over `F_ell`.
pub fn right_kernel(m: &FpMat) -> KernelBasis {
    let vectors = if m.ell() == 2 {
        Gf2Mat::from_fp(m).rref().kernel_basis()
    } else {
        m.clone().rref().kernel_basis()
    };
    KernelBasis {
        vectors,
        ambient: m.ncols(),
        ell: m.ell(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn det_small_cases() {
        let m = Matrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(7), rat(4)]]);
        assert_eq!(m.det_field(), rat(1));
        let m = Matrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
        assert_eq!(m.det_field(), rat(0));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = Matrix::from_rows(vec![
            vec![1i64, -1, 0, 1],
            vec![0, 1, 1, -1],
            vec![1, 0, 1, 0],
            vec![-1, 1, 1, 1],
        ]);
        let det = det_submatrix(&m, &[0, 1, 2, 3], &[0, 1, 2, 3]);
        // cofactor expansion oracle
        fn cof(rows: &[Vec<i64>]) -> i64 {
            let n = rows.len();
            if n == 1 {
                return rows[0][0];
            }
            let mut acc = 0;
            for (j, &v) in rows[0].iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                acc += s * v * cof(&minor);
            }
            acc
        }
        let rows: Vec<Vec<i64>> = (0..4).map(|i| m.row(i).to_vec()).collect();
        assert_eq!(det, cof(&rows) as i128);
    }

    #[test]
    fn kernel_dispatch_trivial() {
        let id = FpMat::identity(2, 2).unwrap();
        assert_eq!(left_kernel(&id).dim(), 0);
        let zero = FpMat::zeros(1, 1, 3).unwrap();
        let k = left_kernel(&zero);
        assert_eq!(k.vectors, vec![vec![1u8]]);
        let z23 = FpMat::zeros(2, 3, 2).unwrap();
        assert_eq!(right_kernel(&z23).dim(), 3);
        assert_eq!(rank_ff(&FpMat::identity(4, 3).unwrap()), 4);
        assert_eq!(rank_ff(&FpMat::zeros(3, 3, 2).unwrap()), 0);
    }
}
