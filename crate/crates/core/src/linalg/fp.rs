//! Dense matrices over `F_ell` with byte entries. Elimination is exact;
//! there is no tolerance anywhere. The `ell = 3` row operation is the hot
//! path of the odd-prime solution systems and is kept branchless.

use crate::error::LinalgError;
use crate::ring::{ff_inv, PrimeField};

/// Row-major matrix over `F_ell`, entries stored reduced in `[0, ell)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    ell: u32,
    nrows: usize,
    ncols: usize,
    data: Vec<u8>,
}

impl FpMat {
    pub fn zeros(nrows: usize, ncols: usize, ell: u32) -> Result<Self, LinalgError> {
        if ell > 251 {
            return Err(LinalgError::ModulusTooLarge(ell));
        }
        Ok(FpMat {
            ell,
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        })
    }

    pub fn identity(n: usize, ell: u32) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(n, n, ell)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>], ell: u32) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols, ell)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::DimensionMismatch("ragged rows".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(ell as i64) as u32);
            }
        }
        Ok(m)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.ncols + j] as u32
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.ncols + j] = (v % self.ell) as u8;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        let cur = self.get(i, j) as i64;
        self.set(i, j, (cur + v).rem_euclid(self.ell as i64) as u32);
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zeros(self.ncols, self.nrows, self.ell).unwrap();
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.data[j * self.nrows + i] = self.data[i * self.ncols + j];
            }
        }
        out
    }

    /// Append the columns of `other` on the right.
    pub fn hstack(&self, other: &FpMat) -> Result<FpMat, LinalgError> {
        if self.nrows != other.nrows || self.ell != other.ell {
            return Err(LinalgError::DimensionMismatch("hstack".into()));
        }
        let mut out = FpMat::zeros(self.nrows, self.ncols + other.ncols, self.ell)?;
        for i in 0..self.nrows {
            let dst = &mut out.data[i * out.ncols..i * out.ncols + self.ncols];
            dst.copy_from_slice(self.row(i));
            let dst = &mut out.data[i * out.ncols + self.ncols..(i + 1) * out.ncols];
            dst.copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the echelon wrapper.
    pub fn rref(mut self) -> FpEchelon {
        let ell = self.ell;
        let field = PrimeField::new(ell).expect("modulus is prime");
        let mut pivots = Vec::new();
        let mut prow = 0usize;
        for col in 0..self.ncols {
            if prow == self.nrows {
                break;
            }
            let Some(r) = (prow..self.nrows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(prow, r);
            let inv = ff_inv(self.get(prow, col) as i64, field).expect("nonzero pivot");
            if inv != 1 {
                self.scale_row(prow, inv);
            }
            for r2 in 0..self.nrows {
                if r2 == prow {
                    continue;
                }
                let c = self.get(r2, col);
                if c != 0 {
                    self.row_axpy(r2, prow, ell - c);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        FpEchelon { mat: self, pivots }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.ncols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..(lo + 1) * n].swap_with_slice(&mut tail[..n]);
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let ell = self.ell;
        for v in &mut self.data[r * self.ncols..(r + 1) * self.ncols] {
            *v = ((*v as u32 * c) % ell) as u8;
        }
    }

    /// `row[dst] += c * row[src]` over `F_ell`.
    fn row_axpy(&mut self, dst: usize, src: usize, c: u32) {
        debug_assert!(dst != src && c != 0);
        let n = self.ncols;
        let (dst_s, src_s) = if dst < src {
            let (a, b) = self.data.split_at_mut(src * n);
            (&mut a[dst * n..(dst + 1) * n], &b[..n])
        } else {
            let (a, b) = self.data.split_at_mut(dst * n);
            (&mut b[..n], &a[src * n..(src + 1) * n])
        };
        match (self.ell, c) {
            (2, _) => {
                for (d, s) in dst_s.iter_mut().zip(src_s) {
                    *d ^= s;
                }
            }
            (3, 1) => {
                for (d, s) in dst_s.iter_mut().zip(src_s) {
                    let t = *d + *s;
                    *d = if t >= 3 { t - 3 } else { t };
                }
            }
            (3, 2) => {
                // adding 2s mod 3 is adding 3 - s
                for (d, s) in dst_s.iter_mut().zip(src_s) {
                    let t = *d + 3 - *s;
                    *d = if t >= 3 { t - 3 } else { t };
                }
            }
            (ell, c) if ell <= 13 => {
                // d + c*s stays below 256; reduce by a branchless
                // conditional-subtract cascade 8l, 4l, 2l, l
                let (c8, l8) = (c as u8, (ell * 8) as u8);
                let (l4, l2, l1) = ((ell * 4) as u8, (ell * 2) as u8, ell as u8);
                for (d, s) in dst_s.iter_mut().zip(src_s) {
                    let mut t = *d + c8 * *s;
                    if t >= l8 {
                        t -= l8;
                    }
                    if t >= l4 {
                        t -= l4;
                    }
                    if t >= l2 {
                        t -= l2;
                    }
                    if t >= l1 {
                        t -= l1;
                    }
                    *d = t;
                }
            }
            (ell, c) => {
                for (d, s) in dst_s.iter_mut().zip(src_s) {
                    *d = ((*d as u32 + c * *s as u32) % ell) as u8;
                }
            }
        }
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct FpEchelon {
    mat: FpMat,
    pivots: Vec<usize>,
}

impl FpEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn kernel_dim(&self) -> usize {
        self.mat.ncols() - self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.mat.ncols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.mat.ncols()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel vector attached to a free column: 1 there, balanced on pivots.
    pub fn kernel_vector(&self, free_col: usize) -> Vec<u8> {
        let ell = self.mat.ell();
        let mut v = vec![0u8; self.mat.ncols()];
        v[free_col] = 1;
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = self.mat.get(i, free_col);
            if c != 0 {
                v[p] = (ell - c) as u8;
            }
        }
        v
    }

    /// `kernel_vector(free_col) * rhs` without materializing the vector.
    /// `rhs` must have one row per column of the eliminated matrix.
    pub fn kernel_vector_times(&self, free_col: usize, rhs: &FpMat) -> Vec<u32> {
        assert_eq!(rhs.nrows(), self.mat.ncols());
        let ell = self.mat.ell();
        let mut acc = vec![0u64; rhs.ncols()];
        for (a, &b) in acc.iter_mut().zip(rhs.row(free_col)) {
            *a += b as u64;
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = self.mat.get(i, free_col);
            if c != 0 {
                let c = (ell - c) as u64;
                for (a, &b) in acc.iter_mut().zip(rhs.row(p)) {
                    *a += c * b as u64;
                }
            }
        }
        acc.into_iter().map(|a| (a % ell as u64) as u32).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        self.free_columns()
            .into_iter()
            .map(|f| self.kernel_vector(f))
            .collect()
    }
}
