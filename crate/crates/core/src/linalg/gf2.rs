//! Bit-packed matrices over F2: rows are machine words, elimination is
//! word-wise XOR.

use super::fp::FpMat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Mat {
    nrows: usize,
    ncols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl Gf2Mat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let wpr = ncols.div_ceil(64).max(1);
        Gf2Mat {
            nrows,
            ncols,
            wpr,
            data: vec![0; nrows * wpr],
        }
    }

    pub fn from_fp(m: &FpMat) -> Self {
        assert_eq!(m.ell(), 2);
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v & 1 == 1 {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.wpr + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.wpr + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.wpr;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * w);
        head[lo * w..(lo + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let w = self.wpr;
        let (dst_s, src_s) = if dst < src {
            let (a, b) = self.data.split_at_mut(src * w);
            (&mut a[dst * w..(dst + 1) * w], &b[..w])
        } else {
            let (a, b) = self.data.split_at_mut(dst * w);
            (&mut b[..w], &a[src * w..(src + 1) * w])
        };
        for (d, s) in dst_s.iter_mut().zip(src_s) {
            *d ^= s;
        }
    }

    pub fn rref(mut self) -> Gf2Echelon {
        let mut pivots = Vec::new();
        let mut prow = 0usize;
        for col in 0..self.ncols {
            if prow == self.nrows {
                break;
            }
            let Some(r) = (prow..self.nrows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(prow, r);
            for r2 in 0..self.nrows {
                if r2 != prow && self.get(r2, col) {
                    self.xor_rows(r2, prow);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Gf2Echelon { mat: self, pivots }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().rank()
    }
}

#[derive(Debug, Clone)]
pub struct Gf2Echelon {
    mat: Gf2Mat,
    pivots: Vec<usize>,
}

impl Gf2Echelon {
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

    pub fn kernel_vector(&self, free_col: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.mat.ncols()];
        v[free_col] = 1;
        for (i, &p) in self.pivots.iter().enumerate() {
            if self.mat.get(i, free_col) {
                v[p] = 1;
            }
        }
        v
    }

    pub fn kernel_vector_times(&self, free_col: usize, rhs: &FpMat) -> Vec<u32> {
        assert_eq!(rhs.nrows(), self.mat.ncols());
        let mut acc = vec![0u64; rhs.ncols()];
        for (a, &b) in acc.iter_mut().zip(rhs.row(free_col)) {
            *a += b as u64;
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            if self.mat.get(i, free_col) {
                for (a, &b) in acc.iter_mut().zip(rhs.row(p)) {
                    *a += b as u64;
                }
            }
        }
        acc.into_iter().map(|a| (a % 2) as u32).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        self.free_columns()
            .into_iter()
            .map(|f| self.kernel_vector(f))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_left_kernel() {
        // rows (0010, 1100, 0010): left kernel spanned by (1, 0, 1)
        let m = FpMat::from_rows(
            &[vec![0, 0, 1, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 0]],
            2,
        )
        .unwrap();
        let t = Gf2Mat::from_fp(&m.transpose());
        let basis = t.rref().kernel_basis();
        assert_eq!(basis, vec![vec![1, 0, 1]]);
    }
}
