//! Row-style Hermite normal form over the integers, with the unimodular
//! transform, and canonical coset representatives for finite-index
//! sublattices of `Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::error::LinalgError;

pub type IntMatrix = Matrix<BigInt>;

/// Row HNF: returns `(H, U)` with `H = U * M` and `det(U) = ±1`.
/// Pivots are positive, entries above a pivot are reduced into `[0, pivot)`,
/// zero rows sink to the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let (nrows, ncols) = (m.nrows(), m.ncols());
    let mut prow = 0usize;
    for col in 0..ncols {
        if prow == nrows {
            break;
        }
        // gcd elimination below the pivot row
        loop {
            let mut best: Option<usize> = None;
            for r in prow..nrows {
                if !h[(r, col)].is_zero()
                    && best.is_none_or(|b| h[(r, col)].abs() < h[(b, col)].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut h, prow, b);
            swap_rows(&mut u, prow, b);
            let mut done = true;
            for r in prow + 1..nrows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(prow, col)]);
                row_submul(&mut h, r, prow, &q);
                row_submul(&mut u, r, prow, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(prow, col)].is_zero() {
            continue;
        }
        if h[(prow, col)].is_negative() {
            negate_row(&mut h, prow);
            negate_row(&mut u, prow);
        }
        for r in 0..prow {
            let q = h[(r, col)].div_floor(&h[(prow, col)]);
            if !q.is_zero() {
                row_submul(&mut h, r, prow, &q);
                row_submul(&mut u, r, prow, &q);
            }
        }
        prow += 1;
    }
    (h, u)
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.ncols() {
        let tmp = m[(a, c)].clone();
        m[(a, c)] = m[(b, c)].clone();
        m[(b, c)] = tmp;
    }
}

fn row_submul(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.ncols() {
        let s = q * &m[(src, c)];
        m[(dst, c)] -= s;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.ncols() {
        let v = -m[(r, c)].clone();
        m[(r, c)] = v;
    }
}

/// A finite-index sublattice of `Z^n` held as a square upper-triangular
/// HNF basis, with unique coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetLattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
    index: u64,
}

impl CosetLattice {
    /// Builds the lattice spanned by the generator rows. Errors unless the
    /// span has full rank `n` (finite index).
    pub fn from_generators(gens: &[Vec<i64>], dim: usize) -> Result<Self, LinalgError> {
        if gens.iter().any(|g| g.len() != dim) {
            return Err(LinalgError::DimensionMismatch("generator length".into()));
        }
        let m = IntMatrix::from_rows(
            gens.iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        let (h, _) = hnf(&m);
        let mut basis = Vec::with_capacity(dim);
        let mut index = BigInt::one();
        for i in 0..dim {
            if i >= h.nrows() || h[(i, i)].is_zero() {
                return Err(LinalgError::NotFullRank);
            }
            index *= &h[(i, i)];
            let row: Option<Vec<i64>> = (0..dim).map(|j| i64::try_from(&h[(i, j)]).ok()).collect();
            basis.push(row.ok_or(LinalgError::NotFullRank)?);
        }
        // full rank means exactly dim nonzero rows
        let index = u64::try_from(&index).map_err(|_| LinalgError::NotFullRank)?;
        Ok(CosetLattice { dim, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of cosets, the absolute determinant of the HNF basis.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Canonical representative of `v`'s coset: the unique vector with
    /// `0 <= w[i] < basis[i][i]` in the residue of each pivot.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for i in 0..self.dim {
            let d = self.basis[i][i];
            let q = w[i].div_euclid(d);
            if q != 0 {
                for (wj, bj) in w[i..].iter_mut().zip(&self.basis[i][i..]) {
                    *wj -= q * bj;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Canonical coset representative of `v` modulo the lattice.
pub fn coset_reduce(v: &[i64], lattice: &CosetLattice) -> Vec<i64> {
    lattice.reduce(v)
}
