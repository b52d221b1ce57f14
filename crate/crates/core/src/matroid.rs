//! Regular matroids carried by totally unimodular integer realizations:
//! validation, sign normalization, minors, duality, graphic/cographic
//! constructors, isomorphism testing, excluded-minor cographicity, and
//! the built-in catalog.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::MatroidError;
use crate::linalg::{det_submatrix, Matrix};

/// Column limit for exhaustive total-unimodularity validation.
pub const TU_COLUMN_LIMIT: usize = 12;
/// Ground-set limit for isomorphism search.
pub const ISO_LIMIT: usize = 16;
/// Ground-set limit for the excluded-minor search.
pub const COGRAPHIC_LIMIT: usize = 14;

/// A regular matroid: ordered ground labels and a full-row-rank totally
/// unimodular realization matrix whose columns are the ground elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    name: String,
    ground: Vec<String>,
    mat: Matrix<i64>,
}

impl Matroid {
    /// Wraps a realization after confirming full row rank and total
    /// unimodularity by exhaustive minor enumeration.
    pub fn validate(
        name: &str,
        ground: Vec<String>,
        rows: Vec<Vec<i64>>,
    ) -> Result<Self, MatroidError> {
        let g = rows.len();
        let n = ground.len();
        if g == 0 || n == 0 {
            return Err(MatroidError::InvalidMatroid("empty realization".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatroidError::InvalidMatroid(
                "matrix width disagrees with ground set".into(),
            ));
        }
        {
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = ground.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(MatroidError::InvalidMatroid(format!(
                    "duplicate ground label {dup:?}"
                )));
            }
        }
        if n > TU_COLUMN_LIMIT {
            return Err(MatroidError::GroundSetTooLarge {
                n,
                limit: TU_COLUMN_LIMIT,
            });
        }
        let mat = Matrix::from_rows(rows);
        check_tu(&mat)?;
        let m = Matroid {
            name: name.to_string(),
            ground,
            mat,
        };
        // entries are 0/±1 here, so rank over F2 is the rational rank
        if m.rank_of_all() != g {
            return Err(MatroidError::RankDeficient);
        }
        Ok(m)
    }

    /// Internal constructor for matrices that are TU by construction
    /// (pivots and submatrices of TU matrices stay TU).
    fn from_parts(name: String, ground: Vec<String>, mat: Matrix<i64>) -> Self {
        let m = Matroid { name, ground, mat };
        debug_assert!(
            m.size() > TU_COLUMN_LIMIT || check_tu(&m.mat).is_ok(),
            "constructed matrix is TU"
        );
        debug_assert_eq!(m.rank_of_all(), m.rank(), "full row rank");
        m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn rank(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.mat
    }

    pub fn entry(&self, k: usize, s: usize) -> i64 {
        self.mat[(k, s)]
    }

    pub fn label_index(&self, label: &str) -> Result<usize, MatroidError> {
        self.ground
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| MatroidError::UnknownLabel(label.to_string()))
    }

    /// Column bitmasks over F2; a valid rank oracle because the matrix
    /// is TU (every minor is 0/±1, so ranks agree over every field).
    fn col_bits(&self) -> Vec<u64> {
        (0..self.size())
            .map(|s| {
                (0..self.rank()).fold(0u64, |acc, k| {
                    acc | ((self.mat[(k, s)].unsigned_abs() & 1) << k)
                })
            })
            .collect()
    }

    pub fn rank_of(&self, subset: &[usize]) -> usize {
        let bits = self.col_bits();
        let mut basis: Vec<u64> = Vec::new();
        for &s in subset {
            let mut v = bits[s];
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }

    fn rank_of_all(&self) -> usize {
        self.rank_of(&(0..self.size()).collect::<Vec<_>>())
    }

    pub fn is_independent(&self, subset: &[usize]) -> bool {
        self.rank_of(subset) == subset.len()
    }

    pub fn is_loop(&self, s: usize) -> bool {
        (0..self.rank()).all(|k| self.mat[(k, s)] == 0)
    }

    pub fn is_coloop(&self, s: usize) -> bool {
        let others: Vec<usize> = (0..self.size()).filter(|&t| t != s).collect();
        self.rank_of(&others) < self.rank()
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.size()).all(|s| !self.is_loop(s))
    }

    pub fn loops(&self) -> Vec<String> {
        (0..self.size())
            .filter(|&s| self.is_loop(s))
            .map(|s| self.ground[s].clone())
            .collect()
    }

    /// A row-lattice vector with `s`-coordinate 1. Any nonzero entry of a
    /// TU matrix is ±1, so a signed row works.
    pub fn find_unit_covector(&self, s: usize) -> Result<Vec<i64>, MatroidError> {
        let k = (0..self.rank())
            .find(|&k| self.mat[(k, s)] != 0)
            .ok_or_else(|| MatroidError::LoopElement(self.ground[s].clone()))?;
        let sign = self.mat[(k, s)];
        Ok((0..self.size()).map(|t| sign * self.mat[(k, t)]).collect())
    }

    /// All bases as bitmasks; ground set capped at `ISO_LIMIT`.
    pub fn bases(&self) -> Result<Vec<u32>, MatroidError> {
        let n = self.size();
        if n > ISO_LIMIT {
            return Err(MatroidError::GroundSetTooLarge { n, limit: ISO_LIMIT });
        }
        fn rec(m: &Matroid, start: usize, subset: &mut Vec<usize>, out: &mut Vec<u32>) {
            if subset.len() == m.rank() {
                out.push(subset.iter().fold(0u32, |acc, &s| acc | (1 << s)));
                return;
            }
            for s in start..m.size() {
                subset.push(s);
                if m.is_independent(subset) {
                    rec(m, s + 1, subset, out);
                }
                subset.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, &mut Vec::new(), &mut out);
        Ok(out)
    }

    pub fn delete(&self, label: &str) -> Result<Matroid, MatroidError> {
        let s = self.label_index(label)?;
        if self.is_coloop(s) {
            // deleting a coloop equals contracting it; the pivot keeps the
            // realization full-rank with the projected row lattice
            return self.contract(label);
        }
        let ground: Vec<String> = self
            .ground
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != s)
            .map(|(_, l)| l.clone())
            .collect();
        if self.rank() == 0 {
            return Ok(Matroid {
                name: format!("{}\\{}", self.name, label),
                mat: Matrix::zeros(0, ground.len()),
                ground,
            });
        }
        let rows: Vec<Vec<i64>> = (0..self.rank())
            .map(|k| {
                (0..self.size())
                    .filter(|&t| t != s)
                    .map(|t| self.mat[(k, t)])
                    .collect()
            })
            .collect();
        Ok(Matroid::from_parts(
            format!("{}\\{}", self.name, label),
            ground,
            Matrix::from_rows(rows),
        ))
    }

    pub fn contract(&self, label: &str) -> Result<Matroid, MatroidError> {
        let s = self.label_index(label)?;
        if self.is_loop(s) {
            return Err(MatroidError::LoopContraction(label.to_string()));
        }
        // pivot on the lowest-index ±1 entry of column s
        let k = (0..self.rank())
            .find(|&k| self.mat[(k, s)] != 0)
            .expect("non-loop column");
        let pivot = self.mat[(k, s)];
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(self.rank() - 1);
        for i in 0..self.rank() {
            if i == k {
                continue;
            }
            let factor = self.mat[(i, s)] * pivot; // pivot is ±1
            let row: Vec<i64> = (0..self.size())
                .filter(|&t| t != s)
                .map(|t| self.mat[(i, t)] - factor * self.mat[(k, t)])
                .collect();
            rows.push(row);
        }
        let ground: Vec<String> = self
            .ground
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != s)
            .map(|(_, l)| l.clone())
            .collect();
        let name = format!("{}/{}", self.name, label);
        if rows.is_empty() {
            // rank-zero remainder: every surviving element is a loop
            return Ok(Matroid {
                name,
                mat: Matrix::zeros(0, ground.len()),
                ground,
            });
        }
        Ok(Matroid::from_parts(name, ground, Matrix::from_rows(rows)))
    }

    pub fn apply_trace(&self, trace: &MinorTrace) -> Result<Matroid, MatroidError> {
        let mut m = self.clone();
        for op in &trace.ops {
            m = match op {
                MinorOp::Delete(l) => m.delete(l)?,
                MinorOp::Contract(l) => m.contract(l)?,
            };
        }
        Ok(m)
    }

    /// Graphic matroid of an oriented multigraph: the incidence matrix
    /// with one redundant row removed per component.
    pub fn graphic(
        name: &str,
        num_vertices: usize,
        edges: &[(usize, usize)],
        labels: &[String],
    ) -> Result<Matroid, MatroidError> {
        assert_eq!(edges.len(), labels.len());
        let mut parent: Vec<usize> = (0..num_vertices).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let r = find(parent, parent[v]);
                parent[v] = r;
            }
            parent[v]
        }
        for &(u, v) in edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                let (lo, hi) = (ru.min(rv), ru.max(rv));
                parent[hi] = lo;
            }
        }
        let drop: std::collections::HashSet<usize> = (0..num_vertices)
            .filter(|&v| find(&mut parent, v) == v)
            .collect();
        let rows: Vec<Vec<i64>> = (0..num_vertices)
            .filter(|v| !drop.contains(v))
            .map(|v| {
                edges
                    .iter()
                    .map(|&(t, h)| {
                        if t == h {
                            0
                        } else if h == v {
                            1
                        } else if t == v {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return Err(MatroidError::InvalidMatroid(
                "graph has no independent edges".into(),
            ));
        }
        Ok(Matroid::from_parts(
            name.to_string(),
            labels.to_vec(),
            Matrix::from_rows(rows),
        ))
    }

    /// Cographic matroid of a graph: rows are the fundamental cycles of a
    /// spanning forest, columns all edges.
    pub fn cographic(
        name: &str,
        num_vertices: usize,
        edges: &[(usize, usize)],
        labels: &[String],
    ) -> Result<Matroid, MatroidError> {
        assert_eq!(edges.len(), labels.len());
        let mut g = crate::graph::ColoredGraph::new(vec![], num_vertices);
        for &(t, h) in edges {
            g.add_edge(t, h, None)
                .map_err(|e| MatroidError::InvalidMatroid(e.to_string()))?;
        }
        let h1 = crate::graph::h1_basis(&g);
        if h1.dim() == 0 {
            return Err(MatroidError::InvalidMatroid(
                "forest has a rank-zero cographic matroid".into(),
            ));
        }
        let rows: Vec<Vec<i64>> = h1
            .cycles
            .iter()
            .map(|c| (0..edges.len()).map(|e| c.coeff(e)).collect())
            .collect();
        Ok(Matroid::from_parts(
            name.to_string(),
            labels.to_vec(),
            Matrix::from_rows(rows),
        ))
    }

    /// Dual matroid: bring the realization to standard form `(1 | D)` on
    /// the lexicographically first basis, then read off `(-D^T | 1)` with
    /// ground labels kept in place.
    pub fn dual(&self) -> Matroid {
        let (g, n) = (self.rank(), self.size());
        let mut basis: Vec<usize> = Vec::new();
        for s in 0..n {
            basis.push(s);
            if !self.is_independent(&basis) {
                basis.pop();
            }
            if basis.len() == g {
                break;
            }
        }
        debug_assert_eq!(basis.len(), g);
        // Gauss-Jordan with unimodular integer row operations
        let mut std_form = self.mat.clone();
        for (i, &b) in basis.iter().enumerate() {
            let k = (i..g)
                .find(|&k| std_form[(k, b)] != 0)
                .expect("independent basis column");
            for c in 0..n {
                let tmp = std_form[(i, c)];
                std_form[(i, c)] = std_form[(k, c)];
                std_form[(k, c)] = tmp;
            }
            if std_form[(i, b)] < 0 {
                for c in 0..n {
                    std_form[(i, c)] = -std_form[(i, c)];
                }
            }
            for r in 0..g {
                if r == i || std_form[(r, b)] == 0 {
                    continue;
                }
                let f = std_form[(r, b)];
                for c in 0..n {
                    std_form[(r, c)] -= f * std_form[(i, c)];
                }
            }
        }
        let in_basis: Vec<Option<usize>> = (0..n)
            .map(|s| basis.iter().position(|&b| b == s))
            .collect();
        let cobasis: Vec<usize> = (0..n).filter(|s| in_basis[*s].is_none()).collect();
        let rows: Vec<Vec<i64>> = cobasis
            .iter()
            .map(|&e| {
                (0..n)
                    .map(|f| {
                        if f == e {
                            1
                        } else if let Some(i) = in_basis[f] {
                            -std_form[(i, e)]
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        Matroid::from_parts(
            format!("{}*", self.name),
            self.ground.clone(),
            Matrix::from_rows(rows),
        )
    }

    /// Canonical sign pattern. On each component of the bipartite
    /// nonzero-pattern graph a BFS spanning tree of entries is forced
    /// positive; the result is the unique such matrix in the row/column
    /// sign-flip orbit, so flip-equivalent realizations normalize
    /// identically and the matroid is unchanged.
    #[allow(clippy::needless_range_loop)]
    pub fn normalize_signs(&self) -> Matroid {
        let (g, n) = (self.rank(), self.size());
        let mut row_sign = vec![0i64; g]; // 0 = unassigned
        let mut col_sign = vec![0i64; n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..g {
            if row_sign[start] != 0 {
                continue;
            }
            row_sign[start] = 1;
            queue.push_back((true, start));
            while let Some((is_row, idx)) = queue.pop_front() {
                if is_row {
                    for s in 0..n {
                        if self.mat[(idx, s)] != 0 && col_sign[s] == 0 {
                            col_sign[s] = row_sign[idx] * self.mat[(idx, s)].signum();
                            queue.push_back((false, s));
                        }
                    }
                } else {
                    for k in 0..g {
                        if self.mat[(k, idx)] != 0 && row_sign[k] == 0 {
                            row_sign[k] = col_sign[idx] * self.mat[(k, idx)].signum();
                            queue.push_back((true, k));
                        }
                    }
                }
            }
        }
        for s in col_sign.iter_mut() {
            if *s == 0 {
                *s = 1; // zero column, sign immaterial
            }
        }
        let rows: Vec<Vec<i64>> = (0..g)
            .map(|k| {
                (0..n)
                    .map(|s| row_sign[k] * col_sign[s] * self.mat[(k, s)])
                    .collect()
            })
            .collect();
        Matroid::from_parts(
            self.name.clone(),
            self.ground.clone(),
            Matrix::from_rows(rows),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<i64>> = (0..self.rank()).map(|k| self.mat.row(k).to_vec()).collect();
        serde_json::to_value(MatroidJson {
            name: self.name.clone(),
            ground: self.ground.clone(),
            matrix: rows,
        })
        .expect("matroid serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Matroid, MatroidError> {
        let parsed: MatroidJson = serde_json::from_value(v.clone())
            .map_err(|e| MatroidError::InvalidMatroid(e.to_string()))?;
        Matroid::validate(&parsed.name, parsed.ground, parsed.matrix)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MatroidJson {
    name: String,
    ground: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

/// Total unimodularity by exhaustive minor enumeration; returns the
/// first offending submatrix.
fn check_tu(mat: &Matrix<i64>) -> Result<(), MatroidError> {
    let (g, n) = (mat.nrows(), mat.ncols());
    for k in 1..=g.min(n) {
        let mut rows_sel = first_combination(k);
        loop {
            let mut cols_sel = first_combination(k);
            loop {
                let det = det_submatrix(mat, &rows_sel, &cols_sel);
                if det.abs() > 1 {
                    return Err(MatroidError::NotTU {
                        rows: rows_sel.clone(),
                        cols: cols_sel.clone(),
                        det: det as i64,
                    });
                }
                if !next_combination(&mut cols_sel, n) {
                    break;
                }
            }
            if !next_combination(&mut rows_sel, g) {
                break;
            }
        }
    }
    Ok(())
}

fn first_combination(k: usize) -> Vec<usize> {
    (0..k).collect()
}

fn next_combination(sel: &mut [usize], n: usize) -> bool {
    let k = sel.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if sel[i] + (k - i) < n {
            sel[i] += 1;
            for j in i + 1..k {
                sel[j] = sel[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One deletion or contraction step, by ground label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorOp {
    Delete(String),
    Contract(String),
}

/// A sequence of minor operations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorTrace {
    pub ops: Vec<MinorOp>,
}

// ---------------------------------------------------------------------------
// Isomorphism

/// Rank of every column subset, indexed by bitmask.
fn rank_table(m: &Matroid) -> Vec<u8> {
    let n = m.size();
    let bits = m.col_bits();
    let mut table = vec![0u8; 1 << n];
    for (mask, entry) in table.iter_mut().enumerate().skip(1) {
        let mut basis: Vec<u64> = Vec::new();
        let mut r = 0u8;
        for (s, &b) in bits.iter().enumerate() {
            if mask >> s & 1 == 0 {
                continue;
            }
            let mut v = b;
            for &x in &basis {
                v = v.min(v ^ x);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
                r += 1;
            }
        }
        *entry = r;
    }
    table
}

/// Per-element invariant used to prune the isomorphism search:
/// loop flag, number of bases through the element, number of 3-element
/// dependent sets through it.
fn element_signature(m: &Matroid, table: &[u8]) -> Vec<(bool, u32, u32)> {
    let n = m.size();
    let g = m.rank() as u32;
    let bases: Vec<u32> = (0..(1u32 << n))
        .filter(|&mask| mask.count_ones() == g && table[mask as usize] as u32 == g)
        .collect();
    (0..n)
        .map(|s| {
            let in_bases = bases.iter().filter(|&&b| b >> s & 1 == 1).count() as u32;
            let mut small_dep = 0u32;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() == 3 && mask >> s & 1 == 1 && table[mask as usize] < 3 {
                    small_dep += 1;
                }
            }
            (m.is_loop(s), in_bases, small_dep)
        })
        .collect()
}

/// Ground-set bijection carrying the rank function of `m1` to that of
/// `m2`, if one exists; invariant pruning plus backtracking.
pub fn is_isomorphic(m1: &Matroid, m2: &Matroid) -> Result<Option<Vec<usize>>, MatroidError> {
    let n = m1.size();
    if n > ISO_LIMIT || m2.size() > ISO_LIMIT {
        return Err(MatroidError::GroundSetTooLarge {
            n: n.max(m2.size()),
            limit: ISO_LIMIT,
        });
    }
    if n != m2.size() || m1.rank() != m2.rank() {
        return Ok(None);
    }
    let t1 = rank_table(m1);
    let t2 = rank_table(m2);
    let sig1 = element_signature(m1, &t1);
    let sig2 = element_signature(m2, &t2);
    {
        let mut a = sig1.clone();
        let mut b = sig2.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }
    // rarest signature first
    let mut order: Vec<usize> = (0..n).collect();
    let mut freq: BTreeMap<(bool, u32, u32), usize> = BTreeMap::new();
    for s in &sig1 {
        *freq.entry(*s).or_default() += 1;
    }
    order.sort_by_key(|&s| (freq[&sig1[s]], s));

    struct Search<'a> {
        order: &'a [usize],
        sig1: &'a [(bool, u32, u32)],
        sig2: &'a [(bool, u32, u32)],
        t1: &'a [u8],
        t2: &'a [u8],
        image: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn extend(&mut self, depth: usize) -> bool {
            let n = self.sig1.len();
            if depth == n {
                return true;
            }
            let s = self.order[depth];
            for j in 0..n {
                if self.used[j] || self.sig2[j] != self.sig1[s] {
                    continue;
                }
                self.image[s] = j;
                self.used[j] = true;
                if self.ranks_match(s, depth) && self.extend(depth + 1) {
                    return true;
                }
                self.image[s] = usize::MAX;
                self.used[j] = false;
            }
            false
        }
        // every assigned subset through the newest element must have
        // equal rank on both sides
        fn ranks_match(&self, s: usize, depth: usize) -> bool {
            for sub in 0..(1usize << depth) {
                let mut m1 = 1usize << s;
                let mut m2 = 1usize << self.image[s];
                for (i, &a) in self.order[..depth].iter().enumerate() {
                    if sub >> i & 1 == 1 {
                        m1 |= 1 << a;
                        m2 |= 1 << self.image[a];
                    }
                }
                if self.t1[m1] != self.t2[m2] {
                    return false;
                }
            }
            true
        }
    }
    let mut search = Search {
        order: &order,
        sig1: &sig1,
        sig2: &sig2,
        t1: &t1,
        t2: &t2,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(search.extend(0).then_some(search.image))
}

// ---------------------------------------------------------------------------
// Cographicity via excluded minors

/// A regular matroid is cographic exactly when no minor is isomorphic to
/// the graphic matroid of K5 or of K3,3. Returns a witness trace when
/// one exists.
pub fn is_cographic(m: &Matroid) -> Result<(bool, Option<MinorTrace>), MatroidError> {
    let n = m.size();
    if n > COGRAPHIC_LIMIT {
        return Err(MatroidError::GroundSetTooLarge {
            n,
            limit: COGRAPHIC_LIMIT,
        });
    }
    for target in [catalog("K5")?, catalog("K33")?] {
        if let Some(trace) = find_minor(m, &target)? {
            return Ok((false, Some(trace)));
        }
    }
    Ok((true, None))
}

/// Searches for a minor of `m` isomorphic to `target`. Every minor on a
/// surviving ground set K arises as M/C\D with C an independent subset
/// of the complement and D the rest, so enumerating (K, C) suffices.
pub fn find_minor(m: &Matroid, target: &Matroid) -> Result<Option<MinorTrace>, MatroidError> {
    let n = m.size();
    let (nt, gt) = (target.size(), target.rank());
    if nt > n || gt > m.rank() {
        return Ok(None);
    }
    // surviving sets in an order that visits the full set first
    let mut keep = first_combination(nt);
    loop {
        let keep_set: std::collections::HashSet<usize> = keep.iter().copied().collect();
        let complement: Vec<usize> = (0..n).filter(|s| !keep_set.contains(s)).collect();
        let away = complement.len();
        for contract_mask in 0u32..(1 << away) {
            let contract: Vec<usize> = complement
                .iter()
                .enumerate()
                .filter(|(i, _)| contract_mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            if contract.len() != m.rank() - gt || !m.is_independent(&contract) {
                continue;
            }
            let mut trace = MinorTrace::default();
            for &s in &contract {
                trace.ops.push(MinorOp::Contract(m.ground()[s].clone()));
            }
            for (i, &s) in complement.iter().enumerate() {
                if contract_mask >> i & 1 == 0 {
                    trace.ops.push(MinorOp::Delete(m.ground()[s].clone()));
                }
            }
            let minor = m.apply_trace(&trace)?;
            if minor.rank() != gt || minor.size() != nt {
                continue;
            }
            if is_isomorphic(&minor, target)?.is_some() {
                return Ok(Some(trace));
            }
        }
        if !next_combination(&mut keep, n) {
            break;
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Catalog

/// Built-in matroids: the graphic matroids of K5 and K3,3, and R10 from
/// a signed circulant realization certified at load.
pub fn catalog(name: &str) -> Result<Matroid, MatroidError> {
    let canon = name.to_ascii_uppercase().replace([',', '_'], "");
    match canon.as_str() {
        "K5" => {
            let mut edges = Vec::new();
            for u in 0..5usize {
                for v in u + 1..5 {
                    edges.push((u, v));
                }
            }
            let labels: Vec<String> = edges
                .iter()
                .map(|&(u, v)| format!("{}{}", u + 1, v + 1))
                .collect();
            Matroid::graphic("M(K5)", 5, &edges, &labels)
        }
        "K33" => {
            let mut edges = Vec::new();
            for u in 0..3usize {
                for v in 0..3usize {
                    edges.push((u, 3 + v));
                }
            }
            let labels: Vec<String> = edges
                .iter()
                .map(|&(u, v)| format!("{}{}", u + 1, v + 1))
                .collect();
            Matroid::graphic("M(K3,3)", 6, &edges, &labels)
        }
        "R10" => {
            let ground: Vec<String> = (1..=10).map(|i| format!("e{i}")).collect();
            let circ = [-1i64, 1, 0, 0, 1];
            let mut rows = vec![vec![0i64; 10]; 5];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = 1;
                for (j, &v) in circ.iter().enumerate() {
                    row[5 + (i + j) % 5] = v;
                }
            }
            Matroid::validate("R10", ground, rows)
        }
        _ => Err(MatroidError::UnknownName(name.to_string())),
    }
}
