//! Coordinate-format sparse matrices with a canonical entry order.
//!
//! Every [`SparseMatrix`] keeps its entries sorted by `(row, col)`, with unique
//! keys and no stored zeros, so structural equality is plain `==`. A compressed
//! row view ([`CsrMatrix`]) is provided for the solver kernels.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            entries: (0..n).map(|i| (i, i, 1.0)).collect(),
        }
    }

    pub fn from_diag(values: &[f64]) -> Self {
        let n = values.len();
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i, i, *v))
            .collect();
        SparseMatrix {
            nrows: n,
            ncols: n,
            entries,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate keys are
    /// summed; entries that end up exactly zero are dropped.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut raw: Vec<(usize, usize, f64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::IndexOutOfBounds {
                    row: r,
                    col: c,
                    nrows,
                    ncols,
                });
            }
            raw.push((r, c, v));
        }
        Ok(Self::canonical(nrows, ncols, raw))
    }

    fn canonical(nrows: usize, ncols: usize, mut raw: Vec<(usize, usize, f64)>) -> Self {
        raw.sort_by_key(|a| (a.0, a.1));
        let mut entries: Vec<(usize, usize, f64)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0.0);
        SparseMatrix {
            nrows,
            ncols,
            entries,
        }
    }

    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    op: "from_dense",
                    expected: (i, ncols),
                    found: (i, row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                trip.push((i, j, v));
            }
        }
        Self::from_triplets(nrows, ncols, trip)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Canonical `(row, col, value)` entries in row-major order.
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(row, col)))
            .map_or(0.0, |k| self.entries[k].2)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.ncols]; self.nrows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    pub fn transpose(&self) -> SparseMatrix {
        let raw = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        Self::canonical(self.ncols, self.nrows, raw)
    }

    pub fn scale(&self, alpha: f64) -> SparseMatrix {
        let raw = self
            .entries
            .iter()
            .map(|&(r, c, v)| (r, c, alpha * v))
            .collect();
        Self::canonical(self.nrows, self.ncols, raw)
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other, "add")?;
        Ok(self.merge_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other, "sub")?;
        Ok(self.merge_with(other, |a, b| a - b))
    }

    /// Entrywise maximum; for 0/1 adjacency matrices this is the edge union.
    pub fn max_entrywise(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other, "max_entrywise")?;
        Ok(self.merge_with(other, f64::max))
    }

    fn check_same_shape(&self, other: &SparseMatrix, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                expected: self.shape(),
                found: other.shape(),
            });
        }
        Ok(())
    }

    fn merge_with(&self, other: &SparseMatrix, f: impl Fn(f64, f64) -> f64) -> SparseMatrix {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ka = a.get(i).map(|e| (e.0, e.1));
            let kb = b.get(j).map(|e| (e.0, e.1));
            match (ka, kb) {
                (Some(x), Some(y)) if x == y => {
                    out.push((x.0, x.1, f(a[i].2, b[j].2)));
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push((x.0, x.1, f(a[i].2, 0.0)));
                    i += 1;
                }
                (Some(x), None) => {
                    out.push((x.0, x.1, f(a[i].2, 0.0)));
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y.0, y.1, f(0.0, b[j].2)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out.retain(|e| e.2 != 0.0);
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: out,
        }
    }

    /// Same sparsity pattern with every stored value replaced by 1.
    pub fn pattern(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|&(r, c, _)| (r, c, 1.0)).collect(),
        }
    }

    /// Keeps the entries for which `keep(row, col, value)` is true.
    pub fn filter(&self, mut keep: impl FnMut(usize, usize, f64) -> bool) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|&(r, c, v)| keep(r, c, v))
                .collect(),
        }
    }

    /// True when every stored key of `self` is also stored in `other`.
    pub fn pattern_subset_of(&self, other: &SparseMatrix) -> bool {
        self.shape() == other.shape()
            && self.entries.iter().all(|&(r, c, _)| other.get(r, c) != 0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.entries.iter().all(|&(r, c, v)| self.get(c, r) == v)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.nrows];
        for &(r, _, v) in &self.entries {
            s[r] += v;
        }
        s
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let n = self.nrows.min(self.ncols);
        let mut d = vec![0.0; n];
        for &(r, c, v) in &self.entries {
            if r == c {
                d[r] = v;
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.2.abs()))
    }

    /// Largest absolute entrywise difference; `None` when shapes differ.
    pub fn max_abs_diff(&self, other: &SparseMatrix) -> Option<f64> {
        if self.shape() != other.shape() {
            return None;
        }
        Some(self.merge_with(other, |a, b| a - b).max_abs())
    }

    /// Rows `rows` and columns `cols` as a new matrix.
    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> SparseMatrix {
        let entries = self
            .entries
            .iter()
            .filter(|e| rows.contains(&e.0) && cols.contains(&e.1))
            .map(|&(r, c, v)| (r - rows.start, c - cols.start, v))
            .collect();
        SparseMatrix {
            nrows: rows.len(),
            ncols: cols.len(),
            entries,
        }
    }

    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                op: "spmv",
                expected: (self.ncols, 1),
                found: (x.len(), 1),
            });
        }
        let mut y = vec![0.0; self.nrows];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        Ok(y)
    }

    pub fn matmul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                expected: (self.ncols, other.ncols),
                found: other.shape(),
            });
        }
        let b = CsrMatrix::from(other);
        let mut raw = Vec::new();
        let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
        let mut k = 0;
        while k < self.entries.len() {
            let row = self.entries[k].0;
            acc.clear();
            while k < self.entries.len() && self.entries[k].0 == row {
                let (_, mid, a) = self.entries[k];
                for (col, bv) in b.row(mid) {
                    *acc.entry(col).or_insert(0.0) += a * bv;
                }
                k += 1;
            }
            raw.extend(acc.iter().map(|(&c, &v)| (row, c, v)));
        }
        Ok(Self::canonical(self.nrows, other.ncols, raw))
    }

    /// Kronecker product. Row `(i, a)` of the result is `i * nrows(B) + a`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let (br, bc) = other.shape();
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for &(i, j, a) in &self.entries {
            for &(p, q, b) in &other.entries {
                entries.push((i * br + p, j * bc + q, a * b));
            }
        }
        Self::canonical(self.nrows * br, self.ncols * bc, entries)
    }

    /// Kronecker sum `A ⊗ I + I ⊗ B` of two square matrices.
    pub fn kron_sum(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        for m in [self, other] {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    op: "kron_sum",
                    rows: m.nrows,
                    cols: m.ncols,
                });
            }
        }
        let left = self.kron(&SparseMatrix::identity(other.nrows));
        let right = SparseMatrix::identity(self.nrows).kron(other);
        left.add(&right)
    }

    /// Symmetric relabelling: `result[p(i), p(j)] = A[i, j]`.
    pub fn permute(&self, p: &Permutation) -> Result<SparseMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "permute",
                rows: self.nrows,
                cols: self.ncols,
            });
        }
        self.permute_rect(p, p)
    }

    /// `result[rows(i), cols(j)] = A[i, j]` for rectangular matrices.
    pub fn permute_rect(&self, rows: &Permutation, cols: &Permutation) -> Result<SparseMatrix> {
        if rows.len() != self.nrows || cols.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                op: "permute",
                expected: self.shape(),
                found: (rows.len(), cols.len()),
            });
        }
        let raw = self
            .entries
            .iter()
            .map(|&(r, c, v)| (rows.apply(r), cols.apply(c), v))
            .collect();
        Ok(Self::canonical(self.nrows, self.ncols, raw))
    }

    /// Assembles a block matrix. Missing blocks are zero; every present block
    /// must have shape `(row_sizes[i], col_sizes[j])`.
    pub fn block_assemble(
        blocks: &BTreeMap<(usize, usize), SparseMatrix>,
        row_sizes: &[usize],
        col_sizes: &[usize],
    ) -> Result<SparseMatrix> {
        let row_off = prefix_sums(row_sizes);
        let col_off = prefix_sums(col_sizes);
        let mut raw = Vec::new();
        for (&(bi, bj), m) in blocks {
            let (Some(&rs), Some(&cs)) = (row_sizes.get(bi), col_sizes.get(bj)) else {
                return Err(Error::InvalidArgument(format!(
                    "block ({bi}, {bj}) outside a {}x{} block layout",
                    row_sizes.len(),
                    col_sizes.len()
                )));
            };
            if m.shape() != (rs, cs) {
                return Err(Error::DimensionMismatch {
                    op: "block_assemble",
                    expected: (rs, cs),
                    found: m.shape(),
                });
            }
            raw.extend(
                m.entries
                    .iter()
                    .map(|&(r, c, v)| (r + row_off[bi], c + col_off[bj], v)),
            );
        }
        Ok(Self::canonical(
            *row_off.last().unwrap(),
            *col_off.last().unwrap(),
            raw,
        ))
    }
}

/// `[0, s0, s0+s1, ...]`; the last element is the total.
pub fn prefix_sums(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &s in sizes {
        acc += s;
        out.push(acc);
    }
    out
}

/// A bijection on `0..n`, stored as its forward map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
}

impl Permutation {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &f in &forward {
            if f >= n || seen[f] {
                return Err(Error::InvalidPermutation(format!(
                    "image {f} repeated or outside 0..{n}"
                )));
            }
            seen[f] = true;
        }
        Ok(Permutation { forward })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            forward: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.forward.len()];
        for (i, &f) in self.forward.iter().enumerate() {
            inv[f] = i;
        }
        Permutation { forward: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            forward: other.forward.iter().map(|&i| self.forward[i]).collect(),
        }
    }

    /// Moves `x[i]` to position `p(i)`.
    pub fn apply_vec<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (i, v) in x.iter().enumerate() {
            out[self.forward[i]] = v.clone();
        }
        out
    }
}

/// Compressed sparse row view used by the smoothers.
#[derive(Clone, Debug)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<f64>,
}

impl From<&SparseMatrix> for CsrMatrix {
    fn from(m: &SparseMatrix) -> Self {
        let mut indptr = vec![0; m.nrows + 1];
        for &(r, _, _) in &m.entries {
            indptr[r + 1] += 1;
        }
        for i in 0..m.nrows {
            indptr[i + 1] += indptr[i];
        }
        CsrMatrix {
            nrows: m.nrows,
            ncols: m.ncols,
            indptr,
            indices: m.entries.iter().map(|e| e.1).collect(),
            data: m.entries.iter().map(|e| e.2).collect(),
        }
    }
}

impl CsrMatrix {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.indptr[i]..self.indptr[i + 1];
        self.indices[span.clone()]
            .iter()
            .copied()
            .zip(self.data[span].iter().copied())
    }

    /// `y = A x`; panics on length mismatch.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols, "mul_vec: length mismatch");
        (0..self.nrows)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    /// `y = Aᵀ x`; panics on length mismatch.
    pub fn mul_vec_transpose(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.nrows, "mul_vec_transpose: length mismatch");
        let mut y = vec![0.0; self.ncols];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0.0 {
                for (j, v) in self.row(i) {
                    y[j] += v * xi;
                }
            }
        }
        y
    }

    /// `b - A x`.
    pub fn residual(&self, x: &[f64], b: &[f64]) -> Vec<f64> {
        self.mul_vec(x)
            .iter()
            .zip(b)
            .map(|(ax, bi)| bi - ax)
            .collect()
    }
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> SparseMatrix {
        SparseMatrix::from_triplets(2, 2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap()
    }

    fn path(n: usize) -> SparseMatrix {
        let t = (0..n.saturating_sub(1)).flat_map(|i| [(i, i + 1, 1.0), (i + 1, i, 1.0)]);
        SparseMatrix::from_triplets(n, n, t).unwrap()
    }

    #[test]
    fn canonicalization_sums_duplicates_and_drops_zeros() {
        let m = SparseMatrix::from_triplets(
            2,
            2,
            [(1, 1, 2.0), (0, 0, 1.0), (1, 1, -2.0), (0, 0, 1.0)],
        )
        .unwrap();
        assert_eq!(m.entries(), &[(0, 0, 2.0)]);
        assert!(SparseMatrix::from_triplets(2, 2, [(2, 0, 1.0)]).is_err());
    }

    #[test]
    fn kron_examples() {
        let i2 = SparseMatrix::identity(2);
        assert_eq!(i2.kron(&i2), SparseMatrix::identity(4));
        let two_edges =
            SparseMatrix::from_triplets(4, 4, [(0, 3, 1.0), (3, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0)])
                .unwrap();
        assert_eq!(k2().kron(&k2()), two_edges);
        let b = path(3);
        let s = SparseMatrix::from_diag(&[2.0]);
        assert_eq!(s.kron(&b), b.scale(2.0));
    }

    #[test]
    fn kron_sum_examples() {
        let c4 = SparseMatrix::from_triplets(
            4,
            4,
            [(0, 1), (1, 3), (3, 2), (2, 0)]
                .into_iter()
                .flat_map(|(a, b)| [(a, b, 1.0), (b, a, 1.0)]),
        )
        .unwrap();
        assert_eq!(k2().kron_sum(&k2()).unwrap(), c4);
        let z = SparseMatrix::zeros(1, 1);
        assert_eq!(z.kron_sum(&z).unwrap(), SparseMatrix::zeros(1, 1));
        assert!(SparseMatrix::zeros(1, 2).kron_sum(&z).is_err());
    }

    #[test]
    fn kron_sum_of_paths_is_grid() {
        // Hand enumeration of the 3x2 grid: vertex (i, a) -> 2i + a.
        let mut t = Vec::new();
        for i in 0..3 {
            for a in 0..2 {
                let v = 2 * i + a;
                if a + 1 < 2 {
                    t.push((v, v + 1));
                }
                if i + 1 < 3 {
                    t.push((v, v + 2));
                }
            }
        }
        assert_eq!(t.len(), 7);
        let grid = SparseMatrix::from_triplets(
            6,
            6,
            t.iter().flat_map(|&(a, b)| [(a, b, 1.0), (b, a, 1.0)]),
        )
        .unwrap();
        assert_eq!(path(3).kron_sum(&path(2)).unwrap(), grid);
    }

    #[test]
    fn permute_examples() {
        let a = path(4);
        assert_eq!(a.permute(&Permutation::identity(4)).unwrap(), a);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(k2().permute(&swap).unwrap(), k2());
        let d = SparseMatrix::from_diag(&[1.0, 2.0, 3.0]);
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(
            d.permute(&cycle).unwrap(),
            SparseMatrix::from_diag(&[3.0, 1.0, 2.0])
        );
        assert!(d.permute(&swap).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn block_assemble_examples() {
        let g = path(3);
        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), g.clone());
        assert_eq!(
            SparseMatrix::block_assemble(&blocks, &[3], &[3]).unwrap(),
            g
        );

        blocks.insert((1, 1), k2());
        let sum = SparseMatrix::block_assemble(&blocks, &[3, 2], &[3, 2]).unwrap();
        assert_eq!(sum.nnz(), g.nnz() + 2);
        assert_eq!(sum.get(3, 4), 1.0);

        let s = SparseMatrix::from_triplets(2, 3, [(0, 0, 1.0), (1, 2, 1.0)]).unwrap();
        let mut off = BTreeMap::new();
        off.insert((1, 0), s.clone());
        off.insert((0, 1), s.transpose());
        let bip = SparseMatrix::block_assemble(&off, &[3, 2], &[3, 2]).unwrap();
        let direct =
            SparseMatrix::from_triplets(5, 5, [(3, 0, 1.0), (0, 3, 1.0), (4, 2, 1.0), (2, 4, 1.0)])
                .unwrap();
        assert_eq!(bip, direct);

        let mut bad = BTreeMap::new();
        bad.insert((0, 0), k2());
        assert!(SparseMatrix::block_assemble(&bad, &[3], &[3]).is_err());
    }

    #[test]
    fn kernels() {
        let i3 = SparseMatrix::identity(3);
        assert_eq!(i3.spmv(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(i3.spmv(&[1.0]).is_err());
        let a = SparseMatrix::from_triplets(2, 3, [(0, 2, 1.5), (1, 0, -2.0)]).unwrap();
        assert_eq!(a.transpose().transpose(), a);
        let c4 = k2().kron_sum(&k2()).unwrap();
        assert_eq!(c4.nnz(), 8);
        assert!(a.add(&i3).is_err());
        let p = a.matmul(&a.transpose()).unwrap();
        assert_eq!(p.to_dense(), vec![vec![2.25, 0.0], vec![0.0, 4.0]]);
    }

    #[test]
    fn csr_matches_coo() {
        let a = path(5).add(&SparseMatrix::identity(5).scale(3.0)).unwrap();
        let csr = CsrMatrix::from(&a);
        let x = [1.0, -2.0, 0.5, 4.0, 0.0];
        assert_eq!(csr.mul_vec(&x), a.spmv(&x).unwrap());
        assert_eq!(csr.mul_vec_transpose(&x), a.transpose().spmv(&x).unwrap());
    }
}
