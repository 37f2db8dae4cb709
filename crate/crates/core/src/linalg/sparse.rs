use std::collections::BTreeMap;

use super::field::{Field, Ring};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Ring> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Ring> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, F::one())],
        }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, F)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            match acc.get_mut(&i) {
                Some(cur) => *cur = cur.add_ref(&v),
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn first(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.mul_ref(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg_ref())).collect(),
        }
    }

    /// `self + c * other`, by a sorted merge.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0);
            let ib = other.entries.get(b).map(|e| e.0);
            match (ia, ib) {
                (Some(x), Some(y)) if x == y => {
                    let v = self.entries[a].1.add_ref(&c.mul_ref(&other.entries[b].1));
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (Some(_), None) => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (_, Some(y)) => {
                    out.push((y, c.mul_ref(&other.entries[b].1)));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&F::one().neg_ref(), other)
    }

    /// Re-indexes entries; `f` must be strictly increasing on the support
    /// or the result is re-sorted.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    /// Keeps only the entries whose index passes `keep`.
    pub fn filter_indices(&self, keep: impl Fn(usize) -> bool) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| keep(*i))
                .cloned()
                .collect(),
        }
    }

    pub fn dot_dense(&self, dense: &[F]) -> F {
        self.entries
            .iter()
            .fold(F::zero(), |acc, (i, v)| acc.add_ref(&v.mul_ref(&dense[*i])))
    }
}

impl<F: Field> SparseVec<F> {
    /// Scales so the first entry is one.
    pub fn normalized(&self) -> Self {
        match self.entries.first() {
            Some((_, lead)) => self.scale(&lead.inv().expect("nonzero lead")),
            None => self.clone(),
        }
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Ring> SparseMatrix<F> {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![SparseVec::zero(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec<F>>) -> Self {
        debug_assert!(cols
            .iter()
            .all(|c| c.max_index().is_none_or(|m| m < rows)));
        SparseMatrix { rows, cols }
    }

    /// Row-major dense input, `dense[i][j]` is row i, column j.
    pub fn from_dense_rows(rows: usize, ncols: usize, dense: &[Vec<F>]) -> Self {
        let cols = (0..ncols)
            .map(|j| SparseVec::from_pairs((0..rows).map(|i| (i, dense[i][j].clone()))))
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cols[j].get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        v.iter()
            .fold(SparseVec::zero(), |acc, (j, c)| acc.axpy(c, &self.cols[j]))
    }

    /// `self * rhs`.
    pub fn compose(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch in compose");
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!((self.rows, self.ncols()), (rhs.rows, rhs.ncols()));
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!((self.rows, self.ncols()), (rhs.rows, rhs.ncols()));
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> SparseMatrix<F> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|col| col.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix<F> {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols.len(),
            cols: rows.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    /// Kronecker product; index of (i, k) is `i * other.rows + k`.
    pub fn kron(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for a in &self.cols {
            for b in &other.cols {
                let pairs = a.iter().flat_map(|(i, x)| {
                    b.iter()
                        .map(move |(k, y)| (i * other.rows + k, x.mul_ref(y)))
                });
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
        SparseMatrix {
            rows: self.rows * other.rows,
            cols,
        }
    }

    /// Block diagonal matrix diag(self, other).
    pub fn block_diagonal(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        let shift = self.rows;
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.map_indices(|i| i + shift)));
        SparseMatrix {
            rows: self.rows + other.rows,
            cols,
        }
    }

    /// Keeps the listed rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix<F> {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, r) in rows.iter().enumerate() {
            pos[*r] = k;
        }
        SparseMatrix {
            rows: rows.len(),
            cols: cols
                .iter()
                .map(|j| {
                    SparseVec::from_pairs(
                        self.cols[*j]
                            .iter()
                            .filter(|(i, _)| pos[*i] != usize::MAX)
                            .map(|(i, v)| (pos[i], v.clone())),
                    )
                })
                .collect(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    /// Flattens to a vector indexed by `j * nrows + i`.
    pub fn flatten(&self) -> SparseVec<F> {
        let n = self.rows;
        SparseVec::from_pairs(
            self.cols
                .iter()
                .enumerate()
                .flat_map(|(j, c)| c.iter().map(move |(i, v)| (j * n + i, v.clone()))),
        )
    }

    pub fn unflatten(rows: usize, ncols: usize, v: &SparseVec<F>) -> SparseMatrix<F> {
        let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); ncols];
        for (k, x) in v.iter() {
            cols[k / rows].push((k % rows, x.clone()));
        }
        SparseMatrix {
            rows,
            cols: cols.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.ncols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                out[i][j] = v.clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVec::from_pairs(vec![(0, q(1)), (3, q(2))]);
        let b = SparseVec::from_pairs(vec![(3, q(1)), (5, q(1))]);
        let c = a.axpy(&q(-2), &b);
        assert_eq!(c, SparseVec::from_pairs(vec![(0, q(1)), (5, q(-2))]));
    }

    #[test]
    fn compose_and_transpose() {
        let m = SparseMatrix::from_dense_rows(2, 2, &[vec![q(1), q(2)], vec![q(0), q(1)]]);
        let sq = m.compose(&m);
        assert_eq!(sq.get(0, 1), q(4));
        assert_eq!(m.transpose().get(1, 0), q(2));
        let flat = m.flatten();
        assert_eq!(SparseMatrix::unflatten(2, 2, &flat), m);
    }

    #[test]
    fn kron_with_identity() {
        let m = SparseMatrix::from_dense_rows(2, 2, &[vec![q(0), q(1)], vec![q(0), q(0)]]);
        let k = m.kron(&SparseMatrix::identity(3));
        assert_eq!(k.nrows(), 6);
        assert_eq!(k.get(0, 3), q(1));
        assert_eq!(k.get(2, 5), q(1));
        assert_eq!(k.get(3, 0), q(0));
    }
}
