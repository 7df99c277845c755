//! Column-major sparse matrices and sparse vectors over an exact field.

use crate::error::{Error, Result};
use crate::exactla::field::Field;

/// Sparse vector as `(index, value)` pairs with strictly increasing indices
/// and no stored zeros.
pub type SVec<E> = Vec<(usize, E)>;

/// Sum duplicate indices and drop zeros.
pub fn normalize_svec<F: Field>(f: &F, mut v: Vec<(usize, F::E)>) -> SVec<F::E> {
    v.sort_by_key(|e| e.0);
    let mut out: SVec<F::E> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = f.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !f.is_zero(x));
    out
}

/// `a + c*b` for sorted sparse vectors.
pub fn axpy_svec<F: Field>(f: &F, a: &[(usize, F::E)], c: &F::E, b: &[(usize, F::E)]) -> SVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = f.mul(c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.mul_add(&a[i].1, c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn svec_to_dense<F: Field>(f: &F, v: &[(usize, F::E)], n: usize) -> Vec<F::E> {
    let mut d = vec![f.zero(); n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

pub fn dense_to_svec<F: Field>(f: &F, v: &[F::E]) -> SVec<F::E> {
    v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(i, x)| (i, x.clone())).collect()
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::E]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

pub fn add_vec<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub_vec<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn scale_vec<F: Field>(f: &F, c: &F::E, a: &[F::E]) -> Vec<F::E> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

/// `a += c*b` in place.
pub fn axpy_vec<F: Field>(f: &F, a: &mut [F::E], c: &F::E, b: &[F::E]) {
    if f.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !f.is_zero(y) {
            *x = f.mul_add(x, c, y);
        }
    }
}

/// Sparse matrix stored by columns; each column is a sorted [`SVec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<E> {
    rows: usize,
    cols: Vec<SVec<E>>,
}

impl<E: Clone + PartialEq> SparseMat<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(usize, E)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SVec<E>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Triplets `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x)))
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> SparseMat<E> {
    /// Build from triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets<F: Field<E = E>>(
        f: &F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, E)>> = vec![Vec::new(); cols];
        for (i, j, x) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Structural(format!("entry ({i},{j}) outside a {rows}x{cols} matrix")));
            }
            buckets[j].push((i, x));
        }
        let cols = buckets.into_iter().map(|b| normalize_svec(f, b)).collect();
        Ok(SparseMat { rows, cols })
    }

    /// Build from columns that are already normalized sparse vectors.
    pub fn from_columns(rows: usize, cols: Vec<SVec<E>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < rows)));
        SparseMat { rows, cols }
    }

    pub fn from_dense_columns<F: Field<E = E>>(f: &F, rows: usize, cols: &[Vec<E>]) -> Self {
        let cols = cols.iter().map(|c| {
            debug_assert_eq!(c.len(), rows);
            dense_to_svec(f, c)
        });
        SparseMat { rows, cols: cols.collect() }
    }

    pub fn identity<F: Field<E = E>>(f: &F, n: usize) -> Self {
        SparseMat { rows: n, cols: (0..n).map(|i| vec![(i, f.one())]).collect() }
    }

    pub fn get<F: Field<E = E>>(&self, f: &F, i: usize, j: usize) -> E {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => f.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn mul_vec<F: Field<E = E>>(&self, f: &F, v: &[E]) -> Result<Vec<E>> {
        if v.len() != self.ncols() {
            return Err(Error::Structural(format!("vector of length {} applied to a {}x{} matrix", v.len(), self.rows, self.ncols())));
        }
        let mut out = vec![f.zero(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            if f.is_zero(&v[j]) {
                continue;
            }
            for (i, x) in c {
                out[*i] = f.mul_add(&out[*i], x, &v[j]);
            }
        }
        Ok(out)
    }

    pub fn mul_svec<F: Field<E = E>>(&self, f: &F, v: &[(usize, E)]) -> SVec<E> {
        let mut acc = Vec::new();
        for (j, c) in v {
            for (i, x) in &self.cols[*j] {
                acc.push((*i, f.mul(x, c)));
            }
        }
        normalize_svec(f, acc)
    }

    /// `self * other`.
    pub fn matmul<F: Field<E = E>>(&self, f: &F, other: &SparseMat<E>) -> Result<SparseMat<E>> {
        if self.ncols() != other.rows {
            return Err(Error::Structural(format!("cannot multiply {}x{} by {}x{}", self.rows, self.ncols(), other.rows, other.ncols())));
        }
        let cols = other.cols.iter().map(|c| self.mul_svec(f, c)).collect();
        Ok(SparseMat { rows: self.rows, cols })
    }

    pub fn transpose(&self) -> SparseMat<E> {
        let mut cols: Vec<SVec<E>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                cols[*i].push((j, x.clone()));
            }
        }
        SparseMat { rows: self.ncols(), cols }
    }

    pub fn add<F: Field<E = E>>(&self, f: &F, other: &SparseMat<E>) -> Result<SparseMat<E>> {
        self.axpy(f, &f.one(), other)
    }

    pub fn sub<F: Field<E = E>>(&self, f: &F, other: &SparseMat<E>) -> Result<SparseMat<E>> {
        self.axpy(f, &f.neg(&f.one()), other)
    }

    /// `self + c*other`.
    pub fn axpy<F: Field<E = E>>(&self, f: &F, c: &E, other: &SparseMat<E>) -> Result<SparseMat<E>> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::Structural(format!("cannot add {}x{} and {}x{}", self.rows, self.ncols(), other.rows, other.ncols())));
        }
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| axpy_svec(f, a, c, b)).collect();
        Ok(SparseMat { rows: self.rows, cols })
    }

    pub fn scale<F: Field<E = E>>(&self, f: &F, c: &E) -> SparseMat<E> {
        if f.is_zero(c) {
            return SparseMat::zeros(self.rows, self.ncols());
        }
        let cols = self.cols.iter().map(|col| col.iter().map(|(i, x)| (*i, f.mul(c, x))).collect()).collect();
        SparseMat { rows: self.rows, cols }
    }

    /// Submatrix on the given rows and columns, in the given orders.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> SparseMat<E> {
        let mut map = vec![usize::MAX; self.rows];
        for (k, &r) in row_idx.iter().enumerate() {
            map[r] = k;
        }
        let cols = col_idx
            .iter()
            .map(|&j| {
                let mut c: SVec<E> =
                    self.cols[j].iter().filter(|(i, _)| map[*i] != usize::MAX).map(|(i, x)| (map[*i], x.clone())).collect();
                c.sort_by_key(|e| e.0);
                c
            })
            .collect();
        SparseMat { rows: row_idx.len(), cols }
    }

    /// Rows `[lo, hi)` and columns `[clo, chi)`.
    pub fn block(&self, lo: usize, hi: usize, clo: usize, chi: usize) -> SparseMat<E> {
        let cols = self.cols[clo..chi]
            .iter()
            .map(|c| c.iter().filter(|(i, _)| *i >= lo && *i < hi).map(|(i, x)| (i - lo, x.clone())).collect())
            .collect();
        SparseMat { rows: hi - lo, cols }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &SparseMat<E>) -> Result<SparseMat<E>> {
        if self.rows != other.rows {
            return Err(Error::Structural("hstack with different row counts".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(SparseMat { rows: self.rows, cols })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &SparseMat<E>) -> Result<SparseMat<E>> {
        if self.ncols() != other.ncols() {
            return Err(Error::Structural("vstack with different column counts".into()));
        }
        let off = self.rows;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, x)| (i + off, x.clone())));
                c
            })
            .collect();
        Ok(SparseMat { rows: self.rows + other.rows, cols })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMat<E>) -> SparseMat<E> {
        let off = self.rows;
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.iter().map(|(i, x)| (i + off, x.clone())).collect()));
        SparseMat { rows: self.rows + other.rows, cols }
    }

    pub fn to_dense<F: Field<E = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut d = vec![vec![f.zero(); self.ncols()]; self.rows];
        for (i, j, x) in self.entries() {
            d[i][j] = x.clone();
        }
        d
    }

    pub fn column_dense<F: Field<E = E>>(&self, f: &F, j: usize) -> Vec<E> {
        svec_to_dense(f, &self.cols[j], self.rows)
    }

    pub fn push_column(&mut self, c: SVec<E>) {
        self.cols.push(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Fp;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let f = Fp::new(3).unwrap();
        let m = SparseMat::from_triplets(&f, 2, 2, vec![(0, 0, 1), (0, 0, 2), (1, 1, 1)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(&f, 1, 1), 1);
        assert!(SparseMat::from_triplets(&f, 2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn matmul_and_transpose() {
        let f = Fp::new(5).unwrap();
        let a = SparseMat::from_triplets(&f, 2, 3, vec![(0, 0, 1), (0, 2, 2), (1, 1, 3)]).unwrap();
        let at = a.transpose();
        let p = a.matmul(&f, &at).unwrap();
        assert_eq!(p.to_dense(&f), vec![vec![0, 0], vec![0, 4]]);
        assert_eq!(a.mul_vec(&f, &[1, 1, 1]).unwrap(), vec![3, 3]);
    }

    #[test]
    fn stacking_and_blocks() {
        let f = Fp::new(7).unwrap();
        let i2 = SparseMat::identity(&f, 2);
        let s = i2.vstack(&i2).unwrap();
        assert_eq!(s.rows(), 4);
        assert_eq!(s.block(2, 4, 0, 2), i2);
        let d = i2.direct_sum(&i2);
        assert_eq!(d, SparseMat::identity(&f, 4));
        assert_eq!(s.submatrix(&[3, 0], &[1]).to_dense(&f), vec![vec![1], vec![0]]);
    }
}
