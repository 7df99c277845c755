//! Subspaces stored in reduced echelon form, so that coordinates of a member
//! are read off at the pivot positions.

use crate::error::{Error, Result};
use crate::exactla::elim::{back_substitute, eliminate};
use crate::exactla::field::Field;
use crate::exactla::kernel_image;
use crate::exactla::sparse::{SVec, SparseMat};

#[derive(Clone, Debug)]
pub struct Subspace<E> {
    pub ambient: usize,
    /// Basis vector `k` has a one at `coord_cols[k]` and zeros at every
    /// other coordinate column.
    pub basis: Vec<SVec<E>>,
    pub coord_cols: Vec<usize>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Subspace<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The whole ambient space.
    pub fn full<F: Field<E = E>>(f: &F, n: usize) -> Self {
        Subspace { ambient: n, basis: (0..n).map(|i| vec![(i, f.one())]).collect(), coord_cols: (0..n).collect() }
    }

    pub fn kernel<F: Field<E = E>>(f: &F, m: &SparseMat<E>) -> Self {
        let ki = kernel_image(f, m);
        let mut is_pivot = vec![false; m.ncols()];
        for &c in &ki.image_cols {
            is_pivot[c] = true;
        }
        let coord_cols = (0..m.ncols()).filter(|&j| !is_pivot[j]).collect();
        Subspace { ambient: m.ncols(), basis: ki.kernel, coord_cols }
    }

    pub fn span<F: Field<E = E>>(f: &F, ambient: usize, vectors: Vec<SVec<E>>) -> Self {
        let mut e = eliminate(f, vectors, ambient, ambient);
        back_substitute(f, &mut e);
        let mut pairs: Vec<(usize, SVec<E>)> = e.pivot_cols.into_iter().zip(e.urows).collect();
        pairs.sort_by_key(|p| p.0);
        let (coord_cols, basis) = pairs.into_iter().unzip();
        Subspace { ambient, basis, coord_cols }
    }

    /// Coordinates of a member given as a dense vector. The result is only
    /// meaningful if `v` lies in the subspace.
    pub fn coords_dense(&self, v: &[E]) -> Vec<E> {
        self.coord_cols.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn coords<F: Field<E = E>>(&self, f: &F, v: &[(usize, E)]) -> Vec<E> {
        let mut out = vec![f.zero(); self.dim()];
        let mut k = 0;
        for (i, x) in v {
            while k < self.coord_cols.len() && self.coord_cols[k] < *i {
                k += 1;
            }
            if k < self.coord_cols.len() && self.coord_cols[k] == *i {
                out[k] = x.clone();
            }
        }
        out
    }

    /// `Σ c_k basis_k`.
    pub fn embed<F: Field<E = E>>(&self, f: &F, c: &[E]) -> SVec<E> {
        let mut acc = Vec::new();
        for (k, x) in c.iter().enumerate() {
            if !f.is_zero(x) {
                acc.extend(self.basis[k].iter().map(|(i, y)| (*i, f.mul(x, y))));
            }
        }
        crate::exactla::sparse::normalize_svec(f, acc)
    }

    pub fn inclusion(&self) -> SparseMat<E> {
        SparseMat::from_columns(self.ambient, self.basis.clone())
    }

    /// Matrix of `op` restricted to `self` and read in `target` coordinates.
    /// Fails if some image leaves `target`.
    pub fn restrict<F: Field<E = E>>(&self, f: &F, op: &SparseMat<E>, target: &Subspace<E>) -> Result<SparseMat<E>> {
        let mut cols = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let img = op.mul_svec(f, b);
            let c = target.coords(f, &img);
            if target.embed(f, &c) != img {
                return Err(Error::Contract("operator does not map the subspace into the target".into()));
            }
            cols.push(crate::exactla::sparse::dense_to_svec(f, &c));
        }
        Ok(SparseMat::from_columns(target.dim(), cols))
    }

    /// Same as [`Subspace::restrict`] without the membership check.
    pub fn restrict_unchecked<F: Field<E = E>>(&self, f: &F, op: &SparseMat<E>, target: &Subspace<E>) -> SparseMat<E> {
        let cols = self.basis.iter().map(|b| crate::exactla::sparse::dense_to_svec(f, &target.coords(f, &op.mul_svec(f, b)))).collect();
        SparseMat::from_columns(target.dim(), cols)
    }
}
