//! Spectral sequences of the grid for either filtration, computed from the
//! leading parts of `Z_r` and `B_r` with explicit representatives.
//!
//! In filtration coordinates `(p, q)` the total differential splits as
//! `d0: (p,q) → (p,q+1)` and `d1: (p,q) → (p+1,q)`. Then
//! `E_r^{p,q} = lead_p Z_r / lead_p B_r` where
//! `Z_r = {x ∈ F^p : Dx ∈ F^{p+r}}` and
//! `B_r = {Dy : y ∈ F^{p-r+1}, Dy ∈ F^p}`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::sparse::{svec_to_dense, SVec, SparseMat};
use crate::exactla::{kernel_image, rank, subquotient, Echelon, Field, HomologyCoords};
use crate::specseq::grid::DoubleComplexGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Filtration {
    /// Filtered by group degree: `E_2^{p,q} = H^p(G, HH^q(A,M))`.
    I,
    /// Filtered by Hochschild degree.
    II,
}

/// The grid in filtration coordinates.
#[derive(Clone, Debug)]
pub struct FilteredComplex<F: Field> {
    pub field: F,
    pub filtration: Filtration,
    pub pmax: usize,
    pub qmax: usize,
    dims: Vec<Vec<usize>>,
    d0: Vec<Vec<Option<SparseMat<F::E>>>>,
    d1: Vec<Vec<Option<SparseMat<F::E>>>>,
}

impl<F: Field> FilteredComplex<F> {
    pub fn new(grid: &DoubleComplexGrid<F>, filtration: Filtration) -> Self {
        let w = grid.window;
        let (pmax, qmax) = match filtration {
            Filtration::I => (w.j_max, w.i_max),
            Filtration::II => (w.i_max, w.j_max),
        };
        // (a, g) of the cell at (p, q).
        let cell = |p: usize, q: usize| match filtration {
            Filtration::I => (q, p),
            Filtration::II => (p, q),
        };
        let mut dims = vec![vec![0; qmax + 1]; pmax + 1];
        let mut d0 = vec![vec![None; qmax + 1]; pmax + 1];
        let mut d1 = vec![vec![None; qmax + 1]; pmax + 1];
        for p in 0..=pmax {
            for q in 0..=qmax {
                let (a, g) = cell(p, q);
                dims[p][q] = grid.dims[a][g];
                let (along_q, along_p) = match filtration {
                    Filtration::I => (grid.dh.get(a).map(|r| &r[g]), grid.dv[a].get(g)),
                    Filtration::II => (grid.dv[a].get(g), grid.dh.get(a).map(|r| &r[g])),
                };
                if q < qmax {
                    d0[p][q] = along_q.cloned();
                }
                if p < pmax {
                    d1[p][q] = along_p.cloned();
                }
            }
        }
        FilteredComplex { field: grid.field().clone(), filtration, pmax, qmax, dims, d0, d1 }
    }

    pub fn dim(&self, p: isize, q: isize) -> usize {
        if self.inside(p, q) {
            self.dims[p as usize][q as usize]
        } else {
            0
        }
    }

    fn inside(&self, p: isize, q: isize) -> bool {
        p >= 0 && q >= 0 && p as usize <= self.pmax && q as usize <= self.qmax
    }

    /// Cells outside the first quadrant are genuinely zero; cells beyond the
    /// window are truncated.
    fn truncated(&self, p: isize, q: isize) -> bool {
        p >= 0 && q >= 0 && !self.inside(p, q)
    }

    /// Total cochains of degree `n` restricted to filtration range `ps`,
    /// as a block layout `(p, offset, dim)`.
    fn layout(&self, n: isize, ps: std::ops::RangeInclusive<isize>) -> (Vec<(isize, usize, usize)>, usize) {
        let mut out = Vec::new();
        let mut off = 0;
        for p in ps {
            let d = self.dim(p, n - p);
            if d > 0 {
                out.push((p, off, d));
                off += d;
            }
        }
        (out, off)
    }

    /// Matrix of `D` from the columns layout to the rows layout.
    fn total_map(
        &self,
        n: isize,
        cols: &[(isize, usize, usize)],
        rows: &[(isize, usize, usize)],
        nrows: usize,
        ncols: usize,
    ) -> Result<SparseMat<F::E>> {
        let mut trip = Vec::new();
        for &(p, coff, _) in cols {
            let q = (n - p) as usize;
            let pu = p as usize;
            for &(rp, roff, _) in rows {
                let m = if rp == p {
                    self.d0[pu][q].as_ref()
                } else if rp == p + 1 {
                    self.d1[pu][q].as_ref()
                } else {
                    None
                };
                if let Some(m) = m {
                    for (i, j, v) in m.entries() {
                        trip.push((roff + i, coff + j, v.clone()));
                    }
                }
            }
        }
        SparseMat::from_triplets(&self.field, nrows, ncols, trip)
    }

    /// `E_r^{p,q}` with representatives and the data needed for `d_r`.
    pub fn entry(&self, p: usize, q: usize, r: usize) -> Result<PageEntry<F>> {
        let f = &self.field;
        let (pi, qi, ri) = (p as isize, q as isize, r as isize);
        let n = pi + qi;
        let dim = self.dim(pi, qi);
        // Z: x ∈ cells p..p+max(r,1)-1 of degree n with (Dx) vanishing on p..p+r-1.
        let (xl, xn) = self.layout(n, pi..=pi + ri.max(1) - 1);
        let (rl, rn) = self.layout(n + 1, pi..=pi + ri - 1);
        let zmap = self.total_map(n, &xl, &rl, rn, xn)?;
        let kernel = kernel_image(f, &zmap).kernel;
        // B: y ∈ cells p-r+1..p of degree n-1 with (Dy) vanishing below p.
        let (yl, yn) = self.layout(n - 1, pi - ri + 1..=pi);
        let (cl, cn) = self.layout(n, pi - ri + 1..=pi - 1);
        let (ll, ln) = self.layout(n, pi..=pi);
        let ykernel = kernel_image(f, &self.total_map(n - 1, &yl, &cl, cn, yn)?).kernel;
        let lead_map = self.total_map(n - 1, &yl, &ll, ln, yn)?;
        let mut boundaries = Vec::new();
        let mut ech = Echelon::new(f, dim);
        for y in &ykernel {
            let b = lead_map.mul_svec(f, y);
            if ech.insert(&b, Vec::new()) {
                boundaries.push(b);
            }
        }
        let lead = |x: &SVec<F::E>| -> SVec<F::E> { x.iter().filter(|(i, _)| *i < dim).cloned().collect() };
        let mut representatives = Vec::new();
        let mut extensions = Vec::new();
        if dim > 0 {
            for x in kernel {
                let l = lead(&x);
                if ech.insert(&l, Vec::new()) {
                    representatives.push(l);
                    extensions.push(x);
                }
            }
        }
        let coords = HomologyCoords::new(f, dim, &boundaries, representatives.clone())?;
        // Everything the computation touches, plus the target of d_r.
        let mut touched: Vec<(isize, isize)> = vec![(pi, qi), (pi + ri, qi - ri + 1)];
        for k in 0..ri.max(1) {
            touched.push((pi + k, n - pi - k));
            touched.push((pi + k, n + 1 - pi - k));
        }
        for k in 0..ri {
            touched.push((pi - k, n - 1 - pi + k));
            touched.push((pi - k, n - pi + k));
        }
        let safe = touched.iter().all(|&(a, b)| !self.truncated(a, b));
        Ok(PageEntry { p, q, r, dim: representatives.len(), safe, representatives, boundaries, extensions, layout: xl, coords })
    }

    /// Component of `D x` in filtration `p + r`, for `x` an extension of a
    /// representative of `E_r^{p,q}`.
    fn image_component(&self, e: &PageEntry<F>, x: &SVec<F::E>) -> Result<SVec<F::E>> {
        let f = &self.field;
        let (p, q, r) = (e.p as isize, e.q as isize, e.r as isize);
        let n = p + q;
        let target = (p + r, q - r + 1);
        let tdim = self.dim(target.0, target.1);
        let mut acc = vec![f.zero(); tdim];
        if tdim == 0 {
            return Ok(Vec::new());
        }
        for &(bp, off, d) in &e.layout {
            let part: SVec<F::E> = x.iter().filter(|(i, _)| *i >= off && *i < off + d).map(|(i, v)| (i - off, v.clone())).collect();
            let (bu, bq) = (bp as usize, (n - bp) as usize);
            let m = if bp == target.0 {
                self.d0[bu][bq].as_ref()
            } else if bp + 1 == target.0 {
                self.d1[bu][bq].as_ref()
            } else {
                None
            };
            if let Some(m) = m {
                let v = m.mul_svec(f, &part);
                for (i, c) in v {
                    acc[i] = f.add(&acc[i], &c);
                }
            }
        }
        Ok(crate::exactla::sparse::dense_to_svec(f, &acc))
    }

    /// Pages `E_0, ..., E_{up_to}` with their differentials.
    pub fn pages(&self, up_to: usize) -> Result<Vec<PageTable<F>>> {
        (0..=up_to).map(|r| self.page(r)).collect()
    }

    pub fn page(&self, r: usize) -> Result<PageTable<F>> {
        let cells: Vec<(usize, usize)> = (0..=self.pmax).flat_map(|p| (0..=self.qmax).map(move |q| (p, q))).collect();
        let entries: BTreeMap<(usize, usize), PageEntry<F>> =
            cells.par_iter().map(|&(p, q)| Ok(((p, q), self.entry(p, q, r)?))).collect::<Result<_>>()?;
        let mut differentials = BTreeMap::new();
        for (&(p, q), e) in &entries {
            if q + 1 < r || p + r > self.pmax || q + 1 - r > self.qmax || e.dim == 0 {
                continue;
            }
            let target = &entries[&(p + r, q + 1 - r)];
            let cols = e
                .extensions
                .iter()
                .map(|x| {
                    let v = self.image_component(e, x)?;
                    target.coords.coords(&v).ok_or_else(|| Error::Contract(format!("d_{r} image from ({p}, {q}) is not a cycle")))
                })
                .collect::<Result<Vec<_>>>()?;
            differentials.insert((p, q), SparseMat::from_columns(target.dim, cols));
        }
        Ok(PageTable {
            field: self.field.clone(),
            filtration: self.filtration,
            r,
            pmax: self.pmax,
            qmax: self.qmax,
            entries,
            differentials,
        })
    }

    /// `E_∞^{p,q}`: the page `max(q+2, p+1)` after which nothing enters or
    /// leaves the cell.
    pub fn infinity(&self, p: usize, q: usize) -> Result<PageEntry<F>> {
        self.entry(p, q, (q + 2).max(p + 1))
    }

    /// Dimensions of the cohomology of the total complex of the window.
    pub fn total_cohomology(&self, up_to: usize) -> Result<Vec<usize>> {
        let f = &self.field;
        let maps: Vec<SparseMat<F::E>> = (0..=up_to as isize)
            .map(|n| {
                let (cl, cn) = self.layout(n, 0..=n);
                let (rl, rn) = self.layout(n + 1, 0..=n + 1);
                self.total_map(n, &cl, &rl, rn, cn)
            })
            .collect::<Result<_>>()?;
        (0..=up_to)
            .map(|n| {
                let inn = if n == 0 { SparseMat::zeros(maps[0].ncols(), 0) } else { maps[n - 1].clone() };
                Ok(subquotient(f, &inn, &maps[n], n)?.dim())
            })
            .collect()
    }

    /// A total-degree `n` diagonal is exact when every `E_∞` cell on it is.
    pub fn diagonal_safe(&self, n: usize) -> bool {
        n < self.pmax && n < self.qmax
    }

    /// Dense vector in cell `(p,q)` of the lead of `x`.
    pub fn lead_dense(&self, e: &PageEntry<F>, k: usize) -> Vec<F::E> {
        svec_to_dense(&self.field, &e.representatives[k], self.dim(e.p as isize, e.q as isize))
    }
}

#[derive(Clone, Debug)]
pub struct PageEntry<F: Field> {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub dim: usize,
    /// Exact for the untruncated double complex.
    pub safe: bool,
    /// Leads of cocycle extensions, in cell coordinates.
    pub representatives: Vec<SVec<F::E>>,
    pub boundaries: Vec<SVec<F::E>>,
    extensions: Vec<SVec<F::E>>,
    layout: Vec<(isize, usize, usize)>,
    pub coords: HomologyCoords<F>,
}

#[derive(Clone, Debug)]
pub struct PageTable<F: Field> {
    pub field: F,
    pub filtration: Filtration,
    pub r: usize,
    pub pmax: usize,
    pub qmax: usize,
    pub entries: BTreeMap<(usize, usize), PageEntry<F>>,
    /// `d_r` from `(p,q)` to `(p+r, q−r+1)` in representative coordinates.
    pub differentials: BTreeMap<(usize, usize), SparseMat<F::E>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellSummary {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub safe: bool,
}

impl<F: Field> PageTable<F> {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.entries.get(&(p, q)).map_or(0, |e| e.dim)
    }

    pub fn summary(&self) -> Vec<CellSummary> {
        self.entries.values().map(|e| CellSummary { i: e.p, j: e.q, dim: e.dim, safe: e.safe }).collect()
    }

    /// `d_r ∘ d_r = 0` wherever both maps exist.
    pub fn check_square_zero(&self) -> Result<()> {
        for (&(p, q), d) in &self.differentials {
            let t = (p + self.r, q + 1 - self.r);
            if let Some(d2) = self.differentials.get(&t) {
                if !d2.matmul(&self.field, d)?.is_zero() {
                    return Err(Error::NotAComplex { degree: p + q });
                }
            }
        }
        Ok(())
    }

    /// `dim E_{r+1} = dim H(E_r, d_r)` at every cell.
    pub fn check_next(&self, next: &PageTable<F>) -> Result<()> {
        let f = &self.field;
        let out_rank = |p: usize, q: usize| self.differentials.get(&(p, q)).map_or(0, |d| rank(f, d));
        for &(p, q) in self.entries.keys() {
            let incoming = if p >= self.r && q + self.r >= 1 { out_rank(p - self.r, q + self.r - 1) } else { 0 };
            let Some(expect) = self.dim(p, q).checked_sub(out_rank(p, q) + incoming) else {
                return Err(Error::Validation(format!("page {} at ({p}, {q}): differential ranks exceed the dimension", self.r)));
            };
            if next.dim(p, q) != expect {
                return Err(Error::Validation(format!(
                    "page {} at ({p}, {q}) has dim {} but the homology of page {} has dim {expect}",
                    next.r,
                    next.dim(p, q),
                    self.r
                )));
            }
        }
        Ok(())
    }
}
