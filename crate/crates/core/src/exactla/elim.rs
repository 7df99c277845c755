//! Right-looking sparse Gaussian elimination with Markowitz pivoting.
//!
//! Rows are eliminated in place. Pivots are chosen among the sparsest few
//! columns by the Markowitz cost `(r-1)(c-1)`, ties broken by lowest column
//! then lowest row. Once the active part is denser than a quarter of its
//! bounding box the remaining rows are finished with dense elimination.

use std::collections::BTreeSet;

use crate::exactla::field::Field;
use crate::exactla::sparse::{axpy_svec, SVec, SparseMat};

/// Fraction of fill above which the active submatrix is handled densely.
pub const DENSE_THRESHOLD: f64 = 0.25;
/// Largest dense block (in entries) the elimination will allocate.
pub const DENSE_MAX_ENTRIES: usize = 1 << 24;
/// Number of lowest-count columns examined for each pivot.
const MARKOWITZ_COLUMNS: usize = 4;

/// Result of eliminating a row list.
#[derive(Clone, Debug)]
pub struct Echelonized<E> {
    pub ncols: usize,
    /// Pivot columns in pivot order.
    pub pivot_cols: Vec<usize>,
    /// Original row index of each pivot.
    pub pivot_rows: Vec<usize>,
    /// Pivot rows scaled to a leading one. Row `k` is supported on its pivot
    /// column and on columns that were not pivots before step `k`.
    pub urows: Vec<SVec<E>>,
    /// Rows left after elimination; supported on non-pivotable columns only.
    pub residual: Vec<(usize, SVec<E>)>,
}

impl<E: Clone> Echelonized<E> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Eliminate `rows` (each a sparse row over `ncols` columns). Columns with
/// index `>= pivotable` are never used as pivots.
pub fn eliminate<F: Field>(f: &F, rows: Vec<SVec<F::E>>, ncols: usize, pivotable: usize) -> Echelonized<F::E> {
    let mut st = State::new(f, rows, ncols, pivotable);
    st.run();
    st.finish()
}

/// Rank of a matrix.
pub fn rank<F: Field>(f: &F, m: &SparseMat<F::E>) -> usize {
    if m.nnz() == 0 {
        return 0;
    }
    // Eliminate over whichever side is shorter.
    let (rows, ncols) =
        if m.rows() <= m.ncols() { (m.transpose().columns().to_vec(), m.ncols()) } else { (m.columns().to_vec(), m.rows()) };
    eliminate(f, rows, ncols, ncols).rank()
}

/// Reduce the pivot rows so that each is supported on its own pivot column and
/// on non-pivot columns only.
pub fn back_substitute<F: Field>(f: &F, e: &mut Echelonized<F::E>) {
    let mut pos = vec![usize::MAX; e.ncols];
    for (k, &c) in e.pivot_cols.iter().enumerate() {
        pos[c] = k;
    }
    for k in (0..e.urows.len()).rev() {
        let mut row = std::mem::take(&mut e.urows[k]);
        loop {
            let hit = row.iter().find(|(c, _)| pos[*c] != usize::MAX && pos[*c] != k).map(|(c, x)| (pos[*c], f.neg(x)));
            match hit {
                Some((j, factor)) => row = axpy_svec(f, &row, &factor, &e.urows[j]),
                None => break,
            }
        }
        e.urows[k] = row;
    }
}

struct State<'a, F: Field> {
    f: &'a F,
    ncols: usize,
    pivotable: usize,
    rows: Vec<Option<SVec<F::E>>>,
    col_rows: Vec<BTreeSet<usize>>,
    by_count: BTreeSet<(usize, usize)>,
    active_nnz: usize,
    active_rows: usize,
    pivot_cols: Vec<usize>,
    pivot_rows: Vec<usize>,
    urows: Vec<SVec<F::E>>,
}

impl<'a, F: Field> State<'a, F> {
    fn new(f: &'a F, rows: Vec<SVec<F::E>>, ncols: usize, pivotable: usize) -> Self {
        let mut col_rows = vec![BTreeSet::new(); ncols];
        let mut active_nnz = 0;
        let mut active_rows = 0;
        let rows: Vec<Option<SVec<F::E>>> = rows.into_iter().map(|r| if r.is_empty() { None } else { Some(r) }).collect();
        for (i, r) in rows.iter().enumerate() {
            if let Some(r) = r {
                active_rows += 1;
                active_nnz += r.len();
                for (c, _) in r {
                    col_rows[*c].insert(i);
                }
            }
        }
        let by_count = (0..pivotable.min(ncols)).filter(|&c| !col_rows[c].is_empty()).map(|c| (col_rows[c].len(), c)).collect();
        State {
            f,
            ncols,
            pivotable,
            rows,
            col_rows,
            by_count,
            active_nnz,
            active_rows,
            pivot_cols: Vec::new(),
            pivot_rows: Vec::new(),
            urows: Vec::new(),
        }
    }

    fn set_col_membership(&mut self, c: usize, row: usize, present: bool) {
        let before = self.col_rows[c].len();
        let changed = if present { self.col_rows[c].insert(row) } else { self.col_rows[c].remove(&row) };
        if !changed || c >= self.pivotable {
            return;
        }
        if before > 0 {
            self.by_count.remove(&(before, c));
        }
        let after = self.col_rows[c].len();
        if after > 0 {
            self.by_count.insert((after, c));
        }
    }

    fn run(&mut self) {
        while let Some((pr, pc)) = self.choose_pivot() {
            if self.should_go_dense() {
                self.dense_finish();
                return;
            }
            self.pivot(pr, pc);
        }
    }

    fn should_go_dense(&self) -> bool {
        let cols = self.by_count.len();
        let box_size = self.active_rows * cols;
        box_size > 64 && box_size <= DENSE_MAX_ENTRIES && (self.active_nnz as f64) > DENSE_THRESHOLD * box_size as f64
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for &(count, c) in self.by_count.iter().take(MARKOWITZ_COLUMNS) {
            for &r in &self.col_rows[c] {
                let len = self.rows[r].as_ref().map_or(0, |x| x.len());
                let cost = (len - 1) * (count - 1);
                let cand = (cost, c, r);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, c, r)| (r, c))
    }

    fn remove_row(&mut self, r: usize) -> SVec<F::E> {
        let row = self.rows[r].take().expect("active row");
        for (c, _) in &row {
            self.set_col_membership(*c, r, false);
        }
        self.active_nnz -= row.len();
        self.active_rows -= 1;
        row
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let f = self.f;
        let row = self.remove_row(pr);
        let lead = row.iter().find(|(c, _)| *c == pc).expect("pivot entry").1.clone();
        let inv = f.inv(&lead);
        let prow: SVec<F::E> = row.into_iter().map(|(c, x)| (c, f.mul(&x, &inv))).collect();
        let targets: Vec<usize> = self.col_rows[pc].iter().copied().collect();
        for r in targets {
            let old = self.rows[r].take().expect("active row");
            let factor = f.neg(&old.iter().find(|(c, _)| *c == pc).expect("entry").1);
            let new = axpy_svec(f, &old, &factor, &prow);
            self.active_nnz = self.active_nnz + new.len() - old.len();
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                if j == new.len() || (i < old.len() && old[i].0 < new[j].0) {
                    self.set_col_membership(old[i].0, r, false);
                    i += 1;
                } else if i == old.len() || new[j].0 < old[i].0 {
                    self.set_col_membership(new[j].0, r, true);
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
            if new.is_empty() {
                self.active_rows -= 1;
            } else {
                self.rows[r] = Some(new);
            }
        }
        self.pivot_cols.push(pc);
        self.pivot_rows.push(pr);
        self.urows.push(prow);
    }

    fn dense_finish(&mut self) {
        let f = self.f;
        let live: Vec<usize> = (0..self.rows.len()).filter(|&r| self.rows[r].is_some()).collect();
        let mut cols: Vec<usize> = (0..self.ncols).filter(|&c| !self.col_rows[c].is_empty()).collect();
        cols.sort_unstable();
        let mut cpos = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            cpos[c] = k;
        }
        let w = cols.len();
        let mut dense: Vec<(usize, Vec<F::E>)> = live
            .iter()
            .map(|&r| {
                let mut v = vec![f.zero(); w];
                for (c, x) in self.rows[r].take().unwrap() {
                    v[cpos[c]] = x;
                }
                (r, v)
            })
            .collect();
        let mut top = 0;
        for (k, &c) in cols.iter().enumerate() {
            if c >= self.pivotable || top == dense.len() {
                continue;
            }
            let Some(found) = (top..dense.len()).find(|&i| !f.is_zero(&dense[i].1[k])) else {
                continue;
            };
            dense.swap(top, found);
            let inv = f.inv(&dense[top].1[k]);
            for x in dense[top].1[k..].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let (head, tail) = dense.split_at_mut(top + 1);
            let prow = &head[top].1;
            for (_, row) in tail.iter_mut() {
                if f.is_zero(&row[k]) {
                    continue;
                }
                let factor = f.neg(&row[k]);
                for t in k..w {
                    if !f.is_zero(&prow[t]) {
                        row[t] = f.mul_add(&row[t], &factor, &prow[t]);
                    }
                }
            }
            let (r, v) = &dense[top];
            self.pivot_cols.push(c);
            self.pivot_rows.push(*r);
            self.urows.push(v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(t, x)| (cols[t], x.clone())).collect());
            top += 1;
        }
        for (r, v) in dense.into_iter().skip(top) {
            let sv: SVec<F::E> = v.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(t, x)| (cols[t], x)).collect();
            if !sv.is_empty() {
                self.rows[r] = Some(sv);
            }
        }
        for c in cols {
            self.col_rows[c].clear();
        }
        self.by_count.clear();
    }

    fn finish(self) -> Echelonized<F::E> {
        let residual = self.rows.into_iter().enumerate().filter_map(|(i, r)| r.map(|r| (i, r))).collect();
        Echelonized { ncols: self.ncols, pivot_cols: self.pivot_cols, pivot_rows: self.pivot_rows, urows: self.urows, residual }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Fp;

    fn dense_rank(f: &Fp, m: &[Vec<u32>]) -> usize {
        let mut m = m.to_vec();
        let (nr, nc) = (m.len(), m.first().map_or(0, |r| r.len()));
        let mut r = 0;
        for c in 0..nc {
            let Some(p) = (r..nr).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]);
            for i in 0..nr {
                if i != r && m[i][c] != 0 {
                    let fac = f.mul(&m[i][c], &inv);
                    for t in 0..nc {
                        let s = f.mul(&fac, &m[r][t]);
                        m[i][t] = f.sub(&m[i][t], &s);
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_matches_dense_reference() {
        let f = Fp::new(5).unwrap();
        let mut seed = 12345u64;
        for trial in 0..60 {
            let (nr, nc) = (1 + trial % 9, 1 + (trial * 7) % 11);
            let mut d = vec![vec![0u32; nc]; nr];
            let mut trip = Vec::new();
            for i in 0..nr {
                for j in 0..nc {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if (seed >> 33).is_multiple_of(3) {
                        let v = ((seed >> 40) % 5) as u32;
                        d[i][j] = v;
                        trip.push((i, j, v));
                    }
                }
            }
            let m = SparseMat::from_triplets(&f, nr, nc, trip).unwrap();
            assert_eq!(rank(&f, &m), dense_rank(&f, &d), "trial {trial}");
        }
    }

    #[test]
    fn back_substitution_yields_reduced_rows() {
        let f = Fp::new(7).unwrap();
        let rows = vec![vec![(0, 1), (1, 2), (2, 3)], vec![(1, 1), (2, 1)], vec![(0, 2), (2, 5)]];
        let mut e = eliminate(&f, rows, 3, 3);
        back_substitute(&f, &mut e);
        for (k, row) in e.urows.iter().enumerate() {
            for (c, _) in row {
                assert!(*c == e.pivot_cols[k] || !e.pivot_cols.contains(c));
            }
        }
    }
}
