//! Incrementally built subspace in echelon form, optionally remembering how
//! each stored row is combined from labelled generators.

use std::collections::BTreeMap;

use crate::exactla::field::Field;
use crate::exactla::sparse::{axpy_svec, normalize_svec, SVec};

#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    f: F,
    dim: usize,
    rows: Vec<SVec<F::E>>,
    labels: Vec<SVec<F::E>>,
    pivot_row: BTreeMap<usize, usize>,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduced<E> {
    /// What is left after subtracting stored rows.
    pub residual: SVec<E>,
    /// Label combination of everything that was subtracted:
    /// `v = residual + sum(combo[j] * generator_j)`.
    pub combo: SVec<E>,
}

impl<F: Field> Echelon<F> {
    pub fn new(f: &F, dim: usize) -> Self {
        Echelon { f: f.clone(), dim, rows: Vec::new(), labels: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SVec<F::E>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn reduce(&self, v: &[(usize, F::E)]) -> Reduced<F::E> {
        let f = &self.f;
        let mut acc: BTreeMap<usize, F::E> = v.iter().cloned().collect();
        let mut combo: SVec<F::E> = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let r = self.pivot_row[&c];
            let factor = f.neg(&x);
            for (i, y) in &self.rows[r] {
                let e = acc.entry(*i).or_insert_with(|| f.zero());
                *e = f.mul_add(e, &factor, y);
                if f.is_zero(e) {
                    acc.remove(i);
                }
            }
            if !self.labels[r].is_empty() {
                combo = axpy_svec(f, &combo, &x, &self.labels[r]);
            }
            cursor = c + 1;
        }
        Reduced { residual: acc.into_iter().collect(), combo }
    }

    pub fn contains(&self, v: &[(usize, F::E)]) -> bool {
        self.reduce(v).residual.is_empty()
    }

    /// Insert `v` carrying `label` (use an empty label for unlabelled
    /// generators). Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[(usize, F::E)], label: SVec<F::E>) -> bool {
        self.insert_with_relation(v, label).is_none()
    }

    /// Like [`Echelon::insert`] but on dependence returns the label relation
    /// `label - combo`, which combines the generators to zero.
    pub fn insert_with_relation(&mut self, v: &[(usize, F::E)], label: SVec<F::E>) -> Option<SVec<F::E>> {
        let f = self.f.clone();
        let red = self.reduce(v);
        let minus_one = f.neg(&f.one());
        let lab = axpy_svec(&f, &label, &minus_one, &red.combo);
        if red.residual.is_empty() {
            return Some(lab);
        }
        let (lead, x) = red.residual[0].clone();
        let inv = f.inv(&x);
        let row: SVec<F::E> = red.residual.iter().map(|(i, y)| (*i, f.mul(y, &inv))).collect();
        let lab: SVec<F::E> = lab.iter().map(|(i, y)| (*i, f.mul(y, &inv))).collect();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        self.labels.push(normalize_svec(&f, lab));
        None
    }
}
