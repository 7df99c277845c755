//! Linear group actions, completed from generator images.

use std::collections::VecDeque;

use crate::algebra::{FinAlgebra, FinGroup, ValidationReport};
use crate::error::{Error, Result};
use crate::exactla::sparse::{SVec, SparseMat};
use crate::exactla::Field;

/// One matrix per group element, indexed like the group.
#[derive(Clone, Debug)]
pub struct GroupAction<F: Field> {
    pub dim: usize,
    pub mats: Vec<SparseMat<F::E>>,
}

impl<F: Field> GroupAction<F> {
    pub fn trivial(f: &F, group: &FinGroup, dim: usize) -> Self {
        GroupAction { dim, mats: vec![SparseMat::identity(f, dim); group.order()] }
    }

    /// Complete an action from the images of some generators. Redundant
    /// relations are cross-checked.
    pub fn from_generators(f: &F, group: &FinGroup, dim: usize, gens: &[(usize, SparseMat<F::E>)]) -> Result<Self> {
        for (g, m) in gens {
            if *g >= group.order() || m.rows() != dim || m.ncols() != dim {
                return Err(Error::Structural(format!("generator image for element {g} has the wrong shape")));
            }
        }
        let mut mats: Vec<Option<SparseMat<F::E>>> = vec![None; group.order()];
        mats[group.identity] = Some(SparseMat::identity(f, dim));
        let mut queue = VecDeque::from([group.identity]);
        while let Some(x) = queue.pop_front() {
            for (g, m) in gens {
                let y = group.mul(x, *g);
                let my = mats[x].as_ref().unwrap().matmul(f, m)?;
                match &mats[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::Validation(format!(
                            "generator images are not compatible with the group law at {}",
                            group.labels[y]
                        )));
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let mats: Option<Vec<_>> = mats.into_iter().collect();
        let mats = mats.ok_or_else(|| Error::Structural("action generators do not generate the group".into()))?;
        Ok(GroupAction { dim, mats })
    }

    pub fn apply(&self, f: &F, alpha: usize, v: &[(usize, F::E)]) -> SVec<F::E> {
        self.mats[alpha].mul_svec(f, v)
    }

    pub fn apply_basis(&self, alpha: usize, i: usize) -> &[(usize, F::E)] {
        self.mats[alpha].col(i)
    }

    /// `α ↦ mats[α]` is a homomorphism.
    pub fn validate_homomorphism(&self, f: &F, group: &FinGroup) -> ValidationReport {
        let mut rep = ValidationReport::default();
        if self.mats.len() != group.order() {
            rep.fail("action does not cover every group element");
            return rep;
        }
        if self.mats[group.identity] != SparseMat::identity(f, self.dim) {
            rep.fail("identity element does not act trivially");
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = self.mats[a].matmul(f, &self.mats[b]).expect("square matrices");
                if ab != self.mats[group.mul(a, b)] {
                    rep.fail(format!("action is not multiplicative on ({}, {})", group.labels[a], group.labels[b]));
                }
            }
        }
        rep
    }

    /// Every element acts by an algebra automorphism.
    pub fn validate_on_algebra(&self, f: &F, group: &FinGroup, alg: &FinAlgebra<F>) -> ValidationReport {
        let mut rep = self.validate_homomorphism(f, group);
        if self.dim != alg.dim() {
            rep.fail("action dimension differs from the algebra dimension");
            return rep;
        }
        for a in 0..group.order() {
            if self.apply(f, a, &alg.unit) != alg.unit {
                rep.fail(format!("unit not preserved by {}", group.labels[a]));
            }
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let lhs = self.apply(f, a, alg.product(i, j));
                    let rhs = alg.mul(self.apply_basis(a, i), self.apply_basis(a, j));
                    if lhs != rhs {
                        rep.fail(format!("{} does not preserve the product {}*{}", group.labels[a], alg.labels[i], alg.labels[j]));
                    }
                }
            }
        }
        rep
    }

    /// Subspace fixed by every element of `subgroup`, as a kernel basis.
    pub fn invariants(&self, f: &F, subgroup: &[usize]) -> Vec<SVec<F::E>> {
        let minus = f.neg(&f.one());
        let mut stacked = SparseMat::zeros(0, self.dim);
        for &h in subgroup {
            let d = self.mats[h].axpy(f, &minus, &SparseMat::identity(f, self.dim)).expect("square");
            stacked = stacked.vstack(&d).expect("same width");
        }
        crate::exactla::kernel_image(f, &stacked).kernel
    }
}

/// Matrix of a basis permutation with signs: `b_i ↦ sign_i b_{perm_i}`.
pub fn signed_permutation<F: Field>(f: &F, perm: &[(usize, bool)]) -> Result<SparseMat<F::E>> {
    let n = perm.len();
    let cols: Vec<SVec<F::E>> = perm.iter().map(|&(j, neg)| vec![(j, f.sign(neg))]).collect();
    if perm.iter().any(|&(j, _)| j >= n) {
        return Err(Error::Structural("permutation image out of range".into()));
    }
    let mut seen = vec![false; n];
    for &(j, _) in perm {
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::Structural("basis map is not a permutation".into()));
        }
    }
    Ok(SparseMat::from_columns(n, cols))
}
