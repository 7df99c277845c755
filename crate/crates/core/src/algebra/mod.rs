//! Finite-dimensional algebras, finite groups, actions and equivariant
//! bimodules, each with exhaustive axiom checks.

pub mod action;
pub mod bimodule;
pub mod extension;
pub mod group;

pub use action::GroupAction;
pub use bimodule::EquivariantBimodule;
pub use extension::CqExtension;
pub use group::FinGroup;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::sparse::{axpy_svec, normalize_svec, SVec, SparseMat};
use crate::exactla::Field;

/// Collected axiom failures. Empty means everything checked out.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.failures.extend(other.failures);
    }

    pub fn into_result(self, what: &str) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::Validation(format!("{what}: {}", self.failures.join("; "))))
        }
    }
}

/// A finite-dimensional unital algebra given by structure constants on a
/// basis.
#[derive(Clone, Debug)]
pub struct FinAlgebra<F: Field> {
    pub field: F,
    pub labels: Vec<String>,
    mult: Vec<SVec<F::E>>,
    pub unit: SVec<F::E>,
    /// Degree (a group element index) of each basis vector.
    pub grading: Option<Vec<usize>>,
}

impl<F: Field> FinAlgebra<F> {
    /// `products[i][j]` holds the coordinates of `b_i * b_j`.
    pub fn new(field: &F, labels: Vec<String>, products: Vec<Vec<SVec<F::E>>>, unit: SVec<F::E>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structural("the zero-dimensional algebra is not allowed".into()));
        }
        if products.len() != n || products.iter().any(|r| r.len() != n) {
            return Err(Error::Structural(format!("structure constants must form a {n}x{n} table")));
        }
        let mut mult = Vec::with_capacity(n * n);
        for row in products {
            for v in row {
                if v.iter().any(|(k, _)| *k >= n) {
                    return Err(Error::Structural("structure constant index out of range".into()));
                }
                mult.push(normalize_svec(field, v));
            }
        }
        if unit.iter().any(|(k, _)| *k >= n) {
            return Err(Error::Structural("unit coordinate out of range".into()));
        }
        let unit = normalize_svec(field, unit);
        Ok(FinAlgebra { field: field.clone(), labels, mult, unit, grading: None })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: &F) -> Self {
        let one = field.one();
        FinAlgebra::new(field, vec!["1".into()], vec![vec![vec![(0, one.clone())]]], vec![(0, one)]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &SVec<F::E> {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[(usize, F::E)], y: &[(usize, F::E)]) -> SVec<F::E> {
        let f = &self.field;
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = f.mul(a, b);
                for (k, c) in self.product(*i, *j) {
                    acc.push((*k, f.mul(&ab, c)));
                }
            }
        }
        normalize_svec(f, acc)
    }

    /// Index of the basis vector equal to the unit, if any.
    pub fn unit_index(&self) -> Option<usize> {
        match self.unit.as_slice() {
            [(i, x)] if self.field.is_one(x) => Some(*i),
            _ => None,
        }
    }

    pub fn basis_vector(&self, i: usize) -> SVec<F::E> {
        vec![(i, self.field.one())]
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_matrix(&self, a: &[(usize, F::E)]) -> SparseMat<F::E> {
        let cols = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        SparseMat::from_columns(self.dim(), cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_matrix(&self, a: &[(usize, F::E)]) -> SparseMat<F::E> {
        let cols = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        SparseMat::from_columns(self.dim(), cols)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Check associativity on every basis triple and the two unit laws.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let left = self.mul(ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), self.product(j, k));
                    if left != right {
                        rep.fail(format!("associativity fails on ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
            }
        }
        for i in 0..n {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b {
                rep.fail(format!("unit is not a left identity on {}", self.labels[i]));
            }
            if self.mul(&b, &self.unit) != b {
                rep.fail(format!("unit is not a right identity on {}", self.labels[i]));
            }
        }
        rep
    }

    /// Attach a grading by elements of `group`.
    pub fn with_grading(mut self, group: &FinGroup, degrees: Vec<usize>) -> Result<Self> {
        if degrees.len() != self.dim() || degrees.iter().any(|&d| d >= group.order()) {
            return Err(Error::Structural("grading must assign a group element to every basis vector".into()));
        }
        self.grading = Some(degrees);
        self.validate_grading(group).into_result("grading")?;
        Ok(self)
    }

    /// Every product of basis vectors must be supported in the product degree.
    pub fn validate_grading(&self, group: &FinGroup) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let Some(deg) = &self.grading else {
            rep.fail("algebra carries no grading");
            return rep;
        };
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let d = group.mul(deg[i], deg[j]);
                if self.product(i, j).iter().any(|(k, _)| deg[*k] != d) {
                    rep.fail(format!("product {}*{} leaves degree {}", self.labels[i], self.labels[j], group.labels[d]));
                }
            }
        }
        if self.unit.iter().any(|(k, _)| deg[*k] != group.identity) {
            rep.fail("unit is not homogeneous of trivial degree");
        }
        rep
    }

    /// Whether `B_α B_β = 0` for all `α, β` outside `h`.
    pub fn is_singular_grading(&self, h: &[usize]) -> Result<bool> {
        let deg = self.grading.as_ref().ok_or_else(|| Error::Contract("algebra carries no grading".into()))?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !h.contains(&deg[i]) && !h.contains(&deg[j]) && !self.product(i, j).is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `Σ c_k b_k` for a coefficient list of basis indices.
    pub fn combine(&self, terms: &[(usize, F::E)]) -> SVec<F::E> {
        normalize_svec(&self.field, terms.to_vec())
    }

    pub fn add(&self, x: &[(usize, F::E)], y: &[(usize, F::E)]) -> SVec<F::E> {
        axpy_svec(&self.field, x, &self.field.one(), y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    pub(crate) fn dual_numbers(f: &Fp) -> FinAlgebra<Fp> {
        let prods = vec![vec![vec![(0, 1)], vec![(1, 1)]], vec![vec![(1, 1)], vec![]]];
        FinAlgebra::new(f, vec!["1".into(), "x".into()], prods, vec![(0, 1)]).unwrap()
    }

    #[test]
    fn dual_numbers_pass() {
        let f = Fp::new(2).unwrap();
        assert!(dual_numbers(&f).validate().passed());
    }

    #[test]
    fn broken_associativity_is_named() {
        let f = Fp::new(3).unwrap();
        // a*a = b, a*b = 0, b*a = a: (a a) a = a but a (a a) = 0.
        let one = |k: usize| vec![(k, 1u32)];
        let prods = vec![vec![one(0), one(1), one(2)], vec![one(1), one(2), vec![]], vec![one(2), one(1), vec![]]];
        let a = FinAlgebra::new(&f, vec!["1".into(), "a".into(), "b".into()], prods, vec![(0, 1)]).unwrap();
        let rep = a.validate();
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|m| m.contains("(a, a, a)")));
    }

    #[test]
    fn zero_dimensional_rejected() {
        let f = Fp::new(2).unwrap();
        assert!(FinAlgebra::new(&f, vec![], vec![], vec![]).is_err());
        assert!(FinAlgebra::ground(&f).validate().passed());
    }
}
