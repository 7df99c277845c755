//! Bimodules over a finite-dimensional algebra carrying a compatible group
//! action, optionally with an internal multiplication.

use crate::algebra::{FinAlgebra, FinGroup, GroupAction, ValidationReport};
use crate::error::{Error, Result};
use crate::exactla::sparse::{normalize_svec, SVec, SparseMat};
use crate::exactla::Field;

#[derive(Clone, Debug)]
pub struct EquivariantBimodule<F: Field> {
    pub labels: Vec<String>,
    base_dim: usize,
    /// `left[a * dim + x] = b_a · m_x`
    left: Vec<SVec<F::E>>,
    /// `right[x * base_dim + a] = m_x · b_a`
    right: Vec<SVec<F::E>>,
    pub action: GroupAction<F>,
    mult: Option<Vec<SVec<F::E>>>,
    pub unit: Option<SVec<F::E>>,
}

impl<F: Field> EquivariantBimodule<F> {
    /// `left[a][x]` is `b_a · m_x` and `right[x][a]` is `m_x · b_a`.
    pub fn new(
        f: &F,
        labels: Vec<String>,
        base_dim: usize,
        left: Vec<Vec<SVec<F::E>>>,
        right: Vec<Vec<SVec<F::E>>>,
        action: GroupAction<F>,
    ) -> Result<Self> {
        let n = labels.len();
        if left.len() != base_dim || left.iter().any(|r| r.len() != n) {
            return Err(Error::Structural("left action table has the wrong shape".into()));
        }
        if right.len() != n || right.iter().any(|r| r.len() != base_dim) {
            return Err(Error::Structural("right action table has the wrong shape".into()));
        }
        if action.dim != n {
            return Err(Error::Structural("group action dimension differs from the module dimension".into()));
        }
        let flat = |t: Vec<Vec<SVec<F::E>>>| -> Result<Vec<SVec<F::E>>> {
            let mut out = Vec::new();
            for row in t {
                for v in row {
                    if v.iter().any(|(k, _)| *k >= n) {
                        return Err(Error::Structural("module coordinate out of range".into()));
                    }
                    out.push(normalize_svec(f, v));
                }
            }
            Ok(out)
        };
        Ok(EquivariantBimodule { labels, base_dim, left: flat(left)?, right: flat(right)?, action, mult: None, unit: None })
    }

    /// Attach an algebra structure: `products[x][y] = m_x m_y`.
    pub fn with_multiplication(mut self, f: &F, products: Vec<Vec<SVec<F::E>>>, unit: SVec<F::E>) -> Result<Self> {
        let n = self.dim();
        if products.len() != n || products.iter().any(|r| r.len() != n) {
            return Err(Error::Structural("module multiplication table has the wrong shape".into()));
        }
        self.mult = Some(products.into_iter().flatten().map(|v| normalize_svec(f, v)).collect());
        self.unit = Some(normalize_svec(f, unit));
        Ok(self)
    }

    /// `A` as a bimodule over itself with the given action, as an algebra.
    pub fn regular(alg: &FinAlgebra<F>, action: GroupAction<F>) -> Result<Self> {
        let n = alg.dim();
        let left = (0..n).map(|a| (0..n).map(|x| alg.product(a, x).clone()).collect()).collect();
        let right = (0..n).map(|x| (0..n).map(|a| alg.product(x, a).clone()).collect()).collect();
        let prods = (0..n).map(|x| (0..n).map(|y| alg.product(x, y).clone()).collect()).collect();
        Self::new(&alg.field, alg.labels.clone(), n, left, right, action)?.with_multiplication(&alg.field, prods, alg.unit.clone())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn is_algebra(&self) -> bool {
        self.mult.is_some()
    }

    pub fn left_basis(&self, a: usize, x: usize) -> &SVec<F::E> {
        &self.left[a * self.dim() + x]
    }

    pub fn right_basis(&self, x: usize, a: usize) -> &SVec<F::E> {
        &self.right[x * self.base_dim + a]
    }

    pub fn mul_basis(&self, x: usize, y: usize) -> Option<&SVec<F::E>> {
        let n = self.dim();
        self.mult.as_ref().map(|m| &m[x * n + y])
    }

    fn bilinear<'a>(f: &F, x: &[(usize, F::E)], y: &[(usize, F::E)], table: impl Fn(usize, usize) -> &'a SVec<F::E>) -> SVec<F::E> {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = f.mul(a, b);
                for (k, c) in table(*i, *j) {
                    acc.push((*k, f.mul(&ab, c)));
                }
            }
        }
        normalize_svec(f, acc)
    }

    /// `a · x` for `a ∈ A`, `x ∈ M`.
    pub fn act_left(&self, f: &F, a: &[(usize, F::E)], x: &[(usize, F::E)]) -> SVec<F::E> {
        Self::bilinear(f, a, x, |i, j| self.left_basis(i, j))
    }

    /// `x · a`.
    pub fn act_right(&self, f: &F, x: &[(usize, F::E)], a: &[(usize, F::E)]) -> SVec<F::E> {
        Self::bilinear(f, x, a, |i, j| self.right_basis(i, j))
    }

    /// Internal product; contract error if `M` carries none.
    pub fn mul(&self, f: &F, x: &[(usize, F::E)], y: &[(usize, F::E)]) -> Result<SVec<F::E>> {
        if self.mult.is_none() {
            return Err(Error::Contract("module carries no multiplication".into()));
        }
        Ok(Self::bilinear(f, x, y, |i, j| self.mul_basis(i, j).unwrap()))
    }

    /// Matrix of `x ↦ b_a x`.
    pub fn left_matrix(&self, a: usize) -> SparseMat<F::E> {
        SparseMat::from_columns(self.dim(), (0..self.dim()).map(|x| self.left_basis(a, x).clone()).collect())
    }

    /// Matrix of `x ↦ x b_a`.
    pub fn right_matrix(&self, a: usize) -> SparseMat<F::E> {
        SparseMat::from_columns(self.dim(), (0..self.dim()).map(|x| self.right_basis(x, a).clone()).collect())
    }

    /// The internal multiplication as an algebra.
    pub fn as_algebra(&self, f: &F) -> Result<FinAlgebra<F>> {
        let n = self.dim();
        if self.mult.is_none() {
            return Err(Error::Contract("module carries no multiplication".into()));
        }
        let prods = (0..n).map(|x| (0..n).map(|y| self.mul_basis(x, y).unwrap().clone()).collect()).collect();
        FinAlgebra::new(f, self.labels.clone(), prods, self.unit.clone().unwrap_or_default())
    }

    /// Bimodule axioms, compatibility with the group action and, if present,
    /// the axioms of the internal multiplication.
    pub fn validate(&self, f: &F, alg: &FinAlgebra<F>, group: &FinGroup, alg_action: &GroupAction<F>) -> ValidationReport {
        let mut rep = self.action.validate_homomorphism(f, group);
        if alg.dim() != self.base_dim {
            rep.fail("module is over an algebra of a different dimension");
            return rep;
        }
        let n = self.dim();
        let m = |x: usize| vec![(x, f.one())];
        let b = |a: usize| vec![(a, f.one())];
        for x in 0..n {
            if self.act_left(f, &alg.unit, &m(x)) != m(x) || self.act_right(f, &m(x), &alg.unit) != m(x) {
                rep.fail(format!("unit of the algebra does not act trivially on {}", self.labels[x]));
            }
            for a in 0..alg.dim() {
                for c in 0..alg.dim() {
                    let ac = alg.product(a, c);
                    if self.act_left(f, ac, &m(x)) != self.act_left(f, &b(a), self.left_basis(c, x)) {
                        rep.fail(format!("(ab)x != a(bx) for ({}, {}, {})", alg.labels[a], alg.labels[c], self.labels[x]));
                    }
                    if self.act_right(f, &m(x), ac) != self.act_right(f, self.right_basis(x, a), &b(c)) {
                        rep.fail(format!("x(ab) != (xa)b for ({}, {}, {})", self.labels[x], alg.labels[a], alg.labels[c]));
                    }
                    let l = self.act_right(f, self.left_basis(a, x), &b(c));
                    let r = self.act_left(f, &b(a), self.right_basis(x, c));
                    if l != r {
                        rep.fail(format!("(ax)b != a(xb) for ({}, {}, {})", alg.labels[a], self.labels[x], alg.labels[c]));
                    }
                }
            }
        }
        for g in 0..group.order() {
            for a in 0..alg.dim() {
                let ga = alg_action.apply_basis(g, a);
                for x in 0..n {
                    let gx = self.action.apply_basis(g, x);
                    if self.action.apply(f, g, self.left_basis(a, x)) != self.act_left(f, ga, gx) {
                        rep.fail(format!("action of {} not compatible with {}·{}", group.labels[g], alg.labels[a], self.labels[x]));
                    }
                    if self.action.apply(f, g, self.right_basis(x, a)) != self.act_right(f, gx, ga) {
                        rep.fail(format!("action of {} not compatible with {}·{}", group.labels[g], self.labels[x], alg.labels[a]));
                    }
                }
            }
        }
        if self.mult.is_some() {
            rep.merge(self.validate_multiplication(f, alg, group));
        }
        rep
    }

    fn validate_multiplication(&self, f: &F, alg: &FinAlgebra<F>, group: &FinGroup) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let Ok(malg) = self.as_algebra(f) else {
            rep.fail("module multiplication is malformed");
            return rep;
        };
        for msg in malg.validate().failures {
            rep.fail(format!("module algebra: {msg}"));
        }
        let unit = self.unit.clone().unwrap_or_default();
        let n = self.dim();
        for g in 0..group.order() {
            if self.action.apply(f, g, &unit) != unit {
                rep.fail(format!("{} does not fix the unit of the module algebra", group.labels[g]));
            }
            for x in 0..n {
                for y in 0..n {
                    let lhs = self.action.apply(f, g, self.mul_basis(x, y).unwrap());
                    let rhs = malg.mul(self.action.apply_basis(g, x), self.action.apply_basis(g, y));
                    if lhs != rhs {
                        rep.fail(format!("{} is not multiplicative on ({}, {})", group.labels[g], self.labels[x], self.labels[y]));
                    }
                }
            }
        }
        for a in 0..alg.dim() {
            let a1 = self.act_left(f, &[(a, f.one())], &unit);
            let one_a = self.act_right(f, &unit, &[(a, f.one())]);
            for x in 0..n {
                let xv = vec![(x, f.one())];
                if self.left_basis(a, x) != &malg.mul(&a1, &xv) {
                    rep.fail(format!("left action of {} is not multiplication by its image", alg.labels[a]));
                }
                if self.right_basis(x, a) != &malg.mul(&xv, &one_a) {
                    rep.fail(format!("right action of {} is not multiplication by its image", alg.labels[a]));
                }
            }
        }
        rep
    }
}
