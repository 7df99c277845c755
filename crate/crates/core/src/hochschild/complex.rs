//! Coboundary matrices and cohomology slices.

use rayon::prelude::*;

use crate::algebra::{EquivariantBimodule, FinAlgebra, FinGroup};
use crate::error::{Error, Result};
use crate::exactla::sparse::{normalize_svec, SVec, SparseMat};
use crate::exactla::{subquotient, Field, HomologyCoords, SubquotientBasis};
use crate::hochschild::model::CochainModel;

/// Matrix of `δ^n: C^n(A,M) → C^{n+1}(A,M)` on the full cochain spaces.
/// Coordinate `(tuple, x)` of `C^n` has index `tuple * dim M + x`, tuples of
/// basis indices ordered lexicographically.
pub fn hochschild_differential<F: Field>(a: &FinAlgebra<F>, m: &EquivariantBimodule<F>, n: usize) -> Result<SparseMat<F::E>> {
    CochainModel::full(a, m)?.differential(n)
}

#[derive(Clone, Debug)]
pub struct CohomologySlice<E> {
    pub degree: usize,
    pub basis: SubquotientBasis<E>,
    /// Whether the class of each representative is fixed by the group.
    /// Empty when no action was supplied.
    pub g_invariant: Vec<bool>,
}

impl<E> CohomologySlice<E> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Coboundaries of a cochain model up to a fixed degree.
pub struct HochschildComplex<'a, F: Field> {
    pub model: &'a CochainModel<F>,
    /// `deltas[n]` is `δ^n` for `n ≤ top`.
    pub deltas: Vec<SparseMat<F::E>>,
}

impl<'a, F: Field> HochschildComplex<'a, F> {
    /// Build `δ^0, ..., δ^top`, degrees in parallel.
    pub fn new(model: &'a CochainModel<F>, top: usize) -> Result<Self> {
        for n in 0..=top + 1 {
            model.degree(n)?;
        }
        let deltas = (0..=top).into_par_iter().map(|n| model.differential(n)).collect::<Result<Vec<_>>>()?;
        Ok(HochschildComplex { model, deltas })
    }

    /// `δ^{n-1}`, the zero map into `C^0` when `n = 0`.
    pub fn incoming(&self, n: usize) -> Result<SparseMat<F::E>> {
        if n == 0 {
            Ok(SparseMat::zeros(self.model.dim(0)?, 0))
        } else {
            Ok(self.deltas[n - 1].clone())
        }
    }

    /// `δ^{n+1} δ^n = 0` for every stored pair.
    pub fn check_square_zero(&self) -> Result<()> {
        let f = &self.model.field;
        for n in 0..self.deltas.len().saturating_sub(1) {
            if !self.deltas[n + 1].matmul(f, &self.deltas[n])?.is_zero() {
                return Err(Error::NotAComplex { degree: n + 1 });
            }
        }
        Ok(())
    }

    pub fn slice(&self, n: usize) -> Result<SubquotientBasis<F::E>> {
        subquotient(&self.model.field, &self.incoming(n)?, &self.deltas[n], n)
    }
}

/// `HH^0, ..., HH^up_to`. When `group` is given, the model must carry an
/// action on `A` and every representative is flagged with whether its class
/// is fixed by all of `G`.
pub fn hochschild_cohomology<F: Field>(
    model: &CochainModel<F>,
    group: Option<&FinGroup>,
    up_to: usize,
) -> Result<Vec<CohomologySlice<F::E>>> {
    let cx = HochschildComplex::new(model, up_to)?;
    let f = &model.field;
    (0..=up_to)
        .into_par_iter()
        .map(|n| {
            let basis = cx.slice(n)?;
            let mut g_invariant = Vec::new();
            if let Some(g) = group {
                let hc = HomologyCoords::from_basis(f, &basis)?;
                let mats = g.generators().into_iter().map(|x| model.action_matrix(g, x, n)).collect::<Result<Vec<_>>>()?;
                for z in &basis.representatives {
                    let fixed = mats.iter().all(|a| {
                        let diff = diff_svec(f, &a.mul_svec(f, z), z);
                        hc.coords(&diff).is_some_and(|c| c.is_empty())
                    });
                    g_invariant.push(fixed);
                }
            }
            Ok(CohomologySlice { degree: n, basis, g_invariant })
        })
        .collect()
}

/// Dimensions of `HH^0(A,M), ..., HH^up_to(A,M)` in the smallest model.
pub fn hh_dims<F: Field>(a: &FinAlgebra<F>, m: &EquivariantBimodule<F>, up_to: usize) -> Result<Vec<usize>> {
    let model = CochainModel::auto(a, m)?;
    Ok(hochschild_cohomology(&model, None, up_to)?.iter().map(|s| s.dim()).collect())
}

pub(crate) fn diff_svec<F: Field>(f: &F, a: &[(usize, F::E)], b: &[(usize, F::E)]) -> SVec<F::E> {
    let mut v = a.to_vec();
    v.extend(b.iter().map(|(i, x)| (*i, f.neg(x))));
    normalize_svec(f, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAction;
    use crate::exactla::{kernel_image, rank, Fp};
    use crate::hochschild::model::{ModelKind, ModelOptions};

    fn dual_numbers(f: &Fp) -> FinAlgebra<Fp> {
        let prods = vec![vec![vec![(0, 1)], vec![(1, 1)]], vec![vec![(1, 1)], vec![]]];
        FinAlgebra::new(f, vec!["1".into(), "x".into()], prods, vec![(0, 1)]).unwrap()
    }

    fn regular(a: &FinAlgebra<Fp>) -> EquivariantBimodule<Fp> {
        let g = FinGroup::trivial();
        EquivariantBimodule::regular(a, GroupAction::trivial(&a.field, &g, a.dim())).unwrap()
    }

    /// Brute-force `δ^n` straight from the defining formula on all tuples.
    fn naive_delta(a: &FinAlgebra<Fp>, m: &EquivariantBimodule<Fp>, n: usize) -> Vec<Vec<u32>> {
        let f = &a.field;
        let (d, dm) = (a.dim(), m.dim());
        let cols = d.pow(n as u32) * dm;
        let rows = d.pow(n as u32 + 1) * dm;
        let mut mat = vec![vec![0u32; cols]; rows];
        let digits = |mut x: usize, len: usize| {
            let mut v = vec![0; len];
            for k in (0..len).rev() {
                v[k] = x % d;
                x /= d;
            }
            v
        };
        let index = |t: &[usize]| t.iter().fold(0, |acc, &i| acc * d + i);
        for r in 0..d.pow(n as u32 + 1) {
            let t = digits(r, n + 1);
            for y in 0..dm {
                let col = index(&t[1..]) * dm + y;
                for (x, c) in m.left_basis(t[0], y) {
                    mat[r * dm + x][col] = f.add(&mat[r * dm + x][col], c);
                }
                let col = index(&t[..n]) * dm + y;
                let sg = if (n + 1).is_multiple_of(2) { 1 } else { f.modulus() - 1 };
                for (x, c) in m.right_basis(y, t[n]) {
                    mat[r * dm + x][col] = f.mul_add(&mat[r * dm + x][col], &sg, c);
                }
            }
            for i in 0..n {
                let sg = if (i + 1) % 2 == 0 { 1 } else { f.modulus() - 1 };
                for (p, c) in a.product(t[i], t[i + 1]) {
                    let mut u = t[..i].to_vec();
                    u.push(*p);
                    u.extend_from_slice(&t[i + 2..]);
                    for x in 0..dm {
                        let col = index(&u) * dm + x;
                        mat[r * dm + x][col] = f.mul_add(&mat[r * dm + x][col], &sg, c);
                    }
                }
            }
        }
        mat
    }

    #[test]
    fn full_differential_matches_formula() {
        let f = Fp::new(3).unwrap();
        let a = dual_numbers(&f);
        let m = regular(&a);
        for n in 0..3 {
            let d = hochschild_differential(&a, &m, n).unwrap();
            assert_eq!(d.to_dense(&f), naive_delta(&a, &m, n));
        }
    }

    #[test]
    fn ground_field_has_zero_differential() {
        let f = Fp::new(5).unwrap();
        let k = FinAlgebra::ground(&f);
        let m = regular(&k);
        // Normalized cochains of k vanish above degree zero.
        let model = CochainModel::auto(&k, &m).unwrap();
        assert_eq!(model.kind, ModelKind::Normalized);
        for n in 0..4 {
            assert!(model.differential(n).unwrap().is_zero());
        }
        // The full bar complex of k alternates between zero and the identity.
        for n in 0..4 {
            let d = hochschild_differential(&k, &m, n).unwrap();
            assert_eq!(rank(&f, &d), n % 2);
        }
        assert_eq!(hh_dims(&k, &m, 4).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers_degree_zero() {
        // A is commutative, so every inner derivation vanishes and HH^0 = A.
        let f = Fp::new(2).unwrap();
        let a = dual_numbers(&f);
        let m = regular(&a);
        let d0 = hochschild_differential(&a, &m, 0).unwrap();
        assert_eq!((d0.rows(), d0.ncols()), (4, 2));
        assert_eq!(rank(&f, &d0), 0);
    }

    #[test]
    fn dual_numbers_char_two_regression() {
        // Over F_2, HH^n(k[x]/x²) has dimension 2 in every degree.
        let f = Fp::new(2).unwrap();
        let a = dual_numbers(&f);
        assert_eq!(hh_dims(&a, &regular(&a), 4).unwrap(), vec![2, 2, 2, 2, 2]);
    }

    #[test]
    fn models_agree_and_square_to_zero() {
        let f = Fp::new(3).unwrap();
        // k × k[x]/x² with idempotents e0, e1 and x = e1 x e1.
        let prods = vec![vec![vec![(0, 1)], vec![], vec![]], vec![vec![], vec![(1, 1)], vec![(2, 1)]], vec![vec![], vec![(2, 1)], vec![]]];
        let a = FinAlgebra::new(&f, vec!["e0".into(), "e1".into(), "x".into()], prods, vec![(0, 1), (1, 1)]).unwrap();
        let m = regular(&a);
        let mut dims = Vec::new();
        for kind in [ModelKind::Full, ModelKind::Relative] {
            let model = CochainModel::new(&a, &m, ModelOptions { force: Some(kind), ..Default::default() }).unwrap();
            let cx = HochschildComplex::new(&model, 3).unwrap();
            cx.check_square_zero().unwrap();
            dims.push((0..=3).map(|n| cx.slice(n).unwrap().dim()).collect::<Vec<_>>());
        }
        assert_eq!(dims[0], dims[1]);
        assert_eq!(dims[0][0], 3);
    }

    #[test]
    fn degree_zero_is_the_centralizer() {
        let f = Fp::new(2).unwrap();
        // Upper triangular 2x2 matrices: e11, e12, e22; centre is k.
        let prods = vec![vec![vec![(0, 1)], vec![(1, 1)], vec![]], vec![vec![], vec![], vec![(1, 1)]], vec![vec![], vec![], vec![(2, 1)]]];
        let a = FinAlgebra::new(&f, vec!["e11".into(), "e12".into(), "e22".into()], prods, vec![(0, 1), (2, 1)]).unwrap();
        let m = regular(&a);
        // Centralizer: x with b x = x b for every basis b.
        let mut stacked = SparseMat::zeros(0, 3);
        for b in 0..3 {
            let d = m.left_matrix(b).sub(&f, &m.right_matrix(b)).unwrap();
            stacked = stacked.vstack(&d).unwrap();
        }
        let centre = kernel_image(&f, &stacked).kernel.len();
        assert_eq!(hh_dims(&a, &m, 0).unwrap()[0], centre);
        assert_eq!(centre, 1);
    }
}
