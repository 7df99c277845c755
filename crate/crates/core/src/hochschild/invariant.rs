//! The invariant subcomplex `C(A,M)^G` and the map `Θ` from its cohomology
//! to the invariants of `HH(A,M)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{FinGroup, GroupAction};
use crate::error::{Error, Result};
use crate::exactla::sparse::{svec_to_dense, SparseMat};
use crate::exactla::{kernel_image, rank, subquotient, Field, HomologyCoords, SubquotientBasis, Subspace};
use crate::hochschild::complex::{diff_svec, HochschildComplex};
use crate::hochschild::model::CochainModel;

#[derive(Clone, Debug, Serialize)]
pub struct InvariantComparison<E> {
    pub degree: usize,
    pub dim_hh: usize,
    /// `dim HH^n(A,M)^G`.
    pub dim_hh_g: usize,
    /// `dim HH^n(C(A,M)^G)`.
    pub dim_hh_gup: usize,
    /// `Θ` in the representative bases: `dim_hh × dim_hh_gup`.
    #[serde(skip)]
    pub theta: SparseMat<E>,
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

/// Fixed vectors of every generator, as a subspace of `C^n`.
pub fn invariant_cochains<F: Field>(model: &CochainModel<F>, group: &FinGroup, n: usize) -> Result<Subspace<F::E>> {
    let f = &model.field;
    let d = model.dim(n)?;
    let minus = f.neg(&f.one());
    let mut stacked = SparseMat::zeros(0, d);
    for g in group.generators() {
        let a = model.action_matrix(group, g, n)?.axpy(f, &minus, &SparseMat::identity(f, d))?;
        stacked = stacked.vstack(&a)?;
    }
    Ok(Subspace::kernel(f, &stacked))
}

/// Compare `HH^n(A,M)^G` with the cohomology of the invariant subcomplex for
/// `n = 0..=up_to`.
pub fn invariant_comparison<F: Field>(model: &CochainModel<F>, group: &FinGroup, up_to: usize) -> Result<Vec<InvariantComparison<F::E>>> {
    let f = &model.field;
    let cx = HochschildComplex::new(model, up_to)?;
    let inv: Vec<Subspace<F::E>> = (0..=up_to + 1).into_par_iter().map(|n| invariant_cochains(model, group, n)).collect::<Result<_>>()?;
    let dg: Vec<SparseMat<F::E>> =
        (0..=up_to).into_par_iter().map(|n| inv[n].restrict(f, &cx.deltas[n], &inv[n + 1])).collect::<Result<_>>()?;
    let gens = group.generators();
    (0..=up_to)
        .into_par_iter()
        .map(|n| {
            let sq = cx.slice(n)?;
            let hc = HomologyCoords::from_basis(f, &sq)?;
            let h = sq.dim();
            // Action on HH^n in representative coordinates, minus identity.
            let mut fix = SparseMat::zeros(0, h);
            for &g in &gens {
                let a = model.action_matrix(group, g, n)?;
                let cols = sq
                    .representatives
                    .iter()
                    .map(|z| hc.coords(&diff_svec(f, &a.mul_svec(f, z), z)).expect("action preserves cocycles"))
                    .collect();
                fix = fix.vstack(&SparseMat::from_columns(h, cols))?;
            }
            let dim_hh_g = kernel_image(f, &fix).kernel.len();
            let inn = if n == 0 { SparseMat::zeros(inv[0].dim(), 0) } else { dg[n - 1].clone() };
            let sqg = subquotient(f, &inn, &dg[n], n)?;
            let cols = sqg
                .representatives
                .iter()
                .map(|r| hc.coords(&inv[n].embed(f, &svec_to_dense(f, r, inv[n].dim()))).expect("invariant cocycle"))
                .collect();
            let theta = SparseMat::from_columns(h, cols);
            let image_dim = rank(f, &theta);
            Ok(InvariantComparison {
                degree: n,
                dim_hh: h,
                dim_hh_g,
                dim_hh_gup: sqg.dim(),
                image_dim,
                kernel_dim: sqg.dim() - image_dim,
                cokernel_dim: dim_hh_g - image_dim,
                theta,
            })
        })
        .collect()
}

/// `HH^n(A,M)` as a `kG`-module, in the coordinates of the chosen
/// representatives.
pub fn cohomology_action<F: Field>(
    model: &CochainModel<F>,
    group: &FinGroup,
    n: usize,
) -> Result<(SubquotientBasis<F::E>, GroupAction<F>)> {
    let f = &model.field;
    let cx = HochschildComplex::new(model, n)?;
    let sq = cx.slice(n)?;
    let hc = HomologyCoords::from_basis(f, &sq)?;
    let h = sq.dim();
    let mats = (0..group.order())
        .map(|g| {
            let a = model.action_matrix(group, g, n)?;
            let cols = sq
                .representatives
                .iter()
                .map(|z| hc.coords(&a.mul_svec(f, z)).ok_or_else(|| Error::Contract("action does not preserve cocycles".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(SparseMat::from_columns(h, cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((sq, GroupAction { dim: h, mats }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::fixtures::{self, Instance};
    use crate::hochschild::model::{ModelKind, ModelOptions};

    fn model(inst: &Instance<Fp>, force: Option<ModelKind>) -> CochainModel<Fp> {
        let m = inst.regular().unwrap();
        let opts = ModelOptions { a_action: Some(inst.action.clone()), force, ..Default::default() };
        CochainModel::new(&inst.algebra, &m, opts).unwrap()
    }

    fn summary(cs: &[InvariantComparison<u32>]) -> Vec<(usize, usize, usize, usize, usize)> {
        cs.iter().map(|c| (c.dim_hh, c.dim_hh_g, c.dim_hh_gup, c.kernel_dim, c.cokernel_dim)).collect()
    }

    #[test]
    fn trivial_group_gives_identity() {
        let f = Fp::new(2).unwrap();
        let mut inst = fixtures::dual_numbers_trivial(&f);
        inst.group = FinGroup::trivial();
        inst.action = crate::algebra::GroupAction::trivial(&f, &inst.group, 2);
        let cs = invariant_comparison(&model(&inst, None), &inst.group, 3).unwrap();
        for c in &cs {
            assert_eq!(c.theta, SparseMat::identity(&f, c.dim_hh));
        }
    }

    #[test]
    fn coprime_order_gives_bijection() {
        let f = Fp::new(3).unwrap();
        for inst in [fixtures::swap(&f), fixtures::dual_numbers_sign(&f)] {
            for c in invariant_comparison(&model(&inst, None), &inst.group, 3).unwrap() {
                assert_eq!((c.kernel_dim, c.cokernel_dim), (0, 0), "{} degree {}", inst.name, c.degree);
                assert_eq!(c.dim_hh_g, c.dim_hh_gup);
            }
        }
    }

    #[test]
    fn quiver_regression() {
        let f = Fp::new(2).unwrap();
        let inst = fixtures::quiver(&f);
        let reduced = model(&inst, None);
        assert_eq!(reduced.kind, ModelKind::Relative);
        let cs = invariant_comparison(&reduced, &inst.group, 3).unwrap();
        let full = invariant_comparison(&model(&inst, Some(ModelKind::Full)), &inst.group, 2).unwrap();
        assert_eq!(summary(&cs)[..3], summary(&full)[..]);
        for c in &cs {
            assert_eq!(c.image_dim + c.kernel_dim, c.dim_hh_gup);
            assert_eq!(c.dim_hh_g - c.image_dim, c.cokernel_dim);
        }
        // (dim HH, dim HH^G, dim HH^{G↑}, dim Ker Θ, dim Coker Θ) per degree.
        assert_eq!(summary(&cs), vec![(5, 3, 3, 0, 0), (4, 2, 3, 1, 0), (4, 3, 3, 1, 1), (5, 3, 4, 1, 0)]);
    }
}
