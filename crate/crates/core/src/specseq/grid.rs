//! The double complex `Hom_{A^eG}(Bar(A) ⊗ Q, M)`. Cells are indexed
//! `(a, g)` with `a` the Hochschild degree and `g` the degree in `Q`; a cell
//! holds `Hom_{kG}(Q_g, C^a(A,M))` in the reduced coordinates of the
//! resolution (`C^a(A,M)^H` for the periodic one).

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{CqExtension, EquivariantBimodule, FinAlgebra, FinGroup, GroupAction};
use crate::error::{Error, Result};
use crate::exactla::sparse::{axpy_vec, dense_to_svec, svec_to_dense, SparseMat};
use crate::exactla::Field;
use crate::groupcoh::{kron, normalized_bar_resolution, periodic_resolution, CoefficientModule, KGResolution, ResolutionKind};
use crate::hochschild::{CochainModel, Guard, ModelOptions};

/// Which resolution of `k` over `kG` the grid is built from.
#[derive(Clone, Debug)]
pub enum GroupModel {
    Periodic(CqExtension),
    Bar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    /// Largest Hochschild degree.
    pub i_max: usize,
    /// Largest group degree.
    pub j_max: usize,
}

#[derive(Debug)]
pub struct DoubleComplexGrid<F: Field> {
    pub model: CochainModel<F>,
    pub group: FinGroup,
    pub res: KGResolution<F>,
    pub window: Window,
    /// `C^a(A,M)` as a `kG`-module, with its `H`-invariants.
    pub modules: Vec<CoefficientModule<F>>,
    /// `dims[a][g]`.
    pub dims: Vec<Vec<usize>>,
    /// `dh[a][g]: (a,g) → (a+1,g)` for `a < i_max`.
    pub dh: Vec<Vec<SparseMat<F::E>>>,
    /// `dv[a][g]: (a,g) → (a,g+1)` for `g < j_max`, including the sign `(−1)^a`.
    pub dv: Vec<Vec<SparseMat<F::E>>>,
}

/// Builds the grid on the window; `action` is the action of `G` on `A`.
pub fn build_double_complex<F: Field>(
    a: &FinAlgebra<F>,
    group: &FinGroup,
    action: &GroupAction<F>,
    m: &EquivariantBimodule<F>,
    qmodel: &GroupModel,
    window: Window,
    guard: &Guard,
) -> Result<DoubleComplexGrid<F>> {
    let f = &a.field;
    let opts = ModelOptions { a_action: Some(action.clone()), force: None, guard: *guard };
    let model = CochainModel::new(a, m, opts)?;
    let res = match qmodel {
        GroupModel::Periodic(ext) => periodic_resolution(f, group, ext, window.j_max)?,
        GroupModel::Bar => normalized_bar_resolution(f, group, window.j_max, guard)?,
    };
    let modules: Vec<CoefficientModule<F>> = (0..=window.i_max)
        .map(|deg| {
            let dim = model.dim(deg)?;
            guard.check(&format!("cochains C^{deg}"), dim, dim, (dim * group.order()) as u64, std::mem::size_of::<F::E>())?;
            let mats = (0..group.order()).into_par_iter().map(|x| model.action_matrix(group, x, deg)).collect::<Result<Vec<_>>>()?;
            Ok(CoefficientModule::for_resolution(&res, GroupAction { dim, mats }))
        })
        .collect::<Result<_>>()?;
    let mut dims = vec![vec![0; window.j_max + 1]; window.i_max + 1];
    for (deg, row) in dims.iter_mut().enumerate() {
        for (g, d) in row.iter_mut().enumerate() {
            *d = res.cochain_dim(&modules[deg], g);
            guard.check(&format!("cell ({deg}, {g})"), *d, *d, *d as u64 * 4, std::mem::size_of::<F::E>())?;
        }
    }
    let dh = (0..window.i_max)
        .into_par_iter()
        .map(|deg| {
            let delta = model.differential(deg)?;
            (0..=window.j_max)
                .map(|g| match res.kind {
                    ResolutionKind::Periodic => modules[deg].h_invariants.restrict(f, &delta, &modules[deg + 1].h_invariants),
                    _ => Ok(kron(f, &SparseMat::identity(f, res.generators(g).len()), &delta)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dv = (0..=window.i_max)
        .into_par_iter()
        .map(|deg| {
            let s = f.sign(deg % 2 == 1);
            (0..window.j_max).map(|g| Ok(res.cochain_differential(&modules[deg], g)?.scale(f, &s))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DoubleComplexGrid { model, group: group.clone(), res, window, modules, dims, dh, dv })
}

impl<F: Field> DoubleComplexGrid<F> {
    pub fn field(&self) -> &F {
        &self.model.field
    }

    /// `(δ^h)² = 0`, `(δ^v)² = 0` and `δ^hδ^v + δ^vδ^h = 0` on the window.
    pub fn validate(&self) -> Result<()> {
        let f = self.field();
        let w = self.window;
        for a in 0..=w.i_max {
            for g in 0..=w.j_max {
                if a + 1 < w.i_max && !self.dh[a + 1][g].matmul(f, &self.dh[a][g])?.is_zero() {
                    return Err(Error::NotAComplex { degree: a + g });
                }
                if g + 1 < w.j_max && !self.dv[a][g + 1].matmul(f, &self.dv[a][g])?.is_zero() {
                    return Err(Error::NotAComplex { degree: a + g });
                }
                if a < w.i_max && g < w.j_max {
                    let x = self.dv[a + 1][g].matmul(f, &self.dh[a][g])?;
                    let y = self.dh[a][g + 1].matmul(f, &self.dv[a][g])?;
                    if !x.add(f, &y)?.is_zero() {
                        return Err(Error::NotAComplex { degree: a + g });
                    }
                }
            }
        }
        Ok(())
    }

    /// `f ⌣_B g = μ_M (f ⊗ g) Δ_{P⊗Q}` for `f` in cell `(a1,g1)` and `g` in
    /// cell `(a2,g2)`; the shuffle of `P⊗Q⊗P⊗Q` contributes `(−1)^{a2·g1}`.
    pub fn cell_product(&self, a1: usize, g1: usize, x: &[F::E], a2: usize, g2: usize, y: &[F::E]) -> Result<Vec<F::E>> {
        let f = self.field();
        let (a, n) = (a1 + a2, g1 + g2);
        if a > self.window.i_max || n > self.window.j_max {
            return Err(Error::Window(format!("product lands in cell ({a}, {n}), outside the window")));
        }
        let fm = self.res.expand(&self.modules[a1], g1, x)?;
        let gm = self.res.expand(&self.modules[a2], g2, y)?;
        let (d1, d2, d) = (self.modules[a1].action.dim, self.modules[a2].action.dim, self.modules[a].action.dim);
        let dq = self.res.dims[g2];
        let sign = f.sign(a2 * g1 % 2 == 1);
        let mut cols = vec![Vec::new(); self.res.dims[n]];
        for gen in self.res.generators(n) {
            let mut acc = vec![f.zero(); d];
            for (t, c) in self.res.delta[n][g1].col(gen) {
                let (u, v) = (t / dq, t % dq);
                if fm.col(u).is_empty() || gm.col(v).is_empty() {
                    continue;
                }
                let prod = self.model.cup(a1, &svec_to_dense(f, fm.col(u), d1), a2, &svec_to_dense(f, gm.col(v), d2))?;
                axpy_vec(f, &mut acc, &f.mul(c, &sign), &prod);
            }
            cols[gen] = dense_to_svec(f, &acc);
        }
        let map = SparseMat::from_columns(d, cols);
        Ok(self.res.restrict(&self.modules[a], n, &map))
    }

    /// The cochain of cell `(0, g)` taking the generator of `Q_g` to `1_M`.
    /// For `g = 0` this is the unit of the page algebra; for even `g` in the
    /// periodic model it represents the `g/2`-th power of the periodicity
    /// class.
    pub fn unit_cell(&self, g: usize) -> Result<Vec<F::E>> {
        if g > 0 && self.res.kind != ResolutionKind::Periodic {
            return Err(Error::Contract("shifted units exist only in the periodic model".into()));
        }
        if g > self.window.j_max {
            return Err(Error::Window(format!("group degree {g} is outside the window")));
        }
        let f = self.field();
        let unit = dense_to_svec(f, &self.model.unit_cochain()?);
        let d = self.modules[0].action.dim;
        let mut cols = vec![Vec::new(); self.res.dims[g]];
        for gen in self.res.generators(g) {
            cols[gen] = unit.clone();
        }
        Ok(self.res.restrict(&self.modules[0], g, &SparseMat::from_columns(d, cols)))
    }
}
