//! Hochschild cohomology of the smash algebra computed directly, and the
//! comparison with both spectral sequences.

use serde::Serialize;

use crate::algebra::{EquivariantBimodule, FinGroup, GroupAction};
use crate::constructions::SmashAlgebra;
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::hochschild::{CochainModel, Guard, HochschildComplex, ModelOptions};
use crate::specseq::grid::DoubleComplexGrid;
use crate::specseq::pages::{FilteredComplex, Filtration};

/// `dim HH^n(AG, AG)` for `n ≤ up_to`, from the cochain complex of the smash
/// algebra alone.
pub fn direct_oracle<F: Field>(smash: &SmashAlgebra<F>, up_to: usize, guard: &Guard) -> Result<Vec<usize>> {
    let ag = &smash.algebra;
    let f = &ag.field;
    let trivial = FinGroup::trivial();
    let m = EquivariantBimodule::regular(ag, GroupAction::trivial(f, &trivial, ag.dim()))?;
    let opts = ModelOptions { a_action: None, force: None, guard: *guard };
    let hint = |e: Error| match e {
        Error::Resource { matrix, rows, cols, bytes, limit } => {
            Error::Resource { matrix: format!("{matrix} (direct oracle; try a smaller --up-to)"), rows, cols, bytes, limit }
        }
        other => other,
    };
    let model = CochainModel::new(ag, &m, opts).map_err(hint)?;
    let cx = HochschildComplex::new(&model, up_to).map_err(hint)?;
    (0..=up_to).map(|n| Ok(cx.slice(n)?.dim())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    /// `Σ_{p+q=n} dim ^I E_∞^{p,q}`.
    pub first: usize,
    /// `Σ_{p+q=n} dim ^II E_∞^{p,q}`.
    pub second: usize,
    /// Cohomology of the total complex.
    pub total: usize,
    pub oracle: Option<usize>,
    pub safe: bool,
    pub agree: bool,
}

/// Diagonal sums of both `E_∞` pages against the total complex and, if
/// given, the direct computation.
pub fn convergence<F: Field>(grid: &DoubleComplexGrid<F>, up_to: usize, oracle: Option<&[usize]>) -> Result<Vec<ConvergenceRow>> {
    let fi = FilteredComplex::new(grid, Filtration::I);
    let fii = FilteredComplex::new(grid, Filtration::II);
    let total = fi.total_cohomology(up_to)?;
    (0..=up_to)
        .map(|n| {
            let mut safe = true;
            let mut sums = [0, 0];
            for (k, fc) in [&fi, &fii].into_iter().enumerate() {
                for p in 0..=n.min(fc.pmax) {
                    if n - p > fc.qmax {
                        safe = false;
                        continue;
                    }
                    let e = fc.infinity(p, n - p)?;
                    safe &= e.safe;
                    sums[k] += e.dim;
                }
            }
            let oracle = oracle.and_then(|o| o.get(n).copied());
            let agree = sums[0] == total[n] && sums[1] == total[n] && oracle.is_none_or(|o| o == total[n]);
            Ok(ConvergenceRow { n, first: sums[0], second: sums[1], total: total[n], oracle, safe, agree })
        })
        .collect()
}
