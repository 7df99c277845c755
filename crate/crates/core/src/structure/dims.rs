//! Comparison of `HH^*(AG,M)` with `HH^*(A,M)^G`, and the Hochschild
//! cohomology of the repetitive quotients `R_n`.

use serde::Serialize;

use crate::algebra::{CqExtension, EquivariantBimodule, FinAlgebra, FinGroup, GroupAction};
use crate::constructions::{build_repetitive_quotient, build_smash};
use crate::error::{Error, Result};
use crate::exactla::{subquotient, Field, SparseMat};
use crate::hochschild::{invariant_comparison, CochainModel, Guard, HochschildComplex, ModelOptions};
use crate::specseq::{build_double_complex, direct_oracle, FilteredComplex, Filtration, GroupModel, Window};
use crate::structure::certificate::{canonical_covering_certificate, find_certificate, CertificateOptions, Feasibility, Setting};
use crate::structure::degeneration::check_rs_degeneration;
use crate::structure::report::{structure_report, StructureContext};

#[derive(Clone, Debug, Serialize)]
pub struct DimsRow {
    pub n: usize,
    /// `dim HH^n(AG,M)` from the total complex.
    pub smash: usize,
    /// `dim HH^n(A,M)^G`.
    pub invariants: usize,
    pub oracle: Option<usize>,
    /// `smash ≥ invariants`, and `smash = oracle` when an oracle is given.
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsReport {
    pub rows: Vec<DimsRow>,
    /// Present when `M` is an algebra.
    pub certificate_feasible: Option<bool>,
    /// `û · 1 = 0` on page 3; present when `M` is an algebra.
    pub page3_vanishes: Option<bool>,
    pub equal_all: bool,
    pub equal_at_one: bool,
    /// The three conditions agree; `None` when `M` is not an algebra.
    pub equivalence_holds: Option<bool>,
}

impl DimsReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok) && self.equivalence_holds != Some(false)
    }
}

/// Per-degree comparison for `n ≤ up_to`, `1 ≤ up_to`. `oracle` gives
/// independent values of `dim HH^n(AG,M)`.
pub fn verify_dims<F: Field>(s: &Setting<'_, F>, up_to: usize, oracle: Option<&[usize]>, guard: &Guard) -> Result<DimsReport> {
    if up_to < 1 {
        return Err(Error::Window("the dimension comparison needs degrees up to at least 1".into()));
    }
    let w = (up_to + 1).max(3);
    let grid = build_double_complex(
        s.algebra,
        s.group,
        s.action,
        s.module,
        &GroupModel::Periodic(s.ext.clone()),
        Window { i_max: w, j_max: w },
        guard,
    )?;
    let total = FilteredComplex::new(&grid, Filtration::I).total_cohomology(up_to)?;
    let cmp = invariant_comparison(&grid.model, s.group, up_to)?;
    let rows: Vec<DimsRow> = (0..=up_to)
        .map(|n| {
            let o = oracle.and_then(|o| o.get(n).copied());
            DimsRow {
                n,
                smash: total[n],
                invariants: cmp[n].dim_hh_g,
                oracle: o,
                ok: total[n] >= cmp[n].dim_hh_g && o.is_none_or(|o| o == total[n]),
            }
        })
        .collect();
    let equal_all = rows.iter().all(|r| r.smash == r.invariants);
    let equal_at_one = rows[1].smash == rows[1].invariants;
    let (certificate_feasible, page3_vanishes, equivalence_holds) = if s.module.unit.is_some() {
        let feasible = find_certificate(s, &CertificateOptions::default())?.is_feasible();
        let rs = check_rs_degeneration(&grid, 3)?;
        let vanishes = rs.tests.first().is_some_and(|t| t.vanishes);
        let agree = feasible == vanishes && vanishes == equal_all && equal_all == equal_at_one;
        (Some(feasible), Some(vanishes), Some(agree))
    } else {
        (None, None, None)
    };
    Ok(DimsReport { rows, certificate_feasible, page3_vanishes, equal_all, equal_at_one, equivalence_holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct TrRow {
    pub i: usize,
    pub hh: usize,
    pub hh_invariant: usize,
    /// `dim (A_n)_i`.
    pub a: usize,
    /// `dim HH^i(TR)_0`.
    pub tr_degree_zero: usize,
    pub oracle: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrReport {
    pub n: usize,
    pub dim: usize,
    pub rows: Vec<TrRow>,
    /// `dim W_i` per degree; expected to vanish.
    pub w: Vec<usize>,
}

impl TrReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// `HH^i(B)_0` for `B` graded by `g`: the cohomology of the grading
/// preserving cochains.
fn degree_zero_dims<F: Field>(b: &FinAlgebra<F>, g: &FinGroup, degrees: &[usize], up_to: usize, guard: &Guard) -> Result<Vec<usize>> {
    let f = &b.field;
    let trivial = FinGroup::trivial();
    let m = EquivariantBimodule::regular(b, GroupAction::trivial(f, &trivial, b.dim()))?;
    let model = CochainModel::new(b, &m, ModelOptions { a_action: None, force: None, guard: *guard })?;
    let cx = HochschildComplex::new(&model, up_to + 1)?;
    let zero = (0..=up_to + 1).map(|n| model.degree_zero_coords(g, degrees, degrees, n)).collect::<Result<Vec<_>>>()?;
    let maps: Vec<SparseMat<F::E>> = (0..=up_to).map(|n| cx.deltas[n].submatrix(&zero[n + 1], &zero[n])).collect();
    (0..=up_to)
        .map(|n| {
            let inn = if n == 0 { SparseMat::zeros(zero[0].len(), 0) } else { maps[n - 1].clone() };
            Ok(subquotient(f, &inn, &maps[n], n)?.dim())
        })
        .collect()
}

/// Builds `R_n = TR#kC_n^*` with its Nakayama action and checks, for
/// `i ≤ up_to`, that `C_n` acts trivially on `HH^i(R_n)` and that both
/// `dim HH^i(R_n)` and `dim HH^i(TR)_0` equal `dim (A_n)_i + dim (A_n)_{i−1}`
/// with `A_n = Im Θ`.
pub fn verify_tr<F: Field>(r: &FinAlgebra<F>, n: usize, up_to: usize, guard: &Guard) -> Result<TrReport> {
    let f = &r.field;
    let p = f.characteristic();
    if p == 0 || !n.is_multiple_of(p as usize) {
        return Err(Error::Contract(format!("the characteristic {p} does not divide n = {n}")));
    }
    let rq = build_repetitive_quotient(r, n)?;
    let alg = rq.algebra();
    let group = rq.covering.group.clone();
    let mut q = 1;
    while n.is_multiple_of(q * p as usize) {
        q *= p as usize;
    }
    let h: Vec<usize> = (0..n).step_by(q).collect();
    let ext = CqExtension::new(&group, &h, 1 % n, p)?;
    let module = EquivariantBimodule::regular(alg, rq.action().clone())?;
    let s = Setting { algebra: alg, group: &group, action: rq.action(), module: &module, ext: &ext };
    let cert = match find_certificate(&s, &CertificateOptions::default())? {
        Feasibility::Feasible(c) => c,
        Feasibility::Infeasible { .. } => canonical_covering_certificate(&rq.covering, &ext)?,
    };
    let ctx = StructureContext::new(&s, &cert, up_to + 1, guard)?;
    let rep = structure_report(&ctx, up_to)?;
    let trivial = FinGroup::trivial();
    let smash = build_smash(alg, &trivial, &GroupAction::trivial(f, &trivial, alg.dim()))?;
    let oracle = direct_oracle(&smash, up_to, guard)?;
    // The grading of TR induced by reduction mod n.
    let degrees: Vec<usize> = rq.trivial_extension.degrees().into_iter().map(|d| d % n).collect();
    let tr0 = degree_zero_dims(&rq.trivial_extension.algebra, &group, &degrees, up_to, guard)?;
    let rows = rep
        .rows
        .iter()
        .map(|row| {
            let i = row.n;
            let expected = row.a + if i > 0 { rep.rows[i - 1].a } else { 0 };
            TrRow {
                i,
                hh: row.hh,
                hh_invariant: row.hh_g,
                a: row.a,
                tr_degree_zero: tr0[i],
                oracle: oracle[i],
                ok: row.hh == row.hh_g && row.hh == expected && tr0[i] == expected && oracle[i] == row.hh,
            }
        })
        .collect();
    Ok(TrReport { n, dim: alg.dim(), rows, w: rep.rows.iter().map(|r| r.w).collect() })
}
