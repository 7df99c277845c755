//! `(R, S)`-degeneration of `^I E` through powers of the periodicity class.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::groupcoh::ResolutionKind;
use crate::specseq::{DoubleComplexGrid, FilteredComplex, Filtration, PageTable};

#[derive(Clone, Debug, Serialize)]
pub struct PowerTest {
    pub m: usize,
    /// Whether the class of `û^m` in `^I E_R^{2m,0}` vanishes.
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RsDegeneration {
    pub page: usize,
    pub tests: Vec<PowerTest>,
    /// First `m` with `û^m = 0` on page `R`. `None` means no vanishing was
    /// found inside the window, which is not a proof of non-degeneration.
    pub first_vanishing: Option<usize>,
    /// Largest `m` whose cell was window-safe.
    pub tested_up_to: usize,
}

impl RsDegeneration {
    pub fn degenerated(&self) -> bool {
        self.first_vanishing.is_some()
    }
}

/// Tests `û^m · 1` in `^I E_R^{2m,0}` for `m = 1, 2, …` while the cell is
/// window-safe. Needs the periodic resolution, in which `û^m · 1` is the unit
/// of `M` placed in group degree `2m`.
pub fn check_rs_degeneration<F: Field>(grid: &DoubleComplexGrid<F>, page: usize) -> Result<RsDegeneration> {
    if grid.res.kind != ResolutionKind::Periodic {
        return Err(Error::Contract("degeneration test needs the periodic resolution".into()));
    }
    if page < 2 {
        return Err(Error::Contract("degeneration is defined from page 2 on".into()));
    }
    let table = FilteredComplex::new(grid, Filtration::I).page(page)?;
    rs_from_page(grid, &table)
}

/// As [`check_rs_degeneration`] on an already computed page.
pub fn rs_from_page<F: Field>(grid: &DoubleComplexGrid<F>, table: &PageTable<F>) -> Result<RsDegeneration> {
    let mut tests = Vec::new();
    let mut m = 1;
    while 2 * m <= table.pmax {
        let Some(e) = table.entries.get(&(2 * m, 0)) else { break };
        if !e.safe {
            break;
        }
        let v = grid.unit_cell(2 * m)?;
        let class = table.class_of(2 * m, 0, &v)?;
        tests.push(PowerTest { m, vanishes: class.coords.is_empty() });
        m += 1;
    }
    if tests.is_empty() {
        return Err(Error::Window(format!("cell (2, 0) of page {} is not window-safe; widen the group direction of the window", table.r)));
    }
    let first_vanishing = tests.iter().find(|t| t.vanishes).map(|t| t.m);
    Ok(RsDegeneration { page: table.r, tested_up_to: tests.len(), tests, first_vanishing })
}
