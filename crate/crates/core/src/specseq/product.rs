//! The product `⌣_B` on pages, computed on leading parts of representatives.

use crate::error::{Error, Result};
use crate::exactla::sparse::{dense_to_svec, SVec};
use crate::exactla::Field;
use crate::specseq::grid::DoubleComplexGrid;
use crate::specseq::pages::{Filtration, PageTable};

/// A class on a page, in the representative basis of its cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageElement<E> {
    pub p: usize,
    pub q: usize,
    pub coords: SVec<E>,
}

/// Grid cell `(a, g)` of the filtration cell `(p, q)`.
pub fn grid_cell(filtration: Filtration, p: usize, q: usize) -> (usize, usize) {
    match filtration {
        Filtration::I => (q, p),
        Filtration::II => (p, q),
    }
}

impl<F: Field> PageTable<F> {
    /// The class of a cell vector, which must lie in the leading part of `Z_r`.
    pub fn class_of(&self, p: usize, q: usize, v: &[F::E]) -> Result<PageElement<F::E>> {
        let e = self.entries.get(&(p, q)).ok_or_else(|| Error::Window(format!("cell ({p}, {q}) is outside the page")))?;
        let coords = e
            .coords
            .coords(&dense_to_svec(&self.field, v))
            .ok_or_else(|| Error::Contract(format!("vector does not define a class on page {} at ({p}, {q})", self.r)))?;
        Ok(PageElement { p, q, coords })
    }

    /// A representative cell vector of a class.
    pub fn representative(&self, x: &PageElement<F::E>, cell_dim: usize) -> Vec<F::E> {
        let f = &self.field;
        let e = &self.entries[&(x.p, x.q)];
        let mut acc = vec![f.zero(); cell_dim];
        for (k, c) in &x.coords {
            for (i, v) in &e.representatives[*k] {
                acc[*i] = f.add(&acc[*i], &f.mul(c, v));
            }
        }
        acc
    }

    pub fn basis_element(&self, p: usize, q: usize, k: usize) -> PageElement<F::E> {
        PageElement { p, q, coords: vec![(k, self.field.one())] }
    }

    /// `d_r x`.
    pub fn differential(&self, x: &PageElement<F::E>) -> Option<PageElement<F::E>> {
        let d = self.differentials.get(&(x.p, x.q))?;
        let coords = d.mul_svec(&self.field, &x.coords);
        Some(PageElement { p: x.p + self.r, q: x.q + 1 - self.r, coords })
    }
}

/// `x ⌣_B y` on a page. The product of cochain extensions has leading part
/// the product of leading parts, so it suffices to multiply representatives.
pub fn page_product<F: Field>(
    grid: &DoubleComplexGrid<F>,
    page: &PageTable<F>,
    x: &PageElement<F::E>,
    y: &PageElement<F::E>,
) -> Result<PageElement<F::E>> {
    let (p, q) = (x.p + y.p, x.q + y.q);
    if p > page.pmax || q > page.qmax {
        return Err(Error::Window(format!("product lands in ({p}, {q}), outside the window")));
    }
    let (a1, g1) = grid_cell(page.filtration, x.p, x.q);
    let (a2, g2) = grid_cell(page.filtration, y.p, y.q);
    let vx = page.representative(x, grid.dims[a1][g1]);
    let vy = page.representative(y, grid.dims[a2][g2]);
    let prod = grid.cell_product(a1, g1, &vx, a2, g2, &vy)?;
    page.class_of(p, q, &prod)
}

/// Dense cell vector of a class.
pub fn to_cell<F: Field>(grid: &DoubleComplexGrid<F>, page: &PageTable<F>, x: &PageElement<F::E>) -> Vec<F::E> {
    let (a, g) = grid_cell(page.filtration, x.p, x.q);
    page.representative(x, grid.dims[a][g])
}
