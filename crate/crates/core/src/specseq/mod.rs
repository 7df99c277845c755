//! The double complex of a smash product, its two spectral sequences, the
//! page product, and the direct comparison with Hochschild cohomology of
//! the smash algebra.

pub mod grid;
pub mod oracle;
pub mod pages;
pub mod product;

pub use grid::{build_double_complex, DoubleComplexGrid, GroupModel, Window};
pub use oracle::{convergence, direct_oracle, ConvergenceRow};
pub use pages::{CellSummary, FilteredComplex, Filtration, PageEntry, PageTable};
pub use product::{grid_cell, page_product, PageElement};
