//! Hochschild cochains: coboundary matrices, cohomology, cup and circle
//! products, the invariant subcomplex and the comparison map from its
//! cohomology to invariant cohomology.

pub mod complex;
pub mod invariant;
pub mod model;
pub mod products;

pub use complex::{hh_dims, hochschild_cohomology, hochschild_differential, CohomologySlice, HochschildComplex};
pub use invariant::{cohomology_action, invariant_cochains, invariant_comparison, InvariantComparison};
pub use model::{CochainModel, DegreeIndex, Guard, ModelKind, ModelOptions};
pub use products::{circle_product, cup_product, verify_homotopy_identity, CochainMatrix, HomotopyReport};
