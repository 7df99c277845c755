//! Decision procedures built on the spectral sequence: projectivity,
//! degeneration certificates, the decomposition of `HH^*(A,M)^G` and the
//! dimension comparisons.

pub mod certificate;
pub mod degeneration;
pub mod dims;
pub mod report;

#[cfg(test)]
mod tests;

pub use certificate::{
    canonical_covering_certificate, central_h_invariants, check_kg_projectivity, delta_power, delta_product_rule_failures,
    find_certificate, h_invariants, CertificateCheck, CertificateOptions, DegenerationCertificate, Feasibility, ProjectivityScope, Setting,
};
pub use degeneration::{check_rs_degeneration, rs_from_page, PowerTest, RsDegeneration};
pub use dims::{verify_dims, verify_tr, DimsReport, DimsRow, TrReport, TrRow};
pub use report::{filtration_report, structure_report, FiltrationReport, FiltrationRow, StructureContext, StructureReport, StructureRow};

use num_bigint::BigInt;

use crate::exactla::binomial;

/// `C(l,i)C(i,l−j−1) + C(l,i+1)C(i+1,l−j) + C(l,i)C(i,l−j) = C(l+1,i+1)C(i+1,l−j)`
/// with generalized binomials.
pub fn binomial_product_identity(i: i64, j: i64, l: i64) -> bool {
    let lhs = binomial(l, i) * binomial(i, l - j - 1) + binomial(l, i + 1) * binomial(i + 1, l - j) + binomial(l, i) * binomial(i, l - j);
    lhs == binomial(l + 1, i + 1) * binomial(i + 1, l - j)
}

/// `Σ_k C(l,k)C(n−l,s−k) = C(n,s)`.
pub fn vandermonde(n: i64, l: i64, s: i64) -> bool {
    let sum: BigInt = (0..=l.max(0)).map(|k| binomial(l, k) * binomial(n - l, s - k)).sum();
    sum == binomial(n, s)
}
