//! Exact linear algebra over prime fields and the rationals.

pub mod echelon;
pub mod elim;
pub mod field;
pub mod sparse;
pub mod subspace;

pub use echelon::{Echelon, Reduced};
pub use elim::{back_substitute, eliminate, rank};
pub use field::{binomial, Field, FieldSpec, Fp, Rationals};
pub use sparse::{SVec, SparseMat};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use sparse::normalize_svec;

#[derive(Clone, Debug)]
pub struct KernelImage<E> {
    /// One vector per non-pivot column, in ascending column order.
    pub kernel: Vec<SVec<E>>,
    /// The columns of the matrix at pivot positions, ascending.
    pub image: Vec<SVec<E>>,
    pub image_cols: Vec<usize>,
    pub rank: usize,
}

pub fn kernel_image<F: Field>(f: &F, m: &SparseMat<F::E>) -> KernelImage<F::E> {
    let n = m.ncols();
    let rows = m.transpose().columns().to_vec();
    let mut e = eliminate(f, rows, n, n);
    back_substitute(f, &mut e);
    let mut is_pivot = vec![false; n];
    for &c in &e.pivot_cols {
        is_pivot[c] = true;
    }
    // Kernel vector for free column `j`: x_j = 1, x_{c_k} = -u_k[j].
    let mut kernel: Vec<SVec<F::E>> = (0..n).filter(|&j| !is_pivot[j]).map(|j| vec![(j, f.one())]).collect();
    let mut kpos = vec![usize::MAX; n];
    let mut t = 0;
    for (j, p) in is_pivot.iter().enumerate() {
        if !p {
            kpos[j] = t;
            t += 1;
        }
    }
    for (k, row) in e.urows.iter().enumerate() {
        let c = e.pivot_cols[k];
        for (j, x) in row {
            if *j != c {
                kernel[kpos[*j]].push((c, f.neg(x)));
            }
        }
    }
    let kernel = kernel.into_iter().map(|v| normalize_svec(f, v)).collect();
    let mut image_cols = e.pivot_cols.clone();
    image_cols.sort_unstable();
    let image = image_cols.iter().map(|&c| m.col(c).to_vec()).collect();
    KernelImage { kernel, image, image_cols, rank: e.rank() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve<E> {
    Found(Vec<E>),
    /// `y` with `y·m = 0` and `y·b ≠ 0`.
    Infeasible {
        certificate: Vec<E>,
    },
}

impl<E> Solve<E> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solve::Found(_))
    }
}

/// Solve `m·x = b`.
pub fn solve_linear<F: Field>(f: &F, m: &SparseMat<F::E>, b: &[F::E]) -> Result<Solve<F::E>> {
    if b.len() != m.rows() {
        return Err(Error::Structural(format!("right-hand side has length {} but the matrix has {} rows", b.len(), m.rows())));
    }
    let n = m.ncols();
    let mut rows = m.transpose().columns().to_vec();
    for (i, x) in b.iter().enumerate() {
        if !f.is_zero(x) {
            rows[i].push((n, x.clone()));
        }
    }
    let mut e = eliminate(f, rows, n + 1, n);
    if e.residual.iter().any(|(_, r)| !r.is_empty()) {
        return infeasibility_certificate(f, m, b).map(|certificate| Solve::Infeasible { certificate });
    }
    back_substitute(f, &mut e);
    let mut x = vec![f.zero(); n];
    for (k, row) in e.urows.iter().enumerate() {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == n) {
            x[e.pivot_cols[k]] = v.clone();
        }
    }
    Ok(Solve::Found(x))
}

fn infeasibility_certificate<F: Field>(f: &F, m: &SparseMat<F::E>, b: &[F::E]) -> Result<Vec<F::E>> {
    // Solve [mᵀ; bᵀ] y = e_last.
    let t = m.transpose();
    let cols = b
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut col = t.col(i).to_vec();
            if !f.is_zero(x) {
                col.push((m.ncols(), x.clone()));
            }
            col
        })
        .collect();
    let sys = SparseMat::from_columns(m.ncols() + 1, cols);
    let mut rhs = vec![f.zero(); m.ncols() + 1];
    rhs[m.ncols()] = f.one();
    match solve_linear(f, &sys, &rhs)? {
        Solve::Found(y) => Ok(y),
        Solve::Infeasible { .. } => Err(Error::Contract("inconsistent elimination while building a certificate".into())),
    }
}

#[derive(Clone, Debug)]
pub struct SubquotientBasis<E> {
    pub ambient_dim: usize,
    pub cycle_basis: Vec<SVec<E>>,
    pub boundary_basis: Vec<SVec<E>>,
    pub representatives: Vec<SVec<E>>,
}

impl<E> SubquotientBasis<E> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

/// Homology at the middle of `C --inn--> D --out--> E`. `degree` only labels
/// the error when the composite is nonzero.
pub fn subquotient<F: Field>(f: &F, inn: &SparseMat<F::E>, out: &SparseMat<F::E>, degree: usize) -> Result<SubquotientBasis<F::E>> {
    if inn.rows() != out.ncols() {
        return Err(Error::Structural(format!("incoming map has {} rows but outgoing map has {} columns", inn.rows(), out.ncols())));
    }
    if !out.matmul(f, inn)?.is_zero() {
        return Err(Error::NotAComplex { degree });
    }
    let z = kernel_image(f, out).kernel;
    let b = kernel_image(f, inn).image;
    let mut ech = Echelon::new(f, inn.rows());
    for v in &b {
        ech.insert(v, Vec::new());
    }
    let representatives = z.iter().filter(|v| ech.insert(v, Vec::new())).cloned().collect();
    Ok(SubquotientBasis { ambient_dim: inn.rows(), cycle_basis: z, boundary_basis: b, representatives })
}

/// Coordinates of cycles with respect to chosen homology representatives.
#[derive(Clone, Debug)]
pub struct HomologyCoords<F: Field> {
    ech: Echelon<F>,
    pub representatives: Vec<SVec<F::E>>,
}

impl<F: Field> HomologyCoords<F> {
    /// `boundaries` span the subspace divided out; `representatives` must be
    /// independent modulo it.
    pub fn new(f: &F, dim: usize, boundaries: &[SVec<F::E>], representatives: Vec<SVec<F::E>>) -> Result<Self> {
        let mut ech = Echelon::new(f, dim);
        for v in boundaries {
            ech.insert(v, Vec::new());
        }
        for (k, v) in representatives.iter().enumerate() {
            if !ech.insert(v, vec![(k, f.one())]) {
                return Err(Error::Contract(format!("representative {k} is dependent modulo boundaries")));
            }
        }
        Ok(HomologyCoords { ech, representatives })
    }

    pub fn from_basis(f: &F, sq: &SubquotientBasis<F::E>) -> Result<Self> {
        Self::new(f, sq.ambient_dim, &sq.boundary_basis, sq.representatives.clone())
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of `v` in the representative basis, or `None` if `v` is
    /// not in the span of boundaries and representatives.
    pub fn coords(&self, v: &[(usize, F::E)]) -> Option<SVec<F::E>> {
        let r = self.ech.reduce(v);
        r.residual.is_empty().then_some(r.combo)
    }
}
