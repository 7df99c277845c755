//! Cup and circle products on full cochains.

use crate::algebra::{EquivariantBimodule, FinAlgebra};
use crate::constructions::SmashAlgebra;
use crate::error::{Error, Result};
use crate::exactla::kernel_image;
use crate::exactla::sparse::SparseMat;
use crate::exactla::Field;
use crate::hochschild::complex::HochschildComplex;
use crate::hochschild::model::{CochainModel, ModelKind, ModelOptions};

/// A full cochain `A^{⊗n} → M` as a `dim M × dim A^n` matrix; column index
/// of a basis tuple is its lexicographic rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMatrix<E> {
    pub degree: usize,
    pub matrix: SparseMat<E>,
    /// Names the algebra and module the cochain belongs to.
    pub provenance: String,
}

impl<E: Clone + PartialEq + std::fmt::Debug> CochainMatrix<E> {
    pub fn new(degree: usize, matrix: SparseMat<E>, provenance: impl Into<String>) -> Self {
        CochainMatrix { degree, matrix, provenance: provenance.into() }
    }

    /// Coordinates in the full model: `tuple * dim M + x`.
    pub fn to_vector<F: Field<E = E>>(&self, f: &F) -> Vec<E> {
        let rows = self.matrix.rows();
        let mut v = vec![f.zero(); rows * self.matrix.ncols()];
        for (i, j, x) in self.matrix.entries() {
            v[j * rows + i] = x.clone();
        }
        v
    }

    pub fn from_vector<F: Field<E = E>>(f: &F, degree: usize, rows: usize, v: &[E], provenance: &str) -> Self {
        let cols = v.len().checked_div(rows).unwrap_or(0);
        let trip = v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(k, x)| (k % rows, k / rows, x.clone()));
        let matrix = SparseMat::from_triplets(f, rows, cols, trip).expect("in range");
        CochainMatrix::new(degree, matrix, provenance)
    }

    /// Value on the basis tuple with column index `col`.
    pub fn value(&self, col: usize) -> &[(usize, E)] {
        self.matrix.col(col)
    }
}

fn check_shape<F: Field>(a: &FinAlgebra<F>, m: &EquivariantBimodule<F>, c: &CochainMatrix<F::E>) -> Result<()> {
    let cols = a.dim().checked_pow(c.degree as u32);
    if c.matrix.rows() != m.dim() || cols != Some(c.matrix.ncols()) {
        return Err(Error::Structural(format!("cochain of degree {} has the wrong shape", c.degree)));
    }
    Ok(())
}

/// `(f ⌣ g)(a_1..a_{p+q}) = f(a_1..a_p) · g(a_{p+1}..a_{p+q})`.
pub fn cup_product<F: Field>(
    a: &FinAlgebra<F>,
    m: &EquivariantBimodule<F>,
    fc: &CochainMatrix<F::E>,
    gc: &CochainMatrix<F::E>,
) -> Result<CochainMatrix<F::E>> {
    if !m.is_algebra() {
        return Err(Error::Contract("cup product needs a module with a multiplication".into()));
    }
    check_shape(a, m, fc)?;
    check_shape(a, m, gc)?;
    let f = &a.field;
    let model = CochainModel::full(a, m)?;
    let v = model.cup(fc.degree, &fc.to_vector(f), gc.degree, &gc.to_vector(f))?;
    Ok(CochainMatrix::from_vector(f, fc.degree + gc.degree, m.dim(), &v, &fc.provenance))
}

/// Group element carrying every value of a cochain into `AG`, if the
/// cochain is supported in a single component `Aα`.
pub fn component_of<F: Field>(smash: &SmashAlgebra<F>, c: &CochainMatrix<F::E>) -> Option<Option<usize>> {
    let g = smash.group.order();
    let mut comp = None;
    for (i, _, _) in c.matrix.entries() {
        match comp {
            None => comp = Some(i % g),
            Some(al) if al != i % g => return None,
            _ => {}
        }
    }
    Some(comp)
}

/// Circle product `f ∘ g = Σ_{n=1}^{i} f ∘_n g` for `f` of degree `i` into
/// `Aα` and `g` of degree `j` into `Aβ`, both cochains of `A` with values in
/// `AG`:
///
/// `(f ∘_n g)(a_1..a_{i+j-1}) = (-1)^{n(j-1)} f(a_1..a_{n-1}, g(a_n..a_{n+j-1})β⁻¹, ᵝa_{n+j}, ..., ᵝa_{i+j-1}) β`.
pub fn circle_product<F: Field>(
    smash: &SmashAlgebra<F>,
    fc: &CochainMatrix<F::E>,
    gc: &CochainMatrix<F::E>,
    beta: usize,
) -> Result<CochainMatrix<F::E>> {
    let a = &smash.base;
    let fld = &a.field;
    let gord = smash.group.order();
    let (i, j) = (fc.degree, gc.degree);
    let dm = smash.algebra.dim();
    for c in [fc, gc] {
        if c.matrix.rows() != dm || a.dim().checked_pow(c.degree as u32) != Some(c.matrix.ncols()) {
            return Err(Error::Structural(format!("cochain of degree {} has the wrong shape", c.degree)));
        }
    }
    if component_of(smash, fc).is_none() {
        return Err(Error::Contract("f is not supported in a single component".into()));
    }
    match component_of(smash, gc) {
        None => return Err(Error::Contract("g is not supported in a single component".into())),
        Some(Some(b)) if b != beta => return Err(Error::Contract("g does not take values in the stated component".into())),
        _ => {}
    }
    if i == 0 {
        return Ok(CochainMatrix::new(j.saturating_sub(1), SparseMat::zeros(dm, a.dim().pow(j.saturating_sub(1) as u32)), &fc.provenance));
    }
    let d = a.dim();
    let deg = i + j - 1;
    let ncols = d.pow(deg as u32);
    let digits = |mut x: usize, len: usize| {
        let mut v = vec![0; len];
        for k in (0..len).rev() {
            v[k] = x % d;
            x /= d;
        }
        v
    };
    let index = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * d + x);
    let minus = fld.neg(&fld.one());
    let mut trip = Vec::new();
    for col in 0..ncols {
        let t = digits(col, deg);
        for n in 1..=i {
            // (-1)^{n(j-1)} has the parity of n(j+1).
            let sign = if (n * (j + 1)) % 2 == 1 { minus.clone() } else { fld.one() };
            // g(a_n..a_{n+j-1}) β⁻¹ as an element of A.
            let gval = gc.value(index(&t[n - 1..n - 1 + j]));
            let inner: Vec<(usize, F::E)> = gval.iter().map(|(x, c)| (x / gord, c.clone())).collect();
            // Expand f over the product of the argument expansions.
            let mut args: Vec<Vec<(usize, F::E)>> = t[..n - 1].iter().map(|&x| vec![(x, fld.one())]).collect();
            args.push(inner);
            for &x in &t[n - 1 + j..] {
                args.push(smash.action.apply_basis(beta, x).to_vec());
            }
            let mut partial: Vec<(usize, F::E)> = vec![(0, sign)];
            for arg in &args {
                let mut next = Vec::new();
                for (p, c) in &partial {
                    for (x, e) in arg {
                        next.push((p * d + x, fld.mul(c, e)));
                    }
                }
                partial = next;
            }
            for (u, c) in partial {
                for (x, v) in fc.value(u) {
                    // (b α) β = b (αβ)
                    let (b, al) = (x / gord, x % gord);
                    let row = b * gord + smash.group.mul(al, beta);
                    trip.push((row, col, fld.mul(&c, v)));
                }
            }
        }
    }
    let matrix = SparseMat::from_triplets(fld, dm, ncols, trip)?;
    Ok(CochainMatrix::new(deg, matrix, &fc.provenance))
}

/// Outcome of [`verify_homotopy_identity`].
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct HomotopyReport {
    pub checked: usize,
    /// `(i, j, α, β)` of failing pairs.
    pub failures: Vec<(usize, usize, usize, usize)>,
}

/// Cocycles of `C^n(A, Aα)` in the full model of `M = AG`.
fn component_cocycles<F: Field>(model: &CochainModel<F>, delta: &SparseMat<F::E>, gord: usize, alpha: usize) -> Vec<Vec<F::E>> {
    let f = &model.field;
    let dm = model.m.dim();
    let dim = delta.ncols();
    let keep: Vec<usize> = (0..dim).filter(|c| (c % dm) % gord == alpha).collect();
    let sub = delta.submatrix(&(0..delta.rows()).collect::<Vec<_>>(), &keep);
    kernel_image(f, &sub)
        .kernel
        .iter()
        .map(|v| {
            let mut out = vec![f.zero(); dim];
            for (i, x) in v {
                out[keep[*i]] = x.clone();
            }
            out
        })
        .collect()
}

/// `δ(f ∘ g) = −g ⌣ ^{β⁻¹}f + (−1)^{ij} f ⌣ g` for all pairs of basis
/// cocycles `f ∈ C^i(A, Aα)`, `g ∈ C^j(A, Aβ)` with `i, j ≤ max_degree`.
pub fn verify_homotopy_identity<F: Field>(smash: &SmashAlgebra<F>, max_degree: usize) -> Result<HomotopyReport> {
    let f = &smash.base.field;
    let g = &smash.group;
    let m = crate::constructions::smash_as_module(smash)?;
    let opts = ModelOptions { a_action: Some(smash.action.clone()), force: Some(ModelKind::Full), ..Default::default() };
    let model = CochainModel::new(&smash.base, &m, opts)?;
    let cx = HochschildComplex::new(&model, 2 * max_degree)?;
    let dm = m.dim();
    let mut rep = HomotopyReport::default();
    for i in 0..=max_degree {
        for j in 0..=max_degree {
            for alpha in 0..g.order() {
                let fs = component_cocycles(&model, &cx.deltas[i], g.order(), alpha);
                for beta in 0..g.order() {
                    let gs = component_cocycles(&model, &cx.deltas[j], g.order(), beta);
                    let act = model.action_matrix(g, g.inv(beta), i)?;
                    for fv in &fs {
                        for gv in &gs {
                            let fc = CochainMatrix::from_vector(f, i, dm, fv, "f");
                            let gc = CochainMatrix::from_vector(f, j, dm, gv, "g");
                            let circ = circle_product(smash, &fc, &gc, beta)?;
                            let n = i + j;
                            let lhs = if i == 0 || n == 0 {
                                vec![f.zero(); model.dim(n)?]
                            } else {
                                cx.deltas[n - 1].mul_vec(f, &circ.to_vector(f))?
                            };
                            let fb = act.mul_vec(f, fv)?;
                            let a = model.cup(j, gv, i, &fb)?;
                            let b = model.cup(i, fv, j, gv)?;
                            let sign = f.sign((i * j) % 2 == 1);
                            let rhs: Vec<F::E> = a.iter().zip(&b).map(|(u, v)| f.sub(&f.mul(&sign, v), u)).collect();
                            if lhs != rhs {
                                rep.failures.push((i, j, alpha, beta));
                            }
                            rep.checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{solve_linear, Fp};
    use crate::fixtures::{self, Instance};

    fn full_model(inst: &Instance<Fp>, m: &EquivariantBimodule<Fp>) -> CochainModel<Fp> {
        let opts = ModelOptions { a_action: Some(inst.action.clone()), force: Some(ModelKind::Full), ..Default::default() };
        CochainModel::new(&inst.algebra, m, opts).unwrap()
    }

    fn pseudo_random(f: &Fp, n: usize, seed: u64) -> Vec<u32> {
        let mut s = seed;
        (0..n)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % f.modulus() as u64) as u32
            })
            .collect()
    }

    #[test]
    fn cup_unit_and_leibniz() {
        let f = Fp::new(3).unwrap();
        let inst = fixtures::dual_numbers_sign(&f);
        let m = inst.regular().unwrap();
        let model = full_model(&inst, &m);
        let cx = HochschildComplex::new(&model, 3).unwrap();
        let one = vec![1, 0];
        for p in 0..2 {
            for q in 0..2 {
                let x = pseudo_random(&f, model.dim(p).unwrap(), 7 + p as u64);
                let y = pseudo_random(&f, model.dim(q).unwrap(), 11 + q as u64);
                assert_eq!(model.cup(0, &one, p, &x).unwrap(), x);
                let lhs = cx.deltas[p + q].mul_vec(&f, &model.cup(p, &x, q, &y).unwrap()).unwrap();
                let dx = cx.deltas[p].mul_vec(&f, &x).unwrap();
                let dy = cx.deltas[q].mul_vec(&f, &y).unwrap();
                let a = model.cup(p + 1, &dx, q, &y).unwrap();
                let b = model.cup(p, &x, q + 1, &dy).unwrap();
                let sign = if p % 2 == 0 { 1 } else { 2 };
                let rhs: Vec<u32> = a.iter().zip(&b).map(|(u, v)| f.mul_add(u, &sign, v)).collect();
                assert_eq!(lhs, rhs, "p = {p}, q = {q}");
            }
        }
    }

    #[test]
    fn degree_zero_cup_is_pointwise() {
        let f = Fp::new(2).unwrap();
        let a = fixtures::dual_numbers(&f);
        let g = crate::algebra::FinGroup::trivial();
        let m = EquivariantBimodule::regular(&a, crate::algebra::GroupAction::trivial(&f, &g, 2)).unwrap();
        let x = CochainMatrix::from_vector(&f, 0, 2, &[1, 1], "A");
        let y = CochainMatrix::from_vector(&f, 0, 2, &[0, 1], "A");
        let c = cup_product(&a, &m, &x, &y).unwrap();
        // (1 + x) x = x
        assert_eq!(c.to_vector(&f), vec![0, 1]);
    }

    #[test]
    fn cup_needs_an_algebra() {
        let f = Fp::new(2).unwrap();
        let a = fixtures::dual_numbers(&f);
        let g = crate::algebra::FinGroup::trivial();
        let reg = EquivariantBimodule::regular(&a, crate::algebra::GroupAction::trivial(&f, &g, 2)).unwrap();
        let left = (0..2).map(|i| (0..2).map(|x| reg.left_basis(i, x).clone()).collect()).collect();
        let right = (0..2).map(|x| (0..2).map(|i| reg.right_basis(x, i).clone()).collect()).collect();
        let m = EquivariantBimodule::new(&f, a.labels.clone(), 2, left, right, reg.action.clone()).unwrap();
        let x = CochainMatrix::from_vector(&f, 0, 2, &[1, 0], "A");
        assert!(matches!(cup_product(&a, &m, &x, &x), Err(Error::Contract(_))));
    }

    #[test]
    fn dual_numbers_hh1_cup_table() {
        // Over F_2, HH^1(k[x]/x²) is spanned by the classes of x ↦ 1 and
        // x ↦ x; their products in HH^2 are frozen here.
        let f = Fp::new(2).unwrap();
        let inst = fixtures::dual_numbers_trivial(&f);
        let m = inst.regular().unwrap();
        let model = full_model(&inst, &m);
        let cx = HochschildComplex::new(&model, 2).unwrap();
        let h1 = cx.slice(1).unwrap();
        let h2 = cx.slice(2).unwrap();
        let hc2 = crate::exactla::HomologyCoords::from_basis(&f, &h2).unwrap();
        assert_eq!(h1.dim(), 2);
        let d = |v: &[(usize, u32)]| crate::exactla::sparse::svec_to_dense(&f, v, model.dim(1).unwrap());
        let mut table = Vec::new();
        for x in &h1.representatives {
            for y in &h1.representatives {
                let c = model.cup(1, &d(x), 1, &d(y)).unwrap();
                table.push(hc2.coords(&crate::exactla::sparse::dense_to_svec(&f, &c)).unwrap());
            }
        }
        assert_eq!(table, vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![]]);
    }

    #[test]
    fn homotopy_identity_on_swap() {
        check_homotopy_identity(&fixtures::swap(&Fp::new(2).unwrap()));
    }

    fn check_homotopy_identity(inst: &Instance<Fp>) {
        let rep = verify_homotopy_identity(&inst.smash().unwrap(), 2).unwrap();
        assert!(rep.checked > 0 && rep.failures.is_empty(), "{}: {:?}", inst.name, rep.failures);
    }

    #[test]
    fn homotopy_identity_on_sign_action() {
        check_homotopy_identity(&fixtures::dual_numbers_sign(&Fp::new(3).unwrap()));
    }

    #[test]
    fn graded_commutativity_modulo_coboundaries() {
        let f = Fp::new(2).unwrap();
        let inst = fixtures::dual_numbers_trivial(&f);
        let m = inst.regular().unwrap();
        let model = full_model(&inst, &m);
        let cx = HochschildComplex::new(&model, 3).unwrap();
        for i in 0..=1 {
            for j in 0..=1 {
                let hi = cx.slice(i).unwrap();
                let hj = cx.slice(j).unwrap();
                for x in &hi.representatives {
                    for y in &hj.representatives {
                        let xd = crate::exactla::sparse::svec_to_dense(&f, x, model.dim(i).unwrap());
                        let yd = crate::exactla::sparse::svec_to_dense(&f, y, model.dim(j).unwrap());
                        let a = model.cup(i, &xd, j, &yd).unwrap();
                        let b = model.cup(j, &yd, i, &xd).unwrap();
                        let diff: Vec<u32> = a.iter().zip(&b).map(|(u, v)| f.sub(u, v)).collect();
                        let inn = cx.incoming(i + j).unwrap();
                        assert!(solve_linear(&f, &inn, &diff).unwrap().is_feasible());
                    }
                }
            }
        }
    }
}
