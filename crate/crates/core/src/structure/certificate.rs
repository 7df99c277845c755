//! Linear-algebra certificates: `kG`-projectivity of a module algebra and the
//! pair `(m, h)` witnessing (3,2)-degeneration.

use serde::Serialize;

use crate::algebra::{CqExtension, EquivariantBimodule, FinAlgebra, FinGroup, GroupAction};
use crate::constructions::DualSmashAlgebra;
use crate::error::{Error, Result};
use crate::exactla::sparse::{dense_to_svec, normalize_svec, svec_to_dense, SVec, SparseMat};
use crate::exactla::{solve_linear, Field, Solve, Subspace};

/// Outcome of a solver-backed decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<T, E> {
    Feasible(T),
    /// `y` with `y·M = 0` and `y·b ≠ 0` for the system `M x = b` that was
    /// solved.
    Infeasible {
        certificate: Vec<E>,
    },
}

impl<T, E> Feasibility<T, E> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn feasible(&self) -> Option<&T> {
        match self {
            Feasibility::Feasible(t) => Some(t),
            Feasibility::Infeasible { .. } => None,
        }
    }
}

/// An algebra `A` with a `G`-action, an equivariant bimodule algebra `M` and
/// a presentation of `G` as an extension of `C_q` by `H`.
#[derive(Clone, Copy, Debug)]
pub struct Setting<'a, F: Field> {
    pub algebra: &'a FinAlgebra<F>,
    pub group: &'a FinGroup,
    pub action: &'a GroupAction<F>,
    pub module: &'a EquivariantBimodule<F>,
    pub ext: &'a CqExtension,
}

impl<F: Field> Setting<'_, F> {
    pub fn field(&self) -> &F {
        &self.algebra.field
    }

    fn unit(&self) -> Result<&SVec<F::E>> {
        self.module.unit.as_ref().ok_or_else(|| Error::Contract("module carries no multiplication".into()))
    }
}

/// `(1 − T)^k`.
pub fn delta_power<F: Field>(f: &F, t: &SparseMat<F::E>, k: usize) -> Result<SparseMat<F::E>> {
    let n = t.rows();
    let d = SparseMat::identity(f, n).sub(f, t)?;
    let mut acc = SparseMat::identity(f, n);
    for _ in 0..k {
        acc = d.matmul(f, &acc)?;
    }
    Ok(acc)
}

/// Where `Σ ᵅa = 1` is sought.
#[derive(Clone, Debug)]
pub enum ProjectivityScope<E> {
    /// `a ∈ M`, sum over all of `G`.
    Group,
    /// `a` in the given subspace of `M^H`, sum over `ρ^0, …, ρ^{q−1}`.
    Quotient { ext: CqExtension, within: Subspace<E> },
}

/// Find `a` with `Σ ᵅa = 1` over the scope. For a module algebra this is
/// equivalent to projectivity over the group algebra of the scope.
pub fn check_kg_projectivity<F: Field>(
    f: &F,
    group: &FinGroup,
    action: &GroupAction<F>,
    unit: Option<&[(usize, F::E)]>,
    scope: &ProjectivityScope<F::E>,
) -> Result<Feasibility<SVec<F::E>, F::E>> {
    let unit = unit.ok_or_else(|| Error::Contract("projectivity test needs a unital algebra".into()))?;
    let n = action.dim;
    let (sum, basis) = match scope {
        ProjectivityScope::Group => {
            let mut s = SparseMat::zeros(n, n);
            for m in &action.mats {
                s = s.add(f, m)?;
            }
            (s, Subspace::full(f, n))
        }
        ProjectivityScope::Quotient { ext, within } => {
            let mut s = SparseMat::zeros(n, n);
            let mut r = group.identity;
            for _ in 0..ext.q {
                s = s.add(f, &action.mats[r])?;
                r = group.mul(r, ext.rho);
            }
            (s, within.clone())
        }
    };
    let sys = sum.matmul(f, &basis.inclusion())?;
    match solve_linear(f, &sys, &svec_to_dense(f, unit, n))? {
        Solve::Found(y) => Ok(Feasibility::Feasible(basis.inclusion().mul_svec(f, &dense_to_svec(f, &y)))),
        Solve::Infeasible { certificate } => Ok(Feasibility::Infeasible { certificate }),
    }
}

/// `M^H`.
pub fn h_invariants<F: Field>(f: &F, action: &GroupAction<F>, h: &[usize]) -> Result<Subspace<F::E>> {
    fixed_subspace(f, action, h)
}

/// `M^A ∩ M^H`: `H`-invariant elements commuting with `A`.
pub fn central_h_invariants<F: Field>(s: &Setting<'_, F>) -> Result<Subspace<F::E>> {
    let f = s.field();
    let n = s.module.dim();
    let mut stacked = SparseMat::zeros(0, n);
    for a in 0..s.algebra.dim() {
        stacked = stacked.vstack(&s.module.left_matrix(a).sub(f, &s.module.right_matrix(a))?)?;
    }
    for &x in &s.ext.h {
        stacked = stacked.vstack(&s.module.action.mats[x].sub(f, &SparseMat::identity(f, n))?)?;
    }
    Ok(Subspace::kernel(f, &stacked))
}

fn fixed_subspace<F: Field>(f: &F, action: &GroupAction<F>, elems: &[usize]) -> Result<Subspace<F::E>> {
    let n = action.dim;
    let mut stacked = SparseMat::zeros(0, n);
    for &x in elems {
        stacked = stacked.vstack(&action.mats[x].sub(f, &SparseMat::identity(f, n))?)?;
    }
    Ok(Subspace::kernel(f, &stacked))
}

/// `m ∈ M^H` and `h ∈ Der(A, M)^H` with `Δ_ρ^{q−1} m = 1_M` and
/// `Δ_ρ h + φ_m = 0`, where `Δ_ρ = 1 − ρ` and `φ_m(a) = am − ma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationCertificate<E> {
    pub m: SVec<E>,
    /// `dim M × dim A`; column `j` is `h(b_j)`.
    pub h: SparseMat<E>,
}

/// Residuals of the defining conditions; all empty for a valid certificate.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CertificateCheck {
    /// Nonzero coordinates of `Δ_ρ^{q−1} m − 1_M`.
    pub norm_residual: usize,
    /// Nonzero entries of `Δ_ρ h + φ_m`.
    pub coboundary_residual: usize,
    /// Basis pairs `(i, j)` where `h(b_i b_j) ≠ b_i h(b_j) + h(b_i) b_j`.
    pub derivation_failures: Vec<(usize, usize)>,
    /// Elements of `H` not fixing `m`, resp. `h`.
    pub m_not_invariant: Vec<usize>,
    pub h_not_invariant: Vec<usize>,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.norm_residual == 0
            && self.coboundary_residual == 0
            && self.derivation_failures.is_empty()
            && self.m_not_invariant.is_empty()
            && self.h_not_invariant.is_empty()
    }
}

/// `ᵅh = α ∘ h ∘ α⁻¹`.
pub fn act_on_map<F: Field>(
    f: &F,
    group: &FinGroup,
    a_action: &GroupAction<F>,
    m_action: &GroupAction<F>,
    alpha: usize,
    h: &SparseMat<F::E>,
) -> SparseMat<F::E> {
    let inv = group.inv(alpha);
    let cols = (0..h.ncols()).map(|j| m_action.apply(f, alpha, &h.mul_svec(f, a_action.apply_basis(inv, j)))).collect();
    SparseMat::from_columns(h.rows(), cols)
}

/// `φ_x(b_j) = b_j x − x b_j` as a `dim M × dim A` matrix.
pub fn inner_derivation<F: Field>(f: &F, alg: &FinAlgebra<F>, module: &EquivariantBimodule<F>, x: &[(usize, F::E)]) -> SparseMat<F::E> {
    let cols = (0..alg.dim())
        .map(|j| {
            let b = alg.basis_vector(j);
            let l = module.act_left(f, &b, x);
            let r = module.act_right(f, x, &b);
            let mut v = l;
            v.extend(r.into_iter().map(|(k, c)| (k, f.neg(&c))));
            normalize_svec(f, v)
        })
        .collect();
    SparseMat::from_columns(module.dim(), cols)
}

/// Basis pairs violating the derivation identity.
pub fn derivation_failures<F: Field>(
    f: &F,
    alg: &FinAlgebra<F>,
    module: &EquivariantBimodule<F>,
    h: &SparseMat<F::E>,
) -> Vec<(usize, usize)> {
    let d = alg.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let lhs = h.mul_svec(f, alg.product(i, j));
            let mut rhs = module.act_left(f, &alg.basis_vector(i), h.col(j));
            rhs.extend(module.act_right(f, h.col(i), &alg.basis_vector(j)));
            let mut diff = lhs;
            diff.extend(rhs.into_iter().map(|(k, c)| (k, f.neg(&c))));
            if !normalize_svec(f, diff).is_empty() {
                out.push((i, j));
            }
        }
    }
    out
}

impl<E: Clone + PartialEq + std::fmt::Debug> DegenerationCertificate<E> {
    pub fn check<F: Field<E = E>>(&self, s: &Setting<'_, F>) -> Result<CertificateCheck> {
        let f = s.field();
        let unit = s.unit()?;
        let (alg, module, ext) = (s.algebra, s.module, s.ext);
        let t_rho = &module.action.mats[ext.rho];
        let norm = delta_power(f, t_rho, ext.q - 1)?.mul_svec(f, &self.m);
        let mut diff = norm;
        diff.extend(unit.iter().map(|(k, c)| (*k, f.neg(c))));
        let norm_residual = normalize_svec(f, diff).len();
        let rho_h = act_on_map(f, s.group, s.action, &module.action, ext.rho, &self.h);
        let resid = self.h.sub(f, &rho_h)?.add(f, &inner_derivation(f, alg, module, &self.m))?;
        let m_not_invariant = ext.h.iter().copied().filter(|&x| normalize_svec(f, module.action.apply(f, x, &self.m)) != self.m).collect();
        let h_not_invariant =
            ext.h.iter().copied().filter(|&x| act_on_map(f, s.group, s.action, &module.action, x, &self.h) != self.h).collect();
        Ok(CertificateCheck {
            norm_residual,
            coboundary_residual: resid.nnz(),
            derivation_failures: derivation_failures(f, alg, module, &self.h),
            m_not_invariant,
            h_not_invariant,
        })
    }
}

/// Extra constraints on the certificate search.
#[derive(Clone, Debug)]
pub struct CertificateOptions<E> {
    /// Prescribe `m`.
    pub fix_m: Option<SVec<E>>,
    /// Basis indices of `A` on which `h` must vanish.
    pub vanish_on: Vec<usize>,
}

impl<E> Default for CertificateOptions<E> {
    fn default() -> Self {
        CertificateOptions { fix_m: None, vanish_on: Vec::new() }
    }
}

/// Solve for `(m, h)` jointly. Unknowns are `m` followed by the columns of
/// `h`.
pub fn find_certificate<F: Field>(
    s: &Setting<'_, F>,
    opts: &CertificateOptions<F::E>,
) -> Result<Feasibility<DegenerationCertificate<F::E>, F::E>> {
    let f = s.field();
    let unit = s.unit()?.clone();
    let (alg, module, ext, group) = (s.algebra, s.module, s.ext, s.group);
    let (da, dm) = (alg.dim(), module.dim());
    let hcol = |j: usize, x: usize| dm + j * dm + x;
    let nvars = dm + da * dm;
    let mut trip: Vec<(usize, usize, F::E)> = Vec::new();
    let mut rhs: Vec<F::E> = Vec::new();
    let mut row = 0usize;
    let mut push_block = |entries: &mut dyn Iterator<Item = (usize, usize, F::E)>, b: Vec<F::E>, trip: &mut Vec<_>, rhs: &mut Vec<F::E>| {
        let rows = b.len();
        for (r, c, v) in entries {
            trip.push((row + r, c, v));
        }
        rhs.extend(b);
        row += rows;
    };
    let zeros = |n: usize| vec![f.zero(); n];
    let minus = f.neg(&f.one());
    // m ∈ M^H.
    for &x in &ext.h {
        let a = module.action.mats[x].sub(f, &SparseMat::identity(f, dm))?;
        push_block(&mut a.entries().map(|(r, c, v)| (r, c, v.clone())), zeros(dm), &mut trip, &mut rhs);
    }
    // h ∈ Hom(A, M)^H: α h(α⁻¹ b_j) − h(b_j) = 0.
    for &x in &ext.h {
        let inv = group.inv(x);
        let mut e = Vec::new();
        for j in 0..da {
            for (k, c) in s.action.apply_basis(inv, j) {
                for (r, y, v) in module.action.mats[x].entries() {
                    e.push((j * dm + r, hcol(*k, y), f.mul(c, v)));
                }
            }
            for y in 0..dm {
                e.push((j * dm + y, hcol(j, y), minus.clone()));
            }
        }
        push_block(&mut e.into_iter(), zeros(da * dm), &mut trip, &mut rhs);
    }
    // h(b_i b_j) − b_i h(b_j) − h(b_i) b_j = 0.
    {
        let mut e = Vec::new();
        for i in 0..da {
            let li = module.left_matrix(i);
            for j in 0..da {
                let r0 = (i * da + j) * dm;
                for (k, c) in alg.product(i, j) {
                    for y in 0..dm {
                        e.push((r0 + y, hcol(*k, y), c.clone()));
                    }
                }
                for (r, y, v) in li.entries() {
                    e.push((r0 + r, hcol(j, y), f.neg(v)));
                }
                let rj = module.right_matrix(j);
                for (r, y, v) in rj.entries() {
                    e.push((r0 + r, hcol(i, y), f.neg(v)));
                }
            }
        }
        push_block(&mut e.into_iter(), zeros(da * da * dm), &mut trip, &mut rhs);
    }
    // Δ_ρ^{q−1} m = 1_M.
    let t_rho = &module.action.mats[ext.rho];
    let norm = delta_power(f, t_rho, ext.q - 1)?;
    push_block(&mut norm.entries().map(|(r, c, v)| (r, c, v.clone())), svec_to_dense(f, &unit, dm), &mut trip, &mut rhs);
    // h(b_j) − ρ h(ρ⁻¹ b_j) + b_j m − m b_j = 0.
    {
        let inv = group.inv(ext.rho);
        let mut e = Vec::new();
        for j in 0..da {
            for y in 0..dm {
                e.push((j * dm + y, hcol(j, y), f.one()));
            }
            for (k, c) in s.action.apply_basis(inv, j) {
                for (r, y, v) in t_rho.entries() {
                    e.push((j * dm + r, hcol(*k, y), f.neg(&f.mul(c, v))));
                }
            }
            let l = module.left_matrix(j).sub(f, &module.right_matrix(j))?;
            for (r, y, v) in l.entries() {
                e.push((j * dm + r, y, v.clone()));
            }
        }
        push_block(&mut e.into_iter(), zeros(da * dm), &mut trip, &mut rhs);
    }
    if let Some(m) = &opts.fix_m {
        let e: Vec<_> = (0..dm).map(|y| (y, y, f.one())).collect();
        push_block(&mut e.into_iter(), svec_to_dense(f, m, dm), &mut trip, &mut rhs);
    }
    for &j in &opts.vanish_on {
        let e: Vec<_> = (0..dm).map(|y| (y, hcol(j, y), f.one())).collect();
        push_block(&mut e.into_iter(), zeros(dm), &mut trip, &mut rhs);
    }
    let sys = SparseMat::from_triplets(f, rhs.len(), nvars, trip)?;
    match solve_linear(f, &sys, &rhs)? {
        Solve::Found(x) => {
            let m = dense_to_svec(f, &x[..dm]);
            let cols = (0..da).map(|j| dense_to_svec(f, &x[dm + j * dm..dm + (j + 1) * dm])).collect();
            Ok(Feasibility::Feasible(DegenerationCertificate { m, h: SparseMat::from_columns(dm, cols) }))
        }
        Solve::Infeasible { certificate } => Ok(Feasibility::Infeasible { certificate }),
    }
}

/// The explicit pair for a covering `A = B#kG^*` whose grading is
/// `C_q`-singular: `m = Σ_{α∈H} p_α` and `h(b p_β) = b p_β` exactly when
/// `b` has degree in `ρ^i H` with `i > 0` and `β ∈ ρ^j H` with
/// `1 ≤ j ≤ q − i`, zero otherwise.
pub fn canonical_covering_certificate<F: Field>(ds: &DualSmashAlgebra<F>, ext: &CqExtension) -> Result<DegenerationCertificate<F::E>> {
    let f = &ds.algebra.field;
    let deg = ds.base.grading.as_ref().ok_or_else(|| Error::Contract("covering of an ungraded algebra".into()))?;
    let n = ds.group.order();
    let d = ds.algebra.dim();
    let cols = (0..d)
        .map(|x| {
            let (i, j) = (ext.coset[deg[x / n]], ext.coset[x % n]);
            if i > 0 && j >= 1 && j <= ext.q - i {
                vec![(x, f.one())]
            } else {
                Vec::new()
            }
        })
        .collect();
    Ok(DegenerationCertificate { m: ds.idempotent_sum(&ext.h), h: SparseMat::from_columns(d, cols) })
}

/// `Δ_ρ(ab) − Δ_ρ(a)b − aΔ_ρ(b) + Δ_ρ(a)Δ_ρ(b)` on every basis pair of a
/// module algebra; returns the failing pairs.
pub fn delta_product_rule_failures<F: Field>(
    f: &F,
    module: &EquivariantBimodule<F>,
    t_rho: &SparseMat<F::E>,
) -> Result<Vec<(usize, usize)>> {
    let n = module.dim();
    let d = SparseMat::identity(f, n).sub(f, t_rho)?;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let va = vec![(a, f.one())];
            let vb = vec![(b, f.one())];
            let da = d.mul_svec(f, &va);
            let db = d.mul_svec(f, &vb);
            let lhs = d.mul_svec(f, &module.mul(f, &va, &vb)?);
            let mut rhs = module.mul(f, &da, &vb)?;
            rhs.extend(module.mul(f, &va, &db)?);
            rhs.extend(module.mul(f, &da, &db)?.into_iter().map(|(k, c)| (k, f.neg(&c))));
            let mut diff = lhs;
            diff.extend(rhs.into_iter().map(|(k, c)| (k, f.neg(&c))));
            if !normalize_svec(f, diff).is_empty() {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}
