//! The decomposition of `HH^*(A,M)^G` for an `(m,h)`-degenerated module
//! algebra: `𝒜 = Im Θ`, `X = Ker Θ`, `Y = HH^G/𝒜`, `W = Δ_ρ^{q−1} HH^H`, and
//! the filtrations `X_i`, `Y_i`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{CqExtension, FinGroup};
use crate::error::{Error, Result};
use crate::exactla::sparse::{add_vec, dense_to_svec, scale_vec, svec_to_dense, SVec, SparseMat};
use crate::exactla::{binomial, rank, Field, HomologyCoords, SubquotientBasis, Subspace};
use crate::hochschild::{invariant_cochains, invariant_comparison, CochainModel, Guard, HochschildComplex, ModelOptions};
use crate::structure::certificate::{find_certificate, CertificateOptions, DegenerationCertificate, Feasibility, Setting};

/// Everything the structure computations share: the cochain model, the
/// certificate in model coordinates and `HH^n` for `n ≤ top` as a `kG`-module.
pub struct StructureContext<F: Field> {
    pub model: CochainModel<F>,
    pub group: FinGroup,
    pub ext: CqExtension,
    pub cert: DegenerationCertificate<F::E>,
    /// `m` as a 0-cochain and `h` as a 1-cochain.
    pub m0: Vec<F::E>,
    pub h1: Vec<F::E>,
    pub top: usize,
    deltas: Vec<SparseMat<F::E>>,
    slices: Vec<SubquotientBasis<F::E>>,
    coords: Vec<HomologyCoords<F>>,
    /// `acts[n][α]`: action on `HH^n` in representative coordinates.
    acts: Vec<Vec<SparseMat<F::E>>>,
    /// `𝒜_n` as a subspace of `HH^n`, and `dim X_n`.
    a_spaces: Vec<Subspace<F::E>>,
    kernel_dims: Vec<usize>,
}

fn span<F: Field>(f: &F, dim: usize, v: Vec<SVec<F::E>>) -> Subspace<F::E> {
    Subspace::span(f, dim, v)
}

fn rank_of<F: Field>(f: &F, dim: usize, v: &[SVec<F::E>]) -> usize {
    rank(f, &SparseMat::from_columns(dim, v.to_vec()))
}

/// `U ∩ V` for spanning sets of both.
fn intersect<F: Field>(f: &F, dim: usize, u: &[SVec<F::E>], v: &[SVec<F::E>]) -> Subspace<F::E> {
    let mut cols = u.to_vec();
    cols.extend(v.iter().cloned());
    let ker = Subspace::kernel(f, &SparseMat::from_columns(dim, cols));
    let vecs = ker
        .basis
        .iter()
        .map(|x| {
            let mut acc = vec![f.zero(); dim];
            for (k, c) in x.iter().filter(|(k, _)| *k < u.len()) {
                for (i, e) in &u[*k] {
                    acc[*i] = f.mul_add(&acc[*i], c, e);
                }
            }
            dense_to_svec(f, &acc)
        })
        .collect();
    span(f, dim, vecs)
}

fn contains<F: Field>(f: &F, space: &Subspace<F::E>, v: &[SVec<F::E>]) -> bool {
    let mut all = space.basis.clone();
    all.extend(v.iter().cloned());
    rank_of(f, space.ambient, &all) == space.dim()
}

fn field_binomial<F: Field>(f: &F, n: i64, k: i64) -> F::E {
    f.from_ratio(&binomial(n, k), &BigInt::from(1)).expect("integers embed in every field")
}

impl<F: Field> StructureContext<F> {
    /// Checks the certificate, builds the model with the action and computes
    /// `HH^0..HH^top`. A certificate not supported on the reduced model is
    /// replaced by one that is.
    pub fn new(s: &Setting<'_, F>, cert: &DegenerationCertificate<F::E>, top: usize, guard: &Guard) -> Result<Self> {
        let f = s.field().clone();
        let check = cert.check(s)?;
        if !check.passed() {
            return Err(Error::Contract(format!("invalid degeneration certificate: {check:?}")));
        }
        let opts = ModelOptions { a_action: Some(s.action.clone()), force: None, guard: *guard };
        let model = CochainModel::new(s.algebra, s.module, opts)?;
        let dm = s.module.dim();
        // `None` when the certificate is not supported on the reduced model.
        let in_model = |c: &DegenerationCertificate<F::E>| -> Result<Option<(Vec<F::E>, Vec<F::E>)>> {
            let lift = |r: Result<Vec<F::E>>| match r {
                Ok(v) => Ok(Some(v)),
                Err(Error::Contract(_)) => Ok(None),
                Err(e) => Err(e),
            };
            let Some(m0) = lift(model.from_full(0, &SparseMat::from_columns(dm, vec![c.m.clone()])))? else { return Ok(None) };
            let Some(h1) = lift(model.from_full(1, &c.h))? else { return Ok(None) };
            Ok(Some((m0, h1)))
        };
        let (cert, (m0, h1)) = match in_model(cert)? {
            Some(v) => (cert.clone(), v),
            None => {
                let vanish_on = (0..s.algebra.dim()).filter(|j| !model.arrows().contains(j)).collect();
                let opts = CertificateOptions { fix_m: None, vanish_on };
                let Feasibility::Feasible(c) = find_certificate(s, &opts)? else {
                    return Err(Error::Contract("no certificate is supported on the reduced cochain model".into()));
                };
                let v = in_model(&c)?.ok_or_else(|| Error::Contract("normalized certificate left the model".into()))?;
                (c, v)
            }
        };
        let cx = HochschildComplex::new(&model, top)?;
        let deltas = cx.deltas.clone();
        let slices = (0..=top).map(|n| cx.slice(n)).collect::<Result<Vec<_>>>()?;
        let coords = slices.iter().map(|sq| HomologyCoords::from_basis(&f, sq)).collect::<Result<Vec<_>>>()?;
        let mut acts = Vec::new();
        for n in 0..=top {
            let mats = (0..s.group.order())
                .map(|g| {
                    let a = model.action_matrix(s.group, g, n)?;
                    let cols = slices[n]
                        .representatives
                        .iter()
                        .map(|z| {
                            coords[n].coords(&a.mul_svec(&f, z)).ok_or_else(|| Error::Contract("action does not preserve cocycles".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(SparseMat::from_columns(slices[n].dim(), cols))
                })
                .collect::<Result<Vec<_>>>()?;
            acts.push(mats);
        }
        drop(cx);
        let cmp = invariant_comparison(&model, s.group, top)?;
        let a_spaces = cmp.iter().map(|c| span(&f, c.dim_hh, c.theta.columns().to_vec())).collect();
        let kernel_dims = cmp.iter().map(|c| c.kernel_dim).collect();
        Ok(StructureContext {
            model,
            group: s.group.clone(),
            ext: s.ext.clone(),
            cert,
            m0,
            h1,
            top,
            deltas,
            slices,
            coords,
            acts,
            a_spaces,
            kernel_dims,
        })
    }

    pub fn field(&self) -> &F {
        &self.model.field
    }

    pub fn hh_dim(&self, n: usize) -> usize {
        self.slices[n].dim()
    }

    /// Dense cochain representing a class of `HH^n`.
    pub fn cochain(&self, n: usize, class: &[(usize, F::E)]) -> Result<Vec<F::E>> {
        let f = self.field();
        let mut acc = vec![f.zero(); self.model.dim(n)?];
        for (k, c) in class {
            for (i, v) in &self.slices[n].representatives[*k] {
                acc[*i] = f.mul_add(&acc[*i], c, v);
            }
        }
        Ok(acc)
    }

    /// Class of an `n`-cocycle.
    pub fn class(&self, n: usize, v: &[F::E]) -> Result<SVec<F::E>> {
        self.coords[n]
            .coords(&dense_to_svec(self.field(), v))
            .ok_or_else(|| Error::Contract(format!("cochain of degree {n} is not a cocycle")))
    }

    /// `x ⌣ y` on classes.
    pub fn cup_classes(&self, p: usize, x: &[(usize, F::E)], q: usize, y: &[(usize, F::E)]) -> Result<SVec<F::E>> {
        let c = self.model.cup(p, &self.cochain(p, x)?, q, &self.cochain(q, y)?)?;
        self.class(p + q, &c)
    }

    /// Class of `h`.
    pub fn h_class(&self) -> Result<SVec<F::E>> {
        self.class(1, &self.h1)
    }

    fn fixed(&self, n: usize, elems: &[usize]) -> Result<Subspace<F::E>> {
        let f = self.field();
        let d = self.hh_dim(n);
        let mut stacked = SparseMat::zeros(0, d);
        for &x in elems {
            stacked = stacked.vstack(&self.acts[n][x].sub(f, &SparseMat::identity(f, d))?)?;
        }
        Ok(Subspace::kernel(f, &stacked))
    }

    pub fn hh_h(&self, n: usize) -> Result<Subspace<F::E>> {
        self.fixed(n, &self.ext.h)
    }

    pub fn hh_g(&self, n: usize) -> Result<Subspace<F::E>> {
        self.fixed(n, &self.group.generators())
    }

    /// `Δ_ρ^k` on `HH^n`.
    pub fn delta_hh(&self, n: usize, k: usize) -> Result<SparseMat<F::E>> {
        crate::structure::certificate::delta_power(self.field(), &self.acts[n][self.ext.rho], k)
    }

    /// `Δ_ρ^k HH^n(A,M)^H`.
    pub fn delta_image(&self, n: usize, k: usize) -> Result<Subspace<F::E>> {
        let d = self.delta_hh(n, k)?;
        let vecs = self.hh_h(n)?.basis.iter().map(|v| d.mul_svec(self.field(), v)).collect();
        Ok(span(self.field(), self.hh_dim(n), vecs))
    }

    pub fn w(&self, n: usize) -> Result<Subspace<F::E>> {
        self.delta_image(n, self.ext.q - 1)
    }

    pub fn a(&self, n: usize) -> &Subspace<F::E> {
        &self.a_spaces[n]
    }

    /// `Z_i = 𝒜 ∩ Δ_ρ^i HH^H` in degree `n`.
    pub fn z(&self, n: usize, i: usize) -> Result<Subspace<F::E>> {
        let d = self.delta_image(n, i)?;
        Ok(intersect(self.field(), self.hh_dim(n), &self.a(n).basis, &d.basis))
    }

    /// `Δ_ρ^k` on `C^n(A,M)`.
    pub fn delta_cochains(&self, n: usize, k: usize) -> Result<SparseMat<F::E>> {
        let t = self.model.action_matrix(&self.group, self.ext.rho, n)?;
        crate::structure::certificate::delta_power(self.field(), &t, k)
    }

    /// `C^n(A,M)^H`.
    pub fn cochains_h(&self, n: usize) -> Result<Subspace<F::E>> {
        let f = self.field();
        let d = self.model.dim(n)?;
        let mut stacked = SparseMat::zeros(0, d);
        for &x in &self.ext.h {
            stacked = stacked.vstack(&self.model.action_matrix(&self.group, x, n)?.sub(f, &SparseMat::identity(f, d))?)?;
        }
        Ok(Subspace::kernel(f, &stacked))
    }

    /// `δ^n`.
    pub fn delta(&self, n: usize) -> &SparseMat<F::E> {
        &self.deltas[n]
    }

    /// `dim X_i` in degree `n`: classes of `H^n(C^G)` representable by
    /// elements of `C^G ∩ δΔ_ρ^i C^H`.
    pub fn x_filtration_dim(&self, n: usize, i: usize) -> Result<usize> {
        if n == 0 {
            return Ok(0);
        }
        let f = self.field();
        let dim = self.model.dim(n)?;
        let u = invariant_cochains(&self.model, &self.group, n)?.basis;
        let delta = &self.deltas[n - 1];
        let bg: Vec<SVec<F::E>> = invariant_cochains(&self.model, &self.group, n - 1)?.basis.iter().map(|v| delta.mul_svec(f, v)).collect();
        let di = self.delta_cochains(n - 1, i)?;
        let vi: Vec<SVec<F::E>> = self.cochains_h(n - 1)?.basis.iter().map(|v| delta.mul_svec(f, &di.mul_svec(f, v))).collect();
        let cat = |a: &[SVec<F::E>], b: &[SVec<F::E>]| {
            let mut x = a.to_vec();
            x.extend(b.iter().cloned());
            x
        };
        let rv = rank_of(f, dim, &vi);
        let s = u.len() + rv - rank_of(f, dim, &cat(&u, &vi));
        let rb = rank_of(f, dim, &bg);
        let vb = rv + rb - rank_of(f, dim, &cat(&vi, &bg));
        Ok(s - vb)
    }

    /// `dim Y_i` in degree `n`: the span of `h̄ ⌣ Z_i` (from degree `n − 1`)
    /// modulo `𝒜_n`.
    pub fn y_filtration_dim(&self, n: usize, i: usize) -> Result<usize> {
        if n == 0 {
            return Ok(0);
        }
        let f = self.field();
        let h = self.h_class()?;
        let imgs = self.z(n - 1, i)?.basis.iter().map(|z| self.cup_classes(1, &h, n - 1, z)).collect::<Result<Vec<_>>>()?;
        let a = self.a(n);
        let mut all = a.basis.clone();
        all.extend(imgs);
        Ok(rank_of(f, self.hh_dim(n), &all) - a.dim())
    }

    /// The construction of the auxiliary cochains for a cocycle `f` of
    /// degree `j` in `C^j(A,M)^H` with `Δ_ρ^i f = 0`: returns `(f_0, f_1)`
    /// with `Δ_ρ^{q−i} f_0 = f`, `δ f_0 = Δ_ρ^i f_1` and `δ f_1 = 0`.
    pub fn cycnull(&self, j: usize, i: usize, fv: &[F::E]) -> Result<(Vec<F::E>, Vec<F::E>)> {
        let fl = self.field();
        let q = self.ext.q;
        if i > q {
            return Err(Error::Contract(format!("exponent {i} exceeds q = {q}")));
        }
        let sign = |e: i64| fl.sign(e.rem_euclid(2) == 1);
        let f1 = scale_vec(fl, &sign(j as i64 - 1), &self.model.cup(j, fv, 1, &self.h1)?);
        if i == 0 {
            // Δ^q f_0 = f forces f = 0 on H-invariants, so f_0 = 0 works.
            return Ok((vec![fl.zero(); fv.len()], f1));
        }
        if i == q {
            // Δ^0 f_0 = f, and δf = 0 = Δ^q f_1.
            return Ok((fv.to_vec(), f1));
        }
        let mut f0 = vec![fl.zero(); fv.len()];
        for k in 0..i {
            let dkf = self.delta_cochains(j, k)?.mul_vec(fl, fv)?;
            for l in 0..i {
                let c = fl.mul(&field_binomial(fl, i as i64, k as i64), &field_binomial(fl, k as i64, i as i64 - l as i64 - 1));
                if fl.is_zero(&c) {
                    continue;
                }
                let c = fl.mul(&c, &sign(l as i64 + k as i64 - i as i64 - 1));
                let dlm = self.delta_cochains(0, l)?.mul_vec(fl, &self.m0)?;
                let t = self.model.cup(j, &dkf, 0, &dlm)?;
                f0 = add_vec(fl, &f0, &scale_vec(fl, &c, &t));
            }
        }
        Ok((f0, f1))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureRow {
    pub n: usize,
    pub hh: usize,
    pub hh_h: usize,
    pub hh_g: usize,
    /// `dim 𝒜_n = dim Im Θ`.
    pub a: usize,
    pub w: usize,
    /// `dim X_n = dim Ker Θ`.
    pub x: usize,
    /// `dim Y_n = dim HH^G_n − dim 𝒜_n`.
    pub y: usize,
    pub a_bar: usize,
    /// `dim W_n + dim X_{n+1} = dim 𝒜_n`.
    pub w_plus_next_x: bool,
    /// `dim HH^G_n − dim W_n = dim Ā_n + dim Ā_{n−1}`.
    pub quotient_dims: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub q: usize,
    pub rows: Vec<StructureRow>,
    /// `h̄ ⌣ h̄ ∈ 𝒜_2`; `None` if degree 2 is out of range.
    pub h_squared_in_a: Option<bool>,
    /// Matrices of `D_h: 𝒜_n → 𝒜_{n+1}` in the echelon bases of `𝒜`.
    #[serde(skip)]
    pub d_h: Vec<Vec<Vec<String>>>,
    /// Every failed structural assertion, with its degree.
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.rows.iter().all(|r| r.w_plus_next_x && r.quotient_dims) && self.h_squared_in_a != Some(false)
    }
}

/// Dimensions and structural checks for degrees `n ≤ up_to`; the context
/// must reach degree `up_to + 1`.
pub fn structure_report<F: Field>(ctx: &StructureContext<F>, up_to: usize) -> Result<StructureReport> {
    if ctx.top < up_to + 1 {
        return Err(Error::Window(format!("structure report up to {up_to} needs HH up to degree {}", up_to + 1)));
    }
    let f = ctx.field();
    let h = ctx.h_class()?;
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    let mut d_h = Vec::new();
    let ws = (0..=up_to + 1).map(|n| ctx.w(n)).collect::<Result<Vec<_>>>()?;
    for n in 0..=up_to {
        let a = ctx.a(n);
        let w = &ws[n];
        let hh_g = ctx.hh_g(n)?;
        if !contains(f, a, &w.basis) {
            violations.push(format!("degree {n}: W is not contained in Im Θ"));
        }
        // D_h(a) = h ⌣ a − (−1)^n a ⌣ h.
        let s = f.sign(n % 2 == 1);
        let dh = |v: &SVec<F::E>| -> Result<SVec<F::E>> {
            let x = svec_to_dense(f, &ctx.cup_classes(1, &h, n, v)?, ctx.hh_dim(n + 1));
            let y = svec_to_dense(f, &ctx.cup_classes(n, v, 1, &h)?, ctx.hh_dim(n + 1));
            Ok(dense_to_svec(f, &add_vec(f, &x, &scale_vec(f, &f.neg(&s), &y))))
        };
        let da: Vec<SVec<F::E>> = a.basis.iter().map(dh).collect::<Result<_>>()?;
        if !contains(f, ctx.a(n + 1), &da) {
            violations.push(format!("degree {n}: D_h does not preserve Im Θ"));
        }
        let dw: Vec<SVec<F::E>> = w.basis.iter().map(dh).collect::<Result<_>>()?;
        if !contains(f, &ws[n + 1], &dw) {
            violations.push(format!("degree {n}: D_h does not preserve W"));
        }
        let next = ctx.a(n + 1);
        d_h.push(da.iter().map(|v| next.coords(f, v).iter().map(|c| f.render(c)).collect()).collect());
        // ψ(ā) = ā ⌣ h̄ mod 𝒜_{n+1}; its kernel must be W_n.
        let psi: Vec<SVec<F::E>> = a.basis.iter().map(|v| ctx.cup_classes(n, v, 1, &h)).collect::<Result<_>>()?;
        let mut all = next.basis.clone();
        all.extend(psi.iter().cloned());
        let ker_psi = a.dim() - (rank_of(f, ctx.hh_dim(n + 1), &all) - next.dim());
        let w_psi: Vec<SVec<F::E>> = w.basis.iter().map(|v| ctx.cup_classes(n, v, 1, &h)).collect::<Result<_>>()?;
        if ker_psi != w.dim() || !contains(f, next, &w_psi) {
            violations.push(format!("degree {n}: kernel of ψ has dim {ker_psi}, W has dim {}", w.dim()));
        }
        // Every G-invariant class is ā + b̄ ⌣ h̄.
        let mut gen = a.basis.clone();
        if n > 0 {
            for v in &ctx.a(n - 1).basis {
                gen.push(ctx.cup_classes(n - 1, v, 1, &h)?);
            }
        }
        let r = rank_of(f, ctx.hh_dim(n), &gen);
        let mut with_g = gen.clone();
        with_g.extend(hh_g.basis.iter().cloned());
        if rank_of(f, ctx.hh_dim(n), &with_g) != r {
            violations.push(format!("degree {n}: HH^G is not spanned by 𝒜 + 𝒜 ⌣ h̄"));
        }
        let a_bar = a.dim() - w.dim();
        let prev_bar = if n > 0 { ctx.a(n - 1).dim() - ws[n - 1].dim() } else { 0 };
        rows.push(StructureRow {
            n,
            hh: ctx.hh_dim(n),
            hh_h: ctx.hh_h(n)?.dim(),
            hh_g: hh_g.dim(),
            a: a.dim(),
            w: w.dim(),
            x: ctx.kernel_dims[n],
            y: hh_g.dim() - a.dim(),
            a_bar,
            w_plus_next_x: w.dim() + ctx.kernel_dims[n + 1] == a.dim(),
            quotient_dims: hh_g.dim() - w.dim() == a_bar + prev_bar,
        });
    }
    let h_squared_in_a = if up_to + 1 >= 2 {
        let hh = ctx.cup_classes(1, &h, 1, &h)?;
        Some(contains(f, ctx.a(2), &[hh]))
    } else {
        None
    };
    Ok(StructureReport { q: ctx.ext.q, rows, h_squared_in_a, d_h, violations })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationRow {
    pub n: usize,
    /// `dim X_i` and `dim Y_i` for `i = 0..q−1`.
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `dim Y_i/Y_{i+1}` and `dim X_{q−2−i}/X_{q−1−i}` for `i = 0..q−2`.
    pub y_quotients: Vec<usize>,
    pub x_quotients: Vec<usize>,
    /// Whether `Δ_ρ^i HH^H_n = HH^G_n`, for `i = 0..q−1`.
    pub saturated: Vec<bool>,
}

impl FiltrationRow {
    pub fn matches(&self) -> bool {
        self.y_quotients == self.x_quotients
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub q: usize,
    pub rows: Vec<FiltrationRow>,
    pub violations: Vec<String>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.rows.iter().all(|r| r.matches())
    }
}

/// Dimensions of both filtrations for degrees `n ≤ up_to`.
pub fn filtration_report<F: Field>(ctx: &StructureContext<F>, up_to: usize) -> Result<FiltrationReport> {
    let q = ctx.ext.q;
    if up_to > ctx.top {
        return Err(Error::Window(format!("filtration report up to {up_to} exceeds the computed degree {}", ctx.top)));
    }
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    if q == 1 {
        return Ok(FiltrationReport { q, rows, violations });
    }
    for n in 0..=up_to {
        let x = (0..q).map(|i| ctx.x_filtration_dim(n, i)).collect::<Result<Vec<_>>>()?;
        let y = (0..q).map(|i| ctx.y_filtration_dim(n, i)).collect::<Result<Vec<_>>>()?;
        let hh_g = ctx.hh_g(n)?;
        let yd = hh_g.dim() - ctx.a(n).dim();
        if x[0] != ctx.kernel_dims[n] {
            violations.push(format!("degree {n}: X_0 has dim {} but Ker Θ has dim {}", x[0], ctx.kernel_dims[n]));
        }
        if y[0] != yd {
            violations.push(format!("degree {n}: Y_0 has dim {} but Y has dim {yd}", y[0]));
        }
        if x[q - 1] != 0 || y[q - 1] != 0 {
            violations.push(format!("degree {n}: X_{{q−1}} or Y_{{q−1}} is nonzero"));
        }
        for i in 0..q - 1 {
            if x[i] < x[i + 1] || y[i] < y[i + 1] {
                violations.push(format!("degree {n}: filtrations are not decreasing at {i}"));
            }
        }
        let y_quotients = (0..q - 1).map(|i| y[i].saturating_sub(y[i + 1])).collect();
        let x_quotients = (0..q - 1).map(|i| x[q - 2 - i].saturating_sub(x[q - 1 - i])).collect();
        let saturated = (0..q)
            .map(|i| {
                let d = ctx.delta_image(n, i)?;
                Ok(d.dim() == hh_g.dim() && contains(ctx.field(), &hh_g, &d.basis))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(FiltrationRow { n, x, y, y_quotients, x_quotients, saturated });
    }
    Ok(FiltrationReport { q, rows, violations })
}
