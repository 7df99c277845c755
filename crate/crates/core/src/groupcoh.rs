//! Group cohomology over `kG`: the bar resolution of the trivial module, the
//! periodic resolution of an extension of a cyclic `p`-group, their
//! comultiplications, and cohomology with coefficients in a `kG`-module.
//!
//! Cochains with values in a module `M` are stored in reduced coordinates:
//! for the bar resolution a cochain is a function `G^n → M` (tuple index
//! major, module index minor), for the periodic one an element of `M^H`.

use serde::Serialize;

use crate::algebra::{CqExtension, FinGroup, GroupAction, ValidationReport};
use crate::error::{Error, Result};
use crate::exactla::sparse::{svec_to_dense, SVec, SparseMat};
use crate::exactla::{rank, subquotient, Field, SubquotientBasis, Subspace};
use crate::hochschild::Guard;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResolutionKind {
    Bar,
    /// Bar resolution with tuples avoiding the identity in positions `1..n`.
    NormalizedBar,
    Periodic,
}

/// A projective resolution `Q → k` over `kG`, stored degree by degree as
/// `k`-linear matrices.
#[derive(Clone, Debug)]
pub struct KGResolution<F: Field> {
    pub kind: ResolutionKind,
    pub field: F,
    pub group: FinGroup,
    pub ext: Option<CqExtension>,
    /// `dims[n] = dim_k Q_n` for `n ≤ top`.
    pub dims: Vec<usize>,
    /// `d[n]: Q_n → Q_{n-1}` for `n ≥ 1`; `d[0]` is the augmentation `Q_0 → k`.
    pub d: Vec<SparseMat<F::E>>,
    /// `delta[n][a]` is the component `Q_n → Q_a ⊗ Q_{n-a}`; the tensor basis
    /// is `x * dim Q_{n-a} + y`.
    pub delta: Vec<Vec<SparseMat<F::E>>>,
    /// Elements of `G \ {e}` (normalized bar) or `G` (bar) indexing tuples.
    letters: Vec<usize>,
}

fn tuple_digits(mut x: usize, len: usize, base: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    for k in (0..len).rev() {
        v[k] = x % base;
        x /= base;
    }
    v
}

impl<F: Field> KGResolution<F> {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Matrix of `x ↦ αx` on `Q_n`.
    pub fn left_action(&self, alpha: usize, n: usize) -> SparseMat<F::E> {
        let f = &self.field;
        let g = &self.group;
        let cols = match self.kind {
            ResolutionKind::Periodic => {
                let ext = self.ext.as_ref().unwrap();
                (0..ext.q).map(|k| vec![(ext.coset[g.mul(alpha, g.pow(ext.rho, k))], f.one())]).collect()
            }
            _ => {
                let inner = self.letters.len().pow(n as u32);
                (0..self.dims[n])
                    .map(|x| {
                        let (a0, rest) = (x / inner, x % inner);
                        vec![(g.mul(alpha, a0) * inner + rest, f.one())]
                    })
                    .collect()
            }
        };
        SparseMat::from_columns(self.dims[n], cols)
    }

    /// Generators of `Q_n` as a `kG`-module, in cochain-coordinate order.
    pub fn generators(&self, n: usize) -> Vec<usize> {
        match self.kind {
            ResolutionKind::Periodic => vec![0],
            _ => {
                let inner = self.letters.len().pow(n as u32);
                (0..inner).map(|r| self.group.identity * inner + r).collect()
            }
        }
    }

    /// Checks `d² = 0`, `μ d_1 = 0`, exactness, `kG`-linearity, and the
    /// counit and chain-map identities of the comultiplication.
    pub fn validate(&self) -> Result<ValidationReport> {
        let f = &self.field;
        let mut rep = ValidationReport::default();
        let top = self.top();
        for n in 1..=top {
            let prev = &self.d[n - 1];
            if !prev.matmul(f, &self.d[n])?.is_zero() {
                rep.fail(format!("d² ≠ 0 at degree {n}"));
            }
        }
        if rank(f, &self.d[0]) != 1 {
            rep.fail("augmentation is not surjective");
        }
        for n in 0..top {
            // dim ker d_n = rank d_{n+1}, with d_0 the augmentation.
            let ker = self.dims[n] - rank(f, &self.d[n]);
            if ker != rank(f, &self.d[n + 1]) {
                rep.fail(format!("resolution is not exact at degree {n}"));
            }
        }
        for alpha in self.group.generators() {
            for n in 1..=top {
                let l = self.d[n].matmul(f, &self.left_action(alpha, n))?;
                let r = self.left_action(alpha, n - 1).matmul(f, &self.d[n])?;
                if l != r {
                    rep.fail(format!("differential in degree {n} is not G-linear"));
                }
            }
        }
        // Counit: μ_k(μ ⊗ μ)Δ_{0,0} = μ.
        let mu = &self.d[0];
        let mut mumu = Vec::new();
        for x in 0..self.dims[0] {
            for y in 0..self.dims[0] {
                mumu.push((0, x * self.dims[0] + y, f.mul(&mu.get(f, 0, x), &mu.get(f, 0, y))));
            }
        }
        let mumu = SparseMat::from_triplets(f, 1, self.dims[0] * self.dims[0], mumu)?;
        if mumu.matmul(f, &self.delta[0][0])? != *mu {
            rep.fail("comultiplication violates the counit identity");
        }
        // Chain map: Δ_{a,b} d_n = (d_{a+1} ⊗ 1) Δ_{a+1,b} + (-1)^a (1 ⊗ d_{b+1}) Δ_{a,b+1}.
        for n in 1..=top {
            for a in 0..n {
                let b = n - 1 - a;
                let lhs = self.delta[n - 1][a].matmul(f, &self.d[n])?;
                let t1 = kron(f, &self.d[a + 1], &SparseMat::identity(f, self.dims[b])).matmul(f, &self.delta[n][a + 1])?;
                let t2 = kron(f, &SparseMat::identity(f, self.dims[a]), &self.d[b + 1]).matmul(f, &self.delta[n][a])?;
                let rhs = t1.axpy(f, &f.sign(a % 2 == 1), &t2)?;
                if lhs != rhs {
                    rep.fail(format!("comultiplication is not a chain map at ({a}, {b})"));
                }
            }
        }
        for alpha in self.group.generators() {
            for n in 0..=top {
                for a in 0..=n {
                    let l = self.delta[n][a].matmul(f, &self.left_action(alpha, n))?;
                    let diag = kron(f, &self.left_action(alpha, a), &self.left_action(alpha, n - a));
                    if l != diag.matmul(f, &self.delta[n][a])? {
                        rep.fail(format!("comultiplication is not G-linear at ({a}, {})", n - a));
                    }
                }
            }
        }
        Ok(rep)
    }

    /// Dimension of `Hom_{kG}(Q_n, M)` in reduced coordinates.
    pub fn cochain_dim(&self, m: &CoefficientModule<F>, n: usize) -> usize {
        match self.kind {
            ResolutionKind::Periodic => m.h_invariants.dim(),
            _ => self.letters.len().pow(n as u32) * m.action.dim,
        }
    }

    /// Matrix of `δ^n: Hom_{kG}(Q_n, M) → Hom_{kG}(Q_{n+1}, M)`.
    pub fn cochain_differential(&self, m: &CoefficientModule<F>, n: usize) -> Result<SparseMat<F::E>> {
        let f = &self.field;
        let g = &self.group;
        let dm = m.action.dim;
        match self.kind {
            ResolutionKind::Periodic => {
                let ext = self.ext.as_ref().unwrap();
                let rho = &m.action.mats[ext.rho];
                let id = SparseMat::identity(f, dm);
                // n even: 1 - ρ; n odd: Σ_t ρ^t.
                let op = if n.is_multiple_of(2) {
                    id.sub(f, rho)?
                } else {
                    let mut acc = SparseMat::zeros(dm, dm);
                    let mut p = id;
                    for _ in 0..ext.q {
                        acc = acc.add(f, &p)?;
                        p = rho.matmul(f, &p)?;
                    }
                    acc
                };
                Ok(m.h_invariants.restrict_unchecked(f, &op, &m.h_invariants))
            }
            _ => {
                let l = self.letters.len();
                let rows = l.pow(n as u32 + 1) * dm;
                let cols = l.pow(n as u32) * dm;
                let mut trip = Vec::new();
                for r in 0..l.pow(n as u32 + 1) {
                    let t: Vec<usize> = tuple_digits(r, n + 1, l).into_iter().map(|k| self.letters[k]).collect();
                    let idx = |u: &[usize]| -> Option<usize> {
                        let mut acc = 0;
                        for &x in u {
                            acc = acc * l + self.letter_pos(x)?;
                        }
                        Some(acc)
                    };
                    // α_1 f(α_2, ...)
                    let c = idx(&t[1..]).unwrap();
                    for y in 0..dm {
                        for (x, v) in m.action.mats[t[0]].col(y) {
                            trip.push((r * dm + x, c * dm + y, v.clone()));
                        }
                    }
                    for i in 0..n {
                        let mut u = t[..i].to_vec();
                        u.push(g.mul(t[i], t[i + 1]));
                        u.extend_from_slice(&t[i + 2..]);
                        if let Some(c) = idx(&u) {
                            let s = f.sign(i % 2 == 0);
                            for y in 0..dm {
                                trip.push((r * dm + y, c * dm + y, s.clone()));
                            }
                        }
                    }
                    let c = idx(&t[..n]).unwrap();
                    let s = f.sign(n.is_multiple_of(2));
                    for y in 0..dm {
                        trip.push((r * dm + y, c * dm + y, s.clone()));
                    }
                }
                SparseMat::from_triplets(f, rows, cols, trip)
            }
        }
    }

    fn letter_pos(&self, x: usize) -> Option<usize> {
        self.letters.iter().position(|&y| y == x)
    }

    /// The `k`-linear map `Q_n → M` of a reduced cochain, as a
    /// `dim M × dim Q_n` matrix.
    pub fn expand(&self, m: &CoefficientModule<F>, n: usize, c: &[F::E]) -> Result<SparseMat<F::E>> {
        let f = &self.field;
        let dm = m.action.dim;
        let gens = self.generators(n);
        let values: Vec<SVec<F::E>> = match self.kind {
            ResolutionKind::Periodic => vec![m.h_invariants.embed(f, c)],
            _ => (0..gens.len()).map(|k| crate::exactla::sparse::dense_to_svec(f, &c[k * dm..(k + 1) * dm])).collect(),
        };
        let mut cols: Vec<Option<SVec<F::E>>> = vec![None; self.dims[n]];
        for alpha in 0..self.group.order() {
            let act = self.left_action(alpha, n);
            for (k, &gvec) in gens.iter().enumerate() {
                let target = act.col(gvec)[0].0;
                let v = m.action.apply(f, alpha, &values[k]);
                match &cols[target] {
                    Some(old) if *old != v => return Err(Error::Contract("cochain is not compatible with the module structure".into())),
                    _ => cols[target] = Some(v),
                }
            }
        }
        Ok(SparseMat::from_columns(dm, cols.into_iter().map(|c| c.unwrap_or_default()).collect()))
    }

    /// Reduced coordinates of a `kG`-linear map `Q_n → M`.
    pub fn restrict(&self, m: &CoefficientModule<F>, n: usize, map: &SparseMat<F::E>) -> Vec<F::E> {
        let f = &self.field;
        let dm = m.action.dim;
        match self.kind {
            ResolutionKind::Periodic => m.h_invariants.coords(f, map.col(0)),
            _ => {
                let mut out = Vec::new();
                for gvec in self.generators(n) {
                    out.extend(svec_to_dense(f, map.col(gvec), dm));
                }
                out
            }
        }
    }

    /// `f ⌣ g = μ_M (f ⊗ g) Δ_Q` for a module algebra `M` with product
    /// `mult`.
    pub fn cup(
        &self,
        m: &CoefficientModule<F>,
        mult: &dyn Fn(&[(usize, F::E)], &[(usize, F::E)]) -> SVec<F::E>,
        p: usize,
        fc: &[F::E],
        q: usize,
        gc: &[F::E],
    ) -> Result<Vec<F::E>> {
        let f = &self.field;
        let n = p + q;
        if n > self.top() {
            return Err(Error::Window(format!("cup product lands in degree {n}, beyond the resolution")));
        }
        let fm = self.expand(m, p, fc)?;
        let gm = self.expand(m, q, gc)?;
        let dq = self.dims[q];
        let mut cols = Vec::with_capacity(self.dims[n]);
        for x in 0..self.dims[n] {
            let mut acc = Vec::new();
            for (t, c) in self.delta[n][p].col(x) {
                let (a, b) = (t / dq, t % dq);
                let prod = mult(fm.col(a), gm.col(b));
                acc.extend(prod.into_iter().map(|(i, v)| (i, f.mul(&v, c))));
            }
            cols.push(crate::exactla::sparse::normalize_svec(f, acc));
        }
        let map = SparseMat::from_columns(m.action.dim, cols);
        Ok(self.restrict(m, n, &map))
    }
}

/// `A ⊗ B` with basis `a * dim B + b`.
pub fn kron<F: Field>(f: &F, a: &SparseMat<F::E>, b: &SparseMat<F::E>) -> SparseMat<F::E> {
    let mut trip = Vec::new();
    for (i, j, x) in a.entries() {
        for (k, l, y) in b.entries() {
            trip.push((i * b.rows() + k, j * b.ncols() + l, f.mul(x, y)));
        }
    }
    SparseMat::from_triplets(f, a.rows() * b.rows(), a.ncols() * b.ncols(), trip).expect("in range")
}

/// A `kG`-module together with its `H`-invariants, the coefficient space of
/// the periodic resolution.
#[derive(Clone, Debug)]
pub struct CoefficientModule<F: Field> {
    pub action: GroupAction<F>,
    pub h_invariants: Subspace<F::E>,
}

impl<F: Field> CoefficientModule<F> {
    pub fn new(f: &F, action: GroupAction<F>, h: &[usize]) -> Self {
        let h_invariants = Subspace::span(f, action.dim, action.invariants(f, h));
        CoefficientModule { action, h_invariants }
    }

    /// For resolutions without a distinguished subgroup.
    pub fn plain(f: &F, action: GroupAction<F>) -> Self {
        let h_invariants = Subspace::full(f, action.dim);
        CoefficientModule { action, h_invariants }
    }

    pub fn for_resolution(res: &KGResolution<F>, action: GroupAction<F>) -> Self {
        match &res.ext {
            Some(ext) if res.kind == ResolutionKind::Periodic => Self::new(&res.field, action, &ext.h),
            _ => Self::plain(&res.field, action),
        }
    }
}

fn bar_like<F: Field>(f: &F, g: &FinGroup, top: usize, normalized: bool, guard: &Guard) -> Result<KGResolution<F>> {
    let letters: Vec<usize> = (0..g.order()).filter(|&x| !normalized || x != g.identity).collect();
    let l = letters.len();
    let gn = g.order();
    let dims: Vec<usize> = (0..=top)
        .map(|n| l.checked_pow(n as u32).and_then(|x| x.checked_mul(gn)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Resource { matrix: "bar resolution".into(), rows: 0, cols: 0, bytes: u64::MAX, limit: guard.limit_bytes })?;
    for n in 0..=top {
        let size = dims[n] as u64 * (n as u64 + 2) * (top as u64 + 1);
        guard.check(&format!("bar resolution degree {n}"), dims[n], dims[n], size, std::mem::size_of::<F::E>())?;
    }
    let pos = |x: usize| letters.iter().position(|&y| y == x);
    // Basis of Q_n: (α_0, α_1..α_n) ↦ α_0 * l^n + index(α_1..α_n).
    let encode = |a0: usize, rest: &[usize]| -> Option<usize> {
        let mut acc = 0;
        for &x in rest {
            acc = acc * l + pos(x)?;
        }
        Some(a0 * l.pow(rest.len() as u32) + acc)
    };
    let decode = |x: usize, n: usize| -> Vec<usize> {
        let inner = l.pow(n as u32);
        let mut t = vec![x / inner];
        t.extend(tuple_digits(x % inner, n, l).into_iter().map(|k| letters[k]));
        t
    };
    let mut d = vec![SparseMat::from_columns(1, (0..gn).map(|_| vec![(0, f.one())]).collect())];
    for n in 1..=top {
        let mut trip = Vec::new();
        for x in 0..dims[n] {
            let t = decode(x, n);
            for i in 0..n {
                let mut u = t[..i].to_vec();
                u.push(g.mul(t[i], t[i + 1]));
                u.extend_from_slice(&t[i + 2..]);
                if let Some(y) = encode(u[0], &u[1..]) {
                    trip.push((y, x, f.sign(i % 2 == 1)));
                }
            }
            trip.push((encode(t[0], &t[1..n]).unwrap(), x, f.sign(n % 2 == 1)));
        }
        d.push(SparseMat::from_triplets(f, dims[n - 1], dims[n], trip)?);
    }
    // Δ(α_0..α_n) = Σ_i (α_0..α_i) ⊗ (α_0⋯α_i, α_{i+1}..α_n)
    let mut delta = Vec::new();
    for n in 0..=top {
        let mut comps = Vec::new();
        for a in 0..=n {
            let b = n - a;
            let mut trip = Vec::new();
            for x in 0..dims[n] {
                let t = decode(x, n);
                let prod = t[..=a].iter().fold(g.identity, |acc, &y| g.mul(acc, y));
                let left = encode(t[0], &t[1..=a]);
                let right = encode(prod, &t[a + 1..]);
                if let (Some(u), Some(v)) = (left, right) {
                    trip.push((u * dims[b] + v, x, f.one()));
                }
            }
            comps.push(SparseMat::from_triplets(f, dims[a] * dims[b], dims[n], trip)?);
        }
        delta.push(comps);
    }
    let kind = if normalized { ResolutionKind::NormalizedBar } else { ResolutionKind::Bar };
    Ok(KGResolution { kind, field: f.clone(), group: g.clone(), ext: None, dims, d, delta, letters })
}

/// Bar resolution of `k` up to degree `top`.
pub fn bar_resolution_trivial<F: Field>(f: &F, g: &FinGroup, top: usize, guard: &Guard) -> Result<KGResolution<F>> {
    bar_like(f, g, top, false, guard)
}

/// Normalized bar resolution of `k` up to degree `top`.
pub fn normalized_bar_resolution<F: Field>(f: &F, g: &FinGroup, top: usize, guard: &Guard) -> Result<KGResolution<F>> {
    bar_like(f, g, top, true, guard)
}

/// `Q_n = (kG)e_H` with `d(e_H[n])` equal to `(1 − ρ)e_H[n−1]` for odd `n`
/// and `N e_H[n−1]` for even `n > 0`, `N = Σ_{t<q} ρ^t`. Basis of `Q_n`:
/// `ρ^k e_H` for `k < q`.
pub fn periodic_resolution<F: Field>(f: &F, g: &FinGroup, ext: &CqExtension, top: usize) -> Result<KGResolution<F>> {
    let p = f.characteristic();
    if p != 0 && (ext.h.len() as u64).is_multiple_of(p) {
        return Err(Error::Validation("e_H undefined: |H| is divisible by the characteristic".into()));
    }
    let checked = CqExtension::new(g, &ext.h, ext.rho, p)?;
    if checked != *ext {
        return Err(Error::Structural("extension data does not match the group".into()));
    }
    let q = ext.q;
    let dims = vec![q; top + 1];
    let mut d = vec![SparseMat::from_columns(1, (0..q).map(|_| vec![(0, f.one())]).collect())];
    let minus = f.neg(&f.one());
    for n in 1..=top {
        let cols = (0..q)
            .map(|k| {
                if n % 2 == 1 {
                    crate::exactla::sparse::normalize_svec(f, vec![(k, f.one()), ((k + 1) % q, minus.clone())])
                } else {
                    (0..q).map(|t| (t, f.one())).collect()
                }
            })
            .collect();
        d.push(SparseMat::from_columns(q, cols));
    }
    // Components of Δ(e_H[n]) as (i, j, sign) with i, j the ρ-exponents of
    // the two tensor factors:
    //   Δ(e[2n])   = Σ e[2m]⊗e[2n-2m] − Σ_m Σ_{i<j} ρ^i e[2m+1]⊗ρ^j e[2n-2m-1]
    //   Δ(e[2n+1]) = Σ e[2m]⊗e[2n-2m+1] + Σ e[2m+1]⊗ρ e[2n-2m]
    let mut delta = Vec::new();
    for n in 0..=top {
        let mut terms: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n + 1];
        let half = n / 2;
        if n % 2 == 0 {
            for m in 0..=half {
                terms[2 * m].push((0, 0, false));
            }
            for m in 0..half {
                for i in 0..q {
                    for j in i + 1..q {
                        terms[2 * m + 1].push((i, j, true));
                    }
                }
            }
        } else {
            for m in 0..=half {
                terms[2 * m].push((0, 0, false));
                terms[2 * m + 1].push((0, 1 % q, false));
            }
        }
        let mut comps = Vec::new();
        for ts in &terms {
            let mut trip = Vec::new();
            for k in 0..q {
                // ρ^k Δ(e_H[n]) with the diagonal action.
                for &(i, j, neg) in ts {
                    trip.push((((i + k) % q) * q + (j + k) % q, k, f.sign(neg)));
                }
            }
            comps.push(SparseMat::from_triplets(f, q * q, q, trip)?);
        }
        delta.push(comps);
    }
    Ok(KGResolution {
        kind: ResolutionKind::Periodic,
        field: f.clone(),
        group: g.clone(),
        ext: Some(ext.clone()),
        dims,
        d,
        delta,
        letters: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct GroupCohomologySlice<E> {
    pub degree: usize,
    pub basis: SubquotientBasis<E>,
}

impl<E> GroupCohomologySlice<E> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// `H^0(G,M), ..., H^up_to(G,M)`; the resolution must reach degree
/// `up_to + 1`.
pub fn group_cohomology<F: Field>(
    res: &KGResolution<F>,
    m: &CoefficientModule<F>,
    up_to: usize,
) -> Result<Vec<GroupCohomologySlice<F::E>>> {
    if res.top() < up_to + 1 {
        return Err(Error::Window(format!("resolution stops at degree {}, need {}", res.top(), up_to + 1)));
    }
    let f = &res.field;
    let deltas = (0..=up_to).map(|n| res.cochain_differential(m, n)).collect::<Result<Vec<_>>>()?;
    (0..=up_to)
        .map(|n| {
            let inn = if n == 0 { SparseMat::zeros(res.cochain_dim(m, 0), 0) } else { deltas[n - 1].clone() };
            Ok(GroupCohomologySlice { degree: n, basis: subquotient(f, &inn, &deltas[n], n)? })
        })
        .collect()
}

/// `e_H = Σ_{h∈H} h / |H|` as an element of `kG`.
pub fn e_h<F: Field>(f: &F, h: &[usize]) -> Result<SVec<F::E>> {
    let n = f.from_i64(h.len() as i64);
    if f.is_zero(&n) {
        return Err(Error::Validation("e_H undefined: |H| is divisible by the characteristic".into()));
    }
    let c = f.inv(&n);
    let mut v: SVec<F::E> = h.iter().map(|&x| (x, c.clone())).collect();
    v.sort_by_key(|e| e.0);
    Ok(v)
}

/// Product in `kG`.
pub fn group_algebra_mul<F: Field>(f: &F, g: &FinGroup, x: &[(usize, F::E)], y: &[(usize, F::E)]) -> SVec<F::E> {
    let mut acc = Vec::new();
    for (a, c) in x {
        for (b, d) in y {
            acc.push((g.mul(*a, *b), f.mul(c, d)));
        }
    }
    crate::exactla::sparse::normalize_svec(f, acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::signed_permutation;
    use crate::exactla::Fp;

    fn regular_action(f: &Fp, g: &FinGroup) -> GroupAction<Fp> {
        let n = g.order();
        let mats = (0..n).map(|a| SparseMat::from_columns(n, (0..n).map(|x| vec![(g.mul(a, x), f.one())]).collect())).collect();
        GroupAction { dim: n, mats }
    }

    #[test]
    fn trivial_group_bar() {
        let f = Fp::new(2).unwrap();
        let g = FinGroup::trivial();
        let res = bar_resolution_trivial(&f, &g, 4, &Guard::default()).unwrap();
        assert_eq!(res.dims, vec![1; 5]);
        for n in 1..=4 {
            assert_eq!(rank(&f, &res.d[n]), (n + 1) % 2);
        }
        let m = CoefficientModule::plain(&f, GroupAction::trivial(&f, &g, 1));
        let dims: Vec<usize> = group_cohomology(&res, &m, 3).unwrap().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn bar_dims_and_first_differential() {
        let f = Fp::new(3).unwrap();
        let g = FinGroup::cyclic(2).unwrap();
        let res = bar_resolution_trivial(&f, &g, 3, &Guard::default()).unwrap();
        assert_eq!(res.dims, vec![2, 4, 8, 16]);
        // d(α_0 ⊗ α_1) = α_0α_1 − α_0, basis index α_0 * 2 + α_1.
        let expect = vec![vec![0, 2, 0, 1], vec![0, 1, 0, 2]];
        assert_eq!(res.d[1].to_dense(&f), expect);
        assert!(res.validate().unwrap().passed());
    }

    #[test]
    fn periodic_for_c2_in_char_two() {
        let f = Fp::new(2).unwrap();
        let g = FinGroup::cyclic(2).unwrap();
        let ext = CqExtension::new(&g, &[0], 1, 2).unwrap();
        let res = periodic_resolution(&f, &g, &ext, 5).unwrap();
        // 1 − ρ and 1 + ρ coincide over F_2.
        assert_eq!(res.d[1], res.d[2]);
        assert_eq!(res.d[1].to_dense(&f), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(res.d[0].to_dense(&f), vec![vec![1, 1]]);
        assert!(res.validate().unwrap().passed());
        let m = CoefficientModule::for_resolution(&res, GroupAction::trivial(&f, &g, 1));
        let dims: Vec<usize> = group_cohomology(&res, &m, 4).unwrap().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![1; 5]);
    }

    #[test]
    fn periodic_resolutions_validate() {
        let f2 = Fp::new(2).unwrap();
        let f3 = Fp::new(3).unwrap();
        let s3 = FinGroup::dihedral(3).unwrap();
        let c6 = FinGroup::cyclic(6).unwrap();
        let c4 = FinGroup::cyclic(4).unwrap();
        let cases = vec![
            (f2, s3.clone(), CqExtension::new(&s3, &s3.generated(&[1]), 3, 2).unwrap()),
            (f3, c6.clone(), CqExtension::new(&c6, &c6.generated(&[3]), 1, 3).unwrap()),
            (f2, c4.clone(), CqExtension::new(&c4, &[0], 1, 2).unwrap()),
            (Fp::new(5).unwrap(), s3.clone(), CqExtension::coprime(&s3, 5).unwrap()),
        ];
        for (f, g, ext) in cases {
            let res = periodic_resolution(&f, &g, &ext, 5).unwrap();
            let rep = res.validate().unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }

    #[test]
    fn e_h_undefined_when_characteristic_divides() {
        let f = Fp::new(3).unwrap();
        assert!(e_h(&f, &[0, 1, 2]).is_err());
        let g = FinGroup::dihedral(3).unwrap();
        let ext = CqExtension::new(&g, &g.generated(&[1]), 3, 2).unwrap();
        assert!(matches!(periodic_resolution(&f, &g, &ext, 2), Err(Error::Validation(m)) if m.contains("e_H undefined")));
    }

    #[test]
    fn e_h_is_a_central_idempotent() {
        let f = Fp::new(2).unwrap();
        let g = FinGroup::dihedral(3).unwrap();
        let e = e_h(&f, &g.generated(&[1])).unwrap();
        assert_eq!(group_algebra_mul(&f, &g, &e, &e), e);
        for a in 0..g.order() {
            let x = vec![(a, 1)];
            assert_eq!(group_algebra_mul(&f, &g, &e, &x), group_algebra_mul(&f, &g, &x, &e));
        }
    }

    /// Resolution independence on several modules.
    #[test]
    fn bar_and_periodic_agree() {
        let f2 = Fp::new(2).unwrap();
        let f3 = Fp::new(3).unwrap();
        let c2 = FinGroup::cyclic(2).unwrap();
        let c6 = FinGroup::cyclic(6).unwrap();
        let s3 = FinGroup::dihedral(3).unwrap();
        let swap = signed_permutation(&f2, &[(1, false), (0, false)]).unwrap();
        let cases: Vec<(Fp, FinGroup, CqExtension, GroupAction<Fp>)> = vec![
            (f2, c2.clone(), CqExtension::new(&c2, &[0], 1, 2).unwrap(), GroupAction::trivial(&f2, &c2, 1)),
            (f2, c2.clone(), CqExtension::new(&c2, &[0], 1, 2).unwrap(), regular_action(&f2, &c2)),
            (
                f2,
                c2.clone(),
                CqExtension::new(&c2, &[0], 1, 2).unwrap(),
                GroupAction::from_generators(&f2, &c2, 3, &[(1, swap.direct_sum(&SparseMat::identity(&f2, 1)))]).unwrap(),
            ),
            (f3, c6.clone(), CqExtension::new(&c6, &c6.generated(&[3]), 1, 3).unwrap(), GroupAction::trivial(&f3, &c6, 2)),
            (f2, s3.clone(), CqExtension::new(&s3, &s3.generated(&[1]), 3, 2).unwrap(), regular_action(&f2, &s3)),
            (f2, s3.clone(), CqExtension::new(&s3, &s3.generated(&[1]), 3, 2).unwrap(), GroupAction::trivial(&f2, &s3, 1)),
        ];
        for (f, g, ext, act) in cases {
            let top = if g.order() > 2 { 3 } else { 5 };
            let per = periodic_resolution(&f, &g, &ext, top + 1).unwrap();
            let bar = bar_resolution_trivial(&f, &g, top + 1, &Guard::default()).unwrap();
            let nbar = normalized_bar_resolution(&f, &g, top + 1, &Guard::default()).unwrap();
            let dims = |r: &KGResolution<Fp>| -> Vec<usize> {
                let m = CoefficientModule::for_resolution(r, act.clone());
                group_cohomology(r, &m, top).unwrap().iter().map(|s| s.dim()).collect()
            };
            let dp = dims(&per);
            assert_eq!(dp, dims(&bar), "{:?}", g.labels);
            assert_eq!(dp, dims(&nbar));
            // Periodicity: H^n = H^1 for n ≥ 1 when H = 1 … and in general.
            if ext.q > 1 {
                assert!(dp[1..].iter().all(|&x| x == dp[1]), "{dp:?}");
            }
        }
    }

    #[test]
    fn projective_and_coprime_coefficients() {
        let f = Fp::new(2).unwrap();
        let g = FinGroup::cyclic(4).unwrap();
        let res = bar_resolution_trivial(&f, &g, 4, &Guard::default()).unwrap();
        let m = CoefficientModule::plain(&f, regular_action(&f, &g));
        let dims: Vec<usize> = group_cohomology(&res, &m, 3).unwrap().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
        let f5 = Fp::new(5).unwrap();
        let s3 = FinGroup::dihedral(3).unwrap();
        let res = bar_resolution_trivial(&f5, &s3, 3, &Guard::default()).unwrap();
        let m = CoefficientModule::plain(&f5, regular_action(&f5, &s3));
        let dims: Vec<usize> = group_cohomology(&res, &m, 2).unwrap().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![1, 0, 0]);
    }

    #[test]
    fn cup_formulas_match_comultiplication() {
        // Bar: (f ⌣ g)(α_1..α_{p+q}) = f(α_1..α_p) · (α_1⋯α_p) g(α_{p+1}..).
        let f = Fp::new(3).unwrap();
        let g = FinGroup::cyclic(3).unwrap();
        let res = bar_resolution_trivial(&f, &g, 3, &Guard::default()).unwrap();
        // k[x]/(x³ − 1) ≅ kC_3 acting on itself by translation.
        let act = regular_action(&f, &g);
        let m = CoefficientModule::plain(&f, act.clone());
        let mult = |x: &[(usize, u32)], y: &[(usize, u32)]| group_algebra_mul(&f, &g, x, y);
        let fc: Vec<u32> = (0..res.cochain_dim(&m, 1)).map(|i| (i * 7 % 3) as u32).collect();
        let gc: Vec<u32> = (0..res.cochain_dim(&m, 1)).map(|i| (i * 5 % 3) as u32).collect();
        let cup = res.cup(&m, &mult, 1, &fc, 1, &gc).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let fa = svec_from(&f, &fc[a * 3..a * 3 + 3]);
                let gb = svec_from(&f, &gc[b * 3..b * 3 + 3]);
                let expect = mult(&fa, &act.apply(&f, a, &gb));
                let got = svec_from(&f, &cup[(a * 3 + b) * 3..(a * 3 + b) * 3 + 3]);
                assert_eq!(got, expect);
            }
        }
    }

    fn svec_from(f: &Fp, v: &[u32]) -> SVec<u32> {
        crate::exactla::sparse::dense_to_svec(f, v)
    }
}
