//! Indexing of Hochschild cochains.
//!
//! Cochains live in one of three models of the bar complex:
//!
//! * `Full`: `Hom(A^{⊗n}, M)` on all basis tuples.
//! * `Normalized`: tuples avoid the unit, when the unit is a basis vector.
//! * `Relative`: when the basis contains a complete set of orthogonal
//!   idempotents `e_s` and every other basis vector of `A` and `M` lies in a
//!   single block `e_s (-) e_t`, cochains are indexed by composable tuples of
//!   non-idempotent basis vectors and take values in the matching block of
//!   `M`.
//!
//! All three compute the same cohomology; the smaller models embed into the
//! full one by extension by zero.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{EquivariantBimodule, FinAlgebra, FinGroup, GroupAction};
use crate::error::{Error, Result};
use crate::exactla::sparse::{normalize_svec, SVec, SparseMat};
use crate::exactla::Field;

/// Default memory budget for a single matrix.
pub const DEFAULT_GUARD_BYTES: u64 = 2 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    Full,
    Normalized,
    Relative,
}

/// Upper bound on the memory one matrix may take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub limit_bytes: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { limit_bytes: DEFAULT_GUARD_BYTES }
    }
}

impl Guard {
    pub fn unlimited() -> Self {
        Guard { limit_bytes: u64::MAX }
    }

    /// Fail with a resource error if `entries` stored entries of
    /// `entry_bytes` each exceed the budget.
    pub fn check(&self, matrix: &str, rows: usize, cols: usize, entries: u64, entry_bytes: usize) -> Result<()> {
        let bytes = entries.saturating_mul(entry_bytes as u64 + 8).saturating_add(cols as u64 * 24);
        if bytes > self.limit_bytes {
            return Err(Error::Resource { matrix: matrix.to_string(), rows, cols, bytes, limit: self.limit_bytes });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ModelOptions<F: Field> {
    /// Action on `A` that the model must be compatible with.
    pub a_action: Option<GroupAction<F>>,
    /// Force a particular model instead of the smallest applicable one.
    pub force: Option<ModelKind>,
    pub guard: Guard,
}

impl<F: Field> Default for ModelOptions<F> {
    fn default() -> Self {
        ModelOptions { a_action: None, force: None, guard: Guard::default() }
    }
}

/// Tuples of one degree with their value blocks.
#[derive(Debug)]
pub struct DegreeIndex {
    pub n: usize,
    flat: Vec<u32>,
    /// `(source, target)` object of each tuple.
    pub ends: Vec<(usize, usize)>,
    /// `offsets[k]` is the first coordinate of tuple `k`; one extra entry at
    /// the end holds the dimension.
    pub offsets: Vec<usize>,
    lookup: HashMap<Vec<u32>, usize>,
}

impl DegreeIndex {
    pub fn count(&self) -> usize {
        self.ends.len()
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Arrow positions of tuple `k`; empty in degree zero.
    pub fn tuple(&self, k: usize) -> &[u32] {
        &self.flat[k * self.n..(k + 1) * self.n]
    }

    pub fn find(&self, t: &[u32]) -> Option<usize> {
        self.lookup.get(t).copied()
    }
}

#[derive(Debug)]
pub struct CochainModel<F: Field> {
    pub field: F,
    pub a: FinAlgebra<F>,
    pub m: EquivariantBimodule<F>,
    pub kind: ModelKind,
    pub a_action: Option<GroupAction<F>>,
    pub guard: Guard,
    objects: usize,
    /// Basis indices of `A` that are not in the chosen idempotent set.
    arrows: Vec<usize>,
    arrow_of: Vec<Option<u32>>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    /// Module basis indices of block `(s, t)` at `s * objects + t`.
    blocks: Vec<Vec<usize>>,
    /// Block id and position inside it of every module basis vector.
    mpos: Vec<(usize, usize)>,
    /// Products of arrows, expressed in arrows (idempotent parts dropped).
    aprod: Vec<Vec<(u32, F::E)>>,
    degrees: Mutex<Vec<Arc<DegreeIndex>>>,
}

impl<F: Field> CochainModel<F> {
    pub fn new(a: &FinAlgebra<F>, m: &EquivariantBimodule<F>, opts: ModelOptions<F>) -> Result<Self> {
        if m.base_dim() != a.dim() {
            return Err(Error::Structural("module is over an algebra of a different dimension".into()));
        }
        let f = a.field.clone();
        let candidates: Vec<Option<(ModelKind, Vec<usize>)>> = vec![
            relative_idempotents(a, m).map(|e| (ModelKind::Relative, e)),
            a.unit_index().map(|u| (ModelKind::Normalized, vec![u])),
            Some((ModelKind::Full, Vec::new())),
        ];
        let mut chosen = None;
        for (kind, e) in candidates.into_iter().flatten() {
            if opts.force.is_some_and(|k| k != kind) {
                continue;
            }
            if let Some(act) = &opts.a_action {
                if !stable(act, &e) {
                    continue;
                }
            }
            chosen = Some((kind, e));
            break;
        }
        let (kind, idem) = chosen.ok_or_else(|| Error::Contract("requested cochain model does not apply to this algebra".into()))?;
        let objects = if kind == ModelKind::Relative { idem.len() } else { 1 };
        let arrows: Vec<usize> = (0..a.dim()).filter(|i| !idem.contains(i)).collect();
        let mut arrow_of = vec![None; a.dim()];
        for (k, &i) in arrows.iter().enumerate() {
            arrow_of[i] = Some(k as u32);
        }
        let (mut src, mut tgt) = (vec![0; arrows.len()], vec![0; arrows.len()]);
        let mut mobj = vec![(0, 0); m.dim()];
        if kind == ModelKind::Relative {
            for (k, &i) in arrows.iter().enumerate() {
                let (s, t) = a_block(a, &idem, i).expect("checked homogeneous");
                src[k] = s;
                tgt[k] = t;
            }
            for (x, o) in mobj.iter_mut().enumerate() {
                *o = m_block(&f, m, &idem, x).expect("checked homogeneous");
            }
        }
        let mut blocks = vec![Vec::new(); objects * objects];
        let mut mpos = vec![(0, 0); m.dim()];
        for x in 0..m.dim() {
            let b = mobj[x].0 * objects + mobj[x].1;
            mpos[x] = (b, blocks[b].len());
            blocks[b].push(x);
        }
        let na = arrows.len();
        let mut aprod = Vec::with_capacity(na * na);
        for &i in &arrows {
            for &j in &arrows {
                aprod.push(a.product(i, j).iter().filter_map(|(k, c)| arrow_of[*k].map(|p| (p, c.clone()))).collect());
            }
        }
        Ok(CochainModel {
            field: f,
            a: a.clone(),
            m: m.clone(),
            kind,
            a_action: opts.a_action,
            guard: opts.guard,
            objects,
            arrows,
            arrow_of,
            src,
            tgt,
            blocks,
            mpos,
            aprod,
            degrees: Mutex::new(Vec::new()),
        })
    }

    /// Smallest applicable model with default options.
    pub fn auto(a: &FinAlgebra<F>, m: &EquivariantBimodule<F>) -> Result<Self> {
        Self::new(a, m, ModelOptions::default())
    }

    pub fn full(a: &FinAlgebra<F>, m: &EquivariantBimodule<F>) -> Result<Self> {
        Self::new(a, m, ModelOptions { force: Some(ModelKind::Full), ..Default::default() })
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn block(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s * self.objects + t]
    }

    fn arrow_product(&self, i: u32, j: u32) -> &[(u32, F::E)] {
        &self.aprod[i as usize * self.arrows.len() + j as usize]
    }

    /// Index of degree `n`, built on first use.
    pub fn degree(&self, n: usize) -> Result<Arc<DegreeIndex>> {
        let mut degs = self.degrees.lock().unwrap();
        while degs.len() <= n {
            let next = if degs.is_empty() { self.degree_zero() } else { self.extend(degs.last().unwrap())? };
            degs.push(Arc::new(next));
        }
        Ok(degs[n].clone())
    }

    fn degree_zero(&self) -> DegreeIndex {
        let mut offsets = vec![0];
        let mut ends = Vec::new();
        let mut lookup = HashMap::new();
        for s in 0..self.objects {
            ends.push((s, s));
            lookup.insert(vec![s as u32], s);
            offsets.push(offsets[s] + self.block(s, s).len());
        }
        DegreeIndex { n: 0, flat: Vec::new(), ends, offsets, lookup }
    }

    fn extend(&self, prev: &DegreeIndex) -> Result<DegreeIndex> {
        let n = prev.n + 1;
        let mut count = 0u64;
        let mut dim = 0u64;
        let tuple_end = |k: usize| if prev.n == 0 { prev.ends[k].1 } else { self.tgt[*prev.tuple(k).last().unwrap() as usize] };
        for k in 0..prev.count() {
            let end = tuple_end(k);
            for (b, _) in self.arrows.iter().enumerate() {
                if self.src[b] == end {
                    count += 1;
                    let start = if prev.n == 0 { end } else { prev.ends[k].0 };
                    dim += self.block(start, self.tgt[b]).len() as u64;
                }
            }
        }
        self.guard.check(&format!("bar degree {n} index"), dim as usize, 0, count * (n as u64 + 4), 4)?;
        let mut flat = Vec::with_capacity(count as usize * n);
        let mut ends = Vec::with_capacity(count as usize);
        let mut offsets = Vec::with_capacity(count as usize + 1);
        let mut lookup = HashMap::with_capacity(count as usize);
        offsets.push(0);
        for k in 0..prev.count() {
            let end = tuple_end(k);
            for b in 0..self.arrows.len() {
                if self.src[b] != end {
                    continue;
                }
                let start = if prev.n == 0 { self.src[b] } else { prev.ends[k].0 };
                let mut t = prev.tuple(k).to_vec();
                t.push(b as u32);
                lookup.insert(t.clone(), ends.len());
                flat.extend_from_slice(&t);
                ends.push((start, self.tgt[b]));
                offsets.push(offsets.last().unwrap() + self.block(start, self.tgt[b]).len());
            }
        }
        Ok(DegreeIndex { n, flat, ends, offsets, lookup })
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.degree(n)?.dim())
    }

    /// Value block of a tuple in degree `n` (or object in degree zero).
    pub fn tuple_block(&self, deg: &DegreeIndex, k: usize) -> &[usize] {
        let (s, t) = deg.ends[k];
        self.block(s, t)
    }

    /// Coordinate of `(tuple k, module basis x)`.
    pub fn coord(&self, deg: &DegreeIndex, k: usize, x: usize) -> usize {
        deg.offsets[k] + self.mpos[x].1
    }

    /// Locate the tuple `t` (arrow positions) or, in degree zero, the object.
    fn locate(&self, deg: &DegreeIndex, t: &[u32], object: usize) -> Option<usize> {
        if deg.n == 0 {
            Some(object)
        } else {
            deg.find(t)
        }
    }

    /// Matrix of `δ^n: C^n → C^{n+1}`.
    pub fn differential(&self, n: usize) -> Result<SparseMat<F::E>> {
        let f = &self.field;
        let d0 = self.degree(n)?;
        let d1 = self.degree(n + 1)?;
        let est = d1.dim() as u64 * (n as u64 + 2) * 2;
        self.guard.check(&format!("δ^{n}"), d1.dim(), d0.dim(), est, std::mem::size_of::<F::E>())?;
        let minus_one = f.neg(&f.one());
        let sign = |i: usize| if i.is_multiple_of(2) { f.one() } else { minus_one.clone() };
        let triplets: Vec<(usize, usize, F::E)> = (0..d1.count())
            .into_par_iter()
            .flat_map_iter(|k| {
                let mut out = Vec::new();
                let t = d1.tuple(k);
                let (s, e) = d1.ends[k];
                // a_1 · f(a_2, ...)
                let a1 = self.arrows[t[0] as usize];
                if let Some(c) = self.locate(&d0, &t[1..], self.tgt[t[0] as usize]) {
                    for &y in self.tuple_block(&d0, c) {
                        for (x, v) in self.m.left_basis(a1, y) {
                            out.push((self.coord(&d1, k, *x), self.coord(&d0, c, y), v.clone()));
                        }
                    }
                }
                // f(..., a_i a_{i+1}, ...)
                let mut buf = Vec::with_capacity(n);
                for i in 0..n {
                    let sg = sign(i + 1);
                    for (p, c) in self.arrow_product(t[i], t[i + 1]) {
                        buf.clear();
                        buf.extend_from_slice(&t[..i]);
                        buf.push(*p);
                        buf.extend_from_slice(&t[i + 2..]);
                        let Some(col) = d0.find(&buf) else { continue };
                        let coef = f.mul(&sg, c);
                        for &x in self.block(s, e) {
                            out.push((self.coord(&d1, k, x), self.coord(&d0, col, x), coef.clone()));
                        }
                    }
                }
                // f(..., a_n) · a_{n+1}
                let an = self.arrows[t[n] as usize];
                let sg = sign(n + 1);
                if let Some(c) = self.locate(&d0, &t[..n], self.src[t[n] as usize]) {
                    for &y in self.tuple_block(&d0, c) {
                        for (x, v) in self.m.right_basis(y, an) {
                            out.push((self.coord(&d1, k, *x), self.coord(&d0, c, y), f.mul(&sg, v)));
                        }
                    }
                }
                out
            })
            .collect();
        SparseMat::from_triplets(f, d1.dim(), d0.dim(), triplets)
    }

    /// Cup product `(f ⌣ g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q})`.
    pub fn cup(&self, p: usize, fv: &[F::E], q: usize, gv: &[F::E]) -> Result<Vec<F::E>> {
        if !self.m.is_algebra() {
            return Err(Error::Contract("cup product needs a module with a multiplication".into()));
        }
        let f = &self.field;
        let (dp, dq, dn) = (self.degree(p)?, self.degree(q)?, self.degree(p + q)?);
        if fv.len() != dp.dim() || gv.len() != dq.dim() {
            return Err(Error::Structural("cochain length does not match its degree".into()));
        }
        let mut out = vec![f.zero(); dn.dim()];
        for k in 0..dn.count() {
            let t = dn.tuple(k);
            let (s, e) = dn.ends[k];
            // Degree-zero factors are evaluated at the object where they sit.
            let Some(cf) = self.locate(&dp, &t[..p], s) else { continue };
            let Some(cg) = self.locate(&dq, &t[p..], e) else { continue };
            for &y in self.tuple_block(&dp, cf) {
                let a = &fv[self.coord(&dp, cf, y)];
                if f.is_zero(a) {
                    continue;
                }
                for &z in self.tuple_block(&dq, cg) {
                    let b = &gv[self.coord(&dq, cg, z)];
                    if f.is_zero(b) {
                        continue;
                    }
                    let ab = f.mul(a, b);
                    for (x, c) in self.m.mul_basis(y, z).unwrap() {
                        if self.mpos[*x].0 != s * self.objects + e {
                            return Err(Error::Contract("module product leaves its block".into()));
                        }
                        let i = self.coord(&dn, k, *x);
                        out[i] = f.mul_add(&out[i], &ab, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `f ↦ ᵅf`, `(ᵅf)(a_1..a_n) = α f(α⁻¹a_1, ..., α⁻¹a_n)`.
    pub fn action_matrix(&self, group: &FinGroup, alpha: usize, n: usize) -> Result<SparseMat<F::E>> {
        let act = self.a_action.as_ref().ok_or_else(|| Error::Contract("cochain model was built without an action on A".into()))?;
        let f = &self.field;
        let inv = group.inv(alpha);
        let deg = self.degree(n)?;
        let mact = &self.m.action.mats[alpha];
        let images: Vec<Vec<(u32, F::E)>> = self
            .arrows
            .iter()
            .map(|&i| act.apply_basis(inv, i).iter().filter_map(|(k, c)| self.arrow_of[*k].map(|p| (p, c.clone()))).collect())
            .collect();
        let triplets: Vec<(usize, usize, F::E)> = (0..deg.count())
            .into_par_iter()
            .flat_map_iter(|k| {
                let mut out = Vec::new();
                let row_block = deg.ends[k].0 * self.objects + deg.ends[k].1;
                let mut push = |col: usize, coef: &F::E| {
                    for &y in self.tuple_block(&deg, col) {
                        for (x, v) in mact.col(y) {
                            if self.mpos[*x].0 == row_block {
                                out.push((self.coord(&deg, k, *x), self.coord(&deg, col, y), f.mul(coef, v)));
                            }
                        }
                    }
                };
                if n == 0 {
                    for col in 0..deg.count() {
                        push(col, &f.one());
                    }
                    return out;
                }
                // Expand Π_k α⁻¹(t_k) over composable arrow tuples.
                let t = deg.tuple(k);
                let mut partial: Vec<(Vec<u32>, F::E)> = vec![(Vec::new(), f.one())];
                for &a in t {
                    let mut next = Vec::new();
                    for (u, c) in &partial {
                        for (p, d) in &images[a as usize] {
                            if let Some(&last) = u.last() {
                                if self.tgt[last as usize] != self.src[*p as usize] {
                                    continue;
                                }
                            }
                            let mut v = u.clone();
                            v.push(*p);
                            next.push((v, f.mul(c, d)));
                        }
                    }
                    partial = next;
                }
                for (u, c) in partial {
                    if let Some(col) = deg.find(&u) {
                        push(col, &c);
                    }
                }
                out
            })
            .collect();
        SparseMat::from_triplets(f, deg.dim(), deg.dim(), triplets)
    }

    /// Averaging operator `Σ_{h ∈ H} ᵸ(-)` (not divided by `|H|`).
    pub fn orbit_sum(&self, group: &FinGroup, h: &[usize], n: usize) -> Result<SparseMat<F::E>> {
        let d = self.dim(n)?;
        let mut acc = SparseMat::zeros(d, d);
        for &x in h {
            acc = acc.add(&self.field, &self.action_matrix(group, x, n)?)?;
        }
        Ok(acc)
    }

    /// Column index in `A^{⊗n}` (lexicographic) of a tuple of `A` indices.
    pub fn full_column(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &i| acc * self.a.dim() + i)
    }

    /// Extension by zero to the full cochain space, as a `dim M × dim A^n`
    /// matrix.
    pub fn to_full(&self, n: usize, v: &[F::E]) -> Result<SparseMat<F::E>> {
        let f = &self.field;
        let deg = self.degree(n)?;
        let cols = self.a.dim().checked_pow(n as u32).ok_or_else(|| Error::Structural("tensor power too large".into()))?;
        self.guard.check("full cochain", self.m.dim(), cols, deg.dim() as u64, std::mem::size_of::<F::E>())?;
        let mut trip = Vec::new();
        for k in 0..deg.count() {
            let idx: Vec<usize> = deg.tuple(k).iter().map(|&p| self.arrows[p as usize]).collect();
            let col = self.full_column(&idx);
            for &x in self.tuple_block(&deg, k) {
                trip.push((x, col, v[self.coord(&deg, k, x)].clone()));
            }
        }
        SparseMat::from_triplets(f, self.m.dim(), cols, trip)
    }

    /// Restriction of a full cochain to the model. Fails unless the cochain
    /// is the extension by zero of its restriction.
    pub fn from_full(&self, n: usize, c: &SparseMat<F::E>) -> Result<Vec<F::E>> {
        let f = &self.field;
        let deg = self.degree(n)?;
        let mut v = vec![f.zero(); deg.dim()];
        for k in 0..deg.count() {
            let idx: Vec<usize> = deg.tuple(k).iter().map(|&p| self.arrows[p as usize]).collect();
            let col = self.full_column(&idx);
            for &x in self.tuple_block(&deg, k) {
                v[self.coord(&deg, k, x)] = c.get(f, x, col);
            }
        }
        if self.to_full(n, &v)? != *c {
            return Err(Error::Contract("cochain is not supported on the reduced model".into()));
        }
        Ok(v)
    }

    /// Coordinates `(tuple, x)` with `deg x = deg a_1 ⋯ deg a_n` for gradings
    /// of `A` and `M` by `group`.
    pub fn degree_zero_coords(&self, group: &FinGroup, a_deg: &[usize], m_deg: &[usize], n: usize) -> Result<Vec<usize>> {
        let deg = self.degree(n)?;
        let mut out = Vec::new();
        for k in 0..deg.count() {
            let total = deg.tuple(k).iter().fold(group.identity, |acc, &p| group.mul(acc, a_deg[self.arrows[p as usize]]));
            for &x in self.tuple_block(&deg, k) {
                if m_deg[x] == total {
                    out.push(self.coord(&deg, k, x));
                }
            }
        }
        Ok(out)
    }

    /// The unit of `M` as a 0-cochain.
    pub fn unit_cochain(&self) -> Result<Vec<F::E>> {
        let unit = self.m.unit.clone().ok_or_else(|| Error::Contract("module carries no unit".into()))?;
        self.from_full(0, &SparseMat::from_columns(self.m.dim(), vec![unit]))
    }

    /// Value of a cochain on a tuple given as module coordinates.
    pub fn value(&self, n: usize, v: &[F::E], k: usize) -> Result<SVec<F::E>> {
        let deg = self.degree(n)?;
        let out = self.tuple_block(&deg, k).iter().map(|&x| (x, v[self.coord(&deg, k, x)].clone())).collect();
        Ok(normalize_svec(&self.field, out))
    }
}

/// Basis idempotents forming a complete orthogonal set for which every other
/// basis vector of `A` and `M` is block-homogeneous.
fn relative_idempotents<F: Field>(a: &FinAlgebra<F>, m: &EquivariantBimodule<F>) -> Option<Vec<usize>> {
    let f = &a.field;
    let idem: Vec<usize> = (0..a.dim()).filter(|&i| matches!(a.product(i, i).as_slice(), [(k, c)] if *k == i && f.is_one(c))).collect();
    if idem.len() < 2 {
        return None;
    }
    for &i in &idem {
        for &j in &idem {
            if i != j && !a.product(i, j).is_empty() {
                return None;
            }
        }
    }
    let sum: SVec<F::E> = idem.iter().map(|&i| (i, f.one())).collect();
    if sum != a.unit {
        return None;
    }
    for x in 0..a.dim() {
        if !idem.contains(&x) && a_block(a, &idem, x).is_none() {
            return None;
        }
    }
    for x in 0..m.dim() {
        m_block(f, m, &idem, x)?;
    }
    Some(idem)
}

fn side<F: Field>(f: &F, v: &[(usize, F::E)], x: usize) -> Option<bool> {
    match v {
        [] => Some(false),
        [(k, c)] if *k == x && f.is_one(c) => Some(true),
        _ => None,
    }
}

fn a_block<F: Field>(a: &FinAlgebra<F>, idem: &[usize], x: usize) -> Option<(usize, usize)> {
    let f = &a.field;
    let mut s = None;
    let mut t = None;
    for (k, &e) in idem.iter().enumerate() {
        if side(f, a.product(e, x), x)? && s.replace(k).is_some() {
            return None;
        }
        if side(f, a.product(x, e), x)? && t.replace(k).is_some() {
            return None;
        }
    }
    Some((s?, t?))
}

fn m_block<F: Field>(f: &F, m: &EquivariantBimodule<F>, idem: &[usize], x: usize) -> Option<(usize, usize)> {
    let mut s = None;
    let mut t = None;
    for (k, &e) in idem.iter().enumerate() {
        if side(f, m.left_basis(e, x), x)? && s.replace(k).is_some() {
            return None;
        }
        if side(f, m.right_basis(x, e), x)? && t.replace(k).is_some() {
            return None;
        }
    }
    Some((s?, t?))
}

/// Every element maps the idempotent set into its span.
fn stable<F: Field>(act: &GroupAction<F>, idem: &[usize]) -> bool {
    act.mats.iter().all(|m| idem.iter().all(|&e| m.col(e).iter().all(|(k, _)| idem.contains(k))))
}
