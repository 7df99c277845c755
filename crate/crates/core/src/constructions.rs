//! Algebras derived from a group action or a grading: smash products, dual
//! smash products (coverings), trivial extensions and their finite repetitive
//! quotients, plus restriction of bimodules over a smash product.
//!
//! Basis order of every product construction is algebra index major, group
//! index minor: the basis vector `(i, α)` has index `i * |G| + α`.

use crate::algebra::{EquivariantBimodule, FinAlgebra, FinGroup, GroupAction, ValidationReport};
use crate::error::{Error, Result};
use crate::exactla::sparse::{normalize_svec, SVec, SparseMat};
use crate::exactla::{rank, Field};

/// `A#kG` with the canonical grading `(AG)_α = Aα`.
#[derive(Clone, Debug)]
pub struct SmashAlgebra<F: Field> {
    pub algebra: FinAlgebra<F>,
    pub base: FinAlgebra<F>,
    pub group: FinGroup,
    pub action: GroupAction<F>,
}

impl<F: Field> SmashAlgebra<F> {
    pub fn index(&self, a: usize, alpha: usize) -> usize {
        a * self.group.order() + alpha
    }

    /// The element `1_A α`.
    pub fn group_element(&self, alpha: usize) -> SVec<F::E> {
        let g = self.group.order();
        self.base.unit.iter().map(|(k, c)| (k * g + alpha, c.clone())).collect()
    }

    /// Basis indices spanning the component `Aα`.
    pub fn component(&self, alpha: usize) -> Vec<usize> {
        (0..self.base.dim()).map(|a| self.index(a, alpha)).collect()
    }
}

pub fn build_smash<F: Field>(a: &FinAlgebra<F>, g: &FinGroup, act: &GroupAction<F>) -> Result<SmashAlgebra<F>> {
    let f = &a.field;
    act.validate_on_algebra(f, g, a).into_result("group action")?;
    let n = g.order();
    let d = a.dim();
    let mut labels = Vec::with_capacity(d * n);
    for i in 0..d {
        for al in 0..n {
            labels.push(if n == 1 { a.labels[i].clone() } else { format!("{}.{}", a.labels[i], g.labels[al]) });
        }
    }
    let mut prods = vec![vec![Vec::new(); d * n]; d * n];
    for i in 0..d {
        for al in 0..n {
            for j in 0..d {
                // (b_i α)(b_j β) = (b_i ·ᵅb_j)(αβ)
                let prod = a.mul(&a.basis_vector(i), act.apply_basis(al, j));
                for be in 0..n {
                    let ab = g.mul(al, be);
                    prods[i * n + al][j * n + be] = prod.iter().map(|(k, c)| (k * n + ab, c.clone())).collect();
                }
            }
        }
    }
    let unit = a.unit.iter().map(|(k, c)| (k * n + g.identity, c.clone())).collect();
    let degrees = (0..d * n).map(|x| x % n).collect();
    let algebra = FinAlgebra::new(f, labels, prods, unit)?.with_grading(g, degrees)?;
    Ok(SmashAlgebra { algebra, base: a.clone(), group: g.clone(), action: act.clone() })
}

/// `B#kG^*` for a `G`-graded `B`, with its natural `G`-action
/// `ᵅ(b p_β) = b p_{βα⁻¹}`.
#[derive(Clone, Debug)]
pub struct DualSmashAlgebra<F: Field> {
    pub algebra: FinAlgebra<F>,
    pub base: FinAlgebra<F>,
    pub group: FinGroup,
    pub action: GroupAction<F>,
}

impl<F: Field> DualSmashAlgebra<F> {
    pub fn index(&self, b: usize, alpha: usize) -> usize {
        b * self.group.order() + alpha
    }

    /// `Σ_{α ∈ s} 1_B p_α`.
    pub fn idempotent_sum(&self, s: &[usize]) -> SVec<F::E> {
        let mut v = Vec::new();
        for (k, c) in &self.base.unit {
            for &al in s {
                v.push((self.index(*k, al), c.clone()));
            }
        }
        normalize_svec(&self.algebra.field, v)
    }
}

pub fn build_dual_smash<F: Field>(b: &FinAlgebra<F>, g: &FinGroup) -> Result<DualSmashAlgebra<F>> {
    let f = &b.field;
    let deg = b.grading.as_ref().ok_or_else(|| Error::Contract("dual smash product needs a graded algebra".into()))?;
    b.validate_grading(g).into_result("grading")?;
    let n = g.order();
    let d = b.dim();
    let mut labels = Vec::with_capacity(d * n);
    for i in 0..d {
        for al in 0..n {
            labels.push(format!("{}@{}", b.labels[i], g.labels[al]));
        }
    }
    let mut prods = vec![vec![Vec::new(); d * n]; d * n];
    for i in 0..d {
        for al in 0..n {
            for j in 0..d {
                for be in 0..n {
                    // (b_i p_α)(b_j p_β) = (b_i (b_j)_{αβ⁻¹}) p_β
                    if deg[j] == g.mul(al, g.inv(be)) {
                        prods[i * n + al][j * n + be] = b.product(i, j).iter().map(|(k, c)| (k * n + be, c.clone())).collect();
                    }
                }
            }
        }
    }
    let mut unit = Vec::new();
    for (k, c) in &b.unit {
        for al in 0..n {
            unit.push((k * n + al, c.clone()));
        }
    }
    let algebra = FinAlgebra::new(f, labels, prods, unit)?;
    let gens: Vec<(usize, SparseMat<F::E>)> = g
        .generators()
        .into_iter()
        .map(|al| {
            let cols = (0..d * n).map(|x| vec![((x / n) * n + g.mul(x % n, g.inv(al)), f.one())]).collect();
            (al, SparseMat::from_columns(d * n, cols))
        })
        .collect();
    let action = GroupAction::from_generators(f, g, d * n, &gens)?;
    Ok(DualSmashAlgebra { algebra, base: b.clone(), group: g.clone(), action })
}

/// `R ⊕ DR` with `(a, u)(b, v) = (ab, av + ub)`. Basis: the basis of `R`
/// followed by its dual basis. Graded by `0` on `R` and `1` on `DR`.
#[derive(Clone, Debug)]
pub struct TrivialExtension<F: Field> {
    pub algebra: FinAlgebra<F>,
    pub base_dim: usize,
}

impl<F: Field> TrivialExtension<F> {
    /// Integer degree (0 or 1) of each basis vector.
    pub fn degrees(&self) -> Vec<usize> {
        (0..2 * self.base_dim).map(|x| usize::from(x >= self.base_dim)).collect()
    }

    /// Matrix of the form `⟨x, y⟩ = ε(xy)`, where `ε(a, u) = u(1)`.
    pub fn pairing(&self) -> SparseMat<F::E> {
        let f = &self.algebra.field;
        let d = self.base_dim;
        let n = 2 * d;
        let mut trip = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let mut e = f.zero();
                for (k, c) in self.algebra.product(x, y) {
                    if *k >= d {
                        // ε on the dual basis vector r_j^* is r_j^*(1).
                        for (u, cu) in &self.unit_of_base() {
                            if *u == k - d {
                                e = f.mul_add(&e, c, cu);
                            }
                        }
                    }
                }
                trip.push((x, y, e));
            }
        }
        SparseMat::from_triplets(f, n, n, trip).expect("in range")
    }

    fn unit_of_base(&self) -> SVec<F::E> {
        self.algebra.unit.iter().filter(|(k, _)| *k < self.base_dim).cloned().collect()
    }
}

pub fn build_trivial_extension<F: Field>(r: &FinAlgebra<F>) -> Result<TrivialExtension<F>> {
    let f = &r.field;
    r.validate().into_result("base algebra")?;
    let d = r.dim();
    let mut labels = r.labels.clone();
    labels.extend(r.labels.iter().map(|l| format!("{l}*")));
    let mut prods = vec![vec![Vec::new(); 2 * d]; 2 * d];
    // Structure constants c[i][j][k] of R.
    let c = |i: usize, j: usize, k: usize| -> F::E { r.product(i, j).iter().find(|(t, _)| *t == k).map_or(f.zero(), |(_, x)| x.clone()) };
    for i in 0..d {
        for j in 0..d {
            prods[i][j] = r.product(i, j).clone();
            // (r_i · r_j^*)(r_k) = r_j^*(r_k r_i); (r_j^* · r_i)(r_k) = r_j^*(r_i r_k)
            prods[i][d + j] = normalize_svec(f, (0..d).map(|k| (d + k, c(k, i, j))).collect());
            prods[d + j][i] = normalize_svec(f, (0..d).map(|k| (d + k, c(i, k, j))).collect());
        }
    }
    let algebra = FinAlgebra::new(f, labels, prods, r.unit.clone())?;
    let te = TrivialExtension { algebra, base_dim: d };
    let pr = rank(f, &te.pairing());
    if pr != 2 * d {
        return Err(Error::Validation(format!("trace form has rank {pr}, expected {}", 2 * d)));
    }
    Ok(te)
}

/// `TR#kC_n^*` with the `C_n`-action generated by the Nakayama automorphism
/// `x p_α ↦ x p_{α-1}`.
#[derive(Clone, Debug)]
pub struct RepetitiveQuotient<F: Field> {
    pub n: usize,
    pub trivial_extension: TrivialExtension<F>,
    pub covering: DualSmashAlgebra<F>,
}

impl<F: Field> RepetitiveQuotient<F> {
    pub fn algebra(&self) -> &FinAlgebra<F> {
        &self.covering.algebra
    }

    pub fn action(&self) -> &GroupAction<F> {
        &self.covering.action
    }

    /// Matrix of the Nakayama automorphism.
    pub fn nakayama(&self) -> &SparseMat<F::E> {
        &self.covering.action.mats[1 % self.n]
    }
}

pub fn build_repetitive_quotient<F: Field>(r: &FinAlgebra<F>, n: usize) -> Result<RepetitiveQuotient<F>> {
    if n == 0 {
        return Err(Error::Structural("repetitive quotient needs n >= 1".into()));
    }
    let te = build_trivial_extension(r)?;
    let g = FinGroup::cyclic(n)?;
    let degrees = te.degrees().into_iter().map(|d| d % n).collect();
    let graded = te.algebra.clone().with_grading(&g, degrees)?;
    let covering = build_dual_smash(&graded, &g)?;
    Ok(RepetitiveQuotient { n, trivial_extension: te, covering })
}

/// View an `AG`-bimodule as an `A`-bimodule with `ᵅx = α x α⁻¹`.
pub fn restrict_along_phi<F: Field>(smash: &SmashAlgebra<F>, m: &EquivariantBimodule<F>) -> Result<EquivariantBimodule<F>> {
    let f = &smash.algebra.field;
    if m.base_dim() != smash.algebra.dim() {
        return Err(Error::Structural("module is not over the smash product".into()));
    }
    let g = &smash.group;
    let (d, dm) = (smash.base.dim(), m.dim());
    let emb = |a: usize| vec![(smash.index(a, g.identity), f.one())];
    let mv = |x: usize| vec![(x, f.one())];
    let left = (0..d).map(|a| (0..dm).map(|x| m.act_left(f, &emb(a), &mv(x))).collect()).collect();
    let right = (0..dm).map(|x| (0..d).map(|a| m.act_right(f, &mv(x), &emb(a))).collect()).collect();
    let gens: Vec<(usize, SparseMat<F::E>)> = (0..g.order())
        .map(|al| {
            let ga = smash.group_element(al);
            let gi = smash.group_element(g.inv(al));
            let cols = (0..dm).map(|x| m.act_right(f, &m.act_left(f, &ga, &mv(x)), &gi)).collect();
            (al, SparseMat::from_columns(dm, cols))
        })
        .collect();
    let action = GroupAction::from_generators(f, g, dm, &gens)?;
    let mut out = EquivariantBimodule::new(f, m.labels.clone(), d, left, right, action)?;
    if m.is_algebra() {
        let prods = (0..dm).map(|x| (0..dm).map(|y| m.mul_basis(x, y).unwrap().clone()).collect()).collect();
        out = out.with_multiplication(f, prods, m.unit.clone().unwrap_or_default())?;
    }
    Ok(out)
}

/// `AG` as an `A`-bimodule algebra with the conjugation action.
pub fn smash_as_module<F: Field>(smash: &SmashAlgebra<F>) -> Result<EquivariantBimodule<F>> {
    let f = &smash.algebra.field;
    let reg = EquivariantBimodule::regular(&smash.algebra, GroupAction::trivial(f, &FinGroup::trivial(), smash.algebra.dim()))?;
    restrict_along_phi(smash, &reg)
}

/// Checks that the smash product, its grading and the restricted module are
/// all consistent.
pub fn validate_smash<F: Field>(smash: &SmashAlgebra<F>) -> ValidationReport {
    let f = &smash.algebra.field;
    let mut rep = smash.algebra.validate();
    rep.merge(smash.algebra.validate_grading(&smash.group));
    match smash_as_module(smash) {
        Ok(m) => rep.merge(m.validate(f, &smash.base, &smash.group, &smash.action)),
        Err(e) => rep.fail(e.to_string()),
    }
    rep
}
