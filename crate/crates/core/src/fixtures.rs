//! Small algebras with group actions used throughout the test suite and the
//! shipped scenario corpus.

use crate::algebra::action::signed_permutation;
use crate::algebra::{CqExtension, EquivariantBimodule, FinAlgebra, FinGroup, GroupAction};
use crate::constructions::{build_dual_smash, build_smash, smash_as_module, SmashAlgebra};
use crate::error::Result;
use crate::exactla::sparse::SparseMat;
use crate::exactla::Field;

/// An algebra with a group action and, optionally, a presentation of the
/// group as an extension of a cyclic `p`-group.
#[derive(Clone, Debug)]
pub struct Instance<F: Field> {
    pub name: String,
    pub algebra: FinAlgebra<F>,
    pub group: FinGroup,
    pub action: GroupAction<F>,
    pub ext: Option<CqExtension>,
}

impl<F: Field> Instance<F> {
    pub fn field(&self) -> &F {
        &self.algebra.field
    }

    pub fn smash(&self) -> Result<SmashAlgebra<F>> {
        build_smash(&self.algebra, &self.group, &self.action)
    }

    /// `A` as an equivariant bimodule algebra over itself.
    pub fn regular(&self) -> Result<EquivariantBimodule<F>> {
        EquivariantBimodule::regular(&self.algebra, self.action.clone())
    }

    /// `AG` as an `A`-bimodule algebra with the conjugation action.
    pub fn smash_module(&self) -> Result<EquivariantBimodule<F>> {
        smash_as_module(&self.smash()?)
    }

    /// Whether the characteristic divides `|G|`.
    pub fn is_modular(&self) -> bool {
        let p = self.field().characteristic();
        p != 0 && (self.group.order() as u64).is_multiple_of(p)
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `k[x]/(x²)` with basis `1, x`.
pub fn dual_numbers<F: Field>(f: &F) -> FinAlgebra<F> {
    let one = f.one();
    let prods = vec![vec![vec![(0, one.clone())], vec![(1, one.clone())]], vec![vec![(1, one.clone())], vec![]]];
    FinAlgebra::new(f, labels(&["1", "x"]), prods, vec![(0, one)]).unwrap()
}

/// `k × k` with basis `e0, e1`.
pub fn product_of_fields<F: Field>(f: &F) -> FinAlgebra<F> {
    let one = f.one();
    let prods = vec![vec![vec![(0, one.clone())], vec![]], vec![vec![], vec![(1, one.clone())]]];
    FinAlgebra::new(f, labels(&["e0", "e1"]), prods, vec![(0, one.clone()), (1, one)]).unwrap()
}

/// `k[x,y]/(x,y)²` with basis `1, x, y`.
pub fn square_zero_plane<F: Field>(f: &F) -> FinAlgebra<F> {
    let one = f.one();
    let e = |i: usize| vec![(i, one.clone())];
    let prods = vec![vec![e(0), e(1), e(2)], vec![e(1), vec![], vec![]], vec![e(2), vec![], vec![]]];
    FinAlgebra::new(f, labels(&["1", "x", "y"]), prods, e(0)).unwrap()
}

/// `k[x,y]/(x² − y², xy)` with basis `1, x, y, xx`.
pub fn quiver_base<F: Field>(f: &F) -> FinAlgebra<F> {
    let one = f.one();
    let e = |i: usize| vec![(i, one.clone())];
    let prods = vec![
        vec![e(0), e(1), e(2), e(3)],
        vec![e(1), e(3), vec![], vec![]],
        vec![e(2), vec![], e(3), vec![]],
        vec![e(3), vec![], vec![], vec![]],
    ];
    FinAlgebra::new(f, labels(&["1", "x", "y", "xx"]), prods, e(0)).unwrap()
}

/// The ground field with a trivial action of `group`.
pub fn group_algebra<F: Field>(f: &F, name: &str, group: FinGroup, ext: Option<CqExtension>) -> Instance<F> {
    let action = GroupAction::trivial(f, &group, 1);
    Instance { name: name.into(), algebra: FinAlgebra::ground(f), group, action, ext }
}

/// Extension data for `group`: coprime if the characteristic does not divide
/// the order, else the given `H` and `ρ`.
fn ext_for(group: &FinGroup, p: u64, h: &[usize], rho: usize) -> Option<CqExtension> {
    if p == 0 || !(group.order() as u64).is_multiple_of(p) {
        CqExtension::coprime(group, p).ok()
    } else {
        CqExtension::new(group, h, rho, p).ok()
    }
}

pub fn cyclic_group_algebra<F: Field>(f: &F, n: usize) -> Instance<F> {
    let g = FinGroup::cyclic(n).unwrap();
    let p = f.characteristic();
    // H is the p'-part, generated by r^{p-part}.
    let mut q = 1;
    while p != 0 && n.is_multiple_of(q * p as usize) {
        q *= p as usize;
    }
    let h = g.generated(&[q % n]);
    let ext = ext_for(&g, p, &h, 1);
    group_algebra(f, &format!("kC{n}"), g, ext)
}

/// `kS_3` with `H` the rotations (valid in characteristic 2).
pub fn symmetric_group_algebra<F: Field>(f: &F) -> Instance<F> {
    let g = FinGroup::dihedral(3).unwrap();
    let h = g.generated(&[1]);
    let ext = ext_for(&g, f.characteristic(), &h, 3);
    group_algebra(f, "kS3", g, ext)
}

/// `k[x]/(x²)` with `C_2` acting trivially.
pub fn dual_numbers_trivial<F: Field>(f: &F) -> Instance<F> {
    let g = FinGroup::cyclic(2).unwrap();
    let ext = ext_for(&g, f.characteristic(), &[0], 1);
    Instance { name: "dual-trivial".into(), algebra: dual_numbers(f), action: GroupAction::trivial(f, &g, 2), group: g, ext }
}

/// `k[x]/(x²)` with `x ↦ −x`.
pub fn dual_numbers_sign<F: Field>(f: &F) -> Instance<F> {
    let g = FinGroup::cyclic(2).unwrap();
    let m = signed_permutation(f, &[(0, false), (1, true)]).unwrap();
    let action = GroupAction::from_generators(f, &g, 2, &[(1, m)]).unwrap();
    let ext = ext_for(&g, f.characteristic(), &[0], 1);
    Instance { name: "dual-sign".into(), algebra: dual_numbers(f), group: g, action, ext }
}

/// `k × k` with the swap.
pub fn swap<F: Field>(f: &F) -> Instance<F> {
    let g = FinGroup::cyclic(2).unwrap();
    let m = signed_permutation(f, &[(1, false), (0, false)]).unwrap();
    let action = GroupAction::from_generators(f, &g, 2, &[(1, m)]).unwrap();
    let ext = ext_for(&g, f.characteristic(), &[0], 1);
    Instance { name: "swap".into(), algebra: product_of_fields(f), group: g, action, ext }
}

/// `B#kC_q^*` for a `C_q`-graded `B`, with its natural action and `H = 1`.
pub fn covering<F: Field>(f: &F, name: &str, base: FinAlgebra<F>, q: usize, degrees: Vec<usize>) -> Result<Instance<F>> {
    let g = FinGroup::cyclic(q)?;
    let graded = base.with_grading(&g, degrees)?;
    let ds = build_dual_smash(&graded, &g)?;
    let ext = ext_for(&g, f.characteristic(), &[0], 1);
    Ok(Instance { name: name.into(), algebra: ds.algebra, group: g, action: ds.action, ext })
}

/// The 8-dimensional quiver algebra `B#kC_2^*` with
/// `B = k[x,y]/(x² − y², xy)`, `deg x = ρ`, `deg y = e`.
pub fn quiver<F: Field>(f: &F) -> Instance<F> {
    covering(f, "quiver", quiver_base(f), 2, vec![0, 1, 0, 0]).unwrap()
}

/// `k[x]/(x²)` graded by `C_q` with `x` in degree `ρ`, covered.
pub fn dual_numbers_covering<F: Field>(f: &F, q: usize) -> Instance<F> {
    covering(f, &format!("dual-cover-{q}"), dual_numbers(f), q, vec![0, 1 % q]).unwrap()
}

/// `k[x,y]/(x,y)²` with `deg x = ρ`, `deg y = e`, covered by `C_2`.
pub fn plane_covering<F: Field>(f: &F) -> Instance<F> {
    covering(f, "plane-cover", square_zero_plane(f), 2, vec![0, 1, 0]).unwrap()
}

/// Matrix of multiplication by a field element, used by callers building
/// diagonal actions.
pub fn scalar_matrix<F: Field>(f: &F, n: usize, c: &F::E) -> SparseMat<F::E> {
    SparseMat::identity(f, n).scale(f, c)
}
