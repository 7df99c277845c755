use super::*;
use crate::algebra::{CqExtension, EquivariantBimodule, FinGroup};
use crate::constructions::build_dual_smash;
use crate::exactla::sparse::{is_zero_vec, sub_vec, svec_to_dense};
use crate::exactla::{Fp, SparseMat, Subspace};
use crate::fixtures::{self, Instance};
use crate::hochschild::{CochainModel, Guard, ModelKind, ModelOptions};
use crate::specseq::{build_double_complex, direct_oracle, FilteredComplex, Filtration, GroupModel, Window};

fn f2() -> Fp {
    Fp::new(2).unwrap()
}

fn f3() -> Fp {
    Fp::new(3).unwrap()
}

fn setting<'a>(inst: &'a Instance<Fp>, m: &'a EquivariantBimodule<Fp>) -> Setting<'a, Fp> {
    Setting { algebra: &inst.algebra, group: &inst.group, action: &inst.action, module: m, ext: inst.ext.as_ref().unwrap() }
}

/// `k[x]/(x²)` covered by `C_6` in characteristic 3, with `H` of order 2.
fn c6_covering() -> Instance<Fp> {
    let f = f3();
    let g = FinGroup::cyclic(6).unwrap();
    let graded = fixtures::dual_numbers(&f).with_grading(&g, vec![0, 1]).unwrap();
    let ds = build_dual_smash(&graded, &g).unwrap();
    let ext = CqExtension::new(&g, &[0, 3], 1, 3).unwrap();
    Instance { name: "dual-cover-c6".into(), algebra: ds.algebra, group: g, action: ds.action, ext: Some(ext) }
}

/// Coverings of `C_q`-singular gradings, with their dual smash data.
fn singular_coverings() -> Vec<(Instance<Fp>, crate::constructions::DualSmashAlgebra<Fp>)> {
    let dual = |f: &Fp, q: usize| {
        let g = FinGroup::cyclic(q).unwrap();
        build_dual_smash(&fixtures::dual_numbers(f).with_grading(&g, vec![0, 1 % q]).unwrap(), &g).unwrap()
    };
    let plane = {
        let g = FinGroup::cyclic(2).unwrap();
        build_dual_smash(&fixtures::square_zero_plane(&f2()).with_grading(&g, vec![0, 1, 0]).unwrap(), &g).unwrap()
    };
    let c6 = {
        let g = FinGroup::cyclic(6).unwrap();
        build_dual_smash(&fixtures::dual_numbers(&f3()).with_grading(&g, vec![0, 1]).unwrap(), &g).unwrap()
    };
    vec![
        (fixtures::dual_numbers_covering(&f2(), 2), dual(&f2(), 2)),
        (fixtures::dual_numbers_covering(&f3(), 3), dual(&f3(), 3)),
        (fixtures::dual_numbers_covering(&f2(), 4), dual(&f2(), 4)),
        (fixtures::plane_covering(&f2()), plane),
        (c6_covering(), c6),
    ]
}

/// Instances with a modular extension, paired with `M = A`.
fn corpus() -> Vec<Instance<Fp>> {
    vec![
        fixtures::swap(&f2()),
        fixtures::dual_numbers_sign(&f2()),
        fixtures::dual_numbers_trivial(&f2()),
        fixtures::cyclic_group_algebra(&f2(), 2),
        fixtures::cyclic_group_algebra(&f3(), 3),
        fixtures::dual_numbers_covering(&f2(), 2),
        fixtures::dual_numbers_covering(&f3(), 3),
        fixtures::plane_covering(&f2()),
        fixtures::quiver(&f2()),
        fixtures::swap(&f3()),
        c6_covering(),
    ]
}

fn periodic_grid(inst: &Instance<Fp>, m: &EquivariantBimodule<Fp>, w: usize) -> crate::specseq::DoubleComplexGrid<Fp> {
    build_double_complex(
        &inst.algebra,
        &inst.group,
        &inst.action,
        m,
        &GroupModel::Periodic(inst.ext.clone().unwrap()),
        Window { i_max: w, j_max: w },
        &Guard::default(),
    )
    .unwrap()
}

#[test]
fn projectivity_examples() {
    let f = f2();
    let c2 = FinGroup::cyclic(2).unwrap();
    // kC_2 under left translation, unit e: (1 + T)a lies on the line of e + r.
    let swap = SparseMat::from_columns(2, vec![vec![(1, 1)], vec![(0, 1)]]);
    let translation = crate::algebra::GroupAction { dim: 2, mats: vec![SparseMat::identity(&f, 2), swap] };
    let got = check_kg_projectivity(&f, &c2, &translation, Some(&[(0, 1)]), &ProjectivityScope::Group).unwrap();
    let Feasibility::Infeasible { certificate } = got else { panic!("translation admits no norm preimage of e") };
    assert_ne!(certificate[0], 0);
    assert_eq!(certificate[0], certificate[1]);
    // k × k with the swap: a = e_1.
    let sw = fixtures::swap(&f).regular().unwrap();
    let got = check_kg_projectivity(&f, &c2, &sw.action, sw.unit.as_deref(), &ProjectivityScope::Group).unwrap();
    let a = got.feasible().unwrap();
    let sum = sw
        .action
        .mats
        .iter()
        .fold(vec![0; 2], |acc, t| crate::exactla::sparse::add_vec(&f, &acc, &svec_to_dense(&f, &t.mul_svec(&f, a), 2)));
    assert_eq!(sum, svec_to_dense(&f, sw.unit.as_ref().unwrap(), 2));
    let m = fixtures::cyclic_group_algebra(&f, 2).regular().unwrap();
    // k with the trivial action.
    let k = fixtures::dual_numbers_trivial(&f).regular().unwrap();
    let got = check_kg_projectivity(&f, &c2, &k.action, k.unit.as_deref(), &ProjectivityScope::Group).unwrap();
    assert!(!got.is_feasible());
    // Coprime order: always projective.
    let s3 = fixtures::swap(&f3()).regular().unwrap();
    let got = check_kg_projectivity(&f3(), &c2, &s3.action, s3.unit.as_deref(), &ProjectivityScope::Group).unwrap();
    assert!(got.is_feasible());
    // Non-unital input.
    assert!(check_kg_projectivity(&f, &c2, &m.action, None, &ProjectivityScope::Group).is_err());
}

#[test]
fn quiver_is_not_degenerated() {
    let inst = fixtures::quiver(&f2());
    let m = inst.regular().unwrap();
    let s = setting(&inst, &m);
    match find_certificate(&s, &CertificateOptions::default()).unwrap() {
        Feasibility::Infeasible { certificate } => assert!(certificate.iter().any(|c| *c != 0)),
        Feasibility::Feasible(c) => panic!("unexpected certificate {c:?}"),
    }
    let rs = check_rs_degeneration(&periodic_grid(&inst, &m, 4), 3).unwrap();
    assert!(!rs.tests[0].vanishes);
    let d = verify_dims(&s, 2, None, &Guard::default()).unwrap();
    assert!(d.rows[1].smash > d.rows[1].invariants, "{:?}", d.rows);
    assert_eq!(d.equivalence_holds, Some(true));
    assert!(d.passed());
}

#[test]
fn canonical_certificates_on_singular_coverings() {
    for (inst, ds) in singular_coverings() {
        let m = inst.regular().unwrap();
        let s = setting(&inst, &m);
        let cert = canonical_covering_certificate(&ds, s.ext).unwrap();
        let check = cert.check(&s).unwrap();
        assert!(check.passed(), "{}: {check:?}", inst.name);
        assert!(find_certificate(&s, &CertificateOptions::default()).unwrap().is_feasible(), "{}", inst.name);
        // h ⌣ h = 0 as a 2-cochain.
        let opts = ModelOptions { a_action: Some(inst.action.clone()), force: Some(ModelKind::Full), guard: Guard::default() };
        let model = CochainModel::new(&inst.algebra, &m, opts).unwrap();
        let h1 = model.from_full(1, &cert.h).unwrap();
        let hh = model.cup(1, &h1, 1, &h1).unwrap();
        assert!(is_zero_vec(inst.field(), &hh), "{}", inst.name);
    }
}

#[test]
fn certificate_matches_page_three() {
    for inst in corpus() {
        for m in [inst.regular().unwrap(), inst.smash_module().unwrap()] {
            let s = setting(&inst, &m);
            let feasible = find_certificate(&s, &CertificateOptions::default()).unwrap();
            if let Feasibility::Feasible(c) = &feasible {
                assert!(c.check(&s).unwrap().passed(), "{}", inst.name);
            }
            let rs = check_rs_degeneration(&periodic_grid(&inst, &m, 4), 3).unwrap();
            assert_eq!(feasible.is_feasible(), rs.tests[0].vanishes, "{} dim M = {}", inst.name, m.dim());
        }
    }
}

#[test]
fn degeneration_window_errors() {
    let inst = fixtures::swap(&f2());
    let m = inst.regular().unwrap();
    assert!(check_rs_degeneration(&periodic_grid(&inst, &m, 2), 3).is_err());
    assert!(check_rs_degeneration(&periodic_grid(&inst, &m, 3), 1).is_err());
    let bar = build_double_complex(
        &inst.algebra,
        &inst.group,
        &inst.action,
        &m,
        &GroupModel::Bar,
        Window { i_max: 3, j_max: 3 },
        &Guard::default(),
    )
    .unwrap();
    assert!(check_rs_degeneration(&bar, 3).is_err());
}

#[test]
fn coprime_order_degenerates_on_page_two() {
    for inst in [fixtures::swap(&f3()), fixtures::dual_numbers_sign(&f3())] {
        let m = inst.regular().unwrap();
        let rs = check_rs_degeneration(&periodic_grid(&inst, &m, 4), 2).unwrap();
        assert!(rs.degenerated());
        assert_eq!(rs.first_vanishing, Some(1));
    }
}

/// Degeneration on some page forces `M^H` to be projective over `kC_q`.
#[test]
fn degeneration_implies_projective_invariants() {
    let mut seen = 0;
    for inst in corpus() {
        for m in [inst.regular().unwrap(), inst.smash_module().unwrap()] {
            let grid = periodic_grid(&inst, &m, 5);
            let degenerated = (2..=4).any(|r| check_rs_degeneration(&grid, r).unwrap().degenerated());
            let ext = inst.ext.clone().unwrap();
            let within = h_invariants(inst.field(), &m.action, &ext.h).unwrap();
            let proj = check_kg_projectivity(
                inst.field(),
                &inst.group,
                &m.action,
                m.unit.as_deref(),
                &ProjectivityScope::Quotient { ext, within },
            )
            .unwrap();
            if degenerated {
                seen += 1;
                assert!(proj.is_feasible(), "{}", inst.name);
            }
        }
    }
    assert!(seen > 3);
}

/// When `M^A ∩ M^H` is projective over `kC_q`, page 2 lives in column 0.
#[test]
fn projective_centre_collapses_page_two() {
    let mut seen = 0;
    for inst in corpus() {
        for m in [inst.regular().unwrap(), inst.smash_module().unwrap()] {
            let s = setting(&inst, &m);
            let within = central_h_invariants(&s).unwrap();
            let ext = inst.ext.clone().unwrap();
            let proj = check_kg_projectivity(
                inst.field(),
                &inst.group,
                &m.action,
                m.unit.as_deref(),
                &ProjectivityScope::Quotient { ext, within },
            )
            .unwrap();
            if !proj.is_feasible() {
                continue;
            }
            seen += 1;
            let grid = periodic_grid(&inst, &m, 4);
            let e2 = FilteredComplex::new(&grid, Filtration::I).page(2).unwrap();
            for (&(p, q), e) in &e2.entries {
                if e.safe && p >= 1 {
                    assert_eq!(e.dim, 0, "{} ({p}, {q})", inst.name);
                }
            }
        }
    }
    assert!(seen > 2);
}

/// Any `m'` with `Δ_ρ^{q−1} m' = 1` extends to a certificate.
#[test]
fn other_norm_preimages_extend() {
    for (inst, ds) in singular_coverings() {
        let m = inst.regular().unwrap();
        let s = setting(&inst, &m);
        let f = inst.field();
        let cert = canonical_covering_certificate(&ds, s.ext).unwrap();
        let t = &m.action.mats[s.ext.rho];
        let shifted = t.mul_svec(f, &cert.m);
        for m2 in [cert.m.clone(), shifted] {
            let opts = CertificateOptions { fix_m: Some(m2.clone()), vanish_on: Vec::new() };
            let got = find_certificate(&s, &opts).unwrap();
            let c = got.feasible().unwrap_or_else(|| panic!("{}", inst.name));
            assert_eq!(c.m, m2);
            assert!(c.check(&s).unwrap().passed());
        }
    }
}

#[test]
fn delta_product_rule() {
    for inst in corpus() {
        for m in [inst.regular().unwrap(), inst.smash_module().unwrap()] {
            for g in 0..inst.group.order() {
                let fails = delta_product_rule_failures(inst.field(), &m, &m.action.mats[g]).unwrap();
                assert!(fails.is_empty(), "{} {g}: {fails:?}", inst.name);
            }
        }
    }
}

#[test]
fn binomial_identities() {
    for i in -30..=30 {
        for j in -30..=30 {
            for l in -30..=30 {
                assert!(binomial_product_identity(i, j, l), "({i}, {j}, {l})");
            }
        }
    }
    for n in 0..=30 {
        for l in 0..=n {
            for s in -30..=30 {
                assert!(vandermonde(n, l, s), "({n}, {l}, {s})");
            }
        }
    }
}

fn context(inst: &Instance<Fp>, m: &EquivariantBimodule<Fp>, top: usize) -> StructureContext<Fp> {
    let s = setting(inst, m);
    let cert = find_certificate(&s, &CertificateOptions::default()).unwrap();
    StructureContext::new(&s, cert.feasible().unwrap(), top, &Guard::default()).unwrap()
}

#[test]
fn structure_of_singular_coverings() {
    for (inst, _) in singular_coverings() {
        for m in [inst.regular().unwrap(), inst.smash_module().unwrap()] {
            let ctx = context(&inst, &m, 4);
            let rep = structure_report(&ctx, 3).unwrap();
            assert!(rep.passed(), "{} dim M = {}: {:#?}", inst.name, m.dim(), rep);
            for r in &rep.rows {
                assert!(r.w <= r.a && r.a <= r.hh_g && r.hh_g <= r.hh_h && r.hh_h <= r.hh);
            }
        }
    }
}

#[test]
fn structure_with_trivial_quotient() {
    let inst = fixtures::swap(&f3());
    let m = inst.regular().unwrap();
    let ctx = context(&inst, &m, 3);
    let rep = structure_report(&ctx, 2).unwrap();
    assert!(rep.passed());
    for r in &rep.rows {
        assert_eq!((r.w, r.a, r.x, r.y), (r.hh_g, r.hh_g, 0, 0));
    }
    assert!(filtration_report(&ctx, 2).unwrap().rows.is_empty());
}

#[test]
fn structure_rejects_invalid_certificate() {
    let inst = fixtures::dual_numbers_covering(&f2(), 2);
    let m = inst.regular().unwrap();
    let s = setting(&inst, &m);
    let mut cert = find_certificate(&s, &CertificateOptions::default()).unwrap().feasible().unwrap().clone();
    cert.m = Vec::new();
    assert!(StructureContext::new(&s, &cert, 2, &Guard::default()).is_err());
}

#[test]
fn filtrations_match() {
    let cases = [
        fixtures::dual_numbers_covering(&f2(), 2),
        fixtures::dual_numbers_covering(&f2(), 4),
        fixtures::dual_numbers_covering(&f3(), 3),
        fixtures::plane_covering(&f2()),
        c6_covering(),
    ];
    for inst in cases {
        for m in [inst.regular().unwrap(), inst.smash_module().unwrap()] {
            let ctx = context(&inst, &m, 4);
            let rep = filtration_report(&ctx, 3).unwrap();
            assert!(rep.passed(), "{} dim M = {}: {:#?}", inst.name, m.dim(), rep);
            for r in &rep.rows {
                // Saturation at step i forces X_{q−1−i} = 0 = Y_{i+1}.
                for (i, sat) in r.saturated.iter().enumerate() {
                    if *sat && i + 1 < ctx.ext.q {
                        assert_eq!(r.x[ctx.ext.q - 1 - i], 0);
                        assert_eq!(r.y[i + 1], 0);
                    }
                }
            }
        }
    }
}

#[test]
fn auxiliary_cochains() {
    let mut exercised = 0;
    for inst in
        [fixtures::dual_numbers_covering(&f2(), 2), fixtures::dual_numbers_covering(&f2(), 4), fixtures::dual_numbers_covering(&f3(), 3)]
    {
        let m = inst.regular().unwrap();
        let ctx = context(&inst, &m, 3);
        let f = *ctx.field();
        let q = ctx.ext.q;
        for j in 0..=2 {
            let d = ctx.model.dim(j).unwrap();
            for i in 0..=q {
                // H-invariant cocycles killed by Δ_ρ^i.
                let mut stacked = ctx.delta(j).clone().vstack(&ctx.delta_cochains(j, i).unwrap()).unwrap();
                for &x in &ctx.ext.h {
                    let t = ctx.model.action_matrix(&ctx.group, x, j).unwrap();
                    stacked = stacked.vstack(&t.sub(&f, &SparseMat::identity(&f, d)).unwrap()).unwrap();
                }
                for v in Subspace::kernel(&f, &stacked).basis {
                    let fv = svec_to_dense(&f, &v, d);
                    let (f0, f1) = ctx.cycnull(j, i, &fv).unwrap();
                    let back = ctx.delta_cochains(j, q - i).unwrap().mul_vec(&f, &f0).unwrap();
                    assert_eq!(back, fv, "{} j={j} i={i}", inst.name);
                    let df0 = ctx.delta(j).mul_vec(&f, &f0).unwrap();
                    let dif1 = ctx.delta_cochains(j + 1, i).unwrap().mul_vec(&f, &f1).unwrap();
                    assert!(is_zero_vec(&f, &sub_vec(&f, &df0, &dif1)), "{} j={j} i={i}", inst.name);
                    assert!(is_zero_vec(&f, &ctx.delta(j + 1).mul_vec(&f, &f1).unwrap()));
                    exercised += 1;
                }
            }
        }
    }
    assert!(exercised > 10);
}

#[test]
fn dims_on_degenerated_and_coprime_instances() {
    let mut cases: Vec<Instance<Fp>> = singular_coverings().into_iter().map(|(i, _)| i).collect();
    cases.push(fixtures::swap(&f3()));
    cases.push(fixtures::dual_numbers_sign(&f3()));
    for inst in cases {
        let m = inst.smash_module().unwrap();
        let oracle = direct_oracle(&inst.smash().unwrap(), 2, &Guard::default()).unwrap();
        let d = verify_dims(&setting(&inst, &m), 2, Some(&oracle), &Guard::default()).unwrap();
        assert!(d.passed(), "{}: {d:?}", inst.name);
        assert!(d.equal_all, "{}: {d:?}", inst.name);
        let r = inst.regular().unwrap();
        let d = verify_dims(&setting(&inst, &r), 2, None, &Guard::default()).unwrap();
        assert!(d.passed() && d.equal_all, "{}: {d:?}", inst.name);
    }
}

#[test]
fn dims_equivalence_on_corpus() {
    for inst in corpus() {
        for m in [inst.regular().unwrap(), inst.smash_module().unwrap()] {
            let d = verify_dims(&setting(&inst, &m), 2, None, &Guard::default()).unwrap();
            assert!(d.passed(), "{} dim M = {}: {d:?}", inst.name, m.dim());
        }
    }
}

#[test]
fn repetitive_quotients() {
    let bases = |f: &Fp| vec![crate::algebra::FinAlgebra::ground(f), fixtures::product_of_fields(f), fixtures::dual_numbers(f)];
    for (p, n) in [(2, 2), (3, 3)] {
        let f = Fp::new(p).unwrap();
        for r in bases(&f) {
            let rep = verify_tr(&r, n, 3, &Guard::default()).unwrap();
            assert!(rep.passed(), "p={p} dim R={}: {rep:#?}", r.dim());
            assert_eq!(rep.dim, 2 * r.dim() * n);
            assert_eq!(rep.rows[0].hh, rep.rows[0].a);
        }
    }
    assert!(verify_tr(&fixtures::dual_numbers(&f2()), 3, 2, &Guard::default()).is_err());
}

/// Cell vector of an `H`-invariant `a`-cochain placed on the generator of
/// group degree `g`.
fn place(grid: &crate::specseq::DoubleComplexGrid<Fp>, a: usize, g: usize, c: &[u32]) -> Vec<u32> {
    let f = grid.model.field;
    let mut cols = vec![Vec::new(); grid.res.dims[g]];
    for gen in grid.res.generators(g) {
        cols[gen] = crate::exactla::sparse::dense_to_svec(&f, c);
    }
    grid.res.restrict(&grid.modules[a], g, &SparseMat::from_columns(c.len(), cols))
}

/// `d_2((h̄ ⌣ ā)[0]) = −ā[2]` on the first filtration for `ā ∈ Im Θ`. The
/// sign comes from `Δ_ρ = 1 − ρ` in the periodic resolution together with
/// the `(−1)^a` on vertical maps.
#[test]
fn second_differential_of_h_products() {
    let (mut checked, mut nonzero) = (0, 0);
    for (inst, _) in singular_coverings() {
        let m = inst.regular().unwrap();
        let ctx = context(&inst, &m, 3);
        let grid = periodic_grid(&inst, &m, 5);
        let f = *ctx.field();
        let e2 = FilteredComplex::new(&grid, Filtration::I).page(2).unwrap();
        let minus = |v: &[(usize, u32)]| v.iter().map(|(k, c)| (*k, crate::exactla::Field::neg(&f, c))).collect::<Vec<_>>();
        for n in 0..=2 {
            let inv = crate::hochschild::invariant_cochains(&ctx.model, &ctx.group, n).unwrap();
            let d = ctx.model.dim(n).unwrap();
            let cocycles = Subspace::kernel(&f, &ctx.delta(n).matmul(&f, &inv.inclusion()).unwrap());
            let mut classes: Vec<crate::exactla::SVec<u32>> = Vec::new();
            for c in &cocycles.basis {
                let z = svec_to_dense(&f, &inv.embed(&f, &svec_to_dense(&f, c, inv.dim())), d);
                let cls = ctx.class(n, &z).unwrap();
                let mut all = classes.clone();
                all.push(cls.clone());
                if crate::exactla::rank(&f, &SparseMat::from_columns(ctx.hh_dim(n), all)) == classes.len() {
                    continue;
                }
                classes.push(cls);
                let hz = ctx.model.cup(1, &ctx.h1, n, &z).unwrap();
                assert!(e2.entries[&(0, n + 1)].safe && e2.entries[&(2, n)].safe);
                let x = e2.class_of(0, n + 1, &place(&grid, n + 1, 0, &hz)).unwrap();
                let target = e2.class_of(2, n, &place(&grid, n, 2, &z)).unwrap();
                // ā ∈ W is a norm, so ā[2] may vanish.
                nonzero += usize::from(!target.coords.is_empty());
                let dx = e2.differential(&x).unwrap();
                assert!(dx.coords == minus(&target.coords), "{} n={n}: {dx:?} vs {target:?}", inst.name);
                checked += 1;
            }
        }
    }
    assert!(checked > 5 && nonzero > 3, "{checked} {nonzero}");
}
