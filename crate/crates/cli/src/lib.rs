//! Scenario files and the commands run on them.

#![allow(clippy::type_complexity)]

pub mod scenario;

use serde_json::{json, Value};

use hhsmash::algebra::CqExtension;
use hhsmash::constructions::build_smash;
use hhsmash::exactla::{Field, Fp, Rationals};
use hhsmash::groupcoh::{group_cohomology, normalized_bar_resolution, periodic_resolution, CoefficientModule};
use hhsmash::hochschild::{hochschild_cohomology, invariant_comparison, CochainModel, Guard, ModelOptions};
use hhsmash::specseq::{build_double_complex, convergence, direct_oracle, FilteredComplex, Filtration, GroupModel, Window};
use hhsmash::structure::{
    canonical_covering_certificate, check_kg_projectivity, check_rs_degeneration, filtration_report, find_certificate, structure_report,
    verify_dims, verify_tr, CertificateOptions, DegenerationCertificate, Feasibility, ProjectivityScope, Setting, StructureContext,
};
use hhsmash::{Error, Result};

pub use scenario::{parse_scenario, RawScenario, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Hh,
    Groupcoh,
    Pages,
    Degeneration,
    Structure,
    Filtration,
    Dims,
    Tr,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    Periodic,
    Bar,
}

/// Overrides from the command line; `None` falls back to the scenario.
#[derive(Clone, Debug)]
pub struct Options {
    pub up_to: Option<usize>,
    pub page: Option<usize>,
    pub window: Option<(usize, usize)>,
    pub filtration: Filtration,
    pub resolution: Resolution,
    pub guard: Guard,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            up_to: None,
            page: None,
            window: None,
            filtration: Filtration::I,
            resolution: Resolution::Periodic,
            guard: Guard::default(),
        }
    }
}

/// A command result. `passed` is false when a check ran and failed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

/// Parses `text`, builds it over its field and runs `cmd`.
pub fn run(text: &str, cmd: Command, opts: &Options) -> Result<Outcome> {
    let raw = parse_scenario(text)?;
    match raw.characteristic {
        0 => run_in(&raw, &Rationals, cmd, opts),
        p => run_in(&raw, &Fp::new(p)?, cmd, opts),
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn render_vec<F: Field>(f: &F, labels: &[String], v: &[(usize, F::E)]) -> Value {
    Value::Object(v.iter().map(|(i, x)| (labels[*i].clone(), Value::String(f.render(x)))).collect())
}

struct Ctx<'a, F: Field> {
    s: &'a Scenario<F>,
    opts: &'a Options,
}

impl<F: Field> Ctx<'_, F> {
    fn up_to(&self) -> usize {
        self.opts.up_to.or(self.s.window.up_to).unwrap_or(2)
    }

    fn page(&self) -> usize {
        self.opts.page.or(self.s.window.page).unwrap_or(2)
    }

    fn window(&self) -> Window {
        let d = (self.up_to() + 1).max(3);
        let (i, j) = self.opts.window.unwrap_or((self.s.window.i_max.unwrap_or(d), self.s.window.j_max.unwrap_or(d)));
        Window { i_max: i, j_max: j }
    }

    fn ext(&self) -> Result<&CqExtension> {
        self.s.ext.as_ref().ok_or_else(|| Error::Contract("no extension data: add an `extension` block with `h` and `rho`".into()))
    }

    fn setting(&self) -> Result<Setting<'_, F>> {
        Ok(Setting { algebra: &self.s.algebra, group: &self.s.group, action: &self.s.action, module: &self.s.module, ext: self.ext()? })
    }

    fn group_model(&self) -> Result<GroupModel> {
        Ok(match self.opts.resolution {
            Resolution::Periodic => GroupModel::Periodic(self.ext()?.clone()),
            Resolution::Bar => GroupModel::Bar,
        })
    }

    fn grid(&self) -> Result<hhsmash::specseq::DoubleComplexGrid<F>> {
        let s = self.s;
        build_double_complex(&s.algebra, &s.group, &s.action, &s.module, &self.group_model()?, self.window(), &self.opts.guard)
    }

    /// `dim HH^n(AG, AG)` computed directly, when `M = AG`.
    fn oracle(&self, up_to: usize) -> Result<Option<Vec<usize>>> {
        if !self.s.module_is_smash {
            return Ok(None);
        }
        let smash = build_smash(&self.s.algebra, &self.s.group, &self.s.action)?;
        direct_oracle(&smash, up_to, &self.opts.guard).map(Some)
    }

    /// A solver certificate, or the explicit one of a covering.
    fn certificate(&self) -> Result<(DegenerationCertificate<F::E>, &'static str)> {
        let s = self.setting()?;
        match find_certificate(&s, &CertificateOptions::default())? {
            Feasibility::Feasible(c) => Ok((c, "solver")),
            Feasibility::Infeasible { .. } => match &self.s.covering {
                Some(ds) => {
                    let c = canonical_covering_certificate(ds, s.ext)?;
                    if c.check(&s)?.passed() {
                        Ok((c, "covering"))
                    } else {
                        Err(Error::Contract("no degeneration certificate exists and the grading is not singular".into()))
                    }
                }
                None => Err(Error::Contract("no degeneration certificate exists for this scenario".into())),
            },
        }
    }
}

fn run_in<F: Field>(raw: &RawScenario, f: &F, cmd: Command, opts: &Options) -> Result<Outcome> {
    let s = raw.build(f)?;
    let c = Ctx { s: &s, opts };
    let head = json!({
        "name": s.name,
        "field": match f.characteristic() { 0 => "Q".to_string(), p => format!("F{p}") },
        "command": format!("{cmd:?}").to_lowercase(),
    });
    let (body, passed) = match cmd {
        Command::Validate => (validate(&c), true),
        Command::Hh => hh(&c)?,
        Command::Groupcoh => groupcoh(&c)?,
        Command::Pages => pages(&c)?,
        Command::Degeneration => degeneration(&c)?,
        Command::Structure => {
            let (cert, source) = c.certificate()?;
            let up_to = c.up_to();
            let ctx = StructureContext::new(&c.setting()?, &cert, up_to + 1, &opts.guard)?;
            let rep = structure_report(&ctx, up_to)?;
            (json!({ "certificate": source, "report": to_value(&rep) }), rep.passed())
        }
        Command::Filtration => {
            let (cert, source) = c.certificate()?;
            let up_to = c.up_to();
            let ctx = StructureContext::new(&c.setting()?, &cert, up_to + 1, &opts.guard)?;
            let rep = filtration_report(&ctx, up_to)?;
            (json!({ "certificate": source, "report": to_value(&rep) }), rep.passed())
        }
        Command::Dims => {
            let up_to = c.up_to().max(1);
            let oracle = c.oracle(up_to)?;
            let rep = verify_dims(&c.setting()?, up_to, oracle.as_deref(), &opts.guard)?;
            (to_value(&rep), rep.passed())
        }
        Command::Tr => {
            let n = s.tr.ok_or_else(|| Error::Contract("add a `tr n` line to run this command".into()))?;
            let rep = verify_tr(&s.base, n, c.up_to(), &opts.guard)?;
            (to_value(&rep), rep.passed())
        }
        Command::Oracle => {
            let up_to = c.up_to();
            let oracle = c.oracle(up_to)?;
            let rows = convergence(&c.grid()?, up_to, oracle.as_deref())?;
            let ok = rows.iter().all(|r| !r.safe || r.agree);
            (json!({ "rows": to_value(&rows) }), ok)
        }
    };
    let mut report = head;
    report["passed"] = Value::Bool(passed);
    report["result"] = body;
    Ok(Outcome { report, passed })
}

fn validate<F: Field>(c: &Ctx<'_, F>) -> Value {
    let s = c.s;
    json!({
        "algebra_dim": s.algebra.dim(),
        "algebra_basis": s.algebra.labels,
        "group_order": s.group.order(),
        "group_elements": s.group.labels,
        "module_dim": s.module.dim(),
        "module_is_algebra": s.module.unit.is_some(),
        "extension": s.ext.as_ref().map(|e| json!({
            "h": e.h.iter().map(|&x| s.group.labels[x].clone()).collect::<Vec<_>>(),
            "rho": s.group.labels[e.rho],
            "q": e.q,
        })),
    })
}

fn hh<F: Field>(c: &Ctx<'_, F>) -> Result<(Value, bool)> {
    let s = c.s;
    let up_to = c.up_to();
    let model =
        CochainModel::new(&s.algebra, &s.module, ModelOptions { a_action: Some(s.action.clone()), force: None, guard: c.opts.guard })?;
    let slices = hochschild_cohomology(&model, None, up_to)?;
    let cmp = invariant_comparison(&model, &s.group, up_to)?;
    let rows: Vec<Value> = slices
        .iter()
        .zip(&cmp)
        .map(|(sl, ic)| json!({ "n": sl.degree, "dim": sl.dim(), "invariant_dim": ic.dim_hh_g, "invariant_complex_dim": ic.dim_hh_gup }))
        .collect();
    Ok((json!({ "model": format!("{:?}", model.kind), "rows": rows }), true))
}

fn groupcoh<F: Field>(c: &Ctx<'_, F>) -> Result<(Value, bool)> {
    let s = c.s;
    let f = &s.field;
    let up_to = c.up_to();
    let res = match c.opts.resolution {
        Resolution::Periodic => periodic_resolution(f, &s.group, c.ext()?, up_to + 1)?,
        Resolution::Bar => normalized_bar_resolution(f, &s.group, up_to + 1, &c.opts.guard)?,
    };
    let m = CoefficientModule::for_resolution(&res, s.module.action.clone());
    let dims: Vec<usize> = group_cohomology(&res, &m, up_to)?.iter().map(|x| x.dim()).collect();
    Ok((json!({ "resolution": format!("{:?}", res.kind), "coefficients": "module", "dims": dims }), true))
}

fn pages<F: Field>(c: &Ctx<'_, F>) -> Result<(Value, bool)> {
    let grid = c.grid()?;
    let fc = FilteredComplex::new(&grid, c.opts.filtration);
    let table = fc.page(c.page())?;
    table.check_square_zero()?;
    Ok((
        json!({
            "page": table.r,
            "filtration": format!("{:?}", c.opts.filtration),
            "window": to_value(&grid.window),
            "cells": to_value(&table.summary()),
        }),
        true,
    ))
}

fn degeneration<F: Field>(c: &Ctx<'_, F>) -> Result<(Value, bool)> {
    let s = c.s;
    let f = &s.field;
    let setting = c.setting()?;
    let unit = s.module.unit.as_deref();
    let proj = check_kg_projectivity(f, &s.group, &s.module.action, unit, &ProjectivityScope::Group)?;
    let cert = find_certificate(&setting, &CertificateOptions::default())?;
    let cert_json = match &cert {
        Feasibility::Feasible(cert) => {
            let check = cert.check(&setting)?;
            json!({ "status": "feasible", "m": render_vec(f, &s.module.labels, &cert.m), "check": to_value(&check) })
        }
        Feasibility::Infeasible { .. } => json!({ "status": "infeasible" }),
    };
    let mut grid_window = c.window();
    grid_window.j_max = grid_window.j_max.max(2);
    let grid = build_double_complex(
        &s.algebra,
        &s.group,
        &s.action,
        &s.module,
        &GroupModel::Periodic(c.ext()?.clone()),
        grid_window,
        &c.opts.guard,
    )?;
    let page = c.opts.page.or(s.window.page).unwrap_or(3);
    let rs = check_rs_degeneration(&grid, page)?;
    let consistent = page != 3 || cert.is_feasible() == rs.tests[0].vanishes;
    Ok((
        json!({
            "projective": proj.is_feasible(),
            "certificate": cert_json,
            "rs": to_value(&rs),
            "consistent": consistent,
        }),
        consistent,
    ))
}
