//! Executes a parsed script over one coefficient field.

use std::collections::HashMap;

use dualhs_core::dualhs::{
    delta, dual_hilbert_coefficients, hilbert_coefficients, minimal_reduction, phi, verify, zero_dim_report, Config, Instance,
};
use dualhs_core::homology::{dual_hs_value, ext_dual_value};
use dualhs_core::poly::Polynomial;
use dualhs_core::ring::{FPModule, QuotientRing};
use dualhs_core::{Fp, Rational, Scalar};

use crate::report::{CheckRow, CoefficientBlock, CommandReport, ReductionBlock};
use crate::script::{FieldChoice, Format, ModuleDef, Script, Statement, Table};

/// Command-line knobs; `field` and `window`/`nmax` override the script and
/// the library defaults.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub field: Option<FieldChoice>,
    pub window: Option<usize>,
    pub nmax: Option<usize>,
    pub format: Option<Format>,
}

/// Rendered output destined for stdout (`path == None`) or a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    pub path: Option<String>,
    pub format: Format,
    pub text: String,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub field: FieldChoice,
    pub reports: Vec<CommandReport>,
    pub emissions: Vec<Emission>,
}

impl Outcome {
    pub fn failed(&self) -> bool {
        self.reports.iter().any(CommandReport::failed)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }
}

pub fn run_session(script: &Script, opts: &Options) -> Outcome {
    let field = opts.field.or(script.field).unwrap_or_default();
    match field {
        FieldChoice::Rationals => Session::<Rational>::new(field, opts).run(script),
        FieldChoice::Prime(32003) => Session::<Fp<32003>>::new(field, opts).run(script),
        FieldChoice::Prime(65521) => Session::<Fp<65521>>::new(field, opts).run(script),
        FieldChoice::Prime(2147483647) => Session::<Fp<2147483647>>::new(field, opts).run(script),
        FieldChoice::Prime(p) => unreachable!("prime {p} rejected by the parser"),
    }
}

/// A definition that failed keeps its error so later uses can cite it.
type Slot<T> = Result<T, String>;

struct IdealDef<S> {
    ring: String,
    gens: Vec<Polynomial<S>>,
}

struct ModuleEntry<S> {
    ring: String,
    module: FPModule<S>,
}

struct Session<S: Scalar> {
    field: FieldChoice,
    cfg: Config,
    format: Format,
    rings: HashMap<String, Slot<QuotientRing<S>>>,
    ideals: HashMap<String, Slot<IdealDef<S>>>,
    modules: HashMap<String, Slot<ModuleEntry<S>>>,
    reports: Vec<CommandReport>,
    emissions: Vec<Emission>,
}

fn lookup<'a, T>(map: &'a HashMap<String, Slot<T>>, name: &str) -> Result<&'a T, String> {
    match map.get(name) {
        Some(Ok(v)) => Ok(v),
        Some(Err(e)) => Err(format!("`{name}` is unavailable: {e}")),
        None => Err(format!("`{name}` is undefined")),
    }
}

fn to_i64(v: usize) -> i64 {
    i64::try_from(v).expect("length fits in i64")
}

impl<S: Scalar> Session<S> {
    fn new(field: FieldChoice, opts: &Options) -> Self {
        let mut cfg = Config { seed: opts.seed, nmax: opts.nmax, ..Config::default() };
        if let Some(w) = opts.window {
            cfg.window = w;
        }
        Session {
            field,
            cfg,
            format: opts.format.unwrap_or(Format::Json),
            rings: HashMap::new(),
            ideals: HashMap::new(),
            modules: HashMap::new(),
            reports: Vec::new(),
            emissions: Vec::new(),
        }
    }

    fn run(mut self, script: &Script) -> Outcome {
        let mut reported = false;
        for line in &script.lines {
            let n = line.number;
            match &line.statement {
                Statement::Field(_) => {}
                Statement::Ring { name, vars, relations, order } => {
                    let slot = self.define_ring(vars, relations, *order);
                    self.record_definition("ring", n, name, &slot);
                    self.rings.insert(name.clone(), slot);
                }
                Statement::Ideal { name, gens, ring } => {
                    let slot = self.define_ideal(gens, ring);
                    self.record_definition("ideal", n, name, &slot);
                    self.ideals.insert(name.clone(), slot);
                }
                Statement::Module { name, def } => {
                    let slot = self.define_module(def);
                    self.record_definition("module", n, name, &slot);
                    self.modules.insert(name.clone(), slot);
                }
                Statement::Report { format, path } => {
                    reported = true;
                    let format = format.or(Some(self.format)).unwrap_or(Format::Json);
                    let text = crate::report::render(&self.reports, format);
                    self.emissions.push(Emission { path: path.clone(), format, text });
                }
                cmd => {
                    let report = self.command(n, cmd);
                    self.reports.push(report);
                }
            }
        }
        if !reported {
            let text = crate::report::render(&self.reports, self.format);
            self.emissions.push(Emission { path: None, format: self.format, text });
        }
        Outcome { field: self.field, reports: self.reports, emissions: self.emissions }
    }

    fn blank(&self, command: &str, line: usize, operation: &str) -> CommandReport {
        CommandReport::new(command, line, operation, self.field.to_string(), self.cfg.seed)
    }

    /// Failed definitions appear in the report; successful ones do not.
    fn record_definition<T>(&mut self, kind: &str, line: usize, name: &str, slot: &Slot<T>) {
        if let Err(e) = slot {
            let mut r = self.blank(kind, line, kind).input("name", name);
            r.error = Some(e.clone());
            self.reports.push(r);
        }
    }

    fn define_ring(&self, vars: &[String], relations: &[String], order: dualhs_core::poly::MonomialOrder) -> Slot<QuotientRing<S>> {
        let poly = dualhs_core::poly::PolyRing::<S>::with_vars(vars, order).map_err(|e| e.to_string())?;
        let rels = relations.iter().map(|p| poly.parse(p).map_err(|e| format!("in `{p}`: {e}"))).collect::<Result<Vec<_>, _>>()?;
        QuotientRing::new(&poly, &rels).map_err(|e| e.to_string())
    }

    fn parse_in(&self, ring: &QuotientRing<S>, polys: &[String]) -> Result<Vec<Polynomial<S>>, String> {
        polys.iter().map(|p| ring.poly().parse(p).map_err(|e| format!("in `{p}`: {e}"))).collect()
    }

    fn define_ideal(&self, gens: &[String], ring: &str) -> Slot<IdealDef<S>> {
        let r = lookup(&self.rings, ring)?;
        Ok(IdealDef { ring: ring.to_string(), gens: self.parse_in(r, gens)? })
    }

    fn define_module(&self, def: &ModuleDef) -> Slot<ModuleEntry<S>> {
        let ring_name = def.ring();
        let ring = lookup(&self.rings, ring_name)?;
        let module = match def {
            ModuleDef::Free { rank, .. } => FPModule::free(ring, *rank),
            ModuleDef::Sub { gens, .. } => {
                let gens = gens.iter().map(|g| self.parse_in(ring, g)).collect::<Result<Vec<_>, _>>()?;
                FPModule::submodule(ring, &gens).map_err(|e| e.to_string())?
            }
            ModuleDef::Coker { rank, cols, .. } => {
                let cols = cols.iter().map(|c| self.parse_in(ring, c)).collect::<Result<Vec<_>, _>>()?;
                FPModule::cokernel(ring, vec![0; *rank], cols).map_err(|e| e.to_string())?
            }
        };
        Ok(ModuleEntry { ring: ring_name.to_string(), module })
    }

    /// Module and ideal, checked to live over the same ring.
    fn pair(&self, module: &str, ideal: &str) -> Result<(&FPModule<S>, &[Polynomial<S>]), String> {
        let m = lookup(&self.modules, module)?;
        let i = lookup(&self.ideals, ideal)?;
        if m.ring != i.ring {
            return Err(format!("module `{module}` is over `{}` but ideal `{ideal}` is in `{}`", m.ring, i.ring));
        }
        Ok((&m.module, &i.gens))
    }

    fn command(&self, line: usize, stmt: &Statement) -> CommandReport {
        let (mut report, result) = match stmt {
            Statement::Table { kind, module, ideal, upto } => {
                let mut r = self.blank(kind.name(), line, kind.name()).input("module", module).input("ideal", ideal).input("upto", upto);
                let res = self.table(&mut r, *kind, module, ideal, *upto);
                (r, res)
            }
            Statement::Coefficients { module, ideal } => {
                let mut r = self.blank("coefficients", line, "dual_hilbert_coefficients").input("module", module).input("ideal", ideal);
                let res = self.coefficients(&mut r, module, ideal);
                (r, res)
            }
            Statement::Reduction { ideal } => {
                let mut r = self.blank("reduction", line, "minimal_reduction").input("ideal", ideal);
                let res = self.reduction(&mut r, ideal);
                (r, res)
            }
            Statement::Phi { module, ideal } => {
                let mut r = self.blank("phi", line, "phi").input("module", module).input("ideal", ideal);
                let res = self.phi(&mut r, module, ideal);
                (r, res)
            }
            Statement::ZeroDim { ring, module } => {
                let mut r = self.blank("zero_dim", line, "zero_dim_report").input("ring", ring).input("module", module);
                let res = self.zero_dim(&mut r, ring, module);
                (r, res)
            }
            Statement::Verify { claim, module, ideal } => {
                let mut r = self.blank("verify", line, "verify").input("claim", claim).input("module", module);
                if let Some(i) = ideal {
                    r = r.input("ideal", i);
                }
                let res = self.verify(&mut r, *claim, module, ideal.as_deref());
                (r, res)
            }
            other => unreachable!("not a command: {other:?}"),
        };
        if let Err(e) = result {
            report.error = Some(e);
        }
        report
    }

    fn table(&self, r: &mut CommandReport, kind: Table, module: &str, ideal: &str, upto: usize) -> Result<(), String> {
        let (m, i) = self.pair(module, ideal)?;
        for n in 0..=upto as u32 {
            let v = match kind {
                Table::DualHs => dual_hs_value(m, i, n).map(to_i64).map_err(|e| e.to_string()),
                Table::Hs => m.truncation_length(i, n).map(to_i64).map_err(|e| e.to_string()),
                Table::Ext1Dual => ext_dual_value(1, m, i, n).map(to_i64).map_err(|e| e.to_string()),
                Table::Delta => delta(m, i, n).map_err(|e| e.to_string()),
            }?;
            r.values.push(v);
        }
        Ok(())
    }

    fn coefficients(&self, r: &mut CommandReport, module: &str, ideal: &str) -> Result<(), String> {
        let (m, i) = self.pair(module, ideal)?;
        let dual = dual_hilbert_coefficients(m, i, &self.cfg).map_err(|e| e.to_string())?;
        let hs = hilbert_coefficients(m, i, &self.cfg).map_err(|e| e.to_string())?;
        r.values = dual.values().to_vec();
        r.postulation = Some(dual.function.postulation as i64);
        r.series_numerator = dual.numerator.coefficients.clone();
        r.coefficients = Some(CoefficientBlock { c: dual.coefficients.clone(), e: hs.coefficients.clone() });
        r.quantities.insert("d".into(), to_i64(m.ring().dim()));
        r.quantities.insert("c0".into(), dual.coefficients[0]);
        r.quantities.insert("e0".into(), hs.coefficients[0]);
        r.quantities.insert("mu".into(), to_i64(m.num_generators().map_err(|e| e.to_string())?));
        Ok(())
    }

    fn reduction(&self, r: &mut CommandReport, ideal: &str) -> Result<(), String> {
        let i = lookup(&self.ideals, ideal)?;
        let ring = lookup(&self.rings, &i.ring)?;
        let red = minimal_reduction(ring, &i.gens, self.cfg.seed).map_err(|e| e.to_string())?;
        r.reduction = Some(ReductionBlock { r: to_i64(red.r), j: red.j.iter().map(|f| ring.poly().format(f)).collect() });
        Ok(())
    }

    fn phi(&self, r: &mut CommandReport, module: &str, ideal: &str) -> Result<(), String> {
        let (m, i) = self.pair(module, ideal)?;
        let red = minimal_reduction(m.ring(), i, self.cfg.seed).map_err(|e| e.to_string())?;
        r.quantities.insert("r".into(), to_i64(red.r));
        r.phi = Some(phi(m, i, red.r).map_err(|e| e.to_string())?);
        Ok(())
    }

    fn zero_dim(&self, r: &mut CommandReport, ring: &str, module: &str) -> Result<(), String> {
        lookup(&self.rings, ring)?;
        let m = lookup(&self.modules, module)?;
        if m.ring != ring {
            return Err(format!("module `{module}` is over `{}`, not `{ring}`", m.ring));
        }
        let rep = zero_dim_report(&m.module, &self.cfg).map_err(|e| e.to_string())?;
        r.values = rep.alpha.clone();
        r.quantities.insert("r".into(), to_i64(rep.r));
        r.quantities.insert("e0".into(), rep.e0);
        r.quantities.insert("c1".into(), rep.c1);
        r.quantities.insert("c1_series".into(), rep.c1_series);
        r.quantities.insert("consistent".into(), i64::from(rep.consistent()));
        Ok(())
    }

    fn verify(&self, r: &mut CommandReport, claim: dualhs_core::dualhs::ClaimId, module: &str, ideal: Option<&str>) -> Result<(), String> {
        let inst = match ideal {
            Some(i) => {
                let (m, gens) = self.pair(module, i)?;
                Instance::new(m.clone(), gens.to_vec(), format!("{module} w.r.t. {i}"))
            }
            None => Instance::at_maximal(lookup(&self.modules, module)?.module.clone(), format!("{module} w.r.t. the variables")),
        };
        let rep = verify(claim, &inst, &self.cfg).map_err(|e| e.to_string())?;
        r.verdict = Some(rep.verdict.as_str());
        r.quantities.extend(rep.quantities);
        r.checks = rep.checks.into_iter().map(|c| CheckRow { name: c.name, lhs: c.lhs, rhs: c.rhs, ok: c.ok }).collect();
        r.witness = rep.witness;
        Ok(())
    }
}
