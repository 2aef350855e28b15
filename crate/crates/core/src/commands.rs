//! Batch commands over a [`SpecFile`], each producing a JSON document and an
//! exit status.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 validation failure,
//! 3 a computed verdict is negative (for example `NotGenerated`). Output keys
//! are sorted, so identical input always yields identical bytes.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{Coalgebra, Comodule};
use crate::coend::{antipode_on_coend, bialgebra_on_coend, c_coend, coend_of_functor, epi_to_c_coend, factor_through_coend, CoendResult};
use crate::cohom::cohom;
use crate::error::Error;
use crate::fincat::{validate_category, Report};
use crate::functor::{check_monoidal, validate_functor, DiagramFunctor, FiberFunctor};
use crate::linalg::{Field, LinearMap};
use crate::padic::{bounded_coend, BoundedCoend};
use crate::reconstruct::{equivalence_check, reconstruct_from, comodule_category_of, transported_bialgebra_matches, Verdict};
use crate::spec::{CoalgebraEntry, SpecError, SpecFile, SpecResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERDICT: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub exit: i32,
    pub json: Value,
}

impl Output {
    fn ok(json: Value) -> Self {
        Output { exit: EXIT_OK, json }
    }

    fn invalid(what: &str, report: &Report) -> Self {
        Output {
            exit: EXIT_INVALID,
            json: json!({"valid": false, "what": what, "violations": report.violations}),
        }
    }

    fn failed(err: &Error) -> Self {
        let violations = match err {
            Error::AxiomFailure { report, .. } | Error::NaturalityFailure(report) => report.violations.clone(),
            _ => vec![],
        };
        Output {
            exit: EXIT_INVALID,
            json: json!({"valid": false, "error": err.to_string(), "violations": violations}),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Names picked on the command line; empty means "use the default".
#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub functor: Option<String>,
    pub controls: Vec<String>,
    pub coalgebra: Option<String>,
    pub seeds: Vec<String>,
    pub probes: Vec<String>,
    pub spaces: Vec<String>,
    pub transformation: Option<String>,
}

pub const COMMANDS: &[&str] = &[
    "validate", "cohom", "coend", "ccoend", "bialgebra", "hopf", "reconstruct", "equiv", "bcoend", "factor",
];

pub fn run(command: &str, spec: &SpecFile, sel: &Selection) -> SpecResult<Output> {
    let functor = || pick("functor", sel.functor.as_deref(), &spec.functor_names());
    let coalgebra = || pick("coalgebra", sel.coalgebra.as_deref(), &spec.coalgebra_names());
    match command {
        "validate" => Ok(cmd_validate(spec)),
        "cohom" => {
            let names = if sel.spaces.is_empty() {
                spec.space_names().into_iter().map(String::from).collect()
            } else {
                sel.spaces.clone()
            };
            match names.as_slice() {
                [x, y] => cmd_cohom(spec, x, y),
                _ => Err(SpecError::Usage("cohom needs exactly two spaces (--spaces X,Y)".into())),
            }
        }
        "coend" => cmd_coend(spec, &functor()?),
        "ccoend" => {
            let f = functor()?;
            let controls = if sel.controls.is_empty() {
                spec.control_names(&f)?.into_iter().map(String::from).collect()
            } else {
                sel.controls.clone()
            };
            cmd_ccoend(spec, &f, &controls)
        }
        "bialgebra" => cmd_bialgebra(spec, &functor()?),
        "hopf" => cmd_hopf(spec, &functor()?),
        "reconstruct" => {
            let c = coalgebra()?;
            cmd_reconstruct(spec, &c, &seeds_or_default(spec, &c, &sel.seeds))
        }
        "equiv" => {
            let c = coalgebra()?;
            let probes = if sel.probes.is_empty() {
                vec!["regular".to_string()]
            } else {
                sel.probes.clone()
            };
            cmd_equiv(spec, &c, &seeds_or_default(spec, &c, &sel.seeds), &probes)
        }
        "bcoend" => cmd_bcoend(spec, &functor()?),
        "factor" => {
            let t = pick("transformation", sel.transformation.as_deref(), &spec.transformation_names())?;
            let f = match &sel.functor {
                Some(f) => f.clone(),
                None => spec.transformation_functor(&t)?.to_string(),
            };
            cmd_factor(spec, &f, &t)
        }
        other => Err(SpecError::Usage(format!(
            "unknown command {other:?} (expected one of {})",
            COMMANDS.join(", ")
        ))),
    }
}

fn pick(kind: &str, given: Option<&str>, available: &[&str]) -> SpecResult<String> {
    match (given, available) {
        (Some(g), _) => Ok(g.to_string()),
        (None, [only]) => Ok(only.to_string()),
        (None, []) => Err(SpecError::Usage(format!("the spec declares no {kind}"))),
        (None, _) => Err(SpecError::Usage(format!(
            "several {kind}s declared ({}); pick one with --{kind}",
            available.join(", ")
        ))),
    }
}

fn seeds_or_default(spec: &SpecFile, coalgebra: &str, seeds: &[String]) -> Vec<String> {
    if seeds.is_empty() {
        spec.comodules_over(coalgebra).into_iter().map(String::from).collect()
    } else {
        seeds.to_vec()
    }
}

fn matrix(m: &LinearMap) -> Value {
    json!(m.to_string_rows())
}

fn named_matrices(names: &[String], maps: &[LinearMap]) -> Value {
    let mut out = Map::new();
    for (n, m) in names.iter().zip(maps) {
        out.insert(n.clone(), matrix(m));
    }
    Value::Object(out)
}

/// Checks every section of the file, reporting all problems at once.
pub fn cmd_validate(spec: &SpecFile) -> Output {
    let mut sections = Map::new();
    let mut valid = true;
    let mut record = |key: String, r: Report| {
        valid &= r.is_valid();
        sections.insert(key, json!(r.violations));
    };
    let from_err = |e: SpecError| {
        let mut r = Report::default();
        r.push(e.to_string());
        r
    };
    for name in spec.space_names() {
        let r = spec.space(name).err().map(from_err).unwrap_or_default();
        record(format!("spaces.{name}"), r);
    }
    for name in spec.category_names() {
        let r = match spec.category(name) {
            Ok(c) => validate_category(&c),
            Err(e) => from_err(e),
        };
        record(format!("categories.{name}"), r);
    }
    for name in spec.functor_names() {
        let r = match functor_report(spec, name) {
            Ok((_, r)) => r,
            Err(e) => from_err(e),
        };
        record(format!("functors.{name}"), r);
        let Ok(controls) = spec.control_names(name) else { continue };
        for c in controls {
            let r = match spec.controls(name, &[c.to_string()]) {
                Ok(cs) => match spec.functor(name) {
                    Ok(f) => cs[0].check(&f),
                    Err(e) => from_err(e),
                },
                Err(e) => from_err(e),
            };
            record(format!("functors.{name}.controls.{c}"), r);
        }
    }
    for name in spec.coalgebra_names() {
        let r = match spec.coalgebra(name) {
            Ok(entry) => entry_report(&entry),
            Err(e) => from_err(e),
        };
        record(format!("coalgebras.{name}"), r);
    }
    for name in spec.comodule_names() {
        let r = match comodule(spec, name) {
            Ok(m) => m.check(),
            Err(e) => from_err(e),
        };
        record(format!("comodules.{name}"), r);
    }
    for name in spec.transformation_names() {
        let r = spec
            .transformation_functor(name)
            .and_then(|f| spec.functor(f))
            .and_then(|f| spec.transformation(name, &f).map(|t| t.naturality_report(&f)));
        record(format!("transformations.{name}"), r.unwrap_or_else(from_err));
    }
    Output {
        exit: if valid { EXIT_OK } else { EXIT_INVALID },
        json: json!({"valid": valid, "sections": sections}),
    }
}

fn entry_report(entry: &CoalgebraEntry) -> Report {
    match entry {
        CoalgebraEntry::Coalgebra(c) => c.check(),
        CoalgebraEntry::Bialgebra(b) => b.check(),
        CoalgebraEntry::Hopf(h) => h.check(),
    }
}

/// A comodule built over the coalgebra it declares.
fn comodule(spec: &SpecFile, name: &str) -> SpecResult<Comodule> {
    let c = spec.comodule_coalgebra(name)?.to_string();
    let base = Arc::new(spec.coalgebra(&c)?.coalgebra().clone());
    spec.comodule(name, &base, &c)
}

/// The functor with its full validation report (functor laws, plus the
/// monoidal axioms when ξ data is present).
fn functor_report(spec: &SpecFile, name: &str) -> SpecResult<(DiagramFunctor, Report)> {
    let f = spec.functor(name)?;
    let mut r = validate_functor(&f);
    if r.is_valid() && f.monoidal().is_some() {
        r.extend("monoidal", check_monoidal(&f));
    }
    Ok((f, r))
}

fn valid_functor(spec: &SpecFile, name: &str) -> SpecResult<Result<DiagramFunctor, Output>> {
    let (f, r) = functor_report(spec, name)?;
    if r.is_valid() {
        Ok(Ok(f))
    } else {
        Ok(Err(Output::invalid(&format!("functor {name}"), &r)))
    }
}

macro_rules! valid {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(out) => return Ok(out),
        }
    };
}

macro_rules! computed {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Ok(Output::failed(&err)),
        }
    };
}

pub fn cmd_cohom(spec: &SpecFile, x: &str, y: &str) -> SpecResult<Output> {
    let (sx, sy) = (spec.space(x)?, spec.space(y)?);
    let c = cohom(spec.field(), &sx, &sy);
    Ok(Output::ok(json!({
        "field": spec.field().to_string(),
        "x": x,
        "y": y,
        "carrier_dim": c.carrier.dim(),
        "carrier_labels": c.carrier.labels(),
        "coev": matrix(&c.coev),
    })))
}

fn coend_json(r: &CoendResult, report: &Report) -> Value {
    json!({
        "field": r.field.to_string(),
        "objects": r.objects,
        "block_dim": r.blocks.dim(),
        "relations": r.relations.cols(),
        "carrier_dim": r.dim(),
        "carrier_labels": r.carrier.labels(),
        "pi": matrix(&r.pi),
        "injections": named_matrices(&r.objects, &r.injections),
        "delta": matrix(r.coalgebra.delta()),
        "counit": matrix(r.coalgebra.counit()),
        "delta_f": named_matrices(&r.objects, &r.delta_f.components),
        "verification": {"valid": report.is_valid(), "violations": report.violations},
    })
}

/// Computes and re-verifies the coend; a failed verification is exit 2.
fn verified_coend(f: &DiagramFunctor) -> Result<(CoendResult, Value), Output> {
    let r = coend_of_functor(f).map_err(|e| Output::failed(&e))?;
    let mut report = r.verify(f);
    report.extend("Δ", r.coalgebra.check());
    if !report.is_valid() {
        return Err(Output::invalid("coend", &report));
    }
    let json = coend_json(&r, &report);
    Ok((r, json))
}

pub fn cmd_coend(spec: &SpecFile, functor: &str) -> SpecResult<Output> {
    let f = valid!(valid_functor(spec, functor)?);
    let (_, json) = valid!(verified_coend(&f));
    Ok(Output::ok(json))
}

pub fn cmd_ccoend(spec: &SpecFile, functor: &str, controls: &[String]) -> SpecResult<Output> {
    let f = valid!(valid_functor(spec, functor)?);
    let cs = spec.controls(functor, controls)?;
    let mut report = Report::default();
    for c in &cs {
        report.extend(&format!("control {}", c.name), c.check(&f));
    }
    if !report.is_valid() {
        return Ok(Output::invalid("controls", &report));
    }
    let (plain, _) = valid!(verified_coend(&f));
    let rc = computed!(c_coend(&f, &cs));
    let mut check = rc.verify(&f);
    check.extend("Δ", rc.coalgebra.check());
    if !check.is_valid() {
        return Ok(Output::invalid("controlled coend", &check));
    }
    let h = computed!(epi_to_c_coend(&plain, &rc));
    let mut json = coend_json(&rc, &check);
    let obj = json.as_object_mut().expect("object");
    obj.insert("controls".into(), json!(controls));
    obj.insert("plain_dim".into(), json!(plain.dim()));
    obj.insert("epi".into(), matrix(&h));
    obj.insert("epi_surjective".into(), json!(true));
    obj.insert("epi_coalgebra_morphism".into(), json!(true));
    obj.insert("identical_to_plain".into(), json!(rc == plain));
    Ok(Output::ok(json))
}

pub fn cmd_bialgebra(spec: &SpecFile, functor: &str) -> SpecResult<Output> {
    let f = valid!(valid_functor(spec, functor)?);
    if f.monoidal().is_none() {
        return Ok(Output::invalid("functor", &single(format!("functor {functor} carries no monoidal data"))));
    }
    let (r, mut json) = valid!(verified_coend(&f));
    let b = computed!(bialgebra_on_coend(&f, &r));
    let report = b.check();
    if !report.is_valid() {
        return Ok(Output::invalid("bialgebra", &report));
    }
    let obj = json.as_object_mut().expect("object");
    obj.insert("mult".into(), matrix(b.mult()));
    obj.insert("unit".into(), matrix(b.unit()));
    Ok(Output::ok(json))
}

pub fn cmd_hopf(spec: &SpecFile, functor: &str) -> SpecResult<Output> {
    let f = valid!(valid_functor(spec, functor)?);
    if f.monoidal().is_none() {
        return Ok(Output::invalid("functor", &single(format!("functor {functor} carries no monoidal data"))));
    }
    let (r, mut json) = valid!(verified_coend(&f));
    let b = computed!(bialgebra_on_coend(&f, &r));
    let h = computed!(antipode_on_coend(&f, &r, b));
    let report = h.check();
    if !report.is_valid() {
        return Ok(Output::invalid("Hopf algebra", &report));
    }
    let obj = json.as_object_mut().expect("object");
    obj.insert("mult".into(), matrix(h.bialgebra().mult()));
    obj.insert("unit".into(), matrix(h.bialgebra().unit()));
    obj.insert("antipode".into(), matrix(h.antipode()));
    Ok(Output::ok(json))
}

fn single(v: String) -> Report {
    let mut r = Report::default();
    r.push(v);
    r
}

type BaseAndComodules = (CoalgebraEntry, Arc<Coalgebra>, Vec<(String, Comodule)>);

/// The base coalgebra entry (validated) and the named comodules over it.
fn base_and_comodules(
    spec: &SpecFile,
    coalgebra: &str,
    names: &[String],
) -> SpecResult<Result<BaseAndComodules, Output>> {
    let entry = spec.coalgebra(coalgebra)?;
    let report = entry_report(&entry);
    if !report.is_valid() {
        return Ok(Err(Output::invalid(&format!("coalgebra {coalgebra}"), &report)));
    }
    let base = Arc::new(entry.coalgebra().clone());
    let mut out = Vec::new();
    for n in names {
        let m = spec.comodule(n, &base, coalgebra)?;
        let r = m.check();
        if !r.is_valid() {
            return Ok(Err(Output::invalid(&format!("comodule {n}"), &r)));
        }
        out.push((n.clone(), m));
    }
    Ok(Ok((entry, base, out)))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Iso => "Iso",
        Verdict::NotGenerated => "NotGenerated",
        Verdict::NotIsomorphic => "NotIsomorphic",
    }
}

pub fn cmd_reconstruct(spec: &SpecFile, coalgebra: &str, seeds: &[String]) -> SpecResult<Output> {
    if seeds.is_empty() {
        return Err(SpecError::Usage("reconstruct needs at least one seed comodule".into()));
    }
    let (entry, base, comodules) = valid!(base_and_comodules(spec, coalgebra, seeds)?);
    let category = computed!(comodule_category_of(&base, comodules));
    let report = category.check();
    if !report.is_valid() {
        return Ok(Output::invalid("comodule category", &report));
    }
    // Tensor structure is optional: seeds need not be closed under ⊗.
    let tensored = entry
        .bialgebra()
        .and_then(|b| category.clone().with_tensor_structure(b).ok().map(|c| (c, b)));
    let rec = computed!(reconstruct_from(category));
    let check = rec.coend.verify(&rec.category);
    if !check.is_valid() {
        return Ok(Output::invalid("coend of the seed category", &check));
    }
    let bialgebra = match tensored {
        Some((c, b)) if rec.verdict == Verdict::Iso => {
            let rec_t = computed!(reconstruct_from(c));
            json!(computed!(transported_bialgebra_matches(&rec_t, b)))
        }
        _ => Value::Null,
    };
    let iso = rec.verdict == Verdict::Iso;
    let json = json!({
        "coalgebra": coalgebra,
        "seeds": seeds,
        "hom_dims": rec.category.hom_dims(),
        "coend_dim": rec.coend.dim(),
        "base_dim": base.dim(),
        "h": matrix(&rec.h),
        "rank": rec.rank,
        "coalgebra_morphism": rec.coalgebra_morphism,
        "verdict": verdict_name(rec.verdict),
        "iso": iso,
        "bialgebra_transported": bialgebra,
    });
    Ok(Output {
        exit: if iso { EXIT_OK } else { EXIT_VERDICT },
        json,
    })
}

pub fn cmd_equiv(spec: &SpecFile, coalgebra: &str, seeds: &[String], probes: &[String]) -> SpecResult<Output> {
    if seeds.is_empty() {
        return Err(SpecError::Usage("equiv needs at least one seed comodule".into()));
    }
    let (_, base, seed_mods) = valid!(base_and_comodules(spec, coalgebra, seeds)?);
    let (_, _, probe_mods) = valid!(base_and_comodules(spec, coalgebra, probes)?);
    let v = computed!(equivalence_check(&base, seed_mods, probe_mods));
    let passed = v.passed;
    let mut json = serde_json::to_value(&v).expect("serializable");
    let obj = json.as_object_mut().expect("object");
    obj.insert("coalgebra".into(), json!(coalgebra));
    obj.insert("seeds".into(), json!(seeds));
    Ok(Output {
        exit: if passed { EXIT_OK } else { EXIT_VERDICT },
        json,
    })
}

pub fn cmd_bcoend(spec: &SpecFile, functor: &str) -> SpecResult<Output> {
    let Field::PAdic(p) = spec.field() else {
        return Err(SpecError::Usage(format!(
            "bcoend needs a p-adic field (got {}); pass --field padic:<p>",
            spec.field()
        )));
    };
    let f = valid!(valid_functor(spec, functor)?);
    let (plain, _) = valid!(verified_coend(&f));
    let b: BoundedCoend = computed!(bounded_coend(&f, p));
    let identical = b.coend == plain;
    if !identical {
        return Ok(Output::invalid("bounded coend", &single("carrier differs from the algebraic coend".into())));
    }
    let json = json!({
        "prime": p,
        "carrier_dim": b.coend.dim(),
        "carrier_labels": b.coend.carrier.labels(),
        "carrier_identical": identical,
        "closure": BoundedCoend::CLOSURE,
        "carrier_norms": b.carrier_norms,
        "adapted_basis": matrix(&b.to_adapted),
        "pi_norm": b.pi_norm,
        "injection_norms": b.injection_norms,
        "delta_norm": b.delta_norm,
        "counit_norm": b.counit_norm,
        "delta_f_norms": b.delta_f.norms,
        "delta_f_bound": b.delta_f.bound,
    });
    Ok(Output::ok(json))
}

pub fn cmd_factor(spec: &SpecFile, functor: &str, transformation: &str) -> SpecResult<Output> {
    let f = valid!(valid_functor(spec, functor)?);
    let t = spec.transformation(transformation, &f)?;
    let nat = t.naturality_report(&f);
    if !nat.is_valid() {
        return Ok(Output::invalid(&format!("transformation {transformation}"), &nat));
    }
    let (r, _) = valid!(verified_coend(&f));
    let psi = computed!(factor_through_coend(&r, &f, &t));
    let back = r.delta_f.push_forward(&psi, t.target.clone());
    let roundtrip = back.components == t.components;
    if !roundtrip {
        return Ok(Output::invalid("factorization", &single("δ_F round-trip does not recover t".into())));
    }
    Ok(Output::ok(json!({
        "functor": functor,
        "transformation": transformation,
        "carrier_dim": r.dim(),
        "psi": matrix(&psi),
        "roundtrip": roundtrip,
    })))
}
