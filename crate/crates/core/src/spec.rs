//! The JSON input format.
//!
//! A spec file names a base field and any number of spaces, categories,
//! functors (with optional monoidal data, duals and control objects),
//! coalgebras (optionally with product, unit and antipode), comodules and
//! transformations. Matrices are row-major arrays of exact scalars written as
//! strings (`"3/4"`) or integers. Parsing only checks syntax and names; the
//! axioms are checked by the `validate` command and before every computation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{Bialgebra, Coalgebra, Comodule, HopfAlgebra};
use crate::fincat::FinCategory;
use crate::functor::{ControlAction, ControlObject, DiagramFunctor, Transformation};
use crate::linalg::{Field, LinearMap, SpaceObject};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown {kind} {name:?}{context}")]
    Unresolved { kind: &'static str, name: String, context: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl SpecError {
    fn invalid(path: impl Into<String>, message: impl ToString) -> Self {
        SpecError::Invalid {
            path: path.into(),
            message: message.to_string(),
        }
    }

    fn unresolved(kind: &'static str, name: &str, context: &str) -> Self {
        SpecError::Unresolved {
            kind,
            name: name.to_string(),
            context: if context.is_empty() { String::new() } else { format!(" in {context}") },
        }
    }
}

pub type SpecResult<T> = std::result::Result<T, SpecError>;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Str(String),
}

type RawMatrix = Vec<Vec<RawScalar>>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpace {
    pub dim: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub weights: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    name: String,
    dom: String,
    cod: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoidalTables {
    unit: String,
    #[serde(default)]
    objects: Vec<(String, String, String)>,
    #[serde(default)]
    morphisms: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    objects: Vec<String>,
    #[serde(default)]
    morphisms: Vec<RawMorphism>,
    #[serde(default)]
    composition: Vec<(String, String, String)>,
    #[serde(default)]
    monoidal: Option<RawMonoidalTables>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawXi {
    left: String,
    right: String,
    map: RawMatrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctorMonoidal {
    /// Identity `ξ` wherever no explicit entry is given.
    #[serde(default)]
    strict: bool,
    #[serde(default)]
    xi: Vec<RawXi>,
    #[serde(default)]
    xi_unit: Option<RawMatrix>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDual {
    dual: String,
    iso: RawMatrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    object: String,
    target: String,
    xi: RawMatrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawControl {
    space: RawSpace,
    actions: Vec<RawAction>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctor {
    category: String,
    objects: BTreeMap<String, RawSpace>,
    #[serde(default)]
    morphisms: BTreeMap<String, RawMatrix>,
    #[serde(default)]
    monoidal: Option<RawFunctorMonoidal>,
    #[serde(default)]
    duals: BTreeMap<String, RawDual>,
    #[serde(default)]
    controls: BTreeMap<String, RawControl>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoalgebra {
    carrier: RawSpace,
    delta: RawMatrix,
    counit: RawMatrix,
    #[serde(default)]
    mult: Option<RawMatrix>,
    #[serde(default)]
    unit: Option<RawMatrix>,
    #[serde(default)]
    antipode: Option<RawMatrix>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComodule {
    coalgebra: String,
    carrier: RawSpace,
    coaction: RawMatrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransformation {
    functor: String,
    target: RawSpace,
    components: BTreeMap<String, RawMatrix>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    field: String,
    #[serde(default)]
    spaces: BTreeMap<String, RawSpace>,
    #[serde(default)]
    categories: BTreeMap<String, RawCategory>,
    #[serde(default)]
    functors: BTreeMap<String, RawFunctor>,
    #[serde(default)]
    coalgebras: BTreeMap<String, RawCoalgebra>,
    #[serde(default)]
    comodules: BTreeMap<String, RawComodule>,
    #[serde(default)]
    transformations: BTreeMap<String, RawTransformation>,
}

/// A parsed spec file. Structures are built on demand by name.
#[derive(Debug, Clone)]
pub struct SpecFile {
    field: Field,
    raw: RawSpec,
}

/// A coalgebra entry together with whatever extra structure it declares.
#[derive(Debug)]
pub enum CoalgebraEntry {
    Coalgebra(Coalgebra),
    Bialgebra(Bialgebra),
    Hopf(HopfAlgebra),
}

impl CoalgebraEntry {
    pub fn coalgebra(&self) -> &Coalgebra {
        match self {
            CoalgebraEntry::Coalgebra(c) => c,
            CoalgebraEntry::Bialgebra(b) => b.coalgebra(),
            CoalgebraEntry::Hopf(h) => h.coalgebra(),
        }
    }

    pub fn bialgebra(&self) -> Option<&Bialgebra> {
        match self {
            CoalgebraEntry::Coalgebra(_) => None,
            CoalgebraEntry::Bialgebra(b) => Some(b),
            CoalgebraEntry::Hopf(h) => Some(h.bialgebra()),
        }
    }
}

impl SpecFile {
    /// Parses `text`; `field` overrides the file's own field descriptor.
    pub fn parse(text: &str, field: Option<Field>) -> SpecResult<Self> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| {
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let message = e.to_string();
            SpecError::Parse {
                line: e.line(),
                column: e.column(),
                message: message.strip_suffix(&suffix).unwrap_or(&message).to_string(),
            }
        })?;
        let field = match field {
            Some(f) => f,
            None => raw.field.parse().map_err(|e| SpecError::invalid("field", e))?,
        };
        Ok(SpecFile { field, raw })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space_names(&self) -> Vec<&str> {
        self.raw.spaces.keys().map(String::as_str).collect()
    }

    pub fn category_names(&self) -> Vec<&str> {
        self.raw.categories.keys().map(String::as_str).collect()
    }

    pub fn functor_names(&self) -> Vec<&str> {
        self.raw.functors.keys().map(String::as_str).collect()
    }

    pub fn coalgebra_names(&self) -> Vec<&str> {
        self.raw.coalgebras.keys().map(String::as_str).collect()
    }

    pub fn comodule_names(&self) -> Vec<&str> {
        self.raw.comodules.keys().map(String::as_str).collect()
    }

    pub fn transformation_names(&self) -> Vec<&str> {
        self.raw.transformations.keys().map(String::as_str).collect()
    }

    /// Control names declared for `functor`.
    pub fn control_names(&self, functor: &str) -> SpecResult<Vec<&str>> {
        let raw = self.raw_functor(functor)?;
        Ok(raw.controls.keys().map(String::as_str).collect())
    }

    /// Comodules declared over `coalgebra`, in name order.
    pub fn comodules_over(&self, coalgebra: &str) -> Vec<&str> {
        self.raw
            .comodules
            .iter()
            .filter(|(_, c)| c.coalgebra == coalgebra)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn space(&self, name: &str) -> SpecResult<SpaceObject> {
        let raw = self
            .raw
            .spaces
            .get(name)
            .ok_or_else(|| SpecError::unresolved("space", name, ""))?;
        space(raw, name, &format!("spaces.{name}"))
    }

    pub fn category(&self, name: &str) -> SpecResult<FinCategory> {
        let raw = self
            .raw
            .categories
            .get(name)
            .ok_or_else(|| SpecError::unresolved("category", name, ""))?;
        let path = format!("categories.{name}");
        let morphisms = raw
            .morphisms
            .iter()
            .map(|m| (m.name.clone(), m.dom.clone(), m.cod.clone()))
            .collect();
        let mut c = FinCategory::from_owned(raw.objects.clone(), morphisms, raw.composition.clone())
            .map_err(|e| SpecError::invalid(&path, e))?;
        if let Some(m) = &raw.monoidal {
            let objects: Vec<(&str, &str, &str)> =
                m.objects.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
            let arrows: Vec<(&str, &str, &str)> =
                m.morphisms.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
            c = c
                .with_monoidal(&m.unit, &objects, &arrows)
                .map_err(|e| SpecError::invalid(format!("{path}.monoidal"), e))?;
        }
        Ok(c)
    }

    fn raw_functor(&self, name: &str) -> SpecResult<&RawFunctor> {
        self.raw
            .functors
            .get(name)
            .ok_or_else(|| SpecError::unresolved("functor", name, ""))
    }

    pub fn functor(&self, name: &str) -> SpecResult<DiagramFunctor> {
        let raw = self.raw_functor(name)?;
        let path = format!("functors.{name}");
        let source = self.category(&raw.category).map_err(|e| match e {
            SpecError::Unresolved { kind, name: n, .. } => SpecError::unresolved(kind, &n, &path),
            other => other,
        })?;
        let field = self.field;
        for key in raw.objects.keys() {
            source
                .object_index(key)
                .map_err(|_| SpecError::unresolved("object", key, &format!("{path}.objects")))?;
        }
        let mut values = Vec::new();
        for obj in source.objects() {
            let rs = raw
                .objects
                .get(obj)
                .ok_or_else(|| SpecError::invalid(format!("{path}.objects"), format!("no value for object {obj:?}")))?;
            values.push(space(rs, obj, &format!("{path}.objects.{obj}"))?);
        }
        for key in raw.morphisms.keys() {
            let known = source.morphism_index(key).is_ok_and(|m| !source.is_identity(m));
            if !known {
                return Err(SpecError::unresolved("morphism", key, &format!("{path}.morphisms")));
            }
        }
        let mut maps = Vec::new();
        for m in source.non_identities() {
            let mor = &source.morphisms()[m];
            let rm = raw.morphisms.get(&mor.name).ok_or_else(|| {
                SpecError::invalid(format!("{path}.morphisms"), format!("no matrix for morphism {:?}", mor.name))
            })?;
            let shape = (values[mor.cod].dim(), values[mor.dom].dim());
            maps.push(matrix(field, rm, shape, &format!("{path}.morphisms.{}", mor.name))?);
        }
        let mut f = DiagramFunctor::new(field, source.clone(), values.clone(), maps)
            .map_err(|e| SpecError::invalid(&path, e))?;

        if let Some(m) = &raw.monoidal {
            let mpath = format!("{path}.monoidal");
            let tables = source
                .monoidal()
                .ok_or_else(|| SpecError::invalid(&mpath, "category has no monoidal tables"))?;
            let n = source.object_count();
            let mut xi = BTreeMap::new();
            if m.strict {
                for x in 0..n {
                    for y in 0..n {
                        let z = tables.object_tensor[x][y];
                        let d = values[x].dim() * values[y].dim();
                        if z < n && values[z].dim() == d {
                            xi.insert((x, y), LinearMap::identity(field, d));
                        }
                    }
                }
            }
            for entry in &m.xi {
                let x = object(&source, &entry.left, &mpath)?;
                let y = object(&source, &entry.right, &mpath)?;
                let z = tables.object_tensor[x][y];
                let rows = if z < n { values[z].dim() } else { 0 };
                let p = format!("{mpath}.xi({},{})", entry.left, entry.right);
                xi.insert((x, y), matrix(field, &entry.map, (rows, values[x].dim() * values[y].dim()), &p)?);
            }
            let du = values[tables.unit].dim();
            let xi_unit = match &m.xi_unit {
                Some(rm) => matrix(field, rm, (du, 1), &format!("{mpath}.xi_unit"))?,
                None if du == 1 => LinearMap::identity(field, 1),
                None => LinearMap::zeros(field, du, 1),
            };
            f = f.with_monoidal(xi, xi_unit).map_err(|e| SpecError::invalid(&mpath, e))?;
        }

        for (obj, d) in &raw.duals {
            let dpath = format!("{path}.duals.{obj}");
            let x = object(&source, obj, &format!("{path}.duals"))?;
            let y = object(&source, &d.dual, &dpath)?;
            let iso = matrix(field, &d.iso, (values[y].dim(), values[x].dim()), &dpath)?;
            f = f.with_dual(x, y, iso);
        }
        Ok(f)
    }

    /// The named control objects of `functor`; `"unit"` is always available.
    pub fn controls(&self, functor: &str, names: &[String]) -> SpecResult<Vec<ControlObject>> {
        let raw = self.raw_functor(functor)?;
        let f = self.functor(functor)?;
        let source = f.source();
        let mut out = Vec::new();
        for name in names {
            let path = format!("functors.{functor}.controls.{name}");
            let Some(rc) = raw.controls.get(name) else {
                if name == "unit" {
                    out.push(ControlObject::unit(&f));
                    continue;
                }
                return Err(SpecError::unresolved("control", name, &format!("functors.{functor}")));
            };
            let cspace = space(&rc.space, name, &path)?;
            let mut actions = Vec::new();
            for a in &rc.actions {
                let x = object(source, &a.object, &path)?;
                let t = object(source, &a.target, &path)?;
                let shape = (cspace.dim() * f.values()[x].dim(), f.values()[t].dim());
                let xi = matrix(self.field, &a.xi, shape, &format!("{path}.{}", a.object))?;
                actions.push(ControlAction { object: x, target: t, xi });
            }
            out.push(ControlObject {
                name: name.clone(),
                space: cspace,
                actions,
            });
        }
        Ok(out)
    }

    /// Builds the named coalgebra entry; shapes are checked, axioms are not.
    pub fn coalgebra(&self, name: &str) -> SpecResult<CoalgebraEntry> {
        let raw = self
            .raw
            .coalgebras
            .get(name)
            .ok_or_else(|| SpecError::unresolved("coalgebra", name, ""))?;
        let path = format!("coalgebras.{name}");
        let field = self.field;
        let carrier = space(&raw.carrier, name, &format!("{path}.carrier"))?;
        let n = carrier.dim();
        let delta = matrix(field, &raw.delta, (n * n, n), &format!("{path}.delta"))?;
        let counit = matrix(field, &raw.counit, (1, n), &format!("{path}.counit"))?;
        let c = Coalgebra::new(carrier, delta, counit).map_err(|e| SpecError::invalid(&path, e))?;
        let (mult, unit) = match (&raw.mult, &raw.unit) {
            (None, None) => {
                if raw.antipode.is_some() {
                    return Err(SpecError::invalid(&path, "antipode given without product and unit"));
                }
                return Ok(CoalgebraEntry::Coalgebra(c));
            }
            (Some(m), Some(u)) => (
                matrix(field, m, (n, n * n), &format!("{path}.mult"))?,
                matrix(field, u, (n, 1), &format!("{path}.unit"))?,
            ),
            _ => return Err(SpecError::invalid(&path, "product and unit must be given together")),
        };
        let b = Bialgebra::new(c, mult, unit).map_err(|e| SpecError::invalid(&path, e))?;
        match &raw.antipode {
            None => Ok(CoalgebraEntry::Bialgebra(b)),
            Some(s) => {
                let s = matrix(field, s, (n, n), &format!("{path}.antipode"))?;
                Ok(CoalgebraEntry::Hopf(HopfAlgebra::new(b, s).map_err(|e| SpecError::invalid(&path, e))?))
            }
        }
    }

    /// The named comodule over an already built coalgebra. `"regular"` is the
    /// coalgebra itself when no comodule of that name is declared.
    pub fn comodule(&self, name: &str, over: &Arc<Coalgebra>, coalgebra: &str) -> SpecResult<Comodule> {
        let Some(raw) = self.raw.comodules.get(name) else {
            if name == "regular" {
                return Ok(over.regular_comodule());
            }
            return Err(SpecError::unresolved("comodule", name, ""));
        };
        let path = format!("comodules.{name}");
        if raw.coalgebra != coalgebra {
            return Err(SpecError::invalid(
                &path,
                format!("declared over {:?}, not {coalgebra:?}", raw.coalgebra),
            ));
        }
        let carrier = space(&raw.carrier, name, &format!("{path}.carrier"))?;
        let shape = (carrier.dim() * over.dim(), carrier.dim());
        let rho = matrix(self.field, &raw.coaction, shape, &format!("{path}.coaction"))?;
        Comodule::new(carrier, Arc::clone(over), rho).map_err(|e| SpecError::invalid(&path, e))
    }

    /// Coalgebra named by a comodule entry.
    pub fn comodule_coalgebra(&self, name: &str) -> SpecResult<&str> {
        self.raw
            .comodules
            .get(name)
            .map(|c| c.coalgebra.as_str())
            .ok_or_else(|| SpecError::unresolved("comodule", name, ""))
    }

    /// Functor name a transformation is declared on.
    pub fn transformation_functor(&self, name: &str) -> SpecResult<&str> {
        self.raw
            .transformations
            .get(name)
            .map(|t| t.functor.as_str())
            .ok_or_else(|| SpecError::unresolved("transformation", name, ""))
    }

    pub fn transformation(&self, name: &str, f: &DiagramFunctor) -> SpecResult<Transformation> {
        let raw = self
            .raw
            .transformations
            .get(name)
            .ok_or_else(|| SpecError::unresolved("transformation", name, ""))?;
        let path = format!("transformations.{name}");
        let target = space(&raw.target, name, &format!("{path}.target"))?;
        for key in raw.components.keys() {
            object(f.source(), key, &path)?;
        }
        let mut components = Vec::new();
        for (x, obj) in f.source().objects().iter().enumerate() {
            let rm = raw
                .components
                .get(obj)
                .ok_or_else(|| SpecError::invalid(&path, format!("no component at {obj:?}")))?;
            let d = f.values()[x].dim();
            let shape = (d * target.dim(), d);
            components.push(matrix(self.field, rm, shape, &format!("{path}.{obj}"))?);
        }
        Ok(Transformation { target, components })
    }
}

fn object(c: &FinCategory, name: &str, context: &str) -> SpecResult<usize> {
    c.object_index(name).map_err(|_| SpecError::unresolved("object", name, context))
}

fn space(raw: &RawSpace, prefix: &str, path: &str) -> SpecResult<SpaceObject> {
    let s = match &raw.labels {
        None => SpaceObject::standard(prefix, raw.dim),
        Some(labels) => {
            if labels.len() != raw.dim {
                return Err(SpecError::invalid(
                    path,
                    format!("{} labels for dimension {}", labels.len(), raw.dim),
                ));
            }
            SpaceObject::with_labels(labels.clone()).map_err(|e| SpecError::invalid(path, e))?
        }
    };
    match &raw.weights {
        None => Ok(s),
        Some(w) => s.with_weights(w.clone()).map_err(|e| SpecError::invalid(path, e)),
    }
}

/// Parses a matrix. `expected` only fixes the shape of empty matrices; other
/// shape errors are left to validation so they are reported in context.
fn matrix(field: Field, raw: &RawMatrix, expected: (usize, usize), path: &str) -> SpecResult<LinearMap> {
    let mut rows = Vec::with_capacity(raw.len());
    for (i, row) in raw.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let v: BigRational = match x {
                RawScalar::Int(n) => field.normalize(BigRational::from_integer((*n).into())),
                RawScalar::Str(s) => field.parse_scalar(s),
            }
            .map_err(|e| SpecError::invalid(format!("{path}[{i}][{j}]"), e))?;
            out.push(v);
        }
        rows.push(out);
    }
    let empty = rows.is_empty() || rows.iter().all(Vec::is_empty);
    if empty && rows.len() == expected.0 {
        return Ok(LinearMap::zeros(field, expected.0, expected.1));
    }
    LinearMap::from_rows(field, rows).map_err(|e| SpecError::invalid(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR: &str = r#"{
        "field": "q",
        "categories": {"C": {"objects": ["a", "b"], "morphisms": [{"name": "f", "dom": "a", "cod": "b"}]}},
        "functors": {"F": {"category": "C", "objects": {"a": {"dim": 1}, "b": {"dim": 1}},
                           "morphisms": {"f": [["1/2"]]}}}
    }"#;

    #[test]
    fn parses_scalars_exactly() {
        let s = SpecFile::parse(PAIR, None).unwrap();
        let f = s.functor("F").unwrap();
        assert_eq!(f.map(2).to_string_rows(), vec![vec!["1/2".to_string()]]);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = SpecFile::parse("{\n  \"field\": \"q\",\n  oops\n}", None).unwrap_err();
        match err {
            SpecError::Parse { line, column, .. } => assert_eq!((line, column), (3, 3)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_names_are_reported() {
        let s = SpecFile::parse(PAIR, None).unwrap();
        assert!(matches!(s.functor("G"), Err(SpecError::Unresolved { kind: "functor", .. })));
        let bad = PAIR.replace("\"f\": [[", "\"g\": [[");
        let s = SpecFile::parse(&bad, None).unwrap();
        let err = s.functor("F").unwrap_err().to_string();
        assert!(err.contains("unknown morphism \"g\""), "{err}");
    }

    #[test]
    fn field_override_reduces_entries() {
        let s = SpecFile::parse(PAIR, Some(Field::Prime(3))).unwrap();
        let f = s.functor("F").unwrap();
        assert_eq!(f.map(2).to_string_rows(), vec![vec!["2".to_string()]]);
    }
}
