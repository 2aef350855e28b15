//! Finitely presented categories given by total composition tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("composition entry ({g}, {f}) given twice")]
    DuplicateComposition { g: String, f: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Strict monoidal structure on a finite category, given by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalTables {
    pub unit: usize,
    /// `object_tensor[x][y] = x ⊗ y`.
    pub object_tensor: Vec<Vec<usize>>,
    /// `(f, g) ↦ f ⊗ g` on the listed morphism pairs.
    pub morphism_tensor: HashMap<(usize, usize), usize>,
}

/// A finite category.
///
/// Morphism `i` for `i < objects.len()` is the identity of object `i`; those
/// are synthesized at construction and never appear in input files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    composition: HashMap<(usize, usize), usize>,
    monoidal: Option<MonoidalTables>,
}

impl FinCategory {
    /// `morphisms` are `(name, dom, cod)` for non-identity arrows; `composition`
    /// lists `(g, f, g∘f)` by name and may refer to identities as `id_<obj>`.
    /// Composites with an identity are filled in automatically.
    pub fn new(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        composition: &[(&str, &str, &str)],
    ) -> Result<Self, CategoryError> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let morphisms: Vec<(String, String, String)> = morphisms
            .iter()
            .map(|(n, d, c)| (n.to_string(), d.to_string(), c.to_string()))
            .collect();
        let composition: Vec<(String, String, String)> = composition
            .iter()
            .map(|(g, f, h)| (g.to_string(), f.to_string(), h.to_string()))
            .collect();
        Self::from_owned(objects, morphisms, composition)
    }

    pub fn from_owned(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        composition: Vec<(String, String, String)>,
    ) -> Result<Self, CategoryError> {
        let mut names: HashMap<String, usize> = HashMap::new();
        let mut obj_index: HashMap<&str, usize> = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o, i).is_some() {
                return Err(CategoryError::DuplicateName(o.clone()));
            }
        }
        let mut all = Vec::with_capacity(objects.len() + morphisms.len());
        for (i, o) in objects.iter().enumerate() {
            let name = identity_name(o);
            names.insert(name.clone(), i);
            all.push(Morphism { name, dom: i, cod: i });
        }
        for (name, dom, cod) in &morphisms {
            let dom = *obj_index.get(dom.as_str()).ok_or_else(|| CategoryError::UnknownObject(dom.clone()))?;
            let cod = *obj_index.get(cod.as_str()).ok_or_else(|| CategoryError::UnknownObject(cod.clone()))?;
            if names.insert(name.clone(), all.len()).is_some() {
                return Err(CategoryError::DuplicateName(name.clone()));
            }
            all.push(Morphism {
                name: name.clone(),
                dom,
                cod,
            });
        }
        let lookup = |n: &str| names.get(n).copied().ok_or_else(|| CategoryError::UnknownMorphism(n.to_string()));
        let mut table = HashMap::new();
        for (g, f, h) in &composition {
            let key = (lookup(g)?, lookup(f)?);
            if table.insert(key, lookup(h)?).is_some() {
                return Err(CategoryError::DuplicateComposition {
                    g: g.clone(),
                    f: f.clone(),
                });
            }
        }
        for (idx, m) in all.iter().enumerate() {
            table.entry((m.cod, idx)).or_insert(idx);
            table.entry((idx, m.dom)).or_insert(idx);
        }
        Ok(FinCategory {
            objects,
            morphisms: all,
            composition: table,
            monoidal: None,
        })
    }

    /// One object per name, identities only.
    pub fn discrete(objects: &[&str]) -> Self {
        Self::new(objects, &[], &[]).expect("distinct names")
    }

    /// Attaches a strict monoidal structure given by name tables.
    pub fn with_monoidal(
        mut self,
        unit: &str,
        object_tensor: &[(&str, &str, &str)],
        morphism_tensor: &[(&str, &str, &str)],
    ) -> Result<Self, CategoryError> {
        let unit = self.object_index(unit)?;
        let n = self.objects.len();
        let mut table = vec![vec![usize::MAX; n]; n];
        for (x, y, z) in object_tensor {
            table[self.object_index(x)?][self.object_index(y)?] = self.object_index(z)?;
        }
        let mut mt = HashMap::new();
        for (f, g, h) in morphism_tensor {
            mt.insert((self.morphism_index(f)?, self.morphism_index(g)?), self.morphism_index(h)?);
        }
        self.monoidal = Some(MonoidalTables {
            unit,
            object_tensor: table,
            morphism_tensor: mt,
        });
        Ok(self)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn is_identity(&self, m: usize) -> bool {
        m < self.objects.len()
    }

    pub fn identity(&self, obj: usize) -> usize {
        obj
    }

    /// Non-identity morphism indices.
    pub fn non_identities(&self) -> impl Iterator<Item = usize> + '_ {
        self.objects.len()..self.morphisms.len()
    }

    pub fn object_index(&self, name: &str) -> Result<usize, CategoryError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize, CategoryError> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn monoidal(&self) -> Option<&MonoidalTables> {
        self.monoidal.as_ref()
    }

    /// Overwrites one composition entry; used to build corrupted fixtures.
    pub fn set_composition(&mut self, g: usize, f: usize, h: usize) {
        self.composition.insert((g, f), h);
    }

    fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.morphisms.len();
        (0..n).flat_map(move |g| (0..n).map(move |f| (g, f))).filter(|&(g, f)| self.morphisms[g].dom == self.morphisms[f].cod)
    }
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

/// Outcome of a validation pass: empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<String>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: impl Into<String>) {
        self.violations.push(v.into());
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        self.violations
            .extend(other.violations.into_iter().map(|v| format!("{prefix}: {v}")));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks totality on composable pairs, endpoint typing, unit laws,
/// associativity on every composable triple, and the monoidal tables.
pub fn validate_category(c: &FinCategory) -> Report {
    let mut report = Report::default();
    let name = |m: usize| c.morphisms[m].name.as_str();
    for (g, f) in c.composable_pairs() {
        match c.compose(g, f) {
            None => report.push(format!("missing composite {} ∘ {}", name(g), name(f))),
            Some(h) => {
                let (mh, mf, mg) = (&c.morphisms[h], &c.morphisms[f], &c.morphisms[g]);
                if mh.dom != mf.dom || mh.cod != mg.cod {
                    report.push(format!(
                        "composite {} ∘ {} = {} has wrong endpoints",
                        name(g),
                        name(f),
                        name(h)
                    ));
                }
            }
        }
    }
    let mut entries: Vec<_> = c.composition.keys().copied().collect();
    entries.sort();
    for (g, f) in entries {
        if c.morphisms[g].dom != c.morphisms[f].cod {
            report.push(format!("composite {} ∘ {} of non-composable pair", name(g), name(f)));
        }
    }
    for (idx, m) in c.morphisms.iter().enumerate() {
        if c.compose(m.cod, idx) != Some(idx) || c.compose(idx, m.dom) != Some(idx) {
            report.push(format!("unit law fails for {}", name(idx)));
        }
    }
    if !report.is_valid() {
        report.violations.sort();
        return report;
    }
    let n = c.morphisms.len();
    for h in 0..n {
        for g in 0..n {
            if c.morphisms[h].dom != c.morphisms[g].cod {
                continue;
            }
            for f in 0..n {
                if c.morphisms[g].dom != c.morphisms[f].cod {
                    continue;
                }
                let left = c.compose(c.compose(h, g).unwrap(), f);
                let right = c.compose(h, c.compose(g, f).unwrap());
                if left != right {
                    report.push(format!(
                        "associativity fails for triple ({}, {}, {})",
                        name(h),
                        name(g),
                        name(f)
                    ));
                }
            }
        }
    }
    if let Some(m) = &c.monoidal {
        validate_monoidal_tables(c, m, &mut report);
    }
    report
}

fn validate_monoidal_tables(c: &FinCategory, m: &MonoidalTables, report: &mut Report) {
    let n = c.objects.len();
    let t = &m.object_tensor;
    if t.iter().flatten().any(|&z| z == usize::MAX) {
        report.push("object tensor table is not total");
        return;
    }
    for x in 0..n {
        if t[m.unit][x] != x || t[x][m.unit] != x {
            report.push(format!("unit law fails for object {}", c.objects[x]));
        }
        for y in 0..n {
            for z in 0..n {
                if t[t[x][y]][z] != t[x][t[y][z]] {
                    report.push(format!(
                        "tensor associativity fails for ({}, {}, {})",
                        c.objects[x], c.objects[y], c.objects[z]
                    ));
                }
            }
        }
    }
    let mut keys: Vec<_> = m.morphism_tensor.iter().collect();
    keys.sort();
    for (&(f, g), &h) in keys {
        let (mf, mg, mh) = (&c.morphisms[f], &c.morphisms[g], &c.morphisms[h]);
        if mh.dom != t[mf.dom][mg.dom] || mh.cod != t[mf.cod][mg.cod] {
            report.push(format!(
                "morphism tensor {} ⊗ {} = {} has wrong endpoints",
                mf.name, mg.name, mh.name
            ));
        }
    }
}

/// Hom-set sizes, keyed by (dom, cod) names; handy for reports.
pub fn hom_counts(c: &FinCategory) -> BTreeMap<(String, String), usize> {
    let mut out = BTreeMap::new();
    for m in &c.morphisms {
        *out.entry((c.objects[m.dom].clone(), c.objects[m.cod].clone())).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_object_identity_only() {
        let c = FinCategory::discrete(&["•"]);
        assert!(validate_category(&c).is_valid());
        assert_eq!(c.morphisms().len(), 1);
        assert_eq!(c.morphisms()[0].name, "id_•");
    }

    #[test]
    fn arrow_category() {
        let c = FinCategory::new(&["a", "b"], &[("f", "a", "b")], &[]).unwrap();
        assert!(validate_category(&c).is_valid());
        assert_eq!(hom_counts(&c)[&("a".into(), "b".into())], 1);
    }

    #[test]
    fn missing_composite_reported() {
        let c = FinCategory::new(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c")], &[]).unwrap();
        let r = validate_category(&c);
        assert_eq!(r.violations, vec!["missing composite g ∘ f".to_string()]);
    }

    #[test]
    fn corrupted_monoid_table_names_triple() {
        // Monoid {e, a, b}; the table below is non-associative at (a, b, a):
        // (a∘b)∘a = a∘a = b but a∘(b∘a) = a∘b = a.
        let c = FinCategory::new(
            &["*"],
            &[("a", "*", "*"), ("b", "*", "*")],
            &[("a", "a", "b"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "b")],
        )
        .unwrap();
        let r = validate_category(&c);
        assert!(!r.is_valid());
        assert!(r.violations.iter().any(|v| v.contains("(a, b, a)")), "{r}");
    }

    #[test]
    fn wrong_endpoints_reported() {
        let mut c = FinCategory::new(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c"), ("k", "b", "c")],
            &[("g", "f", "h"), ("k", "f", "h")],
        )
        .unwrap();
        assert!(validate_category(&c).is_valid());
        let (g, f, k) = (c.morphism_index("g").unwrap(), c.morphism_index("f").unwrap(), c.morphism_index("k").unwrap());
        c.set_composition(g, f, k);
        let r = validate_category(&c);
        assert!(r.violations.iter().any(|v| v.contains("g ∘ f = k")), "{r}");
    }

    #[test]
    fn cyclic_group_monoidal_tables() {
        let c = FinCategory::discrete(&["0", "1"])
            .with_monoidal("0", &[("0", "0", "0"), ("0", "1", "1"), ("1", "0", "1"), ("1", "1", "0")], &[])
            .unwrap();
        assert!(validate_category(&c).is_valid());
        let bad = FinCategory::discrete(&["0", "1"])
            .with_monoidal("0", &[("0", "0", "0"), ("0", "1", "1"), ("1", "0", "0"), ("1", "1", "0")], &[])
            .unwrap();
        assert!(!validate_category(&bad).is_valid());
    }

    #[test]
    fn validation_is_idempotent() {
        let c = FinCategory::new(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c")], &[]).unwrap();
        assert_eq!(validate_category(&c), validate_category(&c));
    }

    #[test]
    fn unknown_names_rejected() {
        assert!(matches!(
            FinCategory::new(&["a"], &[("f", "a", "z")], &[]),
            Err(CategoryError::UnknownObject(_))
        ));
        assert!(matches!(
            FinCategory::new(&["a"], &[("f", "a", "a")], &[("f", "g", "f")]),
            Err(CategoryError::UnknownMorphism(_))
        ));
    }
}
