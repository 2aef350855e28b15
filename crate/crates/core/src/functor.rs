//! Functors from finite categories into based vector spaces, and the
//! naturality, dinaturality and monoidal checks over them.

use std::collections::BTreeMap;

use crate::cohom::{cohom_contravariant, cohom_covariant};
use crate::error::{Error, Result};
use crate::fincat::{identity_name, validate_category, FinCategory, Report};
use crate::linalg::{inverse, Field, LinearMap, SpaceObject};

/// A generating arrow of the source together with its image.
#[derive(Clone, Copy, Debug)]
pub struct Arrow<'a> {
    pub name: &'a str,
    pub dom: usize,
    pub cod: usize,
    pub map: &'a LinearMap,
}

/// Strict monoidal source data plus the functor's structure isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalFunctorData {
    pub unit: usize,
    /// `object_tensor[x][y] = x ⊗ y`.
    pub object_tensor: Vec<Vec<usize>>,
    /// `ξ_{X,Y}: F(X) ⊗ F(Y) → F(X ⊗ Y)`.
    pub xi: BTreeMap<(usize, usize), LinearMap>,
    /// `ξ_I: K → F(I)`.
    pub xi_unit: LinearMap,
}

/// A declared dual object `X*` with the isomorphism `F(X)* → F(X*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualData {
    pub dual: usize,
    pub iso: LinearMap,
}

/// One listed instance of a control object acting on a source object:
/// `C ⊗ X = target` with `ξ: F(target) → C ⊗ F(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlAction {
    pub object: usize,
    pub target: usize,
    pub xi: LinearMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlObject {
    pub name: String,
    pub space: SpaceObject,
    pub actions: Vec<ControlAction>,
}

impl ControlObject {
    /// The unit control `K`, acting trivially on every object.
    pub fn unit<F: FiberFunctor + ?Sized>(functor: &F) -> Self {
        let actions = (0..functor.object_count())
            .map(|x| ControlAction {
                object: x,
                target: x,
                xi: LinearMap::identity(functor.field(), functor.value(x).dim()),
            })
            .collect();
        ControlObject {
            name: "unit".into(),
            space: SpaceObject::unit(),
            actions,
        }
    }

    pub fn check<F: FiberFunctor + ?Sized>(&self, functor: &F) -> Report {
        let mut r = Report::default();
        let c = self.space.dim();
        for a in &self.actions {
            if a.object >= functor.object_count() || a.target >= functor.object_count() {
                r.push(format!("control {}: object index out of range", self.name));
                continue;
            }
            let expected = (c * functor.value(a.object).dim(), functor.value(a.target).dim());
            if a.xi.shape() != expected {
                r.push(format!(
                    "control {} on {}: ξ has shape {:?}, expected {:?}",
                    self.name,
                    functor.object_name(a.object),
                    a.xi.shape(),
                    expected
                ));
            } else if inverse(&a.xi).is_none() {
                r.push(format!(
                    "control {} on {}: ξ is not invertible",
                    self.name,
                    functor.object_name(a.object)
                ));
            }
        }
        r
    }
}

/// What the coend machinery needs from a functor into finite-dimensional
/// spaces: values on objects and images of a generating set of arrows.
///
/// Identities need not be listed. For a linear source (such as a comodule
/// category) a basis of each hom-space is enough, since the relations it
/// produces span those of every morphism.
pub trait FiberFunctor {
    fn field(&self) -> Field;
    fn object_count(&self) -> usize;
    fn object_name(&self, x: usize) -> &str;
    fn value(&self, x: usize) -> &SpaceObject;
    fn arrows(&self) -> Vec<Arrow<'_>>;

    fn monoidal(&self) -> Option<&MonoidalFunctorData> {
        None
    }

    fn dual(&self, _x: usize) -> Option<&DualData> {
        None
    }

    fn dims(&self) -> Vec<usize> {
        (0..self.object_count()).map(|x| self.value(x).dim()).collect()
    }

    /// Every arrow's matrix has the shape its endpoints dictate.
    fn check_shapes(&self) -> Report {
        let mut r = Report::default();
        for a in self.arrows() {
            let expected = (self.value(a.cod).dim(), self.value(a.dom).dim());
            if a.map.shape() != expected {
                r.push(format!(
                    "F({}) has shape {}×{}, expected {}×{} (dimension mismatch)",
                    a.name, a.map.rows(), a.map.cols(), expected.0, expected.1
                ));
            }
            if a.map.field() != self.field() {
                r.push(format!("F({}) is over {}, expected {}", a.name, a.map.field(), self.field()));
            }
        }
        r
    }
}

/// A functor from a [`FinCategory`] into based spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFunctor {
    field: Field,
    source: FinCategory,
    values: Vec<SpaceObject>,
    /// One matrix per morphism of the source, identities included.
    maps: Vec<LinearMap>,
    monoidal: Option<MonoidalFunctorData>,
    duals: Vec<Option<DualData>>,
}

impl DiagramFunctor {
    /// `maps` gives the images of the non-identity morphisms in source order;
    /// identities are synthesized. Shapes are not checked here, see
    /// [`validate_functor`].
    pub fn new(field: Field, source: FinCategory, values: Vec<SpaceObject>, maps: Vec<LinearMap>) -> Result<Self> {
        let n = source.object_count();
        if values.len() != n {
            return Err(Error::shape(format!("{} object values for {} objects", values.len(), n)));
        }
        let arrows = source.morphisms().len() - n;
        if maps.len() != arrows {
            return Err(Error::shape(format!("{} morphism images for {} arrows", maps.len(), arrows)));
        }
        let mut all: Vec<LinearMap> = values.iter().map(|v| LinearMap::identity(field, v.dim())).collect();
        all.extend(maps);
        Ok(DiagramFunctor {
            field,
            duals: vec![None; n],
            source,
            values,
            maps: all,
            monoidal: None,
        })
    }

    /// Constant functor at `K` sending every morphism to the identity.
    pub fn constant_unit(field: Field, source: FinCategory) -> Self {
        let n = source.object_count();
        let arrows = source.morphisms().len() - n;
        let maps = vec![LinearMap::identity(field, 1); arrows];
        Self::new(field, source, vec![SpaceObject::unit(); n], maps).expect("counts match")
    }

    /// The category of `ℤ/n`-graded lines: discrete objects `k0..k(n-1)`,
    /// `k_i ⊗ k_j = k_(i+j)`, each sent to `K` with every `ξ` the identity and
    /// `k_i* = k_(−i)`.
    pub fn cyclic_grading(field: Field, n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
        let ids: Vec<String> = names.iter().map(|x| identity_name(x)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        let objects: Vec<(&str, &str, &str)> =
            pairs().map(|(i, j)| (refs[i], refs[j], refs[(i + j) % n])).collect();
        let morphisms: Vec<(&str, &str, &str)> = pairs()
            .map(|(i, j)| (ids[i].as_str(), ids[j].as_str(), ids[(i + j) % n].as_str()))
            .collect();
        let source = FinCategory::discrete(&refs)
            .with_monoidal(refs[0], &objects, &morphisms)
            .expect("names resolve");
        let mut f = DiagramFunctor::new(field, source, vec![SpaceObject::unit(); n], vec![])
            .expect("counts match")
            .with_strict_monoidal()
            .expect("source is monoidal");
        for i in 0..n {
            f = f.with_dual(i, (n - i) % n, LinearMap::identity(field, 1));
        }
        f
    }

    /// Attaches `ξ` data; the source must carry monoidal tables.
    pub fn with_monoidal(mut self, xi: BTreeMap<(usize, usize), LinearMap>, xi_unit: LinearMap) -> Result<Self> {
        let tables = self
            .source
            .monoidal()
            .ok_or_else(|| Error::MissingData("source category has no monoidal structure".into()))?;
        self.monoidal = Some(MonoidalFunctorData {
            unit: tables.unit,
            object_tensor: tables.object_tensor.clone(),
            xi,
            xi_unit,
        });
        Ok(self)
    }

    /// Monoidal structure with every `ξ` the identity (a strict functor).
    pub fn with_strict_monoidal(self) -> Result<Self> {
        let tables = self
            .source
            .monoidal()
            .ok_or_else(|| Error::MissingData("source category has no monoidal structure".into()))?
            .clone();
        let n = self.values.len();
        let mut xi = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let d = self.values[x].dim() * self.values[y].dim();
                xi.insert((x, y), LinearMap::identity(self.field, d));
            }
        }
        // Only a 1-dimensional F(I) admits the identity; anything else is
        // left for check_monoidal to reject.
        let d = self.values[tables.unit].dim();
        let xi_unit = if d == 1 {
            LinearMap::identity(self.field, 1)
        } else {
            LinearMap::zeros(self.field, d, 1)
        };
        self.with_monoidal(xi, xi_unit)
    }

    pub fn with_dual(mut self, x: usize, dual: usize, iso: LinearMap) -> Self {
        self.duals[x] = Some(DualData { dual, iso });
        self
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn map(&self, morphism: usize) -> &LinearMap {
        &self.maps[morphism]
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    pub fn values(&self) -> &[SpaceObject] {
        &self.values
    }

    pub fn set_map(&mut self, morphism: usize, map: LinearMap) {
        self.maps[morphism] = map;
    }

    pub fn set_xi(&mut self, x: usize, y: usize, map: LinearMap) {
        if let Some(m) = self.monoidal.as_mut() {
            m.xi.insert((x, y), map);
        }
    }

    pub fn has_duals(&self) -> bool {
        self.duals.iter().all(Option::is_some)
    }
}

impl FiberFunctor for DiagramFunctor {
    fn field(&self) -> Field {
        self.field
    }

    fn object_count(&self) -> usize {
        self.values.len()
    }

    fn object_name(&self, x: usize) -> &str {
        &self.source.objects()[x]
    }

    fn value(&self, x: usize) -> &SpaceObject {
        &self.values[x]
    }

    fn arrows(&self) -> Vec<Arrow<'_>> {
        self.source
            .non_identities()
            .map(|m| {
                let mor = &self.source.morphisms()[m];
                Arrow {
                    name: &mor.name,
                    dom: mor.dom,
                    cod: mor.cod,
                    map: &self.maps[m],
                }
            })
            .collect()
    }

    fn monoidal(&self) -> Option<&MonoidalFunctorData> {
        self.monoidal.as_ref()
    }

    fn dual(&self, x: usize) -> Option<&DualData> {
        self.duals.get(x).and_then(Option::as_ref)
    }
}

/// Checks the source category, matrix shapes, `F(id) = id` and
/// `F(g∘f) = F(g)∘F(f)` for every entry of the composition table.
pub fn validate_functor(f: &DiagramFunctor) -> Report {
    let mut r = Report::default();
    r.extend("source", validate_category(&f.source));
    let shapes = f.check_shapes();
    let shapes_ok = shapes.is_valid();
    r.extend("", shapes);
    if !shapes_ok {
        return r;
    }
    let morphisms = f.source.morphisms();
    for x in 0..f.object_count() {
        if !f.maps[f.source.identity(x)].is_identity() {
            r.push(format!("F({}) is not the identity", morphisms[x].name));
        }
    }
    for g in 0..morphisms.len() {
        for h in 0..morphisms.len() {
            if morphisms[h].cod != morphisms[g].dom {
                continue;
            }
            if let Some(gh) = f.source.compose(g, h) {
                if f.maps[gh] != &f.maps[g] * &f.maps[h] {
                    r.push(format!(
                        "F({}) ≠ F({})∘F({})",
                        morphisms[gh].name, morphisms[g].name, morphisms[h].name
                    ));
                }
            }
        }
    }
    r
}

/// `F ⊗ M`: values `F(X) ⊗ M`, arrows `F(f) ⊗ id_M`.
#[derive(Clone, Debug)]
pub struct TensoredFunctor {
    field: Field,
    names: Vec<String>,
    values: Vec<SpaceObject>,
    arrows: Vec<(String, usize, usize, LinearMap)>,
}

impl TensoredFunctor {
    pub fn new<F: FiberFunctor + ?Sized>(f: &F, m: &SpaceObject) -> Self {
        let field = f.field();
        let id_m = LinearMap::identity(field, m.dim());
        TensoredFunctor {
            field,
            names: (0..f.object_count()).map(|x| f.object_name(x).to_string()).collect(),
            values: (0..f.object_count()).map(|x| f.value(x).tensor(m)).collect(),
            arrows: f
                .arrows()
                .into_iter()
                .map(|a| (a.name.to_string(), a.dom, a.cod, a.map.tensor(&id_m).expect("same field")))
                .collect(),
        }
    }
}

impl FiberFunctor for TensoredFunctor {
    fn field(&self) -> Field {
        self.field
    }

    fn object_count(&self) -> usize {
        self.values.len()
    }

    fn object_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    fn value(&self, x: usize) -> &SpaceObject {
        &self.values[x]
    }

    fn arrows(&self) -> Vec<Arrow<'_>> {
        self.arrows
            .iter()
            .map(|(name, dom, cod, map)| Arrow {
                name,
                dom: *dom,
                cod: *cod,
                map,
            })
            .collect()
    }
}

/// A family `t_X: F(X) → F(X) ⊗ M`, indexed by object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    pub target: SpaceObject,
    pub components: Vec<LinearMap>,
}

impl Transformation {
    /// `(id ⊗ ψ) ∘ t` for `ψ: M → M'`.
    pub fn push_forward(&self, psi: &LinearMap, target: SpaceObject) -> Transformation {
        let components = self
            .components
            .iter()
            .map(|t| {
                let dim_x = t.rows() / self.target.dim().max(1);
                t.tensor_then(&LinearMap::identity(psi.field(), dim_x), psi).expect("shapes")
            })
            .collect();
        Transformation { target, components }
    }

    /// Naturality as a transformation `F → F ⊗ M`.
    pub fn is_natural<F: FiberFunctor + ?Sized>(&self, f: &F) -> bool {
        check_natural(&self.components, f, &TensoredFunctor::new(f, &self.target))
    }

    /// Failing arrows, for error reports.
    pub fn naturality_report<F: FiberFunctor + ?Sized>(&self, f: &F) -> Report {
        naturality_report(&self.components, f, &TensoredFunctor::new(f, &self.target))
    }
}

/// Is `G(f) ∘ t_X = t_Y ∘ F(f)` for every arrow `f: X → Y`? `F` and `G` must
/// share a source, with arrows listed in the same order.
pub fn check_natural<F: FiberFunctor + ?Sized, G: FiberFunctor + ?Sized>(t: &[LinearMap], f: &F, g: &G) -> bool {
    naturality_report(t, f, g).is_valid()
}

fn naturality_report<F: FiberFunctor + ?Sized, G: FiberFunctor + ?Sized>(t: &[LinearMap], f: &F, g: &G) -> Report {
    let mut r = Report::default();
    if t.len() != f.object_count() || g.object_count() != f.object_count() {
        r.push("component count differs from object count");
        return r;
    }
    for (x, tx) in t.iter().enumerate() {
        if tx.shape() != (g.value(x).dim(), f.value(x).dim()) {
            r.push(format!("component at {} has shape {:?}", f.object_name(x), tx.shape()));
        }
    }
    if !r.is_valid() {
        return r;
    }
    for (a, b) in f.arrows().iter().zip(g.arrows()) {
        if b.map * &t[a.dom] != &t[a.cod] * a.map {
            r.push(format!("naturality square fails at {}", a.name));
        }
    }
    r
}

/// Is the family `w_c: cohom(F(c), F(c)) → M` a cowedge, i.e. for every arrow
/// `f: c → c'`, `w_c ∘ cohom(id, F(f)^op) = w_{c'} ∘ cohom(F(f), id)` on
/// `cohom(F(c), F(c'))`?
pub fn check_dinatural<F: FiberFunctor + ?Sized>(w: &[LinearMap], f: &F) -> bool {
    if w.len() != f.object_count() {
        return false;
    }
    let dims = f.dims();
    for (c, wc) in w.iter().enumerate() {
        if wc.cols() != dims[c] * dims[c] || wc.rows() != w[0].rows() {
            return false;
        }
    }
    f.arrows().iter().all(|a| {
        let left = &w[a.dom] * &cohom_contravariant(a.map, dims[a.dom]);
        let right = &w[a.cod] * &cohom_covariant(a.map, dims[a.cod]);
        left == right
    })
}

/// Monoidal functor axioms for strict sources: invertibility of every `ξ`,
/// the associativity square, both unit triangles, and naturality of `ξ`
/// against the morphism tensor table.
pub fn check_monoidal(f: &DiagramFunctor) -> Report {
    let mut r = Report::default();
    let Some(tables) = f.source.monoidal() else {
        r.push("source category has no monoidal structure");
        return r;
    };
    let Some(data) = f.monoidal.as_ref() else {
        r.push("functor carries no ξ data");
        return r;
    };
    let field = f.field;
    let n = f.object_count();
    let names = f.source.objects();
    let dims = f.dims();
    let t = &data.object_tensor;
    for x in 0..n {
        for y in 0..n {
            if t[x][y] >= n {
                r.push(format!("tensor {} ⊗ {} undefined", names[x], names[y]));
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    let mut shapes_ok = true;
    for x in 0..n {
        for y in 0..n {
            match data.xi.get(&(x, y)) {
                None => {
                    r.push(format!("ξ_({}, {}) missing", names[x], names[y]));
                    shapes_ok = false;
                }
                Some(m) if m.shape() != (dims[t[x][y]], dims[x] * dims[y]) => {
                    r.push(format!("ξ_({}, {}) has shape {:?}", names[x], names[y], m.shape()));
                    shapes_ok = false;
                }
                Some(m) if inverse(m).is_none() => {
                    r.push(format!("ξ_({}, {}) is not invertible", names[x], names[y]));
                }
                _ => {}
            }
        }
    }
    let unit = tables.unit;
    if data.xi_unit.shape() != (dims[unit], 1) || inverse(&data.xi_unit).is_none() {
        r.push("ξ_I is not an isomorphism K → F(I)");
        shapes_ok = false;
    }
    if !shapes_ok {
        return r;
    }
    let xi = |x: usize, y: usize| &data.xi[&(x, y)];
    let id = |x: usize| LinearMap::identity(field, dims[x]);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = xi(t[x][y], z) * &xi(x, y).tensor(&id(z)).expect("field");
                let right = xi(x, t[y][z]) * &id(x).tensor(xi(y, z)).expect("field");
                if left != right {
                    r.push(format!(
                        "ξ associativity fails for ({}, {}, {})",
                        names[x], names[y], names[z]
                    ));
                }
            }
        }
    }
    for x in 0..n {
        if t[unit][x] != x || t[x][unit] != x {
            continue;
        }
        let left = xi(unit, x) * &data.xi_unit.tensor(&id(x)).expect("field");
        let right = xi(x, unit) * &id(x).tensor(&data.xi_unit).expect("field");
        if !left.is_identity() || !right.is_identity() {
            r.push(format!("ξ unit law fails at {}", names[x]));
        }
    }
    let morphisms = f.source.morphisms();
    let mut entries: Vec<_> = tables.morphism_tensor.iter().collect();
    entries.sort();
    for (&(a, b), &h) in entries {
        let (ma, mb) = (&morphisms[a], &morphisms[b]);
        let left = f.map(h) * xi(ma.dom, mb.dom);
        let right = xi(ma.cod, mb.cod) * &f.map(a).tensor(f.map(b)).expect("field");
        if left != right {
            r.push(format!("ξ is not natural at {} ⊗ {}", ma.name, mb.name));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn arrow_functor(f: LinearMap, da: usize, db: usize) -> DiagramFunctor {
        let c = FinCategory::new(&["a", "b"], &[("f", "a", "b")], &[]).unwrap();
        DiagramFunctor::new(Q, c, vec![SpaceObject::standard("a", da), SpaceObject::standard("b", db)], vec![f])
            .unwrap()
    }

    #[test]
    fn constant_unit_functor_is_valid() {
        let c = FinCategory::new(&["a", "b"], &[("f", "a", "b"), ("g", "a", "b")], &[]).unwrap();
        assert!(validate_functor(&DiagramFunctor::constant_unit(Q, c)).is_valid());
    }

    #[test]
    fn wrong_shape_is_reported() {
        let f = arrow_functor(LinearMap::zeros(Q, 3, 2), 2, 2);
        let r = validate_functor(&f);
        assert!(r.violations.iter().any(|v| v.contains("dimension mismatch")), "{r}");
    }

    #[test]
    fn broken_composition_is_detected() {
        let c = FinCategory::new(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
            &[("g", "f", "h")],
        )
        .unwrap();
        let two = LinearMap::from_i64(Q, &[&[2]]);
        let three = LinearMap::from_i64(Q, &[&[3]]);
        let six = LinearMap::from_i64(Q, &[&[6]]);
        let vals = vec![SpaceObject::unit(); 3];
        let good = DiagramFunctor::new(Q, c.clone(), vals.clone(), vec![two.clone(), three.clone(), six]).unwrap();
        assert!(validate_functor(&good).is_valid());
        let bad = DiagramFunctor::new(Q, c, vals, vec![two, three, LinearMap::from_i64(Q, &[&[5]])]).unwrap();
        let r = validate_functor(&bad);
        assert!(r.violations.iter().any(|v| v.contains("F(h) ≠ F(g)∘F(f)")), "{r}");
    }

    #[test]
    fn identity_and_scalar_transformations_are_natural() {
        let f = arrow_functor(LinearMap::from_i64(Q, &[&[1, 2], &[0, 1]]), 2, 2);
        let ids: Vec<LinearMap> = (0..2).map(|_| LinearMap::identity(Q, 2)).collect();
        assert!(check_natural(&ids, &f, &f));
        let three: Vec<LinearMap> = ids.iter().map(|m| m.scale(&num_rational::BigRational::from_integer(3.into()))).collect();
        assert!(check_natural(&three, &f, &f));
        let mut perturbed = ids.clone();
        perturbed[1] = LinearMap::from_i64(Q, &[&[1, 0], &[0, 2]]);
        assert!(!check_natural(&perturbed, &f, &f));
    }

    #[test]
    fn zero_cowedge_is_dinatural() {
        let f = arrow_functor(LinearMap::from_i64(Q, &[&[1, 2]]), 2, 1);
        let w = vec![LinearMap::zeros(Q, 3, 4), LinearMap::zeros(Q, 3, 1)];
        assert!(check_dinatural(&w, &f));
    }

    #[test]
    fn dinaturality_matches_direct_hexagon() {
        // f: K² → K, F(f) = [a b]. cohom(K², K) has basis e_(0,0), e_(0,1).
        // w_a ∘ cohom(id, F(f)^op) sends e_(0,i) to Σ_j F(f)_{0j} w_a(e_(j,i));
        // w_b ∘ cohom(F(f), id) sends e_(0,i) to F(f)_{0i} w_b(e_(0,0)).
        let ff = LinearMap::from_i64(Q, &[&[1, 2]]);
        let f = arrow_functor(ff, 2, 1);
        let wa = LinearMap::from_i64(Q, &[&[1, 3, 0, 5]]);
        let wb = LinearMap::from_i64(Q, &[&[1]]);
        // e_(0,0): 1·1 + 2·0 = 1 vs 1·1; e_(0,1): 1·3 + 2·5 = 13 vs 2·1.
        assert!(!check_dinatural(&[wa, wb.clone()], &f));
        let wa = LinearMap::from_i64(Q, &[&[1, 0, 0, 1]]);
        // e_(0,0): 1 vs 1; e_(0,1): 0 + 2·1 = 2 vs 2.
        assert!(check_dinatural(&[wa, wb], &f));
    }

    #[test]
    fn strict_grading_functors_are_monoidal() {
        for n in 1..=3 {
            let f = DiagramFunctor::cyclic_grading(Q, n);
            assert!(validate_functor(&f).is_valid());
            let r = check_monoidal(&f);
            assert!(r.is_valid(), "{r}");
        }
    }

    #[test]
    fn scaled_xi_breaks_associativity() {
        let mut f = DiagramFunctor::cyclic_grading(Q, 3);
        f.set_xi(1, 1, LinearMap::from_i64(Q, &[&[2]]));
        let r = check_monoidal(&f);
        assert!(r.violations.iter().any(|v| v.contains("associativity")), "{r}");
    }

    #[test]
    fn tensored_functor_shapes() {
        let f = arrow_functor(LinearMap::from_i64(Q, &[&[1, 2]]), 2, 1);
        let t = TensoredFunctor::new(&f, &SpaceObject::standard("m", 3));
        assert_eq!(t.dims(), vec![6, 3]);
        assert!(t.check_shapes().is_valid());
    }
}
