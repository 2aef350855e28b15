//! Coalgebras, comodules, bialgebras and Hopf algebras as explicit matrices,
//! with exact axiom checkers.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fincat::Report;
use crate::linalg::{kernel, Field, LinearMap, SpaceObject};

/// `(C, Δ, ε)` with `Δ: C → C⊗C` and `ε: C → K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    carrier: SpaceObject,
    delta: LinearMap,
    counit: LinearMap,
}

impl Coalgebra {
    /// Checks shapes only; call [`Coalgebra::check`] for the axioms.
    pub fn new(carrier: SpaceObject, delta: LinearMap, counit: LinearMap) -> Result<Self> {
        let n = carrier.dim();
        if delta.shape() != (n * n, n) || counit.shape() != (1, n) || delta.field() != counit.field() {
            return Err(Error::shape(format!(
                "coalgebra of dim {n}: Δ is {:?}, ε is {:?}",
                delta.shape(),
                counit.shape()
            )));
        }
        Ok(Coalgebra { carrier, delta, counit })
    }

    /// The coalgebra K with `Δ(1) = 1⊗1`, `ε = id`.
    pub fn trivial(field: Field) -> Self {
        Coalgebra {
            carrier: SpaceObject::unit(),
            delta: LinearMap::identity(field, 1),
            counit: LinearMap::identity(field, 1),
        }
    }

    /// Group-like coalgebra on `n` points: `Δ(g_i) = g_i⊗g_i`, `ε(g_i) = 1`.
    pub fn grouplike(field: Field, n: usize, prefix: &str) -> Self {
        let mut delta = LinearMap::zeros(field, n * n, n);
        for i in 0..n {
            delta.set(i * n + i, i, field.one());
        }
        let mut counit = LinearMap::zeros(field, 1, n);
        for i in 0..n {
            counit.set(0, i, field.one());
        }
        Coalgebra {
            carrier: SpaceObject::standard(prefix, n),
            delta,
            counit,
        }
    }

    pub fn field(&self) -> Field {
        self.delta.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn carrier(&self) -> &SpaceObject {
        &self.carrier
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    fn id(&self) -> LinearMap {
        LinearMap::identity(self.field(), self.dim())
    }

    /// Coassociativity and both counit laws, exactly.
    pub fn check(&self) -> Report {
        let mut r = Report::default();
        let id = self.id();
        let left = self.delta.tensor_then(&self.delta, &id).expect("shapes");
        let right = self.delta.tensor_then(&id, &self.delta).expect("shapes");
        if left != right {
            r.push("coassociativity (Δ⊗id)∘Δ = (id⊗Δ)∘Δ");
        }
        if self.delta.tensor_then(&self.counit, &id).expect("shapes") != id {
            r.push("left counit (ε⊗id)∘Δ = id");
        }
        if self.delta.tensor_then(&id, &self.counit).expect("shapes") != id {
            r.push("right counit (id⊗ε)∘Δ = id");
        }
        r
    }

    pub fn validated(self) -> Result<Self> {
        let r = self.check();
        if r.is_valid() {
            Ok(self)
        } else {
            Err(Error::axioms("coalgebra", r))
        }
    }

    /// `C` as a right comodule over itself via `Δ`.
    pub fn regular_comodule(self: &Arc<Self>) -> Comodule {
        Comodule {
            carrier: self.carrier.clone(),
            over: Arc::clone(self),
            coaction: self.delta.clone(),
        }
    }
}

/// Is `h: C → D` a coalgebra morphism?
pub fn check_coalgebra_morphism(h: &LinearMap, from: &Coalgebra, to: &Coalgebra) -> Report {
    let mut r = Report::default();
    if h.shape() != (to.dim(), from.dim()) {
        r.push(format!("shape {:?} does not match {} → {}", h.shape(), from.dim(), to.dim()));
        return r;
    }
    if from.delta.tensor_then(h, h).expect("shapes") != to.delta() * h {
        r.push("comultiplicativity (h⊗h)∘Δ = Δ'∘h");
    }
    if to.counit() * h != from.counit {
        r.push("counit ε'∘h = ε");
    }
    r
}

/// A right comodule `ρ: V → V⊗C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    carrier: SpaceObject,
    over: Arc<Coalgebra>,
    coaction: LinearMap,
}

impl Comodule {
    pub fn new(carrier: SpaceObject, over: Arc<Coalgebra>, coaction: LinearMap) -> Result<Self> {
        let (v, c) = (carrier.dim(), over.dim());
        if coaction.shape() != (v * c, v) || coaction.field() != over.field() {
            return Err(Error::shape(format!(
                "coaction of a {v}-dim comodule over a {c}-dim coalgebra is {:?}",
                coaction.shape()
            )));
        }
        Ok(Comodule { carrier, over, coaction })
    }

    pub fn carrier(&self) -> &SpaceObject {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn over(&self) -> &Arc<Coalgebra> {
        &self.over
    }

    pub fn coaction(&self) -> &LinearMap {
        &self.coaction
    }

    pub fn field(&self) -> Field {
        self.coaction.field()
    }

    /// `(ρ⊗id)∘ρ = (id⊗Δ)∘ρ` and `(id⊗ε)∘ρ = id`.
    pub fn check(&self) -> Report {
        let mut r = Report::default();
        let f = self.field();
        let idv = LinearMap::identity(f, self.dim());
        let idc = LinearMap::identity(f, self.over.dim());
        let left = self.coaction.tensor_then(&self.coaction, &idc).expect("shapes");
        let right = self.coaction.tensor_then(&idv, self.over.delta()).expect("shapes");
        if left != right {
            r.push("coassociativity (ρ⊗id)∘ρ = (id⊗Δ)∘ρ");
        }
        if self.coaction.tensor_then(&idv, self.over.counit()).expect("shapes") != idv {
            r.push("counit (id⊗ε)∘ρ = id");
        }
        r
    }

    pub fn validated(self) -> Result<Self> {
        let r = self.check();
        if r.is_valid() {
            Ok(self)
        } else {
            Err(Error::axioms("comodule", r))
        }
    }

    /// Same carrier and coaction, reinterpreted over another coalgebra of equal
    /// dimension (used after transporting along an isomorphism).
    pub fn over_coalgebra(&self, over: Arc<Coalgebra>, coaction: LinearMap) -> Result<Comodule> {
        Comodule::new(self.carrier.clone(), over, coaction)
    }

    /// Direct sum of comodules over the same coalgebra.
    pub fn direct_sum(parts: &[&Comodule]) -> Result<Comodule> {
        let over = parts
            .first()
            .map(|c| Arc::clone(&c.over))
            .ok_or_else(|| Error::shape("empty direct sum of comodules"))?;
        let f = over.field();
        let cdim = over.dim();
        let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
        let total: usize = dims.iter().sum();
        let mut rho = LinearMap::zeros(f, total * cdim, total);
        let mut offset = 0;
        for p in parts {
            if p.over != over {
                return Err(Error::shape("direct sum of comodules over different coalgebras"));
            }
            for col in 0..p.dim() {
                for row in 0..p.dim() * cdim {
                    let x = p.coaction.get(row, col);
                    if !x.is_zero() {
                        let (v, c) = (row / cdim, row % cdim);
                        rho.set((offset + v) * cdim + c, offset + col, x.clone());
                    }
                }
            }
            offset += p.dim();
        }
        let spaces: Vec<SpaceObject> = parts.iter().map(|p| p.carrier.clone()).collect();
        Comodule::new(SpaceObject::direct_sum(&spaces), over, rho)
    }
}

/// Is `g: V → W` a comodule morphism, i.e. `(g⊗id)∘ρ_V = ρ_W∘g`?
pub fn is_comodule_morphism(g: &LinearMap, from: &Comodule, to: &Comodule) -> bool {
    let idc = LinearMap::identity(g.field(), from.over.dim());
    g.shape() == (to.dim(), from.dim())
        && from.coaction.tensor_then(g, &idc).expect("shapes") == to.coaction() * g
}

/// Basis of the space of comodule morphisms `V → W`, each as a matrix.
///
/// Solves the intertwining system `(g⊗id)∘ρ_V − ρ_W∘g = 0` in the
/// `dim W · dim V` unknown entries of `g`.
pub fn intertwiners(from: &Comodule, to: &Comodule) -> Vec<LinearMap> {
    let f = from.field();
    let (v, w) = (from.dim(), to.dim());
    let idc = LinearMap::identity(f, from.over.dim());
    let unknowns = v * w;
    let eq_len = w * from.over.dim() * v;
    let mut columns = Vec::with_capacity(unknowns);
    for r in 0..w {
        for c in 0..v {
            let mut e = LinearMap::zeros(f, w, v);
            e.set(r, c, f.one());
            let lhs = from.coaction.tensor_then(&e, &idc).expect("shapes");
            let rhs = to.coaction() * &e;
            columns.push((&lhs - &rhs).entries().to_vec());
        }
    }
    let system = LinearMap::from_columns(f, eq_len, &columns);
    let k = kernel(&system);
    (0..k.cols())
        .map(|j| {
            let col = k.column(j);
            let mut g = LinearMap::zeros(f, w, v);
            for r in 0..w {
                for c in 0..v {
                    g.set(r, c, col[r * v + c].clone());
                }
            }
            g
        })
        .collect()
}

/// Coalgebra plus multiplication `m: H⊗H → H` and unit `u: K → H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra {
    coalgebra: Coalgebra,
    mult: LinearMap,
    unit: LinearMap,
}

impl Bialgebra {
    pub fn new(coalgebra: Coalgebra, mult: LinearMap, unit: LinearMap) -> Result<Self> {
        let n = coalgebra.dim();
        if mult.shape() != (n, n * n) || unit.shape() != (n, 1) {
            return Err(Error::shape(format!(
                "bialgebra of dim {n}: m is {:?}, u is {:?}",
                mult.shape(),
                unit.shape()
            )));
        }
        Ok(Bialgebra { coalgebra, mult, unit })
    }

    /// Group bialgebra `K[ℤ/n]`: grouplike basis, `m(g_i⊗g_j) = g_{i+j}`.
    pub fn cyclic_group(field: Field, n: usize) -> Self {
        let coalgebra = Coalgebra::grouplike(field, n, "g");
        let mut mult = LinearMap::zeros(field, n, n * n);
        for i in 0..n {
            for j in 0..n {
                mult.set((i + j) % n, i * n + j, field.one());
            }
        }
        let mut unit = LinearMap::zeros(field, n, 1);
        unit.set(0, 0, field.one());
        Bialgebra { coalgebra, mult, unit }
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn mult(&self) -> &LinearMap {
        &self.mult
    }

    pub fn unit(&self) -> &LinearMap {
        &self.unit
    }

    pub fn field(&self) -> Field {
        self.coalgebra.field()
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    /// Coalgebra axioms, associativity, unit laws, and compatibility of Δ, ε
    /// with m, u.
    pub fn check(&self) -> Report {
        let mut r = self.coalgebra.check();
        let f = self.field();
        let n = self.dim();
        let id = LinearMap::identity(f, n);
        let m = &self.mult;
        let mm_left = m * &LinearMap::tensor(m, &id).expect("shapes");
        let mm_right = m * &LinearMap::tensor(&id, m).expect("shapes");
        if mm_left != mm_right {
            r.push("associativity m∘(m⊗id) = m∘(id⊗m)");
        }
        if m * &self.unit.tensor(&id).expect("shapes") != id {
            r.push("left unit m∘(u⊗id) = id");
        }
        if m * &id.tensor(&self.unit).expect("shapes") != id {
            r.push("right unit m∘(id⊗u) = id");
        }
        let delta = self.coalgebra.delta();
        let eps = self.coalgebra.counit();
        let lhs = delta * m;
        let middle = LinearMap::tensor(&id, &LinearMap::swap(f, n, n))
            .and_then(|t| t.tensor(&id))
            .expect("shapes");
        let dd = delta.tensor(delta).expect("shapes");
        let rhs = &(&m.tensor(m).expect("shapes") * &middle) * &dd;
        if lhs != rhs {
            r.push("compatibility Δ∘m = (m⊗m)∘(id⊗τ⊗id)∘(Δ⊗Δ)");
        }
        if eps * m != eps.tensor(eps).expect("shapes") {
            r.push("counit multiplicative ε∘m = ε⊗ε");
        }
        if delta * &self.unit != self.unit.tensor(&self.unit).expect("shapes") {
            r.push("unit grouplike Δ∘u = u⊗u");
        }
        if !(eps * &self.unit).is_identity() {
            r.push("ε∘u = 1");
        }
        r
    }

    pub fn validated(self) -> Result<Self> {
        let r = self.check();
        if r.is_valid() {
            Ok(self)
        } else {
            Err(Error::axioms("bialgebra", r))
        }
    }

    /// Tensor product coaction `(id⊗id⊗m)∘(id⊗τ⊗id)∘(ρ_V⊗ρ_W)` on `V⊗W`.
    pub fn tensor_coaction(&self, v: &LinearMap, dim_v: usize, w: &LinearMap, dim_w: usize) -> LinearMap {
        let f = self.field();
        let h = self.dim();
        let both = v.tensor(w).expect("shapes");
        let shuffle = LinearMap::identity(f, dim_v)
            .tensor(&LinearMap::swap(f, h, dim_w))
            .and_then(|t| t.tensor(&LinearMap::identity(f, h)))
            .expect("shapes");
        let mult = LinearMap::identity(f, dim_v * dim_w).tensor(&self.mult).expect("shapes");
        &(&mult * &shuffle) * &both
    }
}

/// Bialgebra with antipode `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    bialgebra: Bialgebra,
    antipode: LinearMap,
}

impl HopfAlgebra {
    pub fn new(bialgebra: Bialgebra, antipode: LinearMap) -> Result<Self> {
        let n = bialgebra.dim();
        if antipode.shape() != (n, n) {
            return Err(Error::shape(format!("antipode of a {n}-dim algebra is {:?}", antipode.shape())));
        }
        Ok(HopfAlgebra { bialgebra, antipode })
    }

    /// `K[ℤ/n]` with `S(g_i) = g_{-i}`.
    pub fn cyclic_group(field: Field, n: usize) -> Self {
        let mut s = LinearMap::zeros(field, n, n);
        for i in 0..n {
            s.set((n - i) % n, i, field.one());
        }
        HopfAlgebra {
            bialgebra: Bialgebra::cyclic_group(field, n),
            antipode: s,
        }
    }

    pub fn trivial(field: Field) -> Self {
        let one = LinearMap::identity(field, 1);
        HopfAlgebra {
            bialgebra: Bialgebra {
                coalgebra: Coalgebra::trivial(field),
                mult: one.clone(),
                unit: one.clone(),
            },
            antipode: one,
        }
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.bialgebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        self.bialgebra.coalgebra()
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn field(&self) -> Field {
        self.bialgebra.field()
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    /// Bialgebra axioms plus `m∘(S⊗id)∘Δ = u∘ε = m∘(id⊗S)∘Δ`.
    pub fn check(&self) -> Report {
        let mut r = self.bialgebra.check();
        let f = self.field();
        let id = LinearMap::identity(f, self.dim());
        let b = &self.bialgebra;
        let delta = b.coalgebra.delta();
        let ue = &b.unit * b.coalgebra.counit();
        if b.mult() * &delta.tensor_then(&self.antipode, &id).expect("shapes") != ue {
            r.push("antipode m∘(S⊗id)∘Δ = u∘ε");
        }
        if b.mult() * &delta.tensor_then(&id, &self.antipode).expect("shapes") != ue {
            r.push("antipode m∘(id⊗S)∘Δ = u∘ε");
        }
        r
    }

    pub fn validated(self) -> Result<Self> {
        let r = self.check();
        if r.is_valid() {
            Ok(self)
        } else {
            Err(Error::axioms("Hopf algebra", r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn grouplike_and_trivial_are_coalgebras() {
        assert!(Coalgebra::trivial(Q).check().is_valid());
        assert!(Coalgebra::grouplike(Q, 3, "g").check().is_valid());
    }

    #[test]
    fn broken_counit_detected() {
        let c = Coalgebra::grouplike(Q, 2, "g");
        let bad = Coalgebra::new(c.carrier().clone(), c.delta().clone(), LinearMap::from_i64(Q, &[&[1, 2]])).unwrap();
        let r = bad.check();
        assert!(r.violations.iter().any(|v| v.contains("counit")));
    }

    #[test]
    fn cyclic_group_hopf_axioms() {
        for n in 1..=4 {
            assert!(HopfAlgebra::cyclic_group(Q, n).check().is_valid(), "n = {n}");
        }
        assert!(HopfAlgebra::cyclic_group(Field::Prime(2), 3).check().is_valid());
        assert!(HopfAlgebra::trivial(Q).check().is_valid());
    }

    #[test]
    fn wrong_antipode_detected() {
        let h = HopfAlgebra::cyclic_group(Q, 3);
        let bad = HopfAlgebra::new(h.bialgebra().clone(), LinearMap::identity(Q, 3)).unwrap();
        assert!(!bad.check().is_valid());
    }

    #[test]
    fn grading_comodules_and_intertwiners() {
        let c = Arc::new(Coalgebra::grouplike(Q, 2, "g"));
        let k0 = Comodule::new(SpaceObject::unit(), Arc::clone(&c), LinearMap::from_i64(Q, &[&[1], &[0]])).unwrap();
        let k1 = Comodule::new(SpaceObject::unit(), Arc::clone(&c), LinearMap::from_i64(Q, &[&[0], &[1]])).unwrap();
        assert!(k0.check().is_valid() && k1.check().is_valid());
        // Hom(K₀, K₁) = 0 and End(K_i) = K, by solving the intertwiner system by hand.
        assert!(intertwiners(&k0, &k1).is_empty());
        assert_eq!(intertwiners(&k0, &k0).len(), 1);
        let sum = Comodule::direct_sum(&[&k0, &k1]).unwrap();
        assert!(sum.check().is_valid());
        assert_eq!(sum.coaction(), c.delta());
    }

    #[test]
    fn non_coassociative_coaction_rejected() {
        let c = Arc::new(Coalgebra::grouplike(Q, 2, "g"));
        let bad = Comodule::new(SpaceObject::unit(), c, LinearMap::from_i64(Q, &[&[1], &[1]])).unwrap();
        assert!(bad.validated().is_err());
    }
}
