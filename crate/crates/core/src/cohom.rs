//! Cohomomorphism objects of finite-dimensional spaces and the structure maps
//! built from them.
//!
//! `cohom(X, Y)` is realised as `Y* ⊗ X`: its basis vector `e_(j,i) = y'_j ⊗ x_i`
//! sits at flat index `j·dim(X) + i`, and the coevaluation is
//! `coev(x_i) = Σ_j y_j ⊗ e_(j,i)`. Every other map here is obtained from the
//! universal property through [`coact`].

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Coalgebra, Comodule, HopfAlgebra};
use crate::error::{Error, Result};
use crate::fincat::Report;
use crate::linalg::{Field, LinearMap, SpaceObject};

/// `cohom(X, Y)` with its universal coevaluation `X → Y ⊗ cohom(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomObject {
    pub carrier: SpaceObject,
    pub coev: LinearMap,
}

pub fn cohom(field: Field, x: &SpaceObject, y: &SpaceObject) -> CohomObject {
    CohomObject {
        carrier: y.dual().tensor(x),
        coev: coev(field, x.dim(), y.dim()),
    }
}

/// The coevaluation matrix for `dim X = n`, `dim Y = m`: shape `(m·m·n) × n`.
pub fn coev(field: Field, n: usize, m: usize) -> LinearMap {
    let c = m * n;
    let mut out = LinearMap::zeros(field, m * c, n);
    for i in 0..n {
        for j in 0..m {
            out.set(j * c + j * n + i, i, field.one());
        }
    }
    out
}

/// The unique `coact(φ): cohom(X, Y) → Z` with `(id_Y ⊗ coact(φ)) ∘ coev = φ`,
/// for `φ: X → Y ⊗ Z` with the factor dimensions declared.
pub fn coact(phi: &LinearMap, dim_y: usize, dim_z: usize) -> Result<LinearMap> {
    let n = phi.cols();
    if phi.rows() != dim_y * dim_z {
        return Err(Error::shape(format!(
            "coact: φ has {} rows, expected dim Y · dim Z = {} · {}",
            phi.rows(),
            dim_y,
            dim_z
        )));
    }
    let mut out = LinearMap::zeros(phi.field(), dim_z, dim_y * n);
    for j in 0..dim_y {
        for i in 0..n {
            for k in 0..dim_z {
                let x = phi.get(j * dim_z + k, i);
                if !x.is_zero() {
                    out.set(k, j * n + i, x.clone());
                }
            }
        }
    }
    Ok(out)
}

/// `(id_Y ⊗ ψ) ∘ coev_{X,Y}`: the inverse direction of the adjunction.
pub fn uncoact(psi: &LinearMap, dim_x: usize, dim_y: usize) -> LinearMap {
    let c = coev(psi.field(), dim_x, dim_y);
    c.tensor_then(&LinearMap::identity(psi.field(), dim_y), psi)
        .expect("ψ must be defined on cohom(X, Y)")
}

/// `cohom(f, id_Y): cohom(X, Y) → cohom(X', Y)` for `f: X → X'`.
pub fn cohom_covariant(f: &LinearMap, dim_y: usize) -> LinearMap {
    LinearMap::identity(f.field(), dim_y).tensor(f).expect("same field")
}

/// `cohom(id_X, g^op): cohom(X, Y) → cohom(X, Y')` for `g: Y' → Y`.
pub fn cohom_contravariant(g: &LinearMap, dim_x: usize) -> LinearMap {
    g.transpose().tensor(&LinearMap::identity(g.field(), dim_x)).expect("same field")
}

/// Conjugation `cohom(A, A) → cohom(B, B)` by an isomorphism `ξ: A → B`.
pub fn cohom_conjugate(xi: &LinearMap, xi_inv: &LinearMap) -> LinearMap {
    let dim_a = xi.cols();
    let dim_b = xi.rows();
    &cohom_covariant(xi, dim_b) * &cohom_contravariant(xi_inv, dim_a)
}

/// Cocomposition `Δ_{X,Y,Z}: cohom(X, Y) → cohom(Z, Y) ⊗ cohom(X, Z)`.
pub fn cocompose(field: Field, dim_x: usize, dim_y: usize, dim_z: usize) -> LinearMap {
    let coev_xz = coev(field, dim_x, dim_z);
    let phi = coev_xz
        .tensor_then(&coev(field, dim_z, dim_y), &LinearMap::identity(field, dim_z * dim_x))
        .expect("shapes");
    coact(&phi, dim_y, dim_y * dim_z * dim_z * dim_x).expect("shapes")
}

/// The coendomorphism coalgebra `coend(X) = cohom(X, X)` and `X` as a comodule
/// over it with `ρ_X = coev_X`.
pub fn coend_object(field: Field, x: &SpaceObject) -> (Arc<Coalgebra>, Comodule) {
    let n = x.dim();
    let c = cohom(field, x, x);
    let delta = cocompose(field, n, n, n);
    let counit = coact(&LinearMap::identity(field, n), n, 1).expect("shapes");
    let coalgebra = Arc::new(Coalgebra::new(c.carrier, delta, counit).expect("comatrix shapes"));
    let comodule = Comodule::new(x.clone(), Arc::clone(&coalgebra), c.coev).expect("shapes");
    (coalgebra, comodule)
}

/// For a comodule structure `φ: X → X ⊗ C`, the coaction
/// `ρ_φ = coact((coev_X ⊗ id_C) ∘ φ)` on `coend(X)` and the coalgebra map
/// `z = coact(φ): coend(X) → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCoaction {
    pub rho: LinearMap,
    pub z: LinearMap,
}

pub fn induce_coaction(x: &SpaceObject, phi: &LinearMap, c: &Arc<Coalgebra>) -> Result<InducedCoaction> {
    let field = c.field();
    let n = x.dim();
    let cd = c.dim();
    let input = Comodule::new(x.clone(), Arc::clone(c), phi.clone())?;
    let r = input.check();
    if !r.is_valid() {
        return Err(Error::axioms("input comodule", r));
    }
    let lifted = phi
        .tensor_then(&coev(field, n, n), &LinearMap::identity(field, cd))
        .expect("shapes");
    let rho = coact(&lifted, n, n * n * cd)?;
    let z = coact(phi, n, cd)?;

    let (coend, _) = coend_object(field, x);
    let induced = Comodule::new(coend.carrier().clone(), Arc::clone(c), rho.clone())?;
    let mut report = induced.check();
    report.extend("z", crate::algebra::check_coalgebra_morphism(&z, &coend, c));
    let via_counit = rho
        .tensor_then(coend.counit(), &LinearMap::identity(field, cd))
        .expect("shapes");
    if via_counit != z {
        report.push("coact(ρ_φ) = (ε ⊗ id) ∘ ρ_φ");
    }
    if !report.is_valid() {
        return Err(Error::axioms("induced coaction", report));
    }
    Ok(InducedCoaction { rho, z })
}

/// Coactions of a Hopf algebra `H` on `cohom(X, Y)` for `H`-comodules `X`, `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomCoactions {
    /// From `ρ_X`.
    pub right: LinearMap,
    /// `(id ⊗ S) ∘ τ ∘ ρ̃ˡ`, from `ρ_Y`.
    pub left: LinearMap,
    /// `(id ⊗ m) ∘ (ρˡ ⊗ id) ∘ ρʳ`.
    pub combined: LinearMap,
}

pub fn cohom_coactions(x: &Comodule, y: &Comodule, h: &Arc<HopfAlgebra>) -> Result<CohomCoactions> {
    let r = h.check();
    if !r.is_valid() {
        return Err(Error::axioms("Hopf algebra", r));
    }
    let coalg = Arc::new(h.coalgebra().clone());
    for (name, m) in [("X", x), ("Y", y)] {
        if m.over().as_ref() != h.coalgebra() {
            return Err(Error::shape(format!("{name} is not a comodule over H")));
        }
        let r = m.check();
        if !r.is_valid() {
            return Err(Error::axioms(format!("comodule {name}"), r));
        }
    }
    let field = h.field();
    let (n, m, hd) = (x.dim(), y.dim(), h.dim());
    let cd = n * m;
    let id_h = LinearMap::identity(field, hd);
    let id_c = LinearMap::identity(field, cd);
    let coev_xy = coev(field, n, m);

    let right = coact(&x.coaction().tensor_then(&coev_xy, &id_h)?, m, cd * hd)?;
    let left_tilde = coact(&coev_xy.tensor_then(y.coaction(), &id_c)?, m, hd * cd)?;
    let left = &LinearMap::swap(field, hd, cd).tensor_then(&id_c, h.antipode())? * &left_tilde;
    let combined = &right
        .tensor_then(&left, &id_h)?
        .tensor_then(&id_c, h.bialgebra().mult())?;
    let combined = combined.clone();

    let mut report = Report::default();
    for (name, rho) in [("ρʳ", &right), ("ρˡ", &left), ("ρ", &combined)] {
        let c = Comodule::new(SpaceObject::standard("e", cd), Arc::clone(&coalg), rho.clone())?;
        report.extend(name, c.check());
    }
    // coev is a comodule map X → Y ⊗ cohom(X, Y) for the tensor coaction.
    let target = h.bialgebra().tensor_coaction(y.coaction(), m, &combined, cd);
    let lhs = x.coaction().tensor_then(&coev_xy, &id_h)?;
    if lhs != &target * &coev_xy {
        report.push("coev is a morphism of right H-comodules");
    }
    if !report.is_valid() {
        return Err(Error::axioms("cohom coactions", report));
    }
    Ok(CohomCoactions { right, left, combined })
}

/// The carrier isomorphism `cohom(X, Y ⊗ Z) → cohom(cohom(X, Y), Z)` realising
/// `Hom(cohom(cohom(X,Y),Z), T) ≅ Hom(cohom(X, Y⊗Z), T)`; it is
/// `coact((id_Y ⊗ coev_{cohom(X,Y),Z}) ∘ coev_{X,Y})`.
pub fn cohom_assoc_iso(field: Field, dim_x: usize, dim_y: usize, dim_z: usize) -> LinearMap {
    let c = dim_y * dim_x;
    let inner = coev(field, dim_x, dim_y)
        .tensor_then(&LinearMap::identity(field, dim_y), &coev(field, c, dim_z))
        .expect("shapes");
    coact(&inner, dim_y * dim_z, dim_z * c).expect("shapes")
}

/// Evaluation `ev: X* ⊗ X → K` and coevaluation `db: K → X ⊗ X*` of the
/// standard dual basis.
pub fn duality_maps(field: Field, n: usize) -> (LinearMap, LinearMap) {
    let mut ev = LinearMap::zeros(field, 1, n * n);
    let mut db = LinearMap::zeros(field, n * n, 1);
    for i in 0..n {
        ev.set(0, i * n + i, field.one());
        db.set(i * n + i, 0, field.one());
    }
    (ev, db)
}

/// Both zig-zag identities for the dual pair `(X*, ev, db)`.
pub fn check_zigzag(field: Field, n: usize) -> bool {
    let (ev, db) = duality_maps(field, n);
    let id = LinearMap::identity(field, n);
    // (id_X ⊗ ev) ∘ (db ⊗ id_X) = id_X
    let first = &id.tensor(&ev).expect("shapes") * &db.tensor(&id).expect("shapes");
    // (ev ⊗ id_{X*}) ∘ (id_{X*} ⊗ db) = id_{X*}
    let second = &ev.tensor(&id).expect("shapes") * &id.tensor(&db).expect("shapes");
    first.is_identity() && second.is_identity()
}
