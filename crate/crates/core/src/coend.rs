//! The coend of a functor into finite-dimensional spaces, computed as an
//! explicit coequalizer, together with everything it induces.
//!
//! With `N = ⊕_c cohom(F(c), F(c))` and one relation block per generating arrow
//! `f: a → b` (and per listed control action), the carrier is
//! `Q = N / im(p − q)`. Every structure map on `Q` is obtained by building
//! the corresponding blockwise map on `N`, pushing it through the chosen
//! section of `π`, and then checking that the result really factors.

use std::sync::Arc;

use crate::algebra::{check_coalgebra_morphism, Bialgebra, Coalgebra, Comodule, HopfAlgebra};
use crate::cohom::{coact, cocompose, coev, cohom_conjugate, cohom_contravariant, cohom_covariant, uncoact};
use crate::error::{Error, Result};
use crate::fincat::Report;
use crate::functor::{check_dinatural, ControlObject, FiberFunctor, Transformation};
use crate::linalg::{cokernel, inverse, rank, solve_factor, Field, LinalgError, LinearMap, SpaceObject};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoendResult {
    pub field: Field,
    pub objects: Vec<String>,
    /// `dim F(c)` per object.
    pub dims: Vec<usize>,
    /// `N = ⊕_c cohom(F(c), F(c))`.
    pub blocks: SpaceObject,
    /// `p − q: M → N`, zero relations dropped.
    pub relations: LinearMap,
    pub carrier: SpaceObject,
    pub pi: LinearMap,
    pub section: LinearMap,
    /// `i_X = π ∘ (inclusion of the X block)`.
    pub injections: Vec<LinearMap>,
    pub coalgebra: Arc<Coalgebra>,
    /// `δ_F(X) = (id ⊗ i_X) ∘ coev_{F(X)}: F(X) → F(X) ⊗ Q`.
    pub delta_f: Transformation,
}

impl CoendResult {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    fn block_sizes(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d * d).collect()
    }

    fn offsets(&self) -> Vec<usize> {
        offsets(&self.block_sizes())
    }

    /// `X ↦ (F(X), δ_F(X))`.
    pub fn comodule_on(&self, x: usize, space: &SpaceObject) -> Result<Comodule> {
        Comodule::new(space.clone(), Arc::clone(&self.coalgebra), self.delta_f.components[x].clone())
    }

    /// Re-checks every invariant of the result against the functor it came from.
    pub fn verify<F: FiberFunctor + ?Sized>(&self, f: &F) -> Report {
        let mut r = Report::default();
        if !(&self.pi * &self.section).is_identity() {
            r.push("π ∘ s ≠ id");
        }
        if !(&self.pi * &self.relations).is_zero() {
            r.push("π does not kill the relations");
        }
        if rank(&self.pi) != self.dim() {
            r.push("π is not surjective");
        }
        if !check_dinatural(&self.injections, f) {
            r.push("injections do not form a cowedge");
        }
        r.extend("coalgebra", self.coalgebra.check());
        for x in 0..self.objects.len() {
            match self.comodule_on(x, f.value(x)) {
                Ok(m) => r.extend(&format!("comodule {}", self.objects[x]), m.check()),
                Err(e) => r.push(e.to_string()),
            }
        }
        r.extend("δ_F", self.delta_f.naturality_report(f));
        r
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    out.push(0);
    for s in sizes {
        acc += s;
        out.push(acc);
    }
    out
}

/// Builder for the relation matrix `p − q: M → N`.
struct Relations {
    field: Field,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    columns: Vec<Vec<num_rational::BigRational>>,
}

impl Relations {
    fn new(field: Field, dims: Vec<usize>) -> Self {
        let sizes: Vec<usize> = dims.iter().map(|d| d * d).collect();
        Relations {
            field,
            offsets: offsets(&sizes),
            dims,
            columns: Vec::new(),
        }
    }

    fn n(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Adds the columns of `incl_a ∘ p_block − incl_b ∘ q_block`.
    fn push(&mut self, a: usize, p_block: &LinearMap, b: usize, q_block: &LinearMap) {
        debug_assert_eq!(p_block.cols(), q_block.cols());
        let n = self.n();
        for col in 0..p_block.cols() {
            let mut v = vec![self.field.zero(); n];
            for r in 0..p_block.rows() {
                let x = p_block.get(r, col);
                v[self.offsets[a] + r] = self.field.add(&v[self.offsets[a] + r], x);
            }
            for r in 0..q_block.rows() {
                let x = q_block.get(r, col);
                v[self.offsets[b] + r] = self.field.sub(&v[self.offsets[b] + r], x);
            }
            if v.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                self.columns.push(v);
            }
        }
    }

    fn matrix(&self) -> LinearMap {
        LinearMap::from_columns(self.field, self.n(), &self.columns)
    }

    fn push_arrow(&mut self, dom: usize, cod: usize, map: &LinearMap) {
        let (da, db) = (self.dims[dom], self.dims[cod]);
        let p = cohom_contravariant(map, da);
        let q = cohom_covariant(map, db);
        self.push(dom, &p, cod, &q);
    }
}

fn block_space<F: FiberFunctor + ?Sized>(f: &F) -> SpaceObject {
    let blocks: Vec<SpaceObject> = (0..f.object_count())
        .map(|x| {
            let v = f.value(x);
            let c = v.dual().tensor(v);
            let labels = c.labels().iter().map(|l| format!("{}:{}", f.object_name(x), l)).collect();
            let mut s = SpaceObject::with_labels(labels).expect("object names are distinct");
            if let Some(w) = c.weights() {
                s = s.with_weights(w.to_vec()).expect("lengths match");
            }
            s
        })
        .collect();
    SpaceObject::direct_sum(&blocks)
}

fn require_shapes<F: FiberFunctor + ?Sized>(f: &F) -> Result<()> {
    let r = f.check_shapes();
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::axioms("functor", r))
    }
}

/// The coend of `F` with its coalgebra and universal transformation.
pub fn coend_of_functor<F: FiberFunctor + ?Sized>(f: &F) -> Result<CoendResult> {
    require_shapes(f)?;
    let mut rel = Relations::new(f.field(), f.dims());
    for a in f.arrows() {
        rel.push_arrow(a.dom, a.cod, a.map);
    }
    assemble(f, rel)
}

/// The coend with the additional relations contributed by a finite list of
/// control objects. An empty list, or the unit control, reproduces
/// [`coend_of_functor`] exactly.
pub fn c_coend<F: FiberFunctor + ?Sized>(f: &F, controls: &[ControlObject]) -> Result<CoendResult> {
    require_shapes(f)?;
    let field = f.field();
    let dims = f.dims();
    let mut rel = Relations::new(field, dims.clone());
    for a in f.arrows() {
        rel.push_arrow(a.dom, a.cod, a.map);
    }
    for c in controls {
        if c.actions.is_empty() {
            return Err(Error::MissingData(format!("control {} has no action data", c.name)));
        }
        let report = c.check(f);
        if !report.is_valid() {
            return Err(Error::axioms(format!("control {}", c.name), report));
        }
        let dc = c.space.dim();
        for act in &c.actions {
            let (dx, dt) = (dims[act.object], dims[act.target]);
            // cohom(F(C⊗X), C⊗F(X)) → cohom(F(C⊗X), F(C⊗X))
            let p = cohom_contravariant(&act.xi, dt);
            // λ = coact((id_C ⊗ coev_{F(X)}) ∘ ξ)
            let lifted = act
                .xi
                .tensor_then(&LinearMap::identity(field, dc), &coev(field, dx, dx))?;
            let lambda = coact(&lifted, dc * dx, dx * dx)?;
            rel.push(act.target, &p, act.object, &lambda);
        }
    }
    assemble(f, rel)
}

fn assemble<F: FiberFunctor + ?Sized>(f: &F, rel: Relations) -> Result<CoendResult> {
    let field = f.field();
    let dims = rel.dims.clone();
    let relations = rel.matrix();
    let blocks = block_space(f);
    let ck = cokernel(&relations);
    let labels: Vec<String> = ck.kept.iter().map(|&k| format!("[{}]", blocks.labels()[k])).collect();
    let mut carrier = SpaceObject::with_labels(labels).expect("distinct block labels");
    if let Some(w) = blocks.weights() {
        carrier = carrier
            .with_weights(ck.kept.iter().map(|&k| w[k]).collect())
            .expect("lengths match");
    }
    let sizes: Vec<usize> = dims.iter().map(|d| d * d).collect();
    let offs = offsets(&sizes);
    let injections: Vec<LinearMap> = (0..dims.len())
        .map(|x| ck.pi.submatrix(0..ck.pi.rows(), offs[x]..offs[x + 1]))
        .collect();
    let q = ck.pi.rows();

    // Δ_N and ε_N blockwise, then pushed through the section.
    let mut target = LinearMap::zeros(field, q * q, ck.pi.cols());
    let mut eps_n = LinearMap::zeros(field, 1, ck.pi.cols());
    for (x, &d) in dims.iter().enumerate() {
        let ix = &injections[x];
        let block = cocompose(field, d, d, d).tensor_then(ix, ix)?;
        target.paste(0, offs[x], &block);
        eps_n.paste(0, offs[x], &coact(&LinearMap::identity(field, d), d, 1)?);
    }
    let delta = &target * &ck.section;
    if &delta * &ck.pi != target {
        return Err(Error::WellDefinednessFailure("Δ_N does not descend to the quotient".into()));
    }
    let counit = &eps_n * &ck.section;
    if &counit * &ck.pi != eps_n {
        return Err(Error::WellDefinednessFailure("ε_N does not descend to the quotient".into()));
    }
    let coalgebra = Arc::new(Coalgebra::new(carrier.clone(), delta, counit)?.validated()?);

    let components = (0..dims.len())
        .map(|x| uncoact(&injections[x], dims[x], dims[x]))
        .collect();
    Ok(CoendResult {
        field,
        objects: (0..f.object_count()).map(|x| f.object_name(x).to_string()).collect(),
        dims,
        blocks,
        relations,
        carrier: carrier.clone(),
        pi: ck.pi,
        section: ck.section,
        injections,
        coalgebra,
        delta_f: Transformation {
            target: carrier,
            components,
        },
    })
}

/// Cowedge components `μ'_X = coact(t_X): cohom(F(X), F(X)) → M` of a natural
/// transformation `t: F → F ⊗ M`.
pub fn nat_to_cowedge<F: FiberFunctor + ?Sized>(f: &F, t: &Transformation) -> Result<Vec<LinearMap>> {
    let report = t.naturality_report(f);
    if !report.is_valid() {
        return Err(Error::NaturalityFailure(report));
    }
    let m = t.target.dim();
    (0..f.object_count())
        .map(|x| coact(&t.components[x], f.value(x).dim(), m))
        .collect()
}

/// Inverse of [`nat_to_cowedge`]: `t_X = (id ⊗ w_X) ∘ coev_{F(X)}`.
pub fn cowedge_to_nat<F: FiberFunctor + ?Sized>(f: &F, w: &[LinearMap], target: &SpaceObject) -> Result<Transformation> {
    if !check_dinatural(w, f) || w.iter().any(|c| c.rows() != target.dim()) {
        let mut r = Report::default();
        r.push("components do not form a cowedge into the target");
        return Err(Error::NaturalityFailure(r));
    }
    let components = (0..f.object_count())
        .map(|x| {
            let d = f.value(x).dim();
            uncoact(&w[x], d, d)
        })
        .collect();
    Ok(Transformation {
        target: target.clone(),
        components,
    })
}

/// The unique `ψ: Q → M` with `(id ⊗ ψ) ∘ δ_F = t`.
pub fn factor_through_coend<F: FiberFunctor + ?Sized>(r: &CoendResult, f: &F, t: &Transformation) -> Result<LinearMap> {
    let w = nat_to_cowedge(f, t)?;
    let mut assembled = LinearMap::zeros(r.field, t.target.dim(), r.pi.cols());
    let offs = r.offsets();
    for (x, wx) in w.iter().enumerate() {
        assembled.paste(0, offs[x], wx);
    }
    solve_factor(&assembled, &r.pi).map_err(|e| match e {
        LinalgError::NoSolution => Error::WellDefinednessFailure("cowedge does not factor through π".into()),
        other => other.into(),
    })
}

/// The comparison `h: Q → Q'` between two coends of the same functor, the
/// second with more relations: `h ∘ i_X = i'_X`.
pub fn epi_to_c_coend(r: &CoendResult, rc: &CoendResult) -> Result<LinearMap> {
    if r.dims != rc.dims || r.field != rc.field {
        return Err(Error::shape("coends come from different functors"));
    }
    let h = &rc.pi * &r.section;
    if &h * &r.pi != rc.pi {
        return Err(Error::WellDefinednessFailure(
            "the second coend does not carry all relations of the first".into(),
        ));
    }
    let mut report = Report::default();
    if rank(&h) != rc.dim() {
        report.push("comparison map is not surjective");
    }
    report.extend("h", check_coalgebra_morphism(&h, &r.coalgebra, &rc.coalgebra));
    if !report.is_valid() {
        return Err(Error::axioms("comparison map", report));
    }
    Ok(h)
}

/// `μ_{X,Y}: cohom(A,A) ⊗ cohom(B,B) → cohom(A⊗B, A⊗B)`,
/// `e_(j,i) ⊗ e_(l,k) ↦ e_((j,l),(i,k))`.
pub fn block_product(field: Field, a: usize, b: usize) -> LinearMap {
    let ab = a * b;
    let mut out = LinearMap::zeros(field, ab * ab, a * a * b * b);
    for j in 0..a {
        for i in 0..a {
            for l in 0..b {
                for k in 0..b {
                    let src = (j * a + i) * b * b + (l * b + k);
                    let dst = (j * b + l) * ab + (i * b + k);
                    out.set(dst, src, field.one());
                }
            }
        }
    }
    out
}

/// Multiplication and unit on the coend of a monoidal functor.
pub fn bialgebra_on_coend<F: FiberFunctor + ?Sized>(f: &F, r: &CoendResult) -> Result<Bialgebra> {
    let data = f
        .monoidal()
        .ok_or_else(|| Error::MissingData("functor has no monoidal structure".into()))?;
    let field = r.field;
    let n = r.objects.len();
    let dims = &r.dims;
    let offs = r.offsets();
    let big_n = r.pi.cols();
    let q = r.dim();

    let mut target = LinearMap::zeros(field, q, big_n * big_n);
    for x in 0..n {
        for y in 0..n {
            let z = data.object_tensor[x][y];
            let xi = data
                .xi
                .get(&(x, y))
                .ok_or_else(|| Error::MissingData(format!("ξ_({}, {})", r.objects[x], r.objects[y])))?;
            let xi_inv = inverse(xi).ok_or_else(|| {
                Error::WellDefinednessFailure(format!("ξ_({}, {}) is not invertible", r.objects[x], r.objects[y]))
            })?;
            if xi.cols() != dims[x] * dims[y] || xi.rows() != dims[z] {
                return Err(Error::shape(format!("ξ_({}, {}) has shape {:?}", r.objects[x], r.objects[y], xi.shape())));
            }
            let block = &(&r.injections[z] * &cohom_conjugate(xi, &xi_inv)) * &block_product(field, dims[x], dims[y]);
            let (sx, sy) = (dims[x] * dims[x], dims[y] * dims[y]);
            for u in 0..sx {
                for v in 0..sy {
                    let col = (offs[x] + u) * big_n + offs[y] + v;
                    for row in 0..q {
                        let e = block.get(row, u * sy + v);
                        if !num_traits::Zero::is_zero(e) {
                            target.set(row, col, e.clone());
                        }
                    }
                }
            }
        }
    }
    let s2 = r.section.tensor(&r.section)?;
    let mult = &target * &s2;
    if &mult * &r.pi.tensor(&r.pi)? != target {
        return Err(Error::WellDefinednessFailure("μ_N does not descend to Q ⊗ Q".into()));
    }

    let unit_obj = data.unit;
    let xi_i = &data.xi_unit;
    if xi_i.shape() != (dims[unit_obj], 1) {
        return Err(Error::shape("ξ_I must map K to F(I)"));
    }
    let xi_i_inv = inverse(xi_i).ok_or_else(|| Error::WellDefinednessFailure("ξ_I is not invertible".into()))?;
    let unit = &r.injections[unit_obj] * &cohom_conjugate(xi_i, &xi_i_inv);

    Bialgebra::new((*r.coalgebra).clone(), mult, unit)?.validated()
}

/// Antipode on the coend of a monoidal functor whose objects all have duals.
pub fn antipode_on_coend<F: FiberFunctor + ?Sized>(f: &F, r: &CoendResult, b: Bialgebra) -> Result<HopfAlgebra> {
    let field = r.field;
    let offs = r.offsets();
    let mut target = LinearMap::zeros(field, r.dim(), r.pi.cols());
    for (x, &d) in r.dims.iter().enumerate() {
        let dual = f.dual(x).ok_or_else(|| Error::MissingDual(r.objects[x].clone()))?;
        let dd = r.dims[dual.dual];
        if dual.iso.shape() != (dd, d) {
            return Err(Error::shape(format!(
                "dual isomorphism for {} has shape {:?}",
                r.objects[x],
                dual.iso.shape()
            )));
        }
        let theta_inv = inverse(&dual.iso).ok_or_else(|| {
            Error::WellDefinednessFailure(format!("dual isomorphism for {} is not invertible", r.objects[x]))
        })?;
        // F(X)* ⊗ F(X) → F(X) ⊗ F(X)* = cohom(F(X)*, F(X)*)
        let flip = LinearMap::swap(field, d, d);
        let block = &(&r.injections[dual.dual] * &cohom_conjugate(&dual.iso, &theta_inv)) * &flip;
        target.paste(0, offs[x], &block);
    }
    let antipode = &target * &r.section;
    if &antipode * &r.pi != target {
        return Err(Error::WellDefinednessFailure("σ_N does not descend to the quotient".into()));
    }
    HopfAlgebra::new(b, antipode)?.validated()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::coend_object;
    use crate::fincat::FinCategory;
    use crate::functor::{ControlAction, DiagramFunctor};

    const Q: Field = Field::Rational;

    fn one_object(d: usize) -> DiagramFunctor {
        DiagramFunctor::new(Q, FinCategory::discrete(&["x"]), vec![SpaceObject::standard("x", d)], vec![]).unwrap()
    }

    fn glued() -> DiagramFunctor {
        let c = FinCategory::new(&["a", "b"], &[("f", "a", "b")], &[]).unwrap();
        DiagramFunctor::new(Q, c, vec![SpaceObject::unit(); 2], vec![LinearMap::identity(Q, 1)]).unwrap()
    }

    #[test]
    fn one_object_coend_is_comatrix() {
        let f = one_object(2);
        let r = coend_of_functor(&f).unwrap();
        assert_eq!(r.dim(), 4);
        assert!(r.injections[0].is_identity());
        let (c, _) = coend_object(Q, f.value(0));
        assert_eq!(r.coalgebra.delta(), c.delta());
        assert_eq!(r.coalgebra.counit(), c.counit());
        assert!(r.verify(&f).is_valid());
    }

    #[test]
    fn glued_pair_has_one_dimensional_coend() {
        let f = glued();
        let r = coend_of_functor(&f).unwrap();
        assert_eq!(r.relations.shape(), (2, 1));
        assert_eq!(r.dim(), 1);
        assert!(r.coalgebra.delta().is_identity());
        assert!(r.verify(&f).is_valid());
        let m = r.comodule_on(0, f.value(0)).unwrap();
        assert!(m.coaction().is_identity());
    }

    #[test]
    fn discrete_points_are_grouplike() {
        let f = DiagramFunctor::new(Q, FinCategory::discrete(&["p", "q", "r"]), vec![SpaceObject::unit(); 3], vec![])
            .unwrap();
        let r = coend_of_functor(&f).unwrap();
        assert_eq!(r.dim(), 3);
        let g = Coalgebra::grouplike(Q, 3, "g");
        assert_eq!(r.coalgebra.delta(), g.delta());
        assert_eq!(r.coalgebra.counit(), g.counit());
    }

    #[test]
    fn chain_with_nontrivial_map() {
        // a → b → c with dims 1, 2, 2
        let c = FinCategory::new(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("gf", "a", "c")],
            &[("g", "f", "gf")],
        )
        .unwrap();
        let f1 = LinearMap::from_i64(Q, &[&[1], &[2]]);
        let g1 = LinearMap::from_i64(Q, &[&[0, 1], &[1, 1]]);
        let gf = &g1 * &f1;
        let f = DiagramFunctor::new(
            Q,
            c,
            vec![SpaceObject::standard("a", 1), SpaceObject::standard("b", 2), SpaceObject::standard("c", 2)],
            vec![f1, g1, gf],
        )
        .unwrap();
        assert!(crate::functor::validate_functor(&f).is_valid());
        let r = coend_of_functor(&f).unwrap();
        assert!(r.verify(&f).is_valid());
        // g is invertible, so the b and c blocks glue (9 → 5). The line (1,2)
        // in F(b) becomes a subcomodule: one off-diagonal coefficient dies and
        // the a block is identified with a diagonal one (5 → 3).
        assert_eq!(r.dim(), 3);
        for a in f.arrows() {
            let (x, y) = (r.comodule_on(a.dom, f.value(a.dom)).unwrap(), r.comodule_on(a.cod, f.value(a.cod)).unwrap());
            assert!(crate::algebra::is_comodule_morphism(a.map, &x, &y));
        }
    }

    #[test]
    fn universal_transformation_factors_as_identity() {
        let f = glued();
        let r = coend_of_functor(&f).unwrap();
        let psi = factor_through_coend(&r, &f, &r.delta_f).unwrap();
        assert!(psi.is_identity());
        let zero = Transformation {
            target: SpaceObject::standard("m", 2),
            components: vec![LinearMap::zeros(Q, 2, 1); 2],
        };
        assert!(factor_through_coend(&r, &f, &zero).unwrap().is_zero());
    }

    #[test]
    fn cowedge_of_delta_is_injections_and_counit() {
        let f = one_object(2);
        let r = coend_of_functor(&f).unwrap();
        assert_eq!(nat_to_cowedge(&f, &r.delta_f).unwrap(), r.injections);
        let ids = Transformation {
            target: SpaceObject::unit(),
            components: vec![LinearMap::identity(Q, 2)],
        };
        let w = nat_to_cowedge(&f, &ids).unwrap();
        let (c, _) = coend_object(Q, f.value(0));
        assert_eq!(&w[0], c.counit());
        assert_eq!(cowedge_to_nat(&f, &w, &SpaceObject::unit()).unwrap(), ids);
    }

    #[test]
    fn non_natural_input_is_rejected() {
        let f = glued();
        let t = Transformation {
            target: SpaceObject::unit(),
            components: vec![LinearMap::from_i64(Q, &[&[1]]), LinearMap::from_i64(Q, &[&[2]])],
        };
        let r = coend_of_functor(&f).unwrap();
        assert!(matches!(factor_through_coend(&r, &f, &t), Err(Error::NaturalityFailure(_))));
    }

    #[test]
    fn unit_and_empty_controls_change_nothing() {
        for f in [one_object(2), glued()] {
            let r = coend_of_functor(&f).unwrap();
            assert_eq!(c_coend(&f, &[]).unwrap(), r);
            assert_eq!(c_coend(&f, &[ControlObject::unit(&f)]).unwrap(), r);
        }
    }

    #[test]
    fn sign_control_keeps_the_diagonal() {
        let f = one_object(2);
        let control = ControlObject {
            name: "s".into(),
            space: SpaceObject::unit(),
            actions: vec![ControlAction {
                object: 0,
                target: 0,
                xi: LinearMap::from_i64(Q, &[&[1, 0], &[0, -1]]),
            }],
        };
        let r = coend_of_functor(&f).unwrap();
        let rc = c_coend(&f, &[control]).unwrap();
        assert_eq!(rc.dim(), 2);
        assert_eq!(rc.carrier.labels(), &["[x:x0'⊗x0]", "[x:x1'⊗x1]"]);
        let h = epi_to_c_coend(&r, &rc).unwrap();
        assert_eq!(h, LinearMap::from_i64(Q, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn tensor_control_collapses_two_objects() {
        // a ↦ K, b ↦ K², control C = K² with C ⊗ a = b and ξ = id.
        let f = DiagramFunctor::new(
            Q,
            FinCategory::discrete(&["a", "b"]),
            vec![SpaceObject::standard("a", 1), SpaceObject::standard("b", 2)],
            vec![],
        )
        .unwrap();
        let control = ControlObject {
            name: "c".into(),
            space: SpaceObject::standard("c", 2),
            actions: vec![ControlAction {
                object: 0,
                target: 1,
                xi: LinearMap::identity(Q, 2),
            }],
        };
        let r = coend_of_functor(&f).unwrap();
        assert_eq!(r.dim(), 5);
        let rc = c_coend(&f, &[control]).unwrap();
        assert_eq!(rc.dim(), 1);
        let h = epi_to_c_coend(&r, &rc).unwrap();
        assert_eq!(rank(&h), 1);
    }

    #[test]
    fn control_without_actions_is_missing_data() {
        let f = one_object(1);
        let c = ControlObject {
            name: "c".into(),
            space: SpaceObject::unit(),
            actions: vec![],
        };
        assert!(matches!(c_coend(&f, &[c]), Err(Error::MissingData(_))));
    }

    #[test]
    fn block_product_is_a_permutation() {
        let m = block_product(Q, 2, 3);
        assert_eq!(rank(&m), 36);
        // e_(1,0) ⊗ e_(2,1) ↦ e_((1,2),(0,1))
        let src = (1 * 2 + 0) * 9 + (2 * 3 + 1);
        let dst = (1 * 3 + 2) * 6 + (0 * 3 + 1);
        assert!(num_traits::One::is_one(m.get(dst, src)));
    }

    fn check_group_hopf(n: usize, field: Field) {
        let f = DiagramFunctor::cyclic_grading(field, n);
        let r = coend_of_functor(&f).unwrap();
        assert_eq!(r.dim(), n);
        let b = bialgebra_on_coend(&f, &r).unwrap();
        let h = antipode_on_coend(&f, &r, b).unwrap();
        // The carrier basis is the image of the k_i blocks, in order.
        for i in 0..n {
            assert!(r.injections[i].column(0).iter().enumerate().all(|(k, x)| num_traits::One::is_one(x) == (k == i)));
        }
        let g = HopfAlgebra::cyclic_group(field, n);
        assert_eq!(h.bialgebra().mult(), g.bialgebra().mult());
        assert_eq!(h.bialgebra().unit(), g.bialgebra().unit());
        assert_eq!(h.coalgebra().delta(), g.coalgebra().delta());
        assert_eq!(h.coalgebra().counit(), g.coalgebra().counit());
        assert_eq!(h.antipode(), g.antipode());
    }

    #[test]
    fn grading_coends_are_group_hopf_algebras() {
        check_group_hopf(1, Q);
        check_group_hopf(2, Q);
        check_group_hopf(3, Q);
        check_group_hopf(3, Field::Prime(2));
    }

    #[test]
    fn missing_dual_is_reported() {
        let f = DiagramFunctor::cyclic_grading(Q, 2);
        let r = coend_of_functor(&f).unwrap();
        let b = bialgebra_on_coend(&f, &r).unwrap();
        let plain = one_object(1);
        assert!(matches!(antipode_on_coend(&plain, &r, b), Err(Error::MissingDual(_)) | Err(Error::Shape(_))));
    }
}
