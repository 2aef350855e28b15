//! Finite comodule categories and the reconstruction, recognition and
//! equivalence checks run on their forgetful functors.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::algebra::{check_coalgebra_morphism, intertwiners, is_comodule_morphism, Bialgebra, Coalgebra, Comodule};
use crate::coend::{bialgebra_on_coend, coend_of_functor, factor_through_coend, CoendResult};
use crate::error::{Error, Result};
use crate::fincat::Report;
use crate::functor::{Arrow, FiberFunctor, MonoidalFunctorData, Transformation};
use crate::linalg::{inverse, kernel, rank, solve, Field, LinearMap, SpaceObject};

/// Named seed comodules over one coalgebra, with full intertwiner spaces as
/// hom-sets (each represented by a basis).
#[derive(Clone, Debug)]
pub struct ComoduleCategory {
    base: Arc<Coalgebra>,
    names: Vec<String>,
    objects: Vec<Comodule>,
    /// `hom[x][y]` is a basis of comodule maps `x → y`.
    hom: Vec<Vec<Vec<LinearMap>>>,
    arrows: Vec<(String, usize, usize, LinearMap)>,
    monoidal: Option<MonoidalFunctorData>,
}

pub fn comodule_category_of(base: &Arc<Coalgebra>, seeds: Vec<(String, Comodule)>) -> Result<ComoduleCategory> {
    let mut names = Vec::with_capacity(seeds.len());
    let mut objects = Vec::with_capacity(seeds.len());
    for (name, m) in seeds {
        if m.over().as_ref() != base.as_ref() {
            return Err(Error::shape(format!("seed {name} is a comodule over a different coalgebra")));
        }
        let r = m.check();
        if !r.is_valid() {
            return Err(Error::axioms(format!("seed {name}"), r));
        }
        if names.contains(&name) {
            return Err(Error::Category(crate::fincat::CategoryError::DuplicateName(name)));
        }
        names.push(name);
        objects.push(m);
    }
    let n = objects.len();
    let mut hom = vec![vec![Vec::new(); n]; n];
    let mut arrows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let basis = intertwiners(&objects[x], &objects[y]);
            for (k, g) in basis.iter().enumerate() {
                arrows.push((format!("{}→{}#{}", names[x], names[y], k), x, y, g.clone()));
            }
            hom[x][y] = basis;
        }
    }
    Ok(ComoduleCategory {
        base: Arc::clone(base),
        names,
        objects,
        hom,
        arrows,
        monoidal: None,
    })
}

impl ComoduleCategory {
    pub fn base(&self) -> &Arc<Coalgebra> {
        &self.base
    }

    pub fn objects(&self) -> &[Comodule] {
        &self.objects
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hom_basis(&self, x: usize, y: usize) -> &[LinearMap] {
        &self.hom[x][y]
    }

    pub fn hom_dims(&self) -> Vec<Vec<usize>> {
        self.hom.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }

    /// Coordinates of `g ∘ f` in the basis of `Hom(x, z)`, for basis elements
    /// `f` of `Hom(x, y)` and `g` of `Hom(y, z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> Option<Vec<BigRational>> {
        let gf = &self.hom[y][z][g] * &self.hom[x][y][f];
        coordinates(&self.hom[x][z], &gf, self.base.field())
    }

    /// Every basis map is a comodule morphism and every composite of basis
    /// maps lies in the corresponding hom-space.
    pub fn check(&self) -> Report {
        let mut r = Report::default();
        let n = self.objects.len();
        for (name, x, y, g) in &self.arrows {
            if !is_comodule_morphism(g, &self.objects[*x], &self.objects[*y]) {
                r.push(format!("{name} is not a comodule morphism"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..self.hom[y][z].len() {
                        for f in 0..self.hom[x][y].len() {
                            if self.compose(x, y, z, g, f).is_none() {
                                r.push(format!(
                                    "composite {}→{}→{} leaves the hom-space",
                                    self.names[x], self.names[y], self.names[z]
                                ));
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// Tensor structure inherited from a bialgebra structure on the base: the
    /// seeds must contain the trivial comodule and be closed under the tensor
    /// coaction up to comodule isomorphism.
    pub fn with_tensor_structure(mut self, b: &Bialgebra) -> Result<Self> {
        if b.coalgebra() != self.base.as_ref() {
            return Err(Error::shape("bialgebra does not extend the base coalgebra"));
        }
        let n = self.objects.len();
        let trivial = Comodule::new(SpaceObject::unit(), Arc::clone(&self.base), b.unit().clone())?;
        let (unit, xi_unit) = (0..n)
            .find_map(|x| find_isomorphism(&trivial, &self.objects[x]).map(|iso| (x, iso)))
            .ok_or_else(|| Error::MissingData("no seed is isomorphic to the trivial comodule".into()))?;
        let mut table = vec![vec![0; n]; n];
        let mut xi = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let (vx, vy) = (&self.objects[x], &self.objects[y]);
                let rho = b.tensor_coaction(vx.coaction(), vx.dim(), vy.coaction(), vy.dim());
                let product = Comodule::new(vx.carrier().tensor(vy.carrier()), Arc::clone(&self.base), rho)?;
                let (z, iso) = (0..n)
                    .find_map(|z| find_isomorphism(&product, &self.objects[z]).map(|iso| (z, iso)))
                    .ok_or_else(|| {
                        Error::MissingData(format!(
                            "{} ⊗ {} is not isomorphic to any seed",
                            self.names[x], self.names[y]
                        ))
                    })?;
                table[x][y] = z;
                xi.insert((x, y), iso);
            }
        }
        self.monoidal = Some(MonoidalFunctorData {
            unit,
            object_tensor: table,
            xi,
            xi_unit,
        });
        Ok(self)
    }
}

impl FiberFunctor for ComoduleCategory {
    fn field(&self) -> Field {
        self.base.field()
    }

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn object_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    fn value(&self, x: usize) -> &SpaceObject {
        self.objects[x].carrier()
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

    fn monoidal(&self) -> Option<&MonoidalFunctorData> {
        self.monoidal.as_ref()
    }
}

fn coordinates(basis: &[LinearMap], target: &LinearMap, field: Field) -> Option<Vec<BigRational>> {
    let len = target.rows() * target.cols();
    if basis.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let columns: Vec<Vec<BigRational>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let a = LinearMap::from_columns(field, len, &columns);
    let b = LinearMap::from_columns(field, len, &[target.entries().to_vec()]);
    solve(&a, &b).ok().flatten().map(|x| x.column(0))
}

/// Some invertible comodule map `from → to`, if one exists.
///
/// Searches the intertwiner space along `Σ_k t^(e_k) g_k` with exponents
/// `e_k = (d+1)^k`: the determinant is a nonzero polynomial in `t` whenever an
/// isomorphism exists, so over ℚ trying `t = 0 ..= deg` is conclusive. Over a
/// prime field only the `p` available values are tried.
pub fn find_isomorphism(from: &Comodule, to: &Comodule) -> Option<LinearMap> {
    if from.dim() != to.dim() {
        return None;
    }
    let d = from.dim();
    let field = from.field();
    if d == 0 {
        return Some(LinearMap::zeros(field, 0, 0));
    }
    let basis = intertwiners(from, to);
    if let Some(g) = basis.iter().find(|g| rank(g) == d) {
        return Some(g.clone());
    }
    if basis.len() < 2 {
        return None;
    }
    let exps: Vec<u32> = (0..basis.len()).map(|k| ((d + 1) as u32).pow(k as u32)).collect();
    let degree = d as u64 * *exps.last().unwrap() as u64;
    let limit = match field.prime() {
        Some(p) if matches!(field, Field::Prime(_)) => p.min(degree + 1),
        _ => degree + 1,
    };
    for t in 1..limit {
        let mut g = LinearMap::zeros(field, d, d);
        for (b, &e) in basis.iter().zip(&exps) {
            let c = field.normalize(BigRational::from_integer(BigInt::from(t).pow(e))).expect("integer");
            g = &g + &b.scale(&c);
        }
        if rank(&g) == d {
            return Some(g);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `h` is a coalgebra isomorphism.
    Iso,
    /// `h` is not surjective: the seeds do not generate the coalgebra.
    NotGenerated,
    /// `h` is surjective but not an isomorphism of coalgebras.
    NotIsomorphic,
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub category: ComoduleCategory,
    pub coend: CoendResult,
    /// `h: Q → C` with `h ∘ i_X = coact(ρ_X)`.
    pub h: LinearMap,
    pub rank: usize,
    pub coalgebra_morphism: bool,
    pub verdict: Verdict,
}

pub fn reconstruct_coalgebra(base: &Arc<Coalgebra>, seeds: Vec<(String, Comodule)>) -> Result<Reconstruction> {
    let category = comodule_category_of(base, seeds)?;
    reconstruct_from(category)
}

pub fn reconstruct_from(category: ComoduleCategory) -> Result<Reconstruction> {
    let base = Arc::clone(category.base());
    let coend = coend_of_functor(&category)?;
    let t = Transformation {
        target: base.carrier().clone(),
        components: category.objects().iter().map(|m| m.coaction().clone()).collect(),
    };
    let h = factor_through_coend(&coend, &category, &t)?;
    let rank = rank(&h);
    let coalgebra_morphism = check_coalgebra_morphism(&h, &coend.coalgebra, &base).is_valid();
    let verdict = if rank < base.dim() {
        Verdict::NotGenerated
    } else if rank == coend.dim() && coalgebra_morphism {
        Verdict::Iso
    } else {
        Verdict::NotIsomorphic
    };
    Ok(Reconstruction {
        category,
        coend,
        h,
        rank,
        coalgebra_morphism,
        verdict,
    })
}

/// For a bialgebra base with tensor-closed seeds: the product and unit built
/// on the coend, transported along `h`, against those of the base.
pub fn transported_bialgebra_matches(rec: &Reconstruction, b: &Bialgebra) -> Result<bool> {
    if rec.verdict != Verdict::Iso {
        return Ok(false);
    }
    let bq = bialgebra_on_coend(&rec.category, &rec.coend)?;
    let h_inv = inverse(&rec.h).expect("iso verdict");
    let mult = &(&rec.h * bq.mult()) * &h_inv.tensor(&h_inv)?;
    let unit = &rec.h * bq.unit();
    Ok(&mult == b.mult() && &unit == b.unit())
}

/// The comodules `(F(X), δ_F(X))` over the coend, with every generating arrow
/// verified to be a comodule morphism.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub comodules: Vec<Comodule>,
    pub report: Report,
}

pub fn recognition_factorization<F: FiberFunctor + ?Sized>(f: &F, r: &CoendResult) -> Result<Recognition> {
    let comodules: Vec<Comodule> = (0..f.object_count())
        .map(|x| r.comodule_on(x, f.value(x)))
        .collect::<Result<_>>()?;
    let mut report = Report::default();
    for (x, m) in comodules.iter().enumerate() {
        report.extend(&format!("comodule {}", f.object_name(x)), m.check());
    }
    for a in f.arrows() {
        if !is_comodule_morphism(a.map, &comodules[a.dom], &comodules[a.cod]) {
            report.push(format!("{} is not a comodule morphism over the coend", a.name));
        }
    }
    Ok(Recognition { comodules, report })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeOutcome {
    pub name: String,
    pub dim: usize,
    /// `dim` of the equalizer of `(ρ ⊗ id, id ⊗ Δ)` inside `M ⊗ Q`.
    pub equalizer_dim: usize,
    /// The equalizer is exactly the image of `ρ`.
    pub equalizer_is_image: bool,
    /// Multiplicity of each seed in a direct sum isomorphic to the probe.
    pub decomposition: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub reconstruction: Verdict,
    pub probes: Vec<ProbeOutcome>,
    /// Hom-space dimensions among seeds and probes, over the base.
    pub hom_dims_base: Vec<Vec<usize>>,
    /// The same table for the comodules pulled back to the coend.
    pub hom_dims_coend: Vec<Vec<usize>>,
    pub passed: bool,
}

/// Essential surjectivity and fullness at desk scale: every probe, pulled back
/// along `h`, is recovered by the equalizer construction and is isomorphic to
/// a direct sum of seeds, and hom dimensions agree on both sides.
pub fn equivalence_check(
    base: &Arc<Coalgebra>,
    seeds: Vec<(String, Comodule)>,
    probes: Vec<(String, Comodule)>,
) -> Result<EquivalenceVerdict> {
    for (name, p) in &probes {
        if p.over().as_ref() != base.as_ref() {
            return Err(Error::shape(format!("probe {name} is a comodule over a different coalgebra")));
        }
        let r = p.check();
        if !r.is_valid() {
            return Err(Error::axioms(format!("probe {name}"), r));
        }
    }
    let rec = reconstruct_coalgebra(base, seeds)?;
    if rec.verdict != Verdict::Iso {
        return Ok(EquivalenceVerdict {
            reconstruction: rec.verdict,
            probes: Vec::new(),
            hom_dims_base: Vec::new(),
            hom_dims_coend: Vec::new(),
            passed: false,
        });
    }
    let field = base.field();
    let q = Arc::clone(&rec.coend.coalgebra);
    let h_inv = inverse(&rec.h).expect("iso verdict");
    let pull = |m: &Comodule| -> Result<Comodule> {
        let rho = m
            .coaction()
            .tensor_then(&LinearMap::identity(field, m.dim()), &h_inv)?;
        Comodule::new(m.carrier().clone(), Arc::clone(&q), rho)
    };
    let recognized = recognition_factorization(&rec.category, &rec.coend)?;
    let seeds_q = recognized.comodules;
    let mut passed = recognized.report.is_valid();

    let mut outcomes = Vec::new();
    let mut pulled = Vec::new();
    for (name, p) in &probes {
        let pq = pull(p)?;
        passed &= pq.check().is_valid();
        let (equalizer_dim, equalizer_is_image) = equalizer(&pq);
        let decomposition = decompose(&pq, &seeds_q);
        passed &= equalizer_is_image && decomposition.is_some();
        outcomes.push(ProbeOutcome {
            name: name.clone(),
            dim: p.dim(),
            equalizer_dim,
            equalizer_is_image,
            decomposition,
        });
        pulled.push(pq);
    }

    let all_base: Vec<&Comodule> = rec.category.objects().iter().chain(probes.iter().map(|(_, p)| p)).collect();
    let all_q: Vec<&Comodule> = seeds_q.iter().chain(pulled.iter()).collect();
    let table = |objs: &[&Comodule]| -> Vec<Vec<usize>> {
        objs.iter()
            .map(|a| objs.iter().map(|b| intertwiners(a, b).len()).collect())
            .collect()
    };
    let hom_dims_base = table(&all_base);
    let hom_dims_coend = table(&all_q);
    passed &= hom_dims_base == hom_dims_coend;
    Ok(EquivalenceVerdict {
        reconstruction: rec.verdict,
        probes: outcomes,
        hom_dims_base,
        hom_dims_coend,
        passed,
    })
}

/// The equalizer of `ρ ⊗ id_C` and `id_M ⊗ Δ` on `M ⊗ C`, compared with
/// `im ρ`: returns its dimension and whether the two subspaces coincide.
fn equalizer(m: &Comodule) -> (usize, bool) {
    let c = m.over();
    let field = m.field();
    let idc = LinearMap::identity(field, c.dim());
    let idm = LinearMap::identity(field, m.dim());
    let left = m.coaction().tensor(&idc).expect("field");
    let right = idm.tensor(c.delta()).expect("field");
    let eq = kernel(&(&left - &right));
    let dim = eq.cols();
    let rho = m.coaction();
    let inside = (&(&left - &right) * rho).is_zero();
    let same = inside && rank(rho) == m.dim() && dim == m.dim();
    (dim, same)
}

/// Multiplicities `n_i` with `⊕ seed_i^{n_i} ≅ m`, searched in lexicographic
/// order over vectors with the right total dimension.
fn decompose(m: &Comodule, seeds: &[Comodule]) -> Option<Vec<usize>> {
    let dims: Vec<usize> = seeds.iter().map(Comodule::dim).collect();
    let mut found = None;
    let mut current = vec![0; seeds.len()];
    search(&dims, 0, m.dim(), &mut current, &mut |mult| {
        let parts: Vec<&Comodule> = mult
            .iter()
            .zip(seeds)
            .flat_map(|(&k, s)| std::iter::repeat_n(s, k))
            .collect();
        if parts.is_empty() {
            return m.dim() == 0;
        }
        let sum = Comodule::direct_sum(&parts).expect("same coalgebra");
        find_isomorphism(&sum, m).is_some()
    }, &mut found);
    found
}

fn search(
    dims: &[usize],
    i: usize,
    remaining: usize,
    current: &mut Vec<usize>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
    found: &mut Option<Vec<usize>>,
) {
    if found.is_some() {
        return;
    }
    if i == dims.len() {
        if remaining == 0 && accept(current) {
            *found = Some(current.clone());
        }
        return;
    }
    let max = remaining.checked_div(dims[i]).unwrap_or(0);
    for k in 0..=max {
        current[i] = k;
        search(dims, i + 1, remaining - k * dims[i], current, accept, found);
    }
    current[i] = 0;
}

/// Grouplike grading comodule `K_g`: the line with `x ↦ x ⊗ g`.
pub fn grading_line(c: &Arc<Coalgebra>, g: usize) -> Comodule {
    let field = c.field();
    let mut rho = LinearMap::zeros(field, c.dim(), 1);
    rho.set(g, 0, BigRational::one());
    Comodule::new(SpaceObject::standard(&format!("v{g}_"), 1), Arc::clone(c), rho).expect("shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::coend_object;

    const Q: Field = Field::Rational;

    fn z2() -> Arc<Coalgebra> {
        Arc::new(Coalgebra::grouplike(Q, 2, "g"))
    }

    fn lines(c: &Arc<Coalgebra>, gs: &[usize]) -> Vec<(String, Comodule)> {
        gs.iter().map(|&g| (format!("K{g}"), grading_line(c, g))).collect()
    }

    fn comatrix() -> (Arc<Coalgebra>, Comodule) {
        coend_object(Q, &SpaceObject::standard("x", 2))
    }

    #[test]
    fn trivial_coalgebra_category() {
        let c = Arc::new(Coalgebra::trivial(Q));
        let seed = Comodule::new(SpaceObject::unit(), Arc::clone(&c), LinearMap::identity(Q, 1)).unwrap();
        let cat = comodule_category_of(&c, vec![("K".into(), seed)]).unwrap();
        assert_eq!(cat.hom_dims(), vec![vec![1]]);
        assert!(cat.check().is_valid());
    }

    #[test]
    fn grading_lines_have_no_cross_maps() {
        let c = z2();
        let cat = comodule_category_of(&c, lines(&c, &[0, 1])).unwrap();
        assert_eq!(cat.hom_dims(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn standard_comatrix_comodule_is_simple() {
        let (c, x) = comatrix();
        let cat = comodule_category_of(&c, vec![("X".into(), x)]).unwrap();
        assert_eq!(cat.hom_dims(), vec![vec![1]]);
    }

    #[test]
    fn group_coalgebra_reconstructs() {
        let c = z2();
        let rec = reconstruct_coalgebra(&c, lines(&c, &[0, 1])).unwrap();
        assert_eq!(rec.verdict, Verdict::Iso);
        assert!(rec.h.is_identity());
        let rec = reconstruct_coalgebra(&c, lines(&c, &[0])).unwrap();
        assert_eq!(rec.verdict, Verdict::NotGenerated);
        assert_eq!(rec.rank, 1);
    }

    #[test]
    fn comatrix_reconstructs() {
        let (c, x) = comatrix();
        let rec = reconstruct_coalgebra(&c, vec![("X".into(), x)]).unwrap();
        assert_eq!(rec.verdict, Verdict::Iso);
        assert_eq!(rec.coend.dim(), 4);
    }

    #[test]
    fn group_bialgebra_transport() {
        let b = Bialgebra::cyclic_group(Q, 3);
        let c = Arc::new(b.coalgebra().clone());
        let cat = comodule_category_of(&c, lines(&c, &[0, 1, 2])).unwrap().with_tensor_structure(&b).unwrap();
        let rec = reconstruct_from(cat).unwrap();
        assert!(transported_bialgebra_matches(&rec, &b).unwrap());
    }

    #[test]
    fn equivalence_on_group_and_comatrix() {
        let c = z2();
        let regular = c.regular_comodule();
        let sum = Comodule::direct_sum(&[&grading_line(&c, 0), &grading_line(&c, 1)]).unwrap();
        let v = equivalence_check(&c, lines(&c, &[0, 1]), vec![("C".into(), regular), ("K0+K1".into(), sum)]).unwrap();
        assert!(v.passed, "{v:?}");
        assert_eq!(v.probes[1].decomposition, Some(vec![1, 1]));

        let (c, x) = comatrix();
        let regular = c.regular_comodule();
        let v = equivalence_check(&c, vec![("X".into(), x)], vec![("C".into(), regular)]).unwrap();
        assert!(v.passed, "{v:?}");
        assert_eq!(v.probes[0].decomposition, Some(vec![2]));
        assert_eq!(v.hom_dims_base, vec![vec![1, 2], vec![2, 4]]);
    }

    #[test]
    fn corrupted_probe_is_rejected() {
        let c = z2();
        let bad = Comodule::new(SpaceObject::unit(), Arc::clone(&c), LinearMap::from_i64(Q, &[&[1], &[1]])).unwrap();
        assert!(matches!(
            equivalence_check(&c, lines(&c, &[0, 1]), vec![("bad".into(), bad)]),
            Err(Error::AxiomFailure { .. })
        ));
    }

    #[test]
    fn isomorphism_search_needs_combinations() {
        // Hom(K0⊕K1, K1⊕K0) has basis of rank-1 maps; only sums are invertible.
        let c = z2();
        let a = Comodule::direct_sum(&[&grading_line(&c, 0), &grading_line(&c, 1)]).unwrap();
        let b = Comodule::direct_sum(&[&grading_line(&c, 1), &grading_line(&c, 0)]).unwrap();
        let g = find_isomorphism(&a, &b).unwrap();
        assert_eq!(rank(&g), 2);
        assert!(find_isomorphism(&a, &Comodule::direct_sum(&[&grading_line(&c, 0), &grading_line(&c, 0)]).unwrap()).is_none());
    }
}
