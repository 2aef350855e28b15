//! Exact nonarchimedean normed linear algebra over ℚ with a p-adic absolute
//! value.
//!
//! Every space carries a diagonal sup norm `‖Σ v_i e_i‖ = max_i |v_i|_p ‖e_i‖`
//! with `‖e_i‖ = p^(−w_i)` for integer weights `w_i`, so every norm that
//! appears is `0` or an integer power of `p` and is computed exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::coend::{coend_of_functor, CoendResult};
use crate::error::{Error, Result};
use crate::functor::FiberFunctor;
use crate::linalg::{Field, LinearMap, SpaceObject};

/// `v_p(x)`, or `None` for zero.
pub fn valuation(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    };
    Some(count(x.numer()) - count(x.denom()))
}

/// A norm value: `0` or `p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormValue {
    Zero,
    Exp(i64),
}

impl NormValue {
    pub const ONE: NormValue = NormValue::Exp(0);

    /// `|x|_p`.
    pub fn abs(x: &BigRational, p: u64) -> NormValue {
        match valuation(x, p) {
            None => NormValue::Zero,
            Some(v) => NormValue::Exp(-v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormValue::Zero)
    }

    pub fn exponent(&self) -> Option<i64> {
        match self {
            NormValue::Zero => None,
            NormValue::Exp(e) => Some(*e),
        }
    }

    /// Multiplies by `p^k`.
    pub fn shift(self, k: i64) -> NormValue {
        match self {
            NormValue::Zero => NormValue::Zero,
            NormValue::Exp(e) => NormValue::Exp(e + k),
        }
    }

    /// `p^e` as an exact rational.
    pub fn to_rational(&self, p: u64) -> BigRational {
        match self {
            NormValue::Zero => BigRational::zero(),
            NormValue::Exp(e) => {
                let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
                if *e >= 0 {
                    BigRational::from_integer(base)
                } else {
                    BigRational::new(BigInt::from(1), base)
                }
            }
        }
    }
}

impl Ord for NormValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NormValue::Zero, NormValue::Zero) => Ordering::Equal,
            (NormValue::Zero, _) => Ordering::Less,
            (_, NormValue::Zero) => Ordering::Greater,
            (NormValue::Exp(a), NormValue::Exp(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for NormValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for NormValue {
    type Output = NormValue;
    // p^a · p^b = p^(a+b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: NormValue) -> NormValue {
        match (self, rhs) {
            (NormValue::Exp(a), NormValue::Exp(b)) => NormValue::Exp(a + b),
            _ => NormValue::Zero,
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Zero => write!(f, "0"),
            NormValue::Exp(e) => write!(f, "p^{e}"),
        }
    }
}

impl Serialize for NormValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            NormValue::Zero => map.serialize_entry("zero", &true)?,
            NormValue::Exp(e) => map.serialize_entry("exp", e)?,
        }
        map.end()
    }
}

/// A based space with weights `w_i`, `‖e_i‖ = p^(−w_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormedSpace {
    pub space: SpaceObject,
    pub prime: u64,
    pub weights: Vec<i64>,
}

impl NormedSpace {
    /// Takes the weights stored on the space (zero when absent).
    pub fn new(space: SpaceObject, prime: u64) -> Self {
        let weights = space.weights_or_unit();
        NormedSpace { space, prime, weights }
    }

    pub fn with_weights(prime: u64, weights: Vec<i64>) -> Self {
        let space = SpaceObject::standard("e", weights.len())
            .with_weights(weights.clone())
            .expect("lengths match");
        NormedSpace { space, prime, weights }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn norm(&self, v: &[BigRational]) -> NormValue {
        v.iter()
            .zip(&self.weights)
            .map(|(x, w)| NormValue::abs(x, self.prime).shift(-w))
            .max()
            .unwrap_or(NormValue::Zero)
    }

    pub fn tensor(&self, other: &NormedSpace) -> NormedSpace {
        NormedSpace::new(
            self.space.tensor(&other.space).with_weights(tensor_weights(&self.weights, &other.weights)).expect("lengths"),
            self.prime,
        )
    }

    pub fn same_prime(&self, other: &NormedSpace) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        }
    }
}

fn tensor_weights(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

fn matrix_prime(m: &LinearMap) -> Option<u64> {
    match m.field() {
        Field::PAdic(p) => Some(p),
        _ => None,
    }
}

/// `‖m‖ = max_{j,i} |m_ji|_p · p^(−u_j + w_i)` for `m: (V, w) → (W, u)`.
pub fn operator_norm(m: &LinearMap, from: &NormedSpace, to: &NormedSpace) -> Result<NormValue> {
    from.same_prime(to)?;
    if let Some(q) = matrix_prime(m) {
        if q != from.prime {
            return Err(Error::PrimeMismatch(q, from.prime));
        }
    }
    if m.shape() != (to.dim(), from.dim()) {
        return Err(Error::shape(format!(
            "map of shape {:?} between normed spaces of dims {} → {}",
            m.shape(),
            from.dim(),
            to.dim()
        )));
    }
    let mut best = NormValue::Zero;
    for j in 0..m.rows() {
        for i in 0..m.cols() {
            let e = NormValue::abs(m.get(j, i), from.prime).shift(-to.weights[j] + from.weights[i]);
            best = best.max(e);
        }
    }
    Ok(best)
}

/// A basis of `W ⊆ V` in norm-adapted form: each vector is `1` at its own
/// pivot, `0` at every other pivot, and attains its norm at its pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub vectors: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
}

impl AdaptedBasis {
    /// Norm-greedy Gauss–Jordan: take the remaining vector of largest norm,
    /// pivot on the first coordinate where that norm is attained, and clear
    /// that coordinate from every other vector. Clearing never raises a norm,
    /// so earlier pivots keep attaining theirs.
    pub fn new(v: &NormedSpace, generators: &[Vec<BigRational>]) -> Self {
        let mut rest: Vec<Vec<BigRational>> = generators.to_vec();
        let mut vectors: Vec<Vec<BigRational>> = Vec::new();
        let mut pivots = Vec::new();
        loop {
            rest.retain(|x| x.iter().any(|c| !c.is_zero()));
            let Some((k, norm)) = rest
                .iter()
                .enumerate()
                .map(|(k, x)| (k, v.norm(x)))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            else {
                break;
            };
            let mut u = rest.swap_remove(k);
            let c = (0..u.len())
                .find(|&i| NormValue::abs(&u[i], v.prime).shift(-v.weights[i]) == norm)
                .expect("norm is attained");
            let lead = u[c].clone();
            for x in u.iter_mut() {
                *x = &*x / &lead;
            }
            for x in rest.iter_mut().chain(vectors.iter_mut()) {
                let f = x[c].clone();
                if !f.is_zero() {
                    for (xi, ui) in x.iter_mut().zip(&u) {
                        *xi = &*xi - &(&f * ui);
                    }
                }
            }
            vectors.push(u);
            pivots.push(c);
        }
        AdaptedBasis { vectors, pivots }
    }

    /// `v − Σ v[c_r] w_r`, the closest point to `v` modulo `W`.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = v.to_vec();
        for (w, &c) in self.vectors.iter().zip(&self.pivots) {
            let f = out[c].clone();
            if !f.is_zero() {
                for (o, wi) in out.iter_mut().zip(w) {
                    *o = &*o - &(&f * wi);
                }
            }
        }
        out
    }

    /// Coordinates of `V` not used as pivots: a norm-adapted basis of `V/W`.
    pub fn complement(&self, dim: usize) -> Vec<usize> {
        (0..dim).filter(|i| !self.pivots.contains(i)).collect()
    }
}

/// `inf_{w ∈ W} ‖v − w‖` together with a minimizing `w`.
pub fn quotient_norm_with_witness(
    v_space: &NormedSpace,
    w_basis: &[Vec<BigRational>],
    v: &[BigRational],
) -> (NormValue, Vec<BigRational>) {
    let basis = AdaptedBasis::new(v_space, w_basis);
    let reduced = basis.reduce(v);
    let witness: Vec<BigRational> = v.iter().zip(&reduced).map(|(a, b)| a - b).collect();
    (v_space.norm(&reduced), witness)
}

pub fn quotient_norm(v_space: &NormedSpace, w_basis: &[Vec<BigRational>], v: &[BigRational]) -> NormValue {
    quotient_norm_with_witness(v_space, w_basis, v).0
}

/// The max-normed direct sum. For finitely many summands it is also the
/// Banach product.
pub fn banach_sum(prime: u64, spaces: &[NormedSpace]) -> Result<NormedSpace> {
    for s in spaces {
        if s.prime != prime {
            return Err(Error::PrimeMismatch(s.prime, prime));
        }
    }
    let carrier = SpaceObject::direct_sum(&spaces.iter().map(|s| s.space.clone()).collect::<Vec<_>>());
    let weights: Vec<i64> = spaces.iter().flat_map(|s| s.weights.iter().copied()).collect();
    Ok(NormedSpace {
        space: carrier.with_weights(weights.clone()).expect("lengths"),
        prime,
        weights,
    })
}

pub fn banach_product(prime: u64, spaces: &[NormedSpace]) -> Result<NormedSpace> {
    banach_sum(prime, spaces)
}

/// A quotient `V/W` with its quotient norm made explicit: `to_adapted` maps
/// `V` onto the norm-adapted coordinates `kept`, isometrically on `V/W`.
#[derive(Clone, Debug)]
pub struct NormedQuotient {
    pub ambient: NormedSpace,
    pub basis: AdaptedBasis,
    pub kept: Vec<usize>,
    pub adapted: NormedSpace,
    /// `V → V/W` in adapted coordinates: reduce, then restrict to `kept`.
    pub reduction: LinearMap,
}

impl NormedQuotient {
    pub fn new(field: Field, ambient: NormedSpace, w_basis: &[Vec<BigRational>]) -> Self {
        let basis = AdaptedBasis::new(&ambient, w_basis);
        let n = ambient.dim();
        let kept = basis.complement(n);
        let weights: Vec<i64> = kept.iter().map(|&k| ambient.weights[k]).collect();
        let labels: Vec<String> = kept.iter().map(|&k| format!("[{}]", ambient.space.labels()[k])).collect();
        let adapted = NormedSpace::new(
            SpaceObject::with_labels(labels).expect("distinct").with_weights(weights).expect("lengths"),
            ambient.prime,
        );
        let mut reduction = LinearMap::zeros(field, kept.len(), n);
        for i in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::from_integer(1.into());
            let r = basis.reduce(&e);
            for (row, &k) in kept.iter().enumerate() {
                if !r[k].is_zero() {
                    reduction.set(row, i, r[k].clone());
                }
            }
        }
        NormedQuotient {
            ambient,
            basis,
            kept,
            adapted,
            reduction,
        }
    }

    pub fn class_norm(&self, v: &[BigRational]) -> NormValue {
        self.ambient.norm(&self.basis.reduce(v))
    }
}

/// The Banach colimit of a finite diagram of normed spaces.
#[derive(Clone, Debug)]
pub struct BanachColimit {
    pub sum: NormedSpace,
    pub quotient: NormedQuotient,
    /// `F(j) → Q` in the adapted basis of `Q`.
    pub cocone: Vec<LinearMap>,
    pub cocone_norms: Vec<NormValue>,
    /// Quotient norm of the class of each basis vector of `ΣF`.
    pub class_norms: Vec<NormValue>,
}

/// Norm weights declared on the functor's spaces are read as the norms.
pub fn banach_colimit<F: FiberFunctor + ?Sized>(f: &F, prime: u64) -> Result<BanachColimit> {
    let field = f.field();
    let spaces: Vec<NormedSpace> = (0..f.object_count())
        .map(|x| NormedSpace::new(f.value(x).clone(), prime))
        .collect();
    let sum = banach_sum(prime, &spaces)?;
    let dims = f.dims();
    let mut offsets = vec![0];
    for d in &dims {
        offsets.push(offsets.last().unwrap() + d);
    }
    let n = sum.dim();
    let mut relations = Vec::new();
    for a in f.arrows() {
        for i in 0..dims[a.dom] {
            let mut v = vec![BigRational::zero(); n];
            v[offsets[a.dom] + i] = BigRational::from_integer(1.into());
            for j in 0..dims[a.cod] {
                v[offsets[a.cod] + j] -= a.map.get(j, i);
            }
            relations.push(v);
        }
    }
    let quotient = NormedQuotient::new(field, sum.clone(), &relations);
    let mut cocone = Vec::new();
    let mut cocone_norms = Vec::new();
    for (x, s) in spaces.iter().enumerate() {
        let incl = LinearMap::inclusion(field, &dims, x);
        let c = &quotient.reduction * &incl;
        cocone_norms.push(operator_norm(&c, s, &quotient.adapted)?);
        cocone.push(c);
    }
    let class_norms = (0..n)
        .map(|i| {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::from_integer(1.into());
            quotient.class_norm(&e)
        })
        .collect();
    Ok(BanachColimit {
        sum,
        quotient,
        cocone,
        cocone_norms,
        class_norms,
    })
}

/// A transformation's components with their uniform bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedTransformation {
    pub components: Vec<LinearMap>,
    pub norms: Vec<NormValue>,
    pub bound: NormValue,
}

/// `sup` of the component operator norms; `from[x]` and `to[x]` are the normed
/// domain and codomain of component `x`.
pub fn check_bounded(components: &[LinearMap], from: &[NormedSpace], to: &[NormedSpace]) -> Result<BoundedTransformation> {
    if components.len() != from.len() || components.len() != to.len() {
        return Err(Error::shape("one domain and codomain per component"));
    }
    let norms: Vec<NormValue> = components
        .iter()
        .zip(from.iter().zip(to))
        .map(|(c, (a, b))| operator_norm(c, a, b))
        .collect::<Result<_>>()?;
    let bound = norms.iter().copied().max().unwrap_or(NormValue::Zero);
    Ok(BoundedTransformation {
        components: components.to_vec(),
        norms,
        bound,
    })
}

/// The coend with the quotient norm on its carrier and the operator norms of
/// its structure maps.
#[derive(Clone, Debug)]
pub struct BoundedCoend {
    pub coend: CoendResult,
    pub prime: u64,
    pub quotient: NormedQuotient,
    /// `Q → adapted coordinates`, an isometry for the quotient norm.
    pub to_adapted: LinearMap,
    /// Quotient norm of each carrier basis vector.
    pub carrier_norms: Vec<NormValue>,
    pub pi_norm: NormValue,
    pub injection_norms: Vec<NormValue>,
    pub delta_norm: NormValue,
    pub counit_norm: NormValue,
    pub delta_f: BoundedTransformation,
}

impl BoundedCoend {
    /// In finite dimension the span of the relations is already closed.
    pub const CLOSURE: &'static str = "identity (finite-dimensional)";
}

pub fn bounded_coend<F: FiberFunctor + ?Sized>(f: &F, prime: u64) -> Result<BoundedCoend> {
    let coend = coend_of_functor(f)?;
    let field = coend.field;
    let ambient = NormedSpace::new(coend.blocks.clone(), prime);
    let relations: Vec<Vec<BigRational>> = (0..coend.relations.cols()).map(|j| coend.relations.column(j)).collect();
    let quotient = NormedQuotient::new(field, ambient.clone(), &relations);
    let to_adapted = &quotient.reduction * &coend.section;
    if &to_adapted * &coend.pi != quotient.reduction {
        return Err(Error::WellDefinednessFailure("norm-adapted basis disagrees with π".into()));
    }
    let from_adapted = crate::linalg::inverse(&to_adapted)
        .ok_or_else(|| Error::WellDefinednessFailure("adapted coordinates are not a basis of Q".into()))?;
    let qn = &quotient.adapted;
    let carrier_norms = (0..coend.dim())
        .map(|k| qn.norm(&to_adapted.column(k)))
        .collect();
    let pi_norm = operator_norm(&quotient.reduction, &ambient, qn)?;

    let dims = coend.dims.clone();
    let mut injection_norms = Vec::new();
    let mut delta_f_from = Vec::new();
    let mut delta_f_to = Vec::new();
    let mut delta_f_maps = Vec::new();
    let mut offset = 0;
    for (x, &d) in dims.iter().enumerate() {
        let block_w = ambient.weights[offset..offset + d * d].to_vec();
        offset += d * d;
        let block = NormedSpace::with_weights(prime, block_w);
        injection_norms.push(operator_norm(&(&to_adapted * &coend.injections[x]), &block, qn)?);
        let fx = NormedSpace::new(f.value(x).clone(), prime);
        let adapted = coend.delta_f.components[x].tensor_then(&LinearMap::identity(field, d), &to_adapted)?;
        delta_f_to.push(fx.tensor(qn));
        delta_f_from.push(fx);
        delta_f_maps.push(adapted);
    }
    let delta_f = check_bounded(&delta_f_maps, &delta_f_from, &delta_f_to)?;
    let delta_adapted = &coend.coalgebra.delta().tensor_then(&to_adapted, &to_adapted)? * &from_adapted;
    let delta_norm = operator_norm(&delta_adapted, qn, &qn.tensor(qn))?;
    let unit = NormedSpace::with_weights(prime, vec![0]);
    let counit_norm = operator_norm(&(coend.coalgebra.counit() * &from_adapted), qn, &unit)?;
    Ok(BoundedCoend {
        coend,
        prime,
        quotient,
        to_adapted,
        carrier_norms,
        pi_norm,
        injection_norms,
        delta_norm,
        counit_norm,
        delta_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn v(xs: &[(i64, i64)]) -> Vec<BigRational> {
        xs.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&q(12, 1), 2), Some(2));
        assert_eq!(valuation(&q(3, 8), 2), Some(-3));
        assert_eq!(valuation(&q(-5, 9), 3), Some(-2));
        assert_eq!(valuation(&q(0, 1), 5), None);
    }

    #[test]
    fn norm_values_order_and_multiply() {
        assert!(NormValue::Zero < NormValue::Exp(-100));
        assert!(NormValue::Exp(-1) < NormValue::ONE);
        assert_eq!(NormValue::Exp(2) * NormValue::Exp(-5), NormValue::Exp(-3));
        assert_eq!(NormValue::Exp(2) * NormValue::Zero, NormValue::Zero);
        assert_eq!(serde_json::to_string(&NormValue::Zero).unwrap(), r#"{"zero":true}"#);
        assert_eq!(serde_json::to_string(&NormValue::Exp(-2)).unwrap(), r#"{"exp":-2}"#);
        assert_eq!(NormValue::Exp(-2).to_rational(3), q(1, 9));
    }

    #[test]
    fn operator_norm_examples() {
        let f = Field::PAdic(2);
        let unit2 = NormedSpace::with_weights(2, vec![0, 0]);
        assert_eq!(operator_norm(&LinearMap::identity(f, 2), &unit2, &unit2).unwrap(), NormValue::ONE);
        let m = LinearMap::from_rows(f, vec![v(&[(1, 1), (1, 2)]), v(&[(0, 1), (1, 1)])]).unwrap();
        assert_eq!(operator_norm(&m, &unit2, &unit2).unwrap(), NormValue::Exp(1));
        assert_eq!(operator_norm(&LinearMap::zeros(f, 2, 2), &unit2, &unit2).unwrap(), NormValue::Zero);
        let other = NormedSpace::with_weights(3, vec![0, 0]);
        assert!(matches!(operator_norm(&m, &unit2, &other), Err(Error::PrimeMismatch(..))));
    }

    #[test]
    fn quotient_norm_examples() {
        let v2 = NormedSpace::with_weights(2, vec![0, 0]);
        let x = v(&[(3, 1), (1, 4)]);
        assert_eq!(quotient_norm(&v2, &[], &x), v2.norm(&x));
        // min over t of max(|t|₂, |1 − 2t|₂) = 1
        assert_eq!(quotient_norm(&v2, &[v(&[(1, 1), (2, 1)])], &v(&[(0, 1), (1, 1)])), NormValue::ONE);
        assert_eq!(quotient_norm(&v2, &[v(&[(1, 1), (2, 1)])], &v(&[(3, 1), (6, 1)])), NormValue::Zero);
    }

    #[test]
    fn sums_of_normed_spaces() {
        let a = NormedSpace::with_weights(2, vec![0]);
        let b = NormedSpace::with_weights(2, vec![1]);
        let s = banach_sum(2, &[a.clone(), b]).unwrap();
        assert_eq!(s.norm(&v(&[(1, 1), (1, 1)])), NormValue::ONE);
        assert_eq!(banach_sum(2, &[a.clone()]).unwrap().weights, a.weights);
        assert_eq!(banach_product(2, &[]).unwrap().dim(), 0);
    }

    #[test]
    fn bounded_transformation_examples() {
        let f = Field::PAdic(2);
        let unit = NormedSpace::with_weights(2, vec![0]);
        let comps: Vec<LinearMap> = [1, 2, 4, 8]
            .iter()
            .map(|&d| LinearMap::scalar(f, q(1, d)).unwrap())
            .collect();
        let spaces = vec![unit.clone(); 4];
        let b = check_bounded(&comps, &spaces, &spaces).unwrap();
        assert_eq!(b.bound, NormValue::Exp(3));
        assert_eq!(b.bound.to_rational(2), q(8, 1));
        let ids = vec![LinearMap::identity(f, 1); 4];
        assert_eq!(check_bounded(&ids, &spaces, &spaces).unwrap().bound, NormValue::ONE);
        let zeros = vec![LinearMap::zeros(f, 1, 1); 4];
        assert_eq!(check_bounded(&zeros, &spaces, &spaces).unwrap().bound, NormValue::Zero);
    }

    fn doubling(parallel: bool) -> crate::functor::DiagramFunctor {
        use crate::fincat::FinCategory;
        let f = Field::PAdic(2);
        let arrows: Vec<(&str, &str, &str)> = if parallel {
            vec![("f", "a", "b"), ("g", "a", "b")]
        } else {
            vec![("f", "a", "b")]
        };
        let c = FinCategory::new(&["a", "b"], &arrows, &[]).unwrap();
        let two = LinearMap::from_i64(f, &[&[2]]);
        let maps = vec![two; arrows.len()];
        crate::functor::DiagramFunctor::new(f, c, vec![SpaceObject::unit(); 2], maps).unwrap()
    }

    #[test]
    fn colimit_of_doubling() {
        let c = banach_colimit(&doubling(false), 2).unwrap();
        assert_eq!(c.quotient.adapted.dim(), 1);
        // [(1,0)] = [(0,2)] has norm 1/2; [(0,1)] has norm 1.
        assert_eq!(c.class_norms, vec![NormValue::Exp(-1), NormValue::ONE]);
        assert!(c.cocone_norms.iter().all(|n| *n <= NormValue::ONE));
        let d = banach_colimit(&doubling(true), 2).unwrap();
        assert_eq!(d.class_norms, c.class_norms);
        assert_eq!(d.cocone, c.cocone);
    }

    #[test]
    fn bounded_coend_of_comatrix_has_unit_norms() {
        use crate::fincat::FinCategory;
        let f = crate::functor::DiagramFunctor::new(
            Field::PAdic(3),
            FinCategory::discrete(&["x"]),
            vec![SpaceObject::standard("x", 2)],
            vec![],
        )
        .unwrap();
        let b = bounded_coend(&f, 3).unwrap();
        assert_eq!(b.coend, coend_of_functor(&f).unwrap());
        assert!(b.carrier_norms.iter().all(|n| *n == NormValue::ONE));
        for n in [b.pi_norm, b.delta_norm, b.counit_norm, b.delta_f.bound] {
            assert_eq!(n, NormValue::ONE);
        }
    }

    #[test]
    fn bounded_coend_keeps_the_algebraic_carrier() {
        let f = doubling(false);
        let b = bounded_coend(&f, 2).unwrap();
        let plain = coend_of_functor(&f).unwrap();
        assert_eq!(b.coend.pi, plain.pi);
        assert!(b.pi_norm <= NormValue::ONE);
    }
}
