//! Row reduction and everything derived from it: kernels, cokernels with
//! canonical sections, exact factorization and inversion.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, LinalgError, LinearMap};

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    pub reduced: LinearMap,
}

/// Gauss–Jordan elimination with the first nonzero entry as pivot.
pub fn echelon(m: &LinearMap) -> Echelon {
    let f = m.field();
    let (rows, cols) = m.shape();
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let d = f.mul(&factor, &a[r][j]);
                a[i][j] = f.sub(&a[i][j], &d);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = LinearMap::from_rows_with_shape(f, rows, cols, a).expect("shape preserved");
    Echelon {
        rank: pivots.len(),
        pivots,
        reduced,
    }
}

pub fn rank(m: &LinearMap) -> usize {
    echelon(m).rank
}

/// Inclusion of `ker m` into the domain; columns form the standard null-space
/// basis read off the free columns of the reduced form.
pub fn kernel(m: &LinearMap) -> LinearMap {
    let f = m.field();
    let n = m.cols();
    let e = echelon(m);
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let columns: Vec<Vec<BigRational>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); n];
            v[fc] = BigRational::one();
            for (row, &pc) in e.pivots.iter().enumerate() {
                v[pc] = f.neg(e.reduced.get(row, fc));
            }
            v
        })
        .collect();
    LinearMap::from_columns(f, n, &columns)
}

/// Cokernel `π: Y → Y / im m` together with a section `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub pi: LinearMap,
    pub section: LinearMap,
    /// Coordinates of Y that survive as the basis of the quotient.
    pub kept: Vec<usize>,
}

/// The quotient basis is the set of codomain coordinates that are *not*
/// pivots of the reduced echelon form of `im m` (rows of `mᵀ`); `s` sends each
/// quotient basis vector to its coordinate vector, so `π ∘ s = id` exactly.
pub fn cokernel(m: &LinearMap) -> Cokernel {
    let f = m.field();
    let n = m.rows();
    let e = echelon(&m.transpose());
    let kept: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let q = kept.len();
    let mut pi = LinearMap::zeros(f, q, n);
    for (k, &c) in kept.iter().enumerate() {
        pi.set(k, c, BigRational::one());
    }
    for (row, &pc) in e.pivots.iter().enumerate() {
        for (k, &c) in kept.iter().enumerate() {
            let x = e.reduced.get(row, c);
            if !x.is_zero() {
                pi.set(k, pc, f.neg(x));
            }
        }
    }
    let mut section = LinearMap::zeros(f, n, q);
    for (k, &c) in kept.iter().enumerate() {
        section.set(c, k, BigRational::one());
    }
    Cokernel { pi, section, kept }
}

/// Some `x` with `a ∘ x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &LinearMap, b: &LinearMap) -> Result<Option<LinearMap>, LinalgError> {
    if a.field() != b.field() {
        return Err(LinalgError::FieldMismatch {
            left: a.field(),
            right: b.field(),
        });
    }
    if a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch {
            op: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let f = a.field();
    let n = a.cols();
    let aug = LinearMap::hstack(f, a.rows(), &[a.clone(), b.clone()])?;
    let e = echelon(&aug);
    if e.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = LinearMap::zeros(f, n, b.cols());
    for (row, &pc) in e.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(pc, j, e.reduced.get(row, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// The `ψ` with `ψ ∘ through = target`.
///
/// A solution exists iff `ker(through) ⊆ ker(target)`; it is unique when
/// `through` is surjective. Inconsistent systems yield `NoSolution`.
pub fn solve_factor(target: &LinearMap, through: &LinearMap) -> Result<LinearMap, LinalgError> {
    if target.cols() != through.cols() {
        return Err(LinalgError::ShapeMismatch {
            op: "solve_factor",
            left: target.shape(),
            right: through.shape(),
        });
    }
    match solve(&through.transpose(), &target.transpose())? {
        Some(x) => Ok(x.transpose()),
        None => Err(LinalgError::NoSolution),
    }
}

pub fn inverse(m: &LinearMap) -> Option<LinearMap> {
    if m.rows() != m.cols() {
        return None;
    }
    let e = echelon(m);
    if e.rank != m.rows() {
        return None;
    }
    solve(m, &LinearMap::identity(m.field(), m.rows())).ok().flatten()
}

/// Is `v` in the column span of `basis`?
pub fn in_span(basis: &LinearMap, v: &[BigRational]) -> bool {
    let f = basis.field();
    let col = LinearMap::from_columns(f, v.len(), &[v.to_vec()]);
    matches!(solve(basis, &col), Ok(Some(_)))
}

/// Basis of the column space, as columns.
pub fn image(m: &LinearMap) -> LinearMap {
    let e = echelon(&m.transpose());
    let f: Field = m.field();
    let columns: Vec<Vec<BigRational>> = (0..e.rank).map(|r| e.reduced.row(r).to_vec()).collect();
    LinearMap::from_columns(f, m.rows(), &columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn echelon_examples() {
        let id = echelon(&LinearMap::identity(Q, 2));
        assert_eq!((id.rank, id.pivots.clone()), (2, vec![0, 1]));
        let z = echelon(&LinearMap::zeros(Q, 3, 2));
        assert_eq!((z.rank, z.pivots.len()), (0, 0));
        // Hand reduction: [[1,2],[2,4]] → [[1,2],[0,0]].
        let e = echelon(&LinearMap::from_i64(Q, &[&[1, 2], &[2, 4]]));
        assert_eq!(e.rank, 1);
        assert_eq!(e.reduced, LinearMap::from_i64(Q, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&LinearMap::identity(Q, 3)).cols(), 0);
        assert_eq!(kernel(&LinearMap::zeros(Q, 2, 2)), LinearMap::identity(Q, 2));
        let k = kernel(&LinearMap::from_i64(Q, &[&[1, 1]]));
        assert_eq!(k, LinearMap::from_i64(Q, &[&[-1], &[1]]));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&LinearMap::zeros(Q, 3, 1));
        assert!(c.pi.is_identity() && c.section.is_identity());
        let c = cokernel(&LinearMap::identity(Q, 2));
        assert_eq!(c.pi.rows(), 0);
        // span((1,1)) ⊂ K²: quotient is 1-dim and identifies (1,0) with (0,-1).
        let m = LinearMap::from_i64(Q, &[&[1], &[1]]);
        let c = cokernel(&m);
        assert_eq!(c.pi.shape(), (1, 2));
        assert_eq!(c.pi.apply(&[1.into(), 0.into()].map(BigRational::from_integer)), c.pi.apply(&[0.into(), (-1).into()].map(BigRational::from_integer)));
        assert!((&c.pi * &c.section).is_identity());
        assert!((&c.pi * &m).is_zero());
    }

    #[test]
    fn solve_factor_examples() {
        let t = LinearMap::from_i64(Q, &[&[1, 2, 0], &[0, 1, 1]]);
        assert!(solve_factor(&t, &t).unwrap().is_identity());
        let c = cokernel(&LinearMap::from_i64(Q, &[&[1], &[1], &[0]]));
        let zero = LinearMap::zeros(Q, 2, 3);
        assert!(solve_factor(&zero, &c.pi).unwrap().is_zero());
        // ker(through) ⊄ ker(target)
        let through = LinearMap::from_i64(Q, &[&[1, 0]]);
        let target = LinearMap::from_i64(Q, &[&[0, 1]]);
        assert_eq!(solve_factor(&target, &through), Err(LinalgError::NoSolution));
    }

    #[test]
    fn inverse_and_singular() {
        let m = LinearMap::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert!((&m * &inv).is_identity());
        assert!(inverse(&LinearMap::from_i64(Q, &[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn prime_field_rank_differs_from_rational() {
        let m = LinearMap::from_i64(Q, &[&[1, 1], &[1, -1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.convert(Field::Prime(2)).unwrap()), 1);
    }
}
