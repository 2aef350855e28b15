use coendforge::cohom::{coact, uncoact};
use coendforge::linalg::{cokernel, inverse, kernel, rank, solve_factor, Field, LinearMap};
use num_rational::BigRational;
use proptest::prelude::*;

const FIELDS: [Field; 3] = [Field::Rational, Field::Prime(5), Field::PAdic(3)];

fn entries(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
    prop::collection::vec(prop::collection::vec((-4i64..=4, 1i64..=3), cols), rows)
}

fn build(field: Field, rows: usize, cols: usize, e: &[Vec<(i64, i64)>]) -> LinearMap {
    let data = e
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(n, d)| field.normalize(BigRational::new(n.into(), d.into())).unwrap_or_else(|_| field.zero()))
                .collect()
        })
        .collect();
    LinearMap::from_rows_with_shape(field, rows, cols, data).unwrap()
}

fn matrix(max: usize) -> impl Strategy<Value = LinearMap> {
    (0usize..3, 1..=max, 1..=max).prop_flat_map(|(f, r, c)| {
        entries(r, c).prop_map(move |e| build(FIELDS[f], r, c, &e))
    })
}

fn pair_with_shared(max: usize) -> impl Strategy<Value = (LinearMap, LinearMap)> {
    (0usize..3, 1..=max, 1..=max, 1..=max).prop_flat_map(|(f, a, b, c)| {
        (entries(a, b), entries(b, c)).prop_map(move |(x, y)| (build(FIELDS[f], a, b, &x), build(FIELDS[f], b, c, &y)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in matrix(6)) {
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(rank(&k), k.cols());
    }

    #[test]
    fn cokernel_contract(m in matrix(8)) {
        let c = cokernel(&m);
        prop_assert!((&c.pi * &m).is_zero());
        prop_assert!((&c.pi * &c.section).is_identity());
        prop_assert_eq!(c.pi.rows(), m.rows() - rank(&m));
        prop_assert_eq!(rank(&c.pi), c.pi.rows());
        // Every map killing im m factors through π.
        let left_null = kernel(&m.transpose()).transpose();
        let through = &(&left_null * &c.section) * &c.pi;
        prop_assert_eq!(through, left_null.clone());
        prop_assert_eq!(c.kept.len(), c.pi.rows());
    }

    #[test]
    fn tensor_interchange((a, c) in pair_with_shared(3), (b, d) in pair_with_shared(3)) {
        prop_assume!(a.field() == b.field());
        let left = &a.tensor(&b).unwrap() * &c.tensor(&d).unwrap();
        let right = (&a * &c).tensor(&(&b * &d)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn solve_factor_is_unique_through_a_surjection((psi, p) in pair_with_shared(4)) {
        prop_assume!(rank(&p) == p.rows());
        let target = &psi * &p;
        let found = solve_factor(&target, &p).unwrap();
        prop_assert_eq!(found, psi);
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(5)) {
        prop_assume!(m.rows() == m.cols());
        match inverse(&m) {
            Some(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            }
            None => prop_assert!(rank(&m) < m.rows()),
        }
    }

    #[test]
    fn coact_is_the_unique_adjunct(
        (dx, dy, dz) in (1usize..=4, 1usize..=4, 1usize..=4),
        seed in entries(4, 16),
    ) {
        let field = Field::Rational;
        let flat: Vec<(i64, i64)> = seed.into_iter().flatten().collect();
        let cols = dy * dx;
        let e: Vec<Vec<(i64, i64)>> = (0..dz).map(|r| (0..cols).map(|c| flat[(r * cols + c) % flat.len()]).collect()).collect();
        let psi = build(field, dz, cols, &e);
        let phi = uncoact(&psi, dx, dy);
        prop_assert_eq!(coact(&phi, dy, dz).unwrap(), psi);
    }
}
