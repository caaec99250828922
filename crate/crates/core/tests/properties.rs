use proptest::prelude::*;

use rankcode_core::construct::gabidulin;
use rankcode_core::duality::{delsarte_dual, opposite_exact};
use rankcode_core::gf::make_field;
use rankcode_core::mat::{MatFq, RowSpace, Side};
use rankcode_core::{FieldCtx, LinPoly, QExtension, RankCode};

const FIELDS: [(u32, u32); 5] = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)];

fn field() -> impl Strategy<Value = FieldCtx> {
    (0..FIELDS.len()).prop_map(|i| make_field(FIELDS[i].0, FIELDS[i].1, None).unwrap())
}

fn matrix(f: FieldCtx, rows: usize, cols: usize) -> impl Strategy<Value = MatFq> {
    let q = f.order();
    proptest::collection::vec(0..q, rows * cols).prop_map(move |d| MatFq::from_codes(&f, rows, cols, d).unwrap())
}

fn field_and_matrix() -> impl Strategy<Value = MatFq> {
    (field(), 1usize..5, 1usize..5).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(idx in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = make_field(FIELDS[idx].0, FIELDS[idx].1, None).unwrap();
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
    }

    #[test]
    fn rank_and_nullity(m in field_and_matrix()) {
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        prop_assert_eq!(m.nullspace(Side::Left).rows() + r, m.rows());
        prop_assert_eq!(m.nullspace(Side::Right).cols() + r, m.cols());
        let left = m.nullspace(Side::Left);
        if left.rows() > 0 {
            prop_assert!(left.mul(&m).unwrap().is_zero());
        }
    }

    #[test]
    fn expand_is_a_ring_map(
        (a, b, c) in (field(), 1usize..4, 1usize..4, 1usize..4)
            .prop_flat_map(|(f, r, k, c)| (matrix(f.clone(), r, k), matrix(f.clone(), r, k), matrix(f, k, c)))
    ) {
        let e = a.field().degree() as usize;
        let sum = a.add(&b).unwrap().expand_prime_poly();
        prop_assert_eq!(sum, a.expand_prime_poly().add(&b.expand_prime_poly()).unwrap());
        let prod = a.mul(&c).unwrap().expand_prime_poly();
        prop_assert_eq!(prod, a.expand_prime_poly().mul(&c.expand_prime_poly()).unwrap());
        prop_assert_eq!(a.expand_prime_poly().rank(), e * a.rank());
    }

    #[test]
    fn subspace_dimension_formula(
        (x, y) in (field(), 1usize..4, 1usize..4, 2usize..6)
            .prop_flat_map(|(f, r, s, n)| (matrix(f.clone(), r, n), matrix(f, s, n)))
    ) {
        let f = x.field();
        let n = x.cols();
        let sx = RowSpace::from_vectors(f, n, (0..x.rows()).map(|i| x.row(i)));
        let sy = RowSpace::from_vectors(f, n, (0..y.rows()).map(|i| y.row(i)));
        let meet = sx.intersection(&sy);
        prop_assert_eq!(meet.dim() + sx.sum(&sy).dim(), sx.dim() + sy.dim());
        prop_assert!(meet.is_subspace_of(&sx) && meet.is_subspace_of(&sy));
    }

    #[test]
    fn delsarte_dual_dimension_and_involution(
        mats in (field(), 1usize..4, 1usize..4)
            .prop_flat_map(|(f, m, n)| proptest::collection::vec(matrix(f, m, n), 0..5))
    ) {
        prop_assume!(!mats.is_empty());
        let (f, (m, n)) = (mats[0].field().clone(), mats[0].shape());
        let c = RankCode::from_span(&f, m, n, mats).unwrap();
        let d = delsarte_dual(&c).unwrap();
        prop_assert_eq!(c.dim().unwrap() + d.dim().unwrap(), m * n);
        prop_assert!(delsarte_dual(&d).unwrap().same_code(&c));
    }

    #[test]
    fn composition_matches_matrix_product(
        a in proptest::collection::vec(0u32..16, 4),
        b in proptest::collection::vec(0u32..16, 4),
    ) {
        let ext = QExtension::over_prime(2, 4, None).unwrap();
        let la = LinPoly::new(&ext, &a).unwrap();
        let lb = LinPoly::new(&ext, &b).unwrap();
        let comp = la.compose(&lb).unwrap();
        for x in 0..16 {
            prop_assert_eq!(comp.eval(x), la.eval(lb.eval(x)));
        }
        prop_assert_eq!(comp.to_matrix(), lb.to_matrix().mul(&la.to_matrix()).unwrap());
    }
}

#[test]
fn opposite_round_trip_on_gabidulin_codes() {
    for (p, n, k) in [(2, 3, 1), (2, 4, 2), (3, 3, 2)] {
        let ext = QExtension::over_prime(p, n, None).unwrap();
        let g = gabidulin(&ext, k, 1).unwrap().into_code();
        let back = opposite_exact(&opposite_exact(&g).unwrap()).unwrap();
        assert_eq!(back.basis(), g.basis());
    }
}
