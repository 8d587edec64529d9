use num_bigint::BigInt;
use proptest::prelude::*;

use vmcat::bracket::{bracket_master, bracket_recursive, skew_defect};
use vmcat::k0sigma::{nabla, phi_sigma, phi_sigma_inv, pj_ind, product};
use vmcat::weyl::{weyl_apply, weyl_mul};
use vmcat::zhu::{q_map, zhu_h};
use vmcat::{AlgebraCtx, DiffPoly, K0SigmaElem, LambdaPoly, Monomial, Partition, WeylElem, XPoly};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..6, 0..6).prop_map(|v| Partition::new(v).unwrap())
}

fn diffpoly(max_order: u32, max_factors: usize) -> impl Strategy<Value = DiffPoly> {
    let term = (prop::collection::vec(0..=max_order, 0..=max_factors), -6i64..=6);
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        DiffPoly::from_terms(terms.into_iter().map(|(o, c)| (Monomial::new(o), BigInt::from(c))))
    })
}

fn weyl() -> impl Strategy<Value = WeylElem> {
    prop::collection::vec((0u32..5, 0u32..5, -5i64..=5), 0..4).prop_map(|terms| {
        let mut w = WeylElem::zero();
        for (a, b, c) in terms {
            w.add_term(a, b, BigInt::from(c));
        }
        w
    })
}

fn charge() -> impl Strategy<Value = AlgebraCtx> {
    (-3i64..=3).prop_map(AlgebraCtx::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_is_involution(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn union_is_commutative_and_additive(p in partition(), q in partition()) {
        prop_assert_eq!(p.union(&q), q.union(&p));
        prop_assert_eq!(p.union(&q).size(), p.size() + q.size());
    }

    #[test]
    fn insert_row_is_union_with_row(p in partition(), j in 1u32..8) {
        let row = Partition::new(vec![j]).unwrap();
        prop_assert_eq!(p.insert_row(j).unwrap(), p.union(&row));
    }

    #[test]
    fn partition_text_round_trips(p in partition()) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn derivation_is_leibniz(f in diffpoly(4, 3), g in diffpoly(4, 3)) {
        prop_assert_eq!(f.mul(&g).derive(), &f.derive().mul(&g) + &f.mul(&g.derive()));
    }

    #[test]
    fn product_is_commutative_and_associative(f in diffpoly(3, 2), g in diffpoly(3, 2), h in diffpoly(3, 2)) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn diffpoly_text_round_trips(f in diffpoly(6, 4)) {
        prop_assert_eq!(f.to_string().parse::<DiffPoly>().unwrap(), f);
    }

    #[test]
    fn master_matches_recursive(f in diffpoly(3, 2), g in diffpoly(3, 2), ctx in charge()) {
        prop_assert_eq!(bracket_master(&f, &g, &ctx), bracket_recursive(&f, &g, &ctx));
    }

    #[test]
    fn bracket_is_skew(f in diffpoly(3, 2), g in diffpoly(3, 2), ctx in charge()) {
        prop_assert!(skew_defect(&f, &g, &ctx).is_zero());
    }

    #[test]
    fn bracket_is_sesquilinear(f in diffpoly(3, 2), g in diffpoly(3, 2), ctx in charge()) {
        let base = bracket_master(&f, &g, &ctx);
        prop_assert_eq!(bracket_master(&f.derive(), &g, &ctx), base.mul_lambda_pow(1).neg());
        prop_assert_eq!(bracket_master(&f, &g.derive(), &ctx), base.shift_apply(1, false));
    }

    #[test]
    fn lambda_text_round_trips(f in diffpoly(2, 2), g in diffpoly(2, 2), ctx in charge()) {
        let br = bracket_master(&f, &g, &ctx);
        prop_assert_eq!(br.to_string().parse::<LambdaPoly>().unwrap(), br);
    }

    #[test]
    fn phi_sigma_is_a_ring_map(p in partition(), q in partition()) {
        let (a, b) = (K0SigmaElem::basis(p), K0SigmaElem::basis(q));
        prop_assert_eq!(phi_sigma(&product(&a, &b)), phi_sigma(&a).mul(&phi_sigma(&b)));
        prop_assert_eq!(phi_sigma_inv(&phi_sigma(&a)), a);
    }

    #[test]
    fn nabla_tracks_derivation(p in partition(), j in 1u32..6) {
        let e = K0SigmaElem::basis(p);
        prop_assert_eq!(phi_sigma(&nabla(&e)), phi_sigma(&e).derive());
        prop_assert_eq!(
            nabla(&pj_ind(&e, j).unwrap()),
            pj_ind(&e, j + 1).unwrap().add(&pj_ind(&nabla(&e), j).unwrap())
        );
    }

    #[test]
    fn weyl_product_is_associative(u in weyl(), v in weyl(), w in weyl()) {
        prop_assert_eq!(weyl_mul(&weyl_mul(&u, &v), &w), weyl_mul(&u, &weyl_mul(&v, &w)));
    }

    #[test]
    fn weyl_product_is_composition(u in weyl(), v in weyl(), coeffs in prop::collection::vec(-4i64..=4, 0..6)) {
        let p = XPoly::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| (k as u32, BigInt::from(c))));
        prop_assert_eq!(weyl_apply(&weyl_mul(&u, &v), &p), weyl_apply(&u, &weyl_apply(&v, &p)));
    }

    #[test]
    fn weyl_text_round_trips(u in weyl()) {
        prop_assert_eq!(u.to_string().parse::<WeylElem>().unwrap(), u);
    }

    #[test]
    fn finitizations_are_ring_maps(f in diffpoly(3, 3), g in diffpoly(3, 3)) {
        prop_assert_eq!(zhu_h(&f.mul(&g)), zhu_h(&f).mul(&zhu_h(&g)));
        prop_assert_eq!(q_map(&f.mul(&g)), q_map(&f).mul(&q_map(&g)));
        prop_assert!(zhu_h(&f.derive()).is_zero());
        prop_assert_eq!(q_map(&f.derive()), q_map(&f).derivative());
    }
}
