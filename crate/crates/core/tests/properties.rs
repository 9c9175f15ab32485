//! Property tests over the public API.

#![allow(clippy::manual_is_multiple_of)]

use std::sync::OnceLock;

use hermlcd::constructions::{construct_g1, construct_g2, construct_hop};
use hermlcd::cyclic::{DistanceMethod, DEFAULT_BUDGET};
use hermlcd::gf::Elem;
use hermlcd::linalg::hermitian_inner;
use hermlcd::poly::factor_split;
use hermlcd::{BigFieldContext, CyclicCode, OdsmInstance, Poly};
use proptest::prelude::*;

fn hop2() -> &'static OdsmInstance {
    static INST: OnceLock<OdsmInstance> = OnceLock::new();
    INST.get_or_init(|| OdsmInstance::setup(construct_hop(2).unwrap().code).unwrap())
}

/// A cyclic code over GF(4) or GF(9) from a random subset of cosets.
fn arb_code() -> impl Strategy<Value = CyclicCode> {
    let lengths = prop::sample::select(vec![(2u64, 5usize), (2, 7), (2, 9), (2, 13), (2, 15), (2, 17), (3, 5), (3, 8), (3, 10)]);
    (lengths, any::<u64>()).prop_map(|((q, n), mask)| {
        let ctx = BigFieldContext::for_q(q, n).unwrap();
        let leaders: Vec<i128> = ctx
            .table()
            .leaders()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, &s)| s as i128)
            .collect();
        let set = ctx.table().union_of(leaders);
        CyclicCode::from_defining_set(ctx, &set).unwrap()
    })
}

fn vector(len: usize, q: u64) -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec(0..q as Elem, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn mask_round_trip_33_22(x in vector(22, 4), y in vector(11, 4)) {
        let inst = hop2();
        let z = inst.mask(&x, &y).unwrap();
        prop_assert_eq!(inst.recover_x(&z).unwrap(), x);
        prop_assert_eq!(inst.recover_y(&z).unwrap(), y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_dimension_and_orthogonality(code in arb_code()) {
        let dual = code.hermitian_dual().unwrap();
        prop_assert_eq!(code.k() + dual.k(), code.n());
        if code.is_degenerate() {
            return Ok(());
        }
        let (g, h) = (code.generator_matrix().unwrap(), dual.generator_matrix().unwrap());
        for u in g.to_rows() {
            for v in h.to_rows() {
                prop_assert_eq!(hermitian_inner(code.field(), &u, &v).unwrap(), 0);
            }
        }
        prop_assert!(g.mul(&code.check_matrix().unwrap().conj_transpose().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn trivial_intersection_iff_hlcd(code in arb_code()) {
        prop_assume!(!code.is_degenerate());
        let g = code.generator_matrix().unwrap();
        let h = code.hermitian_dual().unwrap().generator_matrix().unwrap();
        let full = g.vstack(&h).unwrap().rank() == code.n();
        prop_assert_eq!(full, code.is_hermitian_lcd().unwrap());
    }

    #[test]
    fn distance_at_least_bch_bound(code in arb_code()) {
        prop_assume!(!code.is_degenerate());
        let r = code.min_distance(DistanceMethod::Auto, DEFAULT_BUDGET).unwrap();
        if let Some(d) = r.exact {
            prop_assert!(d >= code.bch_lower_bound());
        }
        prop_assert!(r.lower >= code.bch_lower_bound());
    }

    #[test]
    fn codewords_are_closed_under_shift(code in arb_code(), seed in any::<u64>()) {
        prop_assume!(!code.is_degenerate());
        let g = code.generator_matrix().unwrap();
        let q = code.field().size() as Elem;
        let msg: Vec<Elem> = (0..code.k()).map(|i| ((seed >> (i % 60)) as Elem ^ i as Elem) % q).collect();
        let mut word = g.left_mul_vec(&msg).unwrap();
        prop_assert!(code.contains(&word).unwrap());
        word.rotate_right(1);
        prop_assert!(code.contains(&word).unwrap());
    }

    #[test]
    fn minimal_polynomial_constant_on_cosets(n in prop::sample::select(vec![9usize, 15, 21, 33, 35, 51]), s in 0usize..1000) {
        let ctx = BigFieldContext::for_q(2, n).unwrap();
        let s = s % n;
        let m1 = ctx.minimal_polynomial(s).unwrap();
        let m2 = ctx.minimal_polynomial(s * 4 % n).unwrap();
        prop_assert_eq!(&m1, &m2);
        prop_assert_eq!(m1.degree(), Some(ctx.table().coset_size(s)));
    }

    #[test]
    fn factor_split_reassembles(q in 2u64..=3, n in 1usize..40) {
        prop_assume!(n as u64 % q != 0);
        let Ok(ctx) = BigFieldContext::for_q(q, n) else { return Ok(()) };
        let split = factor_split(&ctx).unwrap();
        let field = ctx.small().clone();
        prop_assert_eq!(split.product(field.clone()), Poly::x_n_minus_1(field, n));
        for (a, b) in &split.paired {
            prop_assert_eq!(a.poly.conj_reciprocal().unwrap(), b.poly.clone());
            prop_assert!(a.leader < b.leader);
        }
        for f in &split.self_conjugate {
            prop_assert_eq!(f.poly.conj_reciprocal().unwrap(), f.poly.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn g1_family_invariants(pick in 0usize..4, delta in 2usize..82, e_pick in 0usize..3) {
        let (q, m) = [(2u64, 2u32), (2, 3), (3, 2), (3, 3)][pick];
        let es: Vec<u64> = (1..=q + 1).filter(|e| (q + 1) % e == 0).collect();
        let e = es[e_pick % es.len()];
        let cap = (q * q).pow(m.div_ceil(2)) as usize + 1;
        let delta = 2 + (delta - 2) % (cap - 1);
        let r = construct_g1(q, m, delta, e).unwrap();
        prop_assert_eq!(r.k_formula, Some(r.k_actual as i64));
        prop_assert!(r.d_bound_formula <= r.d_bound_actual);
        prop_assert!(r.hlcd);
    }

    #[test]
    fn g2_family_invariants(m in prop::sample::select(vec![4u32, 5, 6]), delta in 2usize..=64) {
        let delta = 2 + (delta - 2) % ((1 << m) - 1);
        let r = construct_g2(m, delta).unwrap();
        prop_assert_eq!(r.k_formula, Some(r.k_actual as i64));
        prop_assert!(r.d_bound_formula <= r.d_bound_actual);
        prop_assert!(r.hlcd);
    }

    #[test]
    fn sampled_sweeps_are_reproducible(seed in any::<u64>()) {
        let inst = hop2();
        let a = inst.detection_sweep(3..=4, 6, 0, 2000, seed).unwrap();
        let b = inst.detection_sweep(3..=4, 6, 0, 2000, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.sampled && a.undetected() == 0);
    }
}

#[test]
fn shared_instance_is_hlcd() {
    let inst = hop2();
    assert!(inst.code().is_hermitian_lcd().unwrap());
    assert_eq!((inst.n(), inst.k()), (33, 22));
}
