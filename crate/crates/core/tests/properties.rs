use proptest::prelude::*;

use qwn::coeff::gcd::{gcd, primitive_part};
use qwn::coeff::{parse_ratfunc, Int, Mono, Poly, RatFunc, Series};
use qwn::currents::Involution;
use qwn::fock::{basis_at_level, fock_dimension};
use qwn::symfun::{dominance_leq, partitions, to_monomial, to_power, Basis, Partition, SymFunc};

fn poly(max_exp: i32, laurent: bool) -> impl Strategy<Value = Poly> {
    let lo = if laurent { -max_exp } else { 0 };
    prop::collection::vec(((lo..=max_exp, lo..=max_exp, lo..=max_exp), -4i64..=4), 1..4).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|((a, b, c), k)| (Mono::new([a, b, c]), Int::from(k))).collect())
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(2, true), poly(2, false)).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |x| !x.is_zero())
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=5, 0..5).prop_map(Partition::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_additive_group(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ratfunc_multiplicative_group(a in ratfunc(), b in nonzero_ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&c), c.mul(&a));
        prop_assert!(b.mul(&b.inv().unwrap()).is_one());
    }

    #[test]
    fn ratfunc_distributive(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn batched_sums_match_pairwise(terms in prop::collection::vec((ratfunc(), ratfunc()), 0..6)) {
        let batched = RatFunc::sum_products(terms.iter().map(|(a, b)| (a, b)));
        let pairwise = terms.iter().fold(RatFunc::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
        prop_assert_eq!(batched, pairwise);
    }

    #[test]
    fn canonical_text_round_trips(a in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&a.to_canonical_string()).unwrap(), a);
    }

    #[test]
    fn gcd_divides_and_scales(a in poly(3, false), b in poly(3, false), c in poly(2, false)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = gcd(&a, &b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        let gc = gcd(&a.mul(&c), &b.mul(&c));
        let (x, y) = (primitive_part(&gc), primitive_part(&g.mul(&c)));
        prop_assert!(x == y || x == y.neg(), "gcd(ac,bc) = {x:?}, c gcd(a,b) = {y:?}");
    }

    #[test]
    fn series_exp_log_inverse(c1 in ratfunc(), c2 in ratfunc()) {
        let f = Series::new(vec![RatFunc::zero(), c1, c2], 4);
        let back = f.exp().unwrap().log().unwrap();
        prop_assert!(back.sub(&f).is_zero());
        let g = Series::one().add(&f);
        let r = g.sqrt().unwrap();
        prop_assert!(r.mul(&r).sub(&g).is_zero());
    }

    #[test]
    fn conjugation_is_an_order_reversing_involution(a in partition(), b in partition()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.conjugate().weight(), a.weight());
        if a.weight() == b.weight() {
            let ab = dominance_leq(&a, &b).unwrap();
            let ba = dominance_leq(&b.conjugate(), &a.conjugate()).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn power_monomial_round_trip(n in 1usize..=5, coeffs in prop::collection::vec(-3i64..=3, 7)) {
        let f = SymFunc::from_terms(
            Basis::Power,
            partitions(n).into_iter().zip(coeffs).map(|(l, c)| (l, RatFunc::from_int(c))),
        );
        prop_assert!(to_power(&to_monomial(&f)) == f);
    }

    #[test]
    fn involutions_square_to_identity(a in ratfunc()) {
        for w in [Involution::Theta, Involution::Omega, Involution::OmegaPrime] {
            prop_assert_eq!(w.on_scalar(&w.on_scalar(&a)), a.clone());
        }
    }

    #[test]
    fn fock_levels_count_colored_partitions(rank in 2usize..=4, level in 0usize..=5) {
        let basis = basis_at_level(rank, level);
        prop_assert_eq!(basis.len(), fock_dimension(rank, level));
        prop_assert!(basis.iter().all(|m| m.level() == level));
        if rank == 2 {
            prop_assert_eq!(basis.len(), partitions(level).len());
        }
    }
}
