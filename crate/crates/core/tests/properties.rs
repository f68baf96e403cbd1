use num_traits::Zero;
use proptest::prelude::*;

use helgason_super::algebra::{bracket, rat, GaussianRational as G, Parity, Rational, SuperMatrix};
use helgason_super::cfunction::{high_enough, km_nonvanishing, CFunction};
use helgason_super::chains::{apply_reflection, simple_system, swapped_simple_system, DeltaEpsChain, Kind, SimpleReflection};
use helgason_super::pair::{build_pair, theta_apply, PairParams};
use helgason_super::roots::{positive_closed_form, restricted_root_data_closed_form, AStarWeight, HWeight};

fn params() -> impl Strategy<Value = PairParams> {
    prop::sample::select(PairParams::grid(4))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn homogeneous(params: PairParams, parity: Parity) -> impl Strategy<Value = SuperMatrix> {
    let dims = params.dims();
    let n = dims.total();
    prop::collection::vec((-3i64..=3, -3i64..=3), n * n).prop_map(move |entries| {
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(k, (re, im))| {
                if dims.unit_parity(k / n, k % n) == parity {
                    G::from_ints(re, im)
                } else {
                    G::zero()
                }
            })
            .collect();
        SuperMatrix::from_entries(dims, entries).unwrap()
    })
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

type Triple = (PairParams, Parity, Parity, SuperMatrix, SuperMatrix, SuperMatrix);

fn three_homogeneous() -> impl Strategy<Value = Triple> {
    (params(), parity(), parity(), parity()).prop_flat_map(|(pp, a, b, c)| {
        (
            Just(pp),
            Just(a),
            Just(b),
            homogeneous(pp, a),
            homogeneous(pp, b),
            homogeneous(pp, c),
        )
    })
}

fn a_weight(params: PairParams) -> impl Strategy<Value = AStarWeight> {
    (
        prop::collection::vec(small_rational(), params.q),
        prop::collection::vec(small_rational(), params.s),
    )
        .prop_map(|(d, e)| AStarWeight::new(d, e))
}

fn chain_and_position() -> impl Strategy<Value = (DeltaEpsChain, usize)> {
    prop::collection::vec(prop_oneof![Just(Kind::Delta), Just(Kind::Eps)], 2..=6).prop_flat_map(|kinds| {
        let len = kinds.len();
        (Just(DeltaEpsChain::canonical(&kinds)), 0..len - 1)
    })
}

fn naive_pairing(a: &AStarWeight, b: &AStarWeight) -> Rational {
    let d: Rational = a.ldelta.iter().zip(&b.ldelta).map(|(x, y)| x * y).sum();
    let e: Rational = a.leps.iter().zip(&b.leps).map(|(x, y)| x * y).sum();
    (d - e) * rat(2, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn super_jacobi((_, a, b, x, y, z) in three_homogeneous()) {
        let lhs = bracket(&x, &bracket(&y, &z).unwrap()).unwrap();
        let first = bracket(&bracket(&x, &y).unwrap(), &z).unwrap();
        let second = bracket(&y, &bracket(&x, &z).unwrap()).unwrap();
        let rhs = if a == Parity::Odd && b == Parity::Odd { first.sub(&second) } else { first.add(&second) }.unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supertrace_kills_brackets((_, _, _, x, y, _) in three_homogeneous()) {
        prop_assert!(bracket(&x, &y).unwrap().supertrace().is_zero());
    }

    #[test]
    fn theta_is_an_involutive_automorphism((pp, _, _, x, y, _) in three_homogeneous()) {
        let pair = build_pair(pp).unwrap();
        let tx = theta_apply(&pair, &x).unwrap();
        let ty = theta_apply(&pair, &y).unwrap();
        prop_assert_eq!(theta_apply(&pair, &tx).unwrap(), x.clone());
        prop_assert_eq!(theta_apply(&pair, &bracket(&x, &y).unwrap()).unwrap(), bracket(&tx, &ty).unwrap());
        prop_assert_eq!(tx.supertrace(), x.supertrace());
    }

    #[test]
    fn multiplicities_are_symmetric(pp in params()) {
        let sigma = restricted_root_data_closed_form(&pp);
        for d in &sigma {
            let neg = sigma.iter().find(|e| e.root == d.root.neg());
            prop_assert!(neg.is_some(), "{} has no negative", d.name());
            let neg = neg.unwrap();
            prop_assert_eq!((neg.even_dim, neg.odd_dim, neg.m_double), (d.even_dim, d.odd_dim, d.m_double));
        }
    }

    #[test]
    fn pairing_matches_coordinate_sum((a, b) in params().prop_flat_map(|pp| (a_weight(pp), a_weight(pp)))) {
        prop_assert_eq!(a.pairing(&b), naive_pairing(&a, &b));
        prop_assert_eq!(a.pairing(&b), b.pairing(&a));
    }

    #[test]
    fn swap_transforms_simple_system((chain, i) in chain_and_position()) {
        let syms = chain.symbols();
        let refl = SimpleReflection::new(syms[i], syms[i + 1]);
        let swapped = chain.swap(&refl).unwrap();
        let predicted = swapped_simple_system(&simple_system(&chain).unwrap(), i);
        prop_assert_eq!(simple_system(&swapped).unwrap(), predicted);
    }

    #[test]
    fn odd_reflection_is_an_involution(
        (chain, i) in chain_and_position(),
        coeffs in prop::collection::vec(-6i64..=6, 12),
    ) {
        let syms = chain.symbols();
        prop_assume!(syms[i].kind != syms[i + 1].kind);
        let (nd, ne) = chain.shape();
        let w = HWeight::from_ints(&coeffs[..nd], &coeffs[6..6 + ne]);
        let there = SimpleReflection::new(syms[i], syms[i + 1]);
        let back = SimpleReflection::new(syms[i + 1], syms[i]);
        let once = apply_reflection(&w, &there).unwrap();
        prop_assert_eq!(apply_reflection(&once, &back).unwrap(), w);
    }

    #[test]
    fn high_enough_implies_km((pp, lam) in params().prop_filter("rank", |p| p.rank() > 0).prop_flat_map(|pp| (Just(pp), a_weight(pp)))) {
        let sigma_plus = positive_closed_form(&pp);
        if high_enough(&sigma_plus, &lam) {
            prop_assert!(km_nonvanishing(&sigma_plus, &lam));
        }
    }

    #[test]
    fn zero_flag_matches_numeric_value((pp, shifted) in params().prop_filter("rank", |p| p.rank() > 0).prop_flat_map(|pp| (Just(pp), a_weight(pp)))) {
        let c = CFunction::new(&positive_closed_form(&pp)).evaluate(&shifted);
        if let Some(v) = c.value {
            if c.zero_flag {
                prop_assert!(v.norm() < 1e-8, "{pp} {shifted}: {v}");
            } else if !c.pole_flag {
                prop_assert!(v.norm() > 0.0 && v.norm().is_finite(), "{pp} {shifted}: {v}");
            }
        }
    }
}
