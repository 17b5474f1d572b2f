use proptest::prelude::*;
use supertime::grassmann::matrep::represent;
use supertime::grassmann::{with_order, Generator, SuperNumber};
use supertime::ring::{GaussRat, RatFunc};

const N: u32 = 4;

fn coeff() -> impl Strategy<Value = RatFunc> {
    (-4i64..=4, -3i64..=3, 1i64..=3).prop_map(|(re, im, d)| {
        RatFunc::constant(GaussRat::from_ratio(re, d)) + RatFunc::constant(GaussRat::i()) * RatFunc::from_int(im)
    })
}

fn supernumber() -> impl Strategy<Value = SuperNumber> {
    prop::collection::vec((0u64..(1 << N), coeff()), 0..6).prop_map(|terms| {
        terms.into_iter().fold(SuperNumber::zero(), |acc, (m, c)| {
            let gens: Vec<Generator> = (0..N)
                .filter(|p| m & (1 << p) != 0)
                .map(Generator::at_position)
                .collect();
            &acc + &SuperNumber::product_of(&gens).scale(&c)
        })
    })
}

fn homogeneous() -> impl Strategy<Value = SuperNumber> {
    (supernumber(), any::<bool>()).prop_map(|(x, odd)| {
        let mut out = SuperNumber::zero();
        for (m, c) in x.terms() {
            if (m.count_ones() % 2 == 1) == odd {
                out = &out + &SuperNumber::from_id_terms(&[(
                    (0..N as u8).filter(|p| m & (1 << p) != 0).collect(),
                    c.clone(),
                )]);
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_fock_representation(x in supernumber(), y in supernumber()) {
        let lhs = represent(&(&x * &y), N).unwrap();
        let rhs = represent(&x, N).unwrap().mul(&represent(&y, N).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn associative_and_distributive(x in supernumber(), y in supernumber(), z in supernumber()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn graded_commutativity(x in homogeneous(), y in homogeneous()) {
        let s = x.parity().unwrap().sign_with(y.parity().unwrap());
        prop_assert_eq!(&x * &y, (&y * &x).scale(&RatFunc::from_int(s)));
    }

    #[test]
    fn soul_is_nilpotent(x in supernumber()) {
        prop_assert!(x.soul().pow(N + 1).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(x in supernumber(), b in 1i64..5) {
        let x = &x.soul() + &SuperNumber::int(b);
        let y = x.inv().unwrap();
        prop_assert!((&x * &y).is_one());
        prop_assert!((&y * &x).is_one());
    }

    #[test]
    fn left_derivative_is_graded_derivation(x in homogeneous(), y in supernumber(), p in 0..N) {
        let g = Generator::at_position(p);
        let sign = RatFunc::from_int(if x.is_odd() && !x.is_zero() { -1 } else { 1 });
        let lhs = (&x * &y).left_derive(g);
        let rhs = &(&x.left_derive(g) * &y) + &(&x * &y.left_derive(g)).scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_independent_of_generator_order(x in supernumber(), y in supernumber(), perm in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<u32> = (0..N).collect();
        for i in (1..v.len()).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            v.swap(i, j);
        }
        v
    })) {
        let (xi, yi) = (x.id_terms(), y.id_terms());
        let want = (&x * &y).id_terms();
        let order: Vec<Generator> = perm.iter().map(|&p| Generator::at_position(p)).collect();
        let got = with_order(&order, || {
            let a = SuperNumber::from_id_terms(&xi);
            let b = SuperNumber::from_id_terms(&yi);
            (&a * &b).id_terms()
        });
        prop_assert_eq!(got, want);
    }
}
