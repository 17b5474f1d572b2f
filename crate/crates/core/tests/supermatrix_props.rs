use proptest::prelude::*;
use supertime::grassmann::{Generator, SuperNumber};
use supertime::ring::RatFunc;
use supertime::supermatrix::SuperMatrix;

const N: u32 = 4;

fn rat() -> impl Strategy<Value = RatFunc> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| RatFunc::from_ratio(n, d))
}

fn graded(odd: bool) -> impl Strategy<Value = SuperNumber> {
    prop::collection::vec((0u64..(1 << N), rat()), 0..4).prop_map(move |terms| {
        terms
            .into_iter()
            .filter(|(m, _)| (m.count_ones() % 2 == 1) == odd && (odd || *m != 0))
            .fold(SuperNumber::zero(), |acc, (m, c)| {
                let gens: Vec<Generator> =
                    (0..N).filter(|p| m & (1 << p) != 0).map(Generator::at_position).collect();
                &acc + &SuperNumber::product_of(&gens).scale(&c)
            })
    })
}

fn even_entry() -> impl Strategy<Value = SuperNumber> {
    (rat(), graded(false)).prop_map(|(b, s)| &SuperNumber::scalar(b) + &s)
}

fn matrix() -> impl Strategy<Value = SuperMatrix> {
    (
        prop::collection::vec(even_entry(), 5),
        prop::collection::vec(graded(true), 4),
    )
        .prop_map(|(ev, od)| {
            SuperMatrix::new([
                [ev[0].clone(), od[0].clone(), od[1].clone()],
                [od[2].clone(), ev[1].clone(), ev[2].clone()],
                [od[3].clone(), ev[3].clone(), ev[4].clone()],
            ])
            .unwrap()
        })
        .prop_filter("invertible blocks", |m| {
            !m.at(0, 0).body().is_zero() && !m.det_d().body().is_zero()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn sdet_is_multiplicative(m in matrix(), n in matrix()) {
        let mn = m.smul(&n);
        prop_assume!(!mn.det_d().body().is_zero());
        prop_assert_eq!(mn.sdet().unwrap(), &m.sdet().unwrap() * &n.sdet().unwrap());
    }

    #[test]
    fn sinv_is_two_sided(m in matrix()) {
        let Ok(inv) = m.sinv() else {
            // sinv also needs the Schur complements invertible
            return Ok(());
        };
        prop_assert!(m.smul(&inv).is_identity());
        prop_assert!(inv.smul(&m).is_identity());
        prop_assert_eq!(inv.sdet().unwrap(), m.sdet().unwrap().inv().unwrap());
    }
}
