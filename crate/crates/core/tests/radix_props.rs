use dtensor::radix::{RadicalNumber, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

fn radical() -> impl Strategy<Value = RadicalNumber> {
    prop::collection::vec((rational(), 1u64..=30), 0..4)
        .prop_map(|terms| terms.into_iter().map(|(c, d)| RadicalNumber::term(c, d)).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(x in radical(), y in radical(), z in radical()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &RadicalNumber::one(), x.clone());
    }

    #[test]
    fn approx_is_a_homomorphism(x in radical(), y in radical()) {
        let (a, b) = (x.approx(), y.approx());
        prop_assert!(((&x * &x).approx() - a * a).abs() <= 1e-12 * (1.0 + a * a));
        prop_assert!(((&x + &y).approx() - (a + b)).abs() <= 1e-12 * (1.0 + a.abs() + b.abs()));
    }

    #[test]
    fn sqrt_rational_squares_back(p in 0i64..=5000, q in 1i64..=5000) {
        let r = Rational::new(p, q);
        let s = RadicalNumber::sqrt_rational(&r).unwrap();
        prop_assert!(s.num_terms() <= 1);
        prop_assert_eq!(&s * &s, RadicalNumber::from(r));
        prop_assert!(s.signum() >= 0);
    }

    #[test]
    fn canonical_text_round_trips(x in radical()) {
        let text = x.to_string();
        let back: RadicalNumber = text.parse().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<RadicalNumber>(&json).unwrap(), x);
    }

    #[test]
    fn inverse_and_sign(x in radical()) {
        prop_assume!(!x.is_zero());
        let inv = x.recip().unwrap();
        prop_assert!((&x * &inv).is_one());
        let f = x.approx();
        prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
    }
}

#[test]
fn radicands_stay_squarefree() {
    for a in 1..=60u64 {
        for b in 1..=60u64 {
            let p = &RadicalNumber::term(Rational::ONE, a) * &RadicalNumber::term(Rational::ONE, b);
            for (d, _) in p.terms() {
                assert!(dtensor::radix::is_squarefree(d), "√{a}·√{b} left radicand {d}");
            }
        }
    }
}
