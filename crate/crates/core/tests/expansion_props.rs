mod common;

use common::{q, r};
use heron4d::expansion::{cancel, heron_signed_expansion, heron_target, multinomial_expand, signed_sum, HERON_SYMBOLS};
use heron4d::scalar::{QuadScalar, Rational};
use num_bigint::BigUint;
use proptest::prelude::*;

fn side() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=9).prop_map(|(n, d)| r(n, d))
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn signed_boxes_evaluate_to_the_product(a in side(), b in side(), c in side()) {
        let (a, b, c) = (q(&a), q(&b), q(&c));
        let direct = (&a + &b + &c) * (&a + &b - &c) * (&a - &b + &c) * (&b + &c - &a);
        let boxes = heron_signed_expansion(&a, &b, &c).unwrap();
        prop_assert_eq!(boxes.len(), 81);
        prop_assert_eq!(signed_sum(&boxes), direct.clone());
        let net = cancel(&boxes, &HERON_SYMBOLS);
        prop_assert!(net.pairs_sound());
        prop_assert_eq!(&net.net, &heron_target());
        prop_assert_eq!(net.net.eval(&[a, b, c]), direct);
    }

    #[test]
    fn irrational_sides_evaluate_too(a2 in 1i64..=30, b2 in 1i64..=30, c in side()) {
        let a = QuadScalar::sqrt_of(&r(a2, 1)).unwrap();
        let b = QuadScalar::sqrt_of(&r(b2, 1)).unwrap();
        let c = q(&c);
        let direct = (&a + &b + &c) * (&a + &b - &c) * (&a - &b + &c) * (&b + &c - &a);
        let boxes = heron_signed_expansion(&a, &b, &c).unwrap();
        prop_assert_eq!(signed_sum(&boxes), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multinomial_classes_match_the_formula(k in 1usize..=4, n in 1usize..=5) {
        let m = multinomial_expand(k, n).unwrap();
        prop_assert_eq!(m.address_count(), k.pow(n as u32));
        prop_assert_eq!(m.coefficient_sum(), BigUint::from(k).pow(n as u32));
        for class in &m.classes {
            let e = &class.exponents;
            prop_assert_eq!(e.iter().sum::<u32>() as usize, n);
            let expected = factorial(n as u32) / e.iter().map(|&x| factorial(x)).product::<BigUint>();
            prop_assert_eq!(&class.coefficient, &expected);
            prop_assert_eq!(BigUint::from(class.addresses.len()), expected);
            for addr in &class.addresses {
                prop_assert_eq!(addr.iter().map(|&i| i as usize).sum::<usize>(), class.level);
            }
        }
    }
}

#[test]
fn empty_expansions_are_rejected() {
    assert!(multinomial_expand(0, 3).is_err());
    assert!(multinomial_expand(3, 0).is_err());
}
