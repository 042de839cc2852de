mod common;

use common::{padic_abs_oracle, valuation_by_division, valuation_by_factoring};
use proptest::prelude::*;
use protoexact::scalars::{Magnitude, ValuedField};

#[test]
fn abs_of_twelve_matches_factorization() {
    let q2 = ValuedField::padic(2).unwrap();
    let twelve = q2.from_i64(12);
    assert_eq!(valuation_by_factoring(12, 2), 2);
    assert_eq!(q2.abs(&twelve), Magnitude::pow(-2));
    assert_eq!(q2.abs(&twelve), padic_abs_oracle(q2, &twelve, 2));
}

#[test]
fn trivial_fields_have_unit_abs() {
    let f5 = ValuedField::prime_field(5).unwrap();
    assert_eq!(f5.abs(&f5.from_i64(3)), Magnitude::ONE);
    assert_eq!(f5.abs(&f5.zero()), Magnitude::Zero);
    assert_eq!(
        ValuedField::Rationals.abs(&ValuedField::Rationals.from_ratio(8, 3)),
        Magnitude::ONE
    );
}

fn small_ratio() -> impl Strategy<Value = (i64, i64)> {
    (-400i64..=400, 1i64..=400)
}

fn magnitude() -> impl Strategy<Value = Magnitude> {
    prop_oneof![
        1 => Just(Magnitude::Zero),
        6 => (-50i64..=50, 1i64..=6).prop_map(|(n, d)| Magnitude::exp(n, d)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn padic_abs_is_ultrametric_and_multiplicative(p in prop::sample::select(vec![2u32, 3, 5]), a in small_ratio(), b in small_ratio()) {
        let k = ValuedField::padic(p).unwrap();
        let x = k.from_ratio(a.0, a.1);
        let y = k.from_ratio(b.0, b.1);
        prop_assert!(k.abs(&(&x + &y)) <= k.abs(&x).max(k.abs(&y)));
        prop_assert_eq!(k.abs(&(&x * &y)), k.abs(&x) * k.abs(&y));
        prop_assert_eq!(k.abs(&x), padic_abs_oracle(k, &x, p as i64));
        prop_assert_eq!(k.abs(&(&x * &y)), padic_abs_oracle(k, &(&x * &y), p as i64));
    }
}

proptest! {
    #[test]
    fn the_two_valuation_oracles_agree(n in 1i64..2_000_000, p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        prop_assert_eq!(valuation_by_factoring(n, p), valuation_by_division(&n.into(), p));
    }

    #[test]
    fn magnitude_order_is_compatible_with_products(a in magnitude(), b in magnitude(), c in magnitude()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(lo * c <= hi * c);
    }

    #[test]
    fn magnitude_text_round_trips(a in magnitude()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Magnitude>().unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Magnitude>(&json).unwrap(), a);
    }

    #[test]
    fn elements_print_and_parse_back(p in prop::sample::select(vec![2u32, 3]), a in small_ratio()) {
        for k in [ValuedField::padic(p).unwrap(), ValuedField::prime_field(p).unwrap()] {
            let x = if matches!(k, ValuedField::PrimeField(_)) { k.from_i64(a.0) } else { k.from_ratio(a.0, a.1) };
            prop_assert_eq!(k.parse_elem(&k.format_elem(&x)).unwrap(), x);
        }
    }
}
