use ddecide_core::{Dyadic, Interval, Precision, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-1_000_000i64..1_000_000, -12i64..4).prop_map(|(m, e)| Dyadic::new(BigInt::from(m), e))
}

/// An interval together with a point inside it.
fn interval_with_point() -> impl Strategy<Value = (Interval, Dyadic)> {
    (dyadic(), dyadic(), 0u32..=16).prop_map(|(a, b, t)| {
        let iv = Interval::spanning(a.clone(), b.clone());
        // x = lo + (hi - lo) * t / 16
        let x = iv.lo() + &(&iv.width() * &Dyadic::new(BigInt::from(t), -4));
        (iv, x)
    })
}

fn holds(iv: &Interval, q: &Rational) -> bool {
    &iv.lo().to_rational() <= q && q <= &iv.hi().to_rational()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arithmetic_contains_exact_results(
        (a, x) in interval_with_point(),
        (b, y) in interval_with_point(),
        bits in 8u32..64,
    ) {
        let p = Precision::new(bits);
        let (xq, yq) = (x.to_rational(), y.to_rational());
        prop_assert!(holds(&a.add(&b, p), &(&xq + &yq)));
        prop_assert!(holds(&a.sub(&b, p), &(&xq - &yq)));
        prop_assert!(holds(&a.mul(&b, p), &(&xq * &yq)));
        prop_assert!(holds(&a.min(&b), &xq.clone().min(yq.clone())));
        prop_assert!(holds(&a.max(&b), &xq.clone().max(yq.clone())));
        prop_assert!(holds(&a.abs(), &num_traits::Signed::abs(&xq)));
        match a.div(&b, p) {
            Ok(q) => prop_assert!(holds(&q, &(&xq / &yq))),
            Err(_) => prop_assert!(b.contains_zero()),
        }
    }

    #[test]
    fn powers_contain_exact_results((a, x) in interval_with_point(), n in 0u32..6, bits in 8u32..64) {
        let xq = x.to_rational();
        let exact = num_traits::pow(xq, n as usize);
        prop_assert!(holds(&a.powi(n, Precision::new(bits)), &exact));
    }

    #[test]
    fn operations_are_inclusion_monotone((a, x) in interval_with_point(), (b, _) in interval_with_point(), bits in 8u32..64) {
        let p = Precision::new(bits);
        let small = Interval::point(x);
        prop_assert!(small.mul(&b, p).is_subset_of(&a.mul(&b, p)));
        prop_assert!(small.add(&b, p).is_subset_of(&a.add(&b, p)));
        prop_assert!(small.powi(3, p).is_subset_of(&a.powi(3, p)));
    }

    #[test]
    fn split_covers_the_parent((a, _) in interval_with_point()) {
        let (l, r) = a.split();
        prop_assert_eq!(l.lo(), a.lo());
        prop_assert_eq!(r.hi(), a.hi());
        prop_assert_eq!(l.hi(), r.lo());
    }
}
