use num_traits::Zero;
use polygenocchi::rational::{format_rational, is_canonical, parse_rational, rat};
use polygenocchi::{Poly, PolySeries, Rational};
use proptest::prelude::*;

const ORDER: usize = 6;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..=3).prop_map(Poly::from_coeffs)
}

fn series() -> impl Strategy<Value = PolySeries> {
    prop::collection::vec(poly(), ORDER + 1).prop_map(PolySeries::from_polys)
}

fn scalar_series() -> impl Strategy<Value = PolySeries> {
    prop::collection::vec(small_rational(), ORDER + 1).prop_map(PolySeries::from_scalars)
}

fn unit_series() -> impl Strategy<Value = PolySeries> {
    (
        scalar_series(),
        small_rational().prop_filter("unit", |c| !c.is_zero()),
    )
        .prop_map(|(s, c)| {
            let mut coeffs: Vec<Rational> = (0..=ORDER).map(|n| s.coeff(n).coeff(0)).collect();
            coeffs[0] = c;
            PolySeries::from_scalars(coeffs)
        })
}

fn no_constant(s: PolySeries) -> PolySeries {
    &s - &PolySeries::from_polys(
        std::iter::once(s.coeff(0).clone())
            .chain(std::iter::repeat_n(Poly::zero(), ORDER))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &PolySeries::one(ORDER), a.clone());
        prop_assert_eq!(&a - &a, PolySeries::zero(ORDER));
    }

    #[test]
    fn division_inverts_multiplication(a in series(), u in unit_series()) {
        let q = (&a * &u).try_div(&u).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn pow_is_repeated_multiplication(a in series(), e in 0usize..5) {
        let mut expected = PolySeries::one(ORDER);
        for _ in 0..e {
            expected = &expected * &a;
        }
        prop_assert_eq!(a.pow(e), expected);
    }

    #[test]
    fn compose_respects_products(a in scalar_series(), b in scalar_series(), g in scalar_series()) {
        let g = no_constant(g);
        let lhs = (&a * &b).compose(&g).unwrap();
        let rhs = &a.compose(&g).unwrap() * &b.compose(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_with_t_is_identity(a in series()) {
        prop_assert_eq!(a.compose(&PolySeries::t(ORDER)).unwrap(), a);
    }

    #[test]
    fn coefficients_stay_canonical(a in series(), u in unit_series()) {
        let q = a.try_div(&u).unwrap();
        for c in q.coeffs() {
            prop_assert!(c.coeffs().iter().all(is_canonical));
            prop_assert!(c.coeffs().last().is_none_or(|x| !x.is_zero()));
        }
    }

    #[test]
    fn rational_strings_round_trip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}
