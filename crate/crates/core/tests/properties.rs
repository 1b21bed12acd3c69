use num_bigint::BigInt;
use proptest::prelude::*;

use qcore::dissection::dissect;
use qcore::series::TruncatedSeries;
use qcore::theta::{euler_f, euler_f_product, phi, phi_product, psi, psi_product, Sign, ThetaSpec};

/// Mostly small coefficients with the occasional one far past i128, so both
/// arithmetic paths get exercised.
fn coeff() -> impl Strategy<Value = BigInt> {
    prop_oneof![
        8 => (-50i64..50).prop_map(BigInt::from),
        1 => any::<i64>().prop_map(BigInt::from),
        1 => (any::<i64>(), 0u32..3).prop_map(|(v, k)| BigInt::from(v) << (100 * k as usize)),
    ]
}

fn series_of(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(coeff(), order + 1).prop_map(TruncatedSeries::new)
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    (0usize..30).prop_flat_map(series_of)
}

fn triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    (0usize..30).prop_flat_map(|n| (series_of(n), series_of(n), series_of(n)))
}

/// Constant term +-1.
fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (series(), any::<bool>()).prop_map(|(s, neg)| {
        let mut c = s.into_coeffs();
        c[0] = BigInt::from(if neg { -1 } else { 1 });
        TruncatedSeries::new(c)
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, TruncatedSeries::zero(a.order()));
        prop_assert_eq!(&a * &TruncatedSeries::one(a.order()), a.clone());
        prop_assert_eq!(&a + &(-&a), TruncatedSeries::zero(a.order()));
    }

    #[test]
    fn inverse_and_division(u in unit_series(), a in series()) {
        let n = u.order().min(a.order());
        let (u, a) = (u.truncate(n), a.truncate(n));
        let inv = u.invert().unwrap();
        prop_assert_eq!(&u * &inv, TruncatedSeries::one(n));
        let q = a.div(&u).unwrap();
        prop_assert_eq!(&q * &u, a.clone());
        prop_assert_eq!(q, &a * &inv);
    }

    #[test]
    fn non_unit_division_fails(a in series(), k in 2i64..9) {
        let mut c = a.clone().into_coeffs();
        c[0] = BigInt::from(k);
        prop_assert!(a.div(&TruncatedSeries::new(c)).is_err());
    }

    #[test]
    fn powers(u in unit_series(), j in 0u32..5, k in 0u32..5) {
        prop_assert_eq!(u.pow(j + k), &u.pow(j) * &u.pow(k));
        let neg = u.pow_signed(-(k as i32)).unwrap();
        prop_assert_eq!(&neg * &u.pow(k), TruncatedSeries::one(u.order()));
    }

    #[test]
    fn inflate_then_extract(a in series(), m in 1usize..7) {
        let spread = a.inflate(m);
        prop_assert_eq!(spread.order(), a.order() * m);
        prop_assert_eq!(spread.extract_ap(m, 0).unwrap(), a.clone());
        for r in 1..m.min(spread.order() + 1) {
            prop_assert!(spread.extract_ap(m, r).unwrap().is_zero());
        }
    }

    #[test]
    fn reassembly(a in (20usize..60).prop_flat_map(series_of), m in prop::sample::select(vec![1usize, 2, 3, 4, 5, 10, 20])) {
        let d = dissect(&a, m).unwrap();
        prop_assert_eq!(d.components().len(), m);
        prop_assert_eq!(d.reassemble(), a);
    }

    #[test]
    fn alternate_is_a_ring_involution((a, b, _) in triple()) {
        prop_assert_eq!(a.alternate().alternate(), a.clone());
        prop_assert_eq!((&a * &b).alternate(), &a.alternate() * &b.alternate());
        prop_assert_eq!((&a + &b).alternate(), &a.alternate() + &b.alternate());
    }

    #[test]
    fn shift_multiplies_by_monomial(a in series(), k in 0usize..10) {
        let mono = TruncatedSeries::monomial(BigInt::from(1), k, a.order());
        prop_assert_eq!(a.shift(k), &a * &mono);
    }

    #[test]
    fn triple_product_matches_sum(s1 in sign(), e1 in 1u32..12, s2 in sign(), e2 in 1u32..12) {
        let spec = ThetaSpec::new(s1, e1, s2, e2).unwrap();
        let order = 150;
        prop_assert_eq!(spec.triple_product().unwrap().expand(order), spec.expand(order));
    }

    #[test]
    fn theta_sum_product_forms(s in sign(), j in 1u32..8) {
        let order = 200;
        prop_assert_eq!(phi(s, j, order), phi_product(s, j, order));
        prop_assert_eq!(psi(s, j, order), psi_product(s, j, order));
        prop_assert_eq!(euler_f(j, order), euler_f_product(j, order));
    }
}
