//! m-dissections and the four 5-dissection formulas for `f_1`, `1/f_1`,
//! `phi(q)` and `psi(q)`.
//!
//! The `*_sides` functions build both sides of a formula independently; the
//! `verify_*` functions compare them.

use std::time::Instant;

use num_bigint::BigInt;

use crate::report::{compare_series, VerificationReport};
use crate::series::{SeriesError, TruncatedSeries};
use crate::theta::{euler_f, phi, psi, rr_quotient, Sign, ThetaSpec};

/// Component `r` holds the coefficients of `q^{mn+r}` re-indexed to `q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dissection {
    modulus: usize,
    source_order: usize,
    components: Vec<TruncatedSeries>,
}

impl Dissection {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn component(&self, r: usize) -> &TruncatedSeries {
        &self.components[r]
    }

    /// `sum_r q^r * component_r(q^m)`, at the source order.
    pub fn reassemble(&self) -> TruncatedSeries {
        let mut coeffs = vec![BigInt::default(); self.source_order + 1];
        for (r, comp) in self.components.iter().enumerate() {
            for (n, c) in comp.coeffs().iter().enumerate() {
                coeffs[self.modulus * n + r] = c.clone();
            }
        }
        TruncatedSeries::new(coeffs)
    }
}

/// Splits `a` by exponent residue mod `m`. Every residue class needs at least
/// one known coefficient, so `a` must have order at least `m - 1`.
pub fn dissect(a: &TruncatedSeries, m: usize) -> Result<Dissection, SeriesError> {
    assert!(m >= 1, "dissection modulus must be positive");
    let components = (0..m).map(|r| a.extract_ap(m, r)).collect::<Result<_, _>>()?;
    Ok(Dissection { modulus: m, source_order: a.order(), components })
}

fn monomial(c: i64, exp: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(BigInt::from(c), exp, order)
}

/// `f_1 = f_25 (1/R(q^5) - q - q^2 R(q^5))`.
///
/// The `f_25` factor is required: without it the two sides first differ at
/// `q^25` (see `f1_formula_without_f25_fails_at_25`).
pub fn f1_5dissection_sides(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let lhs = euler_f(1, order);
    (lhs, &euler_f(25, order) * &f1_5dissection_bracket(order))
}

/// `1/R(q^5) - q - q^2 R(q^5)`.
pub fn f1_5dissection_bracket(order: usize) -> TruncatedSeries {
    let r5 = rr_quotient(5, order);
    &(&r5.invert().expect("unit") - &monomial(1, 1, order)) - &r5.shift(2)
}

/// The nine-term 5-dissection of `1/f_1`, with the powers of `R(q^5)` built
/// incrementally from `R` and `1/R`.
pub fn inv_f1_5dissection_sides(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let lhs = euler_f(1, order).invert().expect("unit");
    let r = rr_quotient(5, order);
    let r_inv = r.invert().expect("unit");
    let mut pos = vec![TruncatedSeries::one(order)];
    let mut neg = vec![TruncatedSeries::one(order)];
    for k in 1..=4 {
        pos.push(pos[k - 1].mul(&r));
        neg.push(neg[k - 1].mul(&r_inv));
    }
    // (coefficient, power of q, power of R)
    let terms: [(i64, usize, i32); 9] =
        [(1, 0, -4), (1, 1, -3), (2, 2, -2), (3, 3, -1), (5, 4, 0), (-3, 5, 1), (2, 6, 2), (-1, 7, 3), (1, 8, 4)];
    let mut bracket = TruncatedSeries::zero(order);
    for (c, e, k) in terms {
        let power = if k < 0 { &neg[(-k) as usize] } else { &pos[k as usize] };
        bracket = &bracket + &power.shift(e).scale_i64(c);
    }
    let prefactor = euler_f(25, order).pow(5).div(&euler_f(5, order).pow(6)).expect("unit");
    (lhs, &prefactor * &bracket)
}

fn theta(e1: u32, e2: u32, order: usize) -> TruncatedSeries {
    ThetaSpec::new(Sign::Plus, e1, Sign::Plus, e2).expect("valid").expand(order)
}

/// `phi(q) = phi(q^25) + 2q f(q^15, q^35) + 2q^4 f(q^5, q^45)`.
pub fn phi_5dissection_sides(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let lhs = phi(Sign::Plus, 1, order);
    let rhs = &(&phi(Sign::Plus, 25, order) + &theta(15, 35, order).shift(1).scale_i64(2))
        + &theta(5, 45, order).shift(4).scale_i64(2);
    (lhs, rhs)
}

/// `psi(q) = f(q^10, q^15) + q f(q^5, q^20) + q^3 psi(q^25)`.
pub fn psi_5dissection_sides(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let lhs = psi(Sign::Plus, 1, order);
    let rhs = &(&theta(10, 15, order) + &theta(5, 20, order).shift(1)) + &psi(Sign::Plus, 25, order).shift(3);
    (lhs, rhs)
}

fn run(
    id: &str,
    order: usize,
    sides: fn(usize) -> (TruncatedSeries, TruncatedSeries),
    alternated: bool,
) -> VerificationReport {
    let start = Instant::now();
    let (mut lhs, mut rhs) = sides(order);
    if alternated {
        lhs = lhs.alternate();
        rhs = rhs.alternate();
    }
    compare_series(id, &lhs, &rhs, order).timed(start)
}

pub fn verify_f1_5dissection(order: usize) -> VerificationReport {
    run("dissection.f1", order, f1_5dissection_sides, false)
}

pub fn verify_inv_f1_5dissection(order: usize) -> VerificationReport {
    run("dissection.inv_f1", order, inv_f1_5dissection_sides, false)
}

pub fn verify_phi_5dissection(order: usize) -> VerificationReport {
    run("dissection.phi", order, phi_5dissection_sides, false)
}

/// The `q -> -q` form, with `phi(-q)` on the left.
pub fn verify_phi_5dissection_alternated(order: usize) -> VerificationReport {
    run("dissection.phi_neg", order, phi_5dissection_sides, true)
}

pub fn verify_psi_5dissection(order: usize) -> VerificationReport {
    run("dissection.psi", order, psi_5dissection_sides, false)
}

pub fn verify_psi_5dissection_alternated(order: usize) -> VerificationReport {
    run("dissection.psi_neg", order, psi_5dissection_sides, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::theta::{gen_a5bar, gen_b5bar, gen_c5};
    use num_traits::Zero;

    #[test]
    fn dissect_examples() {
        let b = gen_b5bar(400);
        let d = dissect(&b, 10).unwrap();
        assert!(d.component(6).is_zero());
        let a = TruncatedSeries::from_i64s(&[3, 1, 4], 2);
        let one = dissect(&a, 1).unwrap();
        assert_eq!(one.components(), std::slice::from_ref(&a));
        let a5 = gen_a5bar(500);
        let c5 = gen_c5(500);
        let comp = dissect(&a5, 5).unwrap();
        for (n, v) in comp.component(2).coeffs().iter().enumerate() {
            assert_eq!(*v, c5.coeff(5 * n as i64 + 1) * 4);
        }
    }

    #[test]
    fn dissect_needs_every_residue() {
        let a = TruncatedSeries::from_i64s(&[1, 2], 1);
        assert!(dissect(&a, 3).is_err());
        assert!(dissect(&a, 2).is_ok());
    }

    #[test]
    fn reassembly_and_orthogonality() {
        let a = gen_b5bar(203);
        for m in [1, 2, 3, 4, 5, 10, 20] {
            let d = dissect(&a, m).unwrap();
            assert_eq!(d.reassemble(), a, "m={m}");
            for (r, comp) in d.components().iter().enumerate() {
                let spread = comp.inflate(m);
                for i in 0..=a.order() {
                    if i % m == r {
                        assert_eq!(spread.coeff(((i - r) / m * m) as i64), a.coeff(i as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_formulas_match() {
        for n in [0, 1, 4, 50, 101] {
            assert!(verify_f1_5dissection(n).is_match(), "f1 at {n}");
            assert!(verify_inv_f1_5dissection(n).is_match(), "1/f1 at {n}");
        }
        for n in [0, 2, 100] {
            assert!(verify_phi_5dissection(n).is_match());
            assert!(verify_phi_5dissection_alternated(n).is_match());
            assert!(verify_psi_5dissection(n).is_match());
            assert!(verify_psi_5dissection_alternated(n).is_match());
        }
    }

    #[test]
    fn fault_injection_reports_index() {
        let (lhs, rhs) = f1_5dissection_sides(50);
        let bad = &rhs + &monomial(1, 3, 50);
        let r = compare_series("f1", &lhs, &bad, 50);
        assert_eq!(r.status, Status::Mismatch { index: 3, lhs: "0".into(), rhs: "1".into() });
    }

    #[test]
    fn f1_formula_without_f25_fails_at_25() {
        let lhs = euler_f(1, 60);
        let bracket = f1_5dissection_bracket(60);
        assert_eq!(lhs.first_mismatch(&bracket), Some(25));
        assert_eq!(lhs.truncate(24), bracket.truncate(24));
    }

    #[test]
    fn small_coefficient_checks() {
        let (lhs, rhs) = inv_f1_5dissection_sides(4);
        assert_eq!(crate::theta::coeffs_i64(&lhs), [1, 1, 2, 3, 5]);
        assert_eq!(lhs, rhs);
        let (l, r) = phi_5dissection_sides(100);
        assert!(l.coeff(2).is_zero() && r.coeff(2).is_zero());
        let (l, r) = psi_5dissection_sides(100);
        assert_eq!(l.coeff(3), BigInt::from(1));
        assert_eq!(r.coeff(3), BigInt::from(1));
    }

    #[test]
    fn ramanujan_mod5_from_component() {
        let p = euler_f(1, 404).invert().unwrap();
        let d = dissect(&p, 5).unwrap();
        let five = BigInt::from(5);
        for v in d.component(4).coeffs() {
            assert!((v % &five).is_zero());
        }
        // component 4 equals 5 f_25^5 / f_5^6 re-indexed, i.e. 5 f_5^5 / f_1^6
        let expected = euler_f(5, 80).pow(5).div(&euler_f(1, 80).pow(6)).unwrap().scale_i64(5);
        assert_eq!(d.component(4).truncate(80), expected);
    }
}
