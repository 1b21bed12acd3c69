//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of `q^0..=q^N`,
//! every one of them exact. Binary operations on series of different orders
//! truncate to the smaller order. Reads below index 0 return 0, so relations
//! such as `b(4n+1) = c(n) - 2 b(2n-1)` hold at `n = 0` without special cases.
//!
//! Coefficients are [`BigInt`]. The hot loops (convolution and the division
//! recurrence) first try an `i128` path with checked arithmetic and redo the
//! work on `BigInt` as soon as anything would overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a unit (must be +1 or -1)")]
    NonUnitConstantTerm(BigInt),
    #[error("operation needs coefficients up to q^{needed}, series only has order {available}")]
    OrderTooSmall { needed: u64, available: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series from `coeffs`; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector: a series always knows at least `q^0`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (c, v) in coeffs.iter_mut().zip(values) {
            *c = BigInt::from(*v);
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c * q^exp`, or the zero series when `exp > order`.
    pub fn monomial(c: BigInt, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`. Negative `n` reads as 0.
    ///
    /// Panics if `n` is above the truncation order, since that coefficient
    /// is unknown rather than zero.
    pub fn coeff(&self, n: i64) -> BigInt {
        self.get(n).unwrap_or_else(|| {
            panic!("coefficient q^{n} requested from a series of order {}", self.order())
        })
    }

    /// Like [`coeff`](Self::coeff) but returns `None` above the order.
    pub fn get(&self, n: i64) -> Option<BigInt> {
        if n < 0 {
            Some(BigInt::zero())
        } else {
            self.coeffs.get(n as usize).cloned()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Keeps coefficients up to `order` (or all of them if `order` is larger).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        TruncatedSeries { coeffs: self.coeffs[..keep].to_vec() }
    }

    /// Smallest index where `self` and `other` differ, within the shared order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let a = &self.coeffs[..=n];
        let b = &other.coeffs[..=n];
        // Iterate over the sparser operand's support.
        let (sa, sb) = (support(a), support(b));
        let (sparse, sup, dense) = if sa.len() <= sb.len() { (a, sa, b) } else { (b, sb, a) };
        let coeffs =
            mul_small(sparse, &sup, dense, n).unwrap_or_else(|| mul_big(sparse, &sup, dense, n));
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse; requires a constant term of `+1` or `-1`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        Self::one(self.order()).div(self)
    }

    /// `self / divisor` to the smaller order; the divisor needs a unit
    /// constant term.
    ///
    /// Solves `r * divisor = self` with the triangular recurrence
    /// `r_n = d_0 (a_n - sum_{k>=1} d_k r_{n-k})`, walking only the nonzero
    /// `d_k`. Since `d_0 = ±1`, `1/d_0 = d_0`.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let d0 = &divisor.coeffs[0];
        if !(d0.is_one() || (-d0).is_one()) {
            return Err(SeriesError::NonUnitConstantTerm(d0.clone()));
        }
        let n = self.order().min(divisor.order());
        let support: Vec<usize> =
            support(&divisor.coeffs[..=n]).into_iter().filter(|&k| k > 0).collect();
        let d0_positive = d0.is_positive();
        let coeffs = div_small(&self.coeffs[..=n], &divisor.coeffs[..=n], &support, d0_positive)
            .unwrap_or_else(|| {
                div_big(&self.coeffs[..=n], &divisor.coeffs[..=n], &support, d0_positive)
            });
        Ok(TruncatedSeries { coeffs })
    }

    /// `self^k` by binary exponentiation; `k = 0` gives 1.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Signed power: negative exponents go through [`invert`](Self::invert).
    pub fn pow_signed(&self, k: i32) -> Result<Self, SeriesError> {
        let p = self.pow(k.unsigned_abs());
        if k < 0 {
            p.invert()
        } else {
            Ok(p)
        }
    }

    /// Substitutes `q -> q^m`. The result has order `order * m`.
    pub fn inflate(&self, m: usize) -> Self {
        assert!(m >= 1, "inflate needs m >= 1");
        let mut coeffs = vec![BigInt::zero(); self.order() * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        TruncatedSeries { coeffs }
    }

    /// Substitutes `q -> q^m` and returns exactly `order` as the order.
    ///
    /// Coefficients between `m * self.order()` and `m * (self.order() + 1)`
    /// are known to be zero, so `self` needs order at least `order / m`.
    pub fn inflate_to(&self, m: usize, order: usize) -> Result<Self, SeriesError> {
        assert!(m >= 1, "inflate needs m >= 1");
        if self.order() < order / m {
            return Err(SeriesError::OrderTooSmall {
                needed: (order / m) as u64,
                available: self.order(),
            });
        }
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate().take(order / m + 1) {
            coeffs[i * m] = c.clone();
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Coefficients at `m n + r`, re-indexed to `n`. Result order is
    /// `(order - r) / m`; fails when `r` is above the order.
    pub fn extract_ap(&self, m: usize, r: usize) -> Result<Self, SeriesError> {
        assert!(m >= 1 && r < m, "extract_ap needs 0 <= r < m");
        if r > self.order() {
            return Err(SeriesError::OrderTooSmall { needed: r as u64, available: self.order() });
        }
        let coeffs = self.coeffs[r..].iter().step_by(m).cloned().collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplies by `q^k`, keeping the order (the top `k` coefficients drop).
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        if k <= n {
            coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        TruncatedSeries { coeffs }
    }

    /// Substitutes `q -> -q`.
    pub fn alternate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        TruncatedSeries { coeffs }
    }
}

/// Indices with a nonzero coefficient.
fn support(values: &[BigInt]) -> Vec<usize> {
    values.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
}

fn to_i128(values: &[BigInt]) -> Option<Vec<i128>> {
    values.iter().map(ToPrimitive::to_i128).collect()
}

fn mul_small(sparse: &[BigInt], support: &[usize], dense: &[BigInt], n: usize) -> Option<Vec<BigInt>> {
    let s = to_i128(sparse)?;
    let d = to_i128(dense)?;
    let mut out = vec![0i128; n + 1];
    for &i in support {
        let si = s[i];
        for (j, dj) in d[..=n - i].iter().enumerate() {
            if *dj != 0 {
                let t = si.checked_mul(*dj)?;
                out[i + j] = out[i + j].checked_add(t)?;
            }
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

fn mul_big(sparse: &[BigInt], support: &[usize], dense: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for &i in support {
        let si = &sparse[i];
        for (j, dj) in dense[..=n - i].iter().enumerate() {
            if !dj.is_zero() {
                out[i + j] += si * dj;
            }
        }
    }
    out
}

fn div_small(num: &[BigInt], den: &[BigInt], support: &[usize], d0_positive: bool) -> Option<Vec<BigInt>> {
    let a = to_i128(num)?;
    let d: Vec<(usize, i128)> =
        support.iter().map(|&k| den[k].to_i128().map(|v| (k, v))).collect::<Option<_>>()?;
    let mut r = vec![0i128; a.len()];
    for i in 0..a.len() {
        let mut acc = a[i];
        for &(k, dk) in &d {
            if k > i {
                break;
            }
            acc = acc.checked_sub(dk.checked_mul(r[i - k])?)?;
        }
        r[i] = if d0_positive { acc } else { acc.checked_neg()? };
    }
    Some(r.into_iter().map(BigInt::from).collect())
}

fn div_big(num: &[BigInt], den: &[BigInt], support: &[usize], d0_positive: bool) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = Vec::with_capacity(num.len());
    for i in 0..num.len() {
        let mut acc = num[i].clone();
        for &k in support {
            if k > i {
                break;
            }
            acc -= &den[k] * &r[i - k];
        }
        r.push(if d0_positive { acc } else { -acc });
    }
    r
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(order={}, [", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

/// Space-separated coefficients, `q^0` first.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(values: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(values, values.len() - 1)
    }

    // Pentagonal series sum (-1)^n q^{n(3n-1)/2}, built by hand for the oracles below.
    fn pentagonal(order: usize) -> TruncatedSeries {
        let mut c = vec![0i64; order + 1];
        for n in -40i64..=40 {
            let e = n * (3 * n - 1) / 2;
            if e as usize <= order {
                c[e as usize] += if n % 2 == 0 { 1 } else { -1 };
            }
        }
        s(&c)
    }

    fn phi_minus(order: usize) -> TruncatedSeries {
        let mut c = vec![0i64; order + 1];
        for n in -40i64..=40 {
            let e = (n * n) as usize;
            if e <= order {
                c[e] += if n % 2 == 0 { 1 } else { -1 };
            }
        }
        s(&c)
    }

    // Number of partitions of n by direct recursion on the largest part.
    fn partition_count(n: usize, max: usize) -> i64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| partition_count(n - k, k)).sum()
    }

    #[test]
    fn add_cases() {
        assert_eq!(&s(&[1, -1]) + &s(&[0, 1]), s(&[1, 0]));
        let a = s(&[3, 1, 4, 1, 5]);
        assert_eq!(&a + &TruncatedSeries::zero(4), a);
        let got = &phi_minus(4) + &s(&[0, 2, 0, 0, 0]);
        assert_eq!(got, s(&[1, 0, 0, 0, 2]));
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = s(&[1, 2, 3, 4]);
        let b = s(&[1, 1]);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!((&a * &b).order(), 1);
        assert_eq!(a.div(&b).unwrap().order(), 1);
    }

    #[test]
    fn mul_cases() {
        assert_eq!(&s(&[1, -1, 0]) * &s(&[1, 1, 0]), s(&[1, 0, -1]));
        let f1 = pentagonal(5);
        assert_eq!(&f1 * &f1, s(&[1, -2, -1, 2, 1, 2]));
        assert!((&f1 * &f1.invert().unwrap()).first_mismatch(&TruncatedSeries::one(5)).is_none());
    }

    #[test]
    fn invert_cases() {
        assert_eq!(s(&[1, -1, 0, 0, 0]).invert().unwrap(), s(&[1, 1, 1, 1, 1]));
        let expected: Vec<i64> = (0..=5).map(|n| partition_count(n, n)).collect();
        assert_eq!(pentagonal(5).invert().unwrap(), s(&expected));
        let p = phi_minus(30);
        assert_eq!(p.invert().unwrap().invert().unwrap(), p);
        // constant term -1 is a unit too
        let m = s(&[-1, 1, 0]);
        assert_eq!(&m * &m.invert().unwrap(), TruncatedSeries::one(2));
    }

    #[test]
    fn invert_rejects_non_unit() {
        assert_eq!(
            s(&[2, 1]).invert(),
            Err(SeriesError::NonUnitConstantTerm(BigInt::from(2)))
        );
        assert!(s(&[0, 1]).invert().is_err());
        assert!(s(&[1, 1]).div(&s(&[3, 0])).is_err());
    }

    #[test]
    fn div_gives_c5_and_a5bar() {
        // f_5^5 / f_1 through order 4: f_5 = 1 + O(q^5), leaving 1/f_1
        let f5_5 = pentagonal(0).inflate_to(5, 4).unwrap().pow(5);
        assert_eq!(f5_5.div(&pentagonal(4)).unwrap(), s(&[1, 1, 2, 3, 5]));
        let a = s(&[-1, 7, 1, 8, 2, 8]);
        assert_eq!(a.div(&a).unwrap(), TruncatedSeries::one(5));
        let num = phi_minus(1).pow(5).inflate_to(5, 7).unwrap();
        let got = num.div(&phi_minus(7)).unwrap();
        assert_eq!(got, s(&[1, 2, 4, 8, 14, 14, 20, 24]));
    }

    #[test]
    fn pow_cases() {
        let a = s(&[5, 3, 2]);
        assert_eq!(a.pow(0), TruncatedSeries::one(2));
        assert_eq!(s(&[1, 1, 0]).pow(2), s(&[1, 2, 1]));
        assert_eq!(pentagonal(3).pow(3), s(&[1, -3, 0, 5]));
        assert_eq!(pentagonal(10).pow(7), {
            let f = pentagonal(10);
            (0..6).fold(f.clone(), |acc, _| &acc * &f)
        });
    }

    #[test]
    fn pow_signed_negative() {
        let f = pentagonal(12);
        let inv3 = f.pow_signed(-3).unwrap();
        assert_eq!(&inv3 * &f.pow(3), TruncatedSeries::one(12));
    }

    #[test]
    fn inflate_cases() {
        assert_eq!(s(&[1, 1]).inflate(5), s(&[1, 0, 0, 0, 0, 1]));
        assert_eq!(pentagonal(6).inflate(2).truncate(12), pentagonal(6).inflate(2));
        let a = s(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]);
        let round = a.extract_ap(5, 0).unwrap().inflate(5);
        for i in 0..=10 {
            let expect = if i % 5 == 0 { a.coeff(i) } else { BigInt::zero() };
            assert_eq!(round.coeff(i), expect);
        }
    }

    #[test]
    fn inflate_to_fills_known_zeros() {
        let a = s(&[1, 2]);
        assert_eq!(a.inflate_to(5, 9).unwrap(), s(&[1, 0, 0, 0, 0, 2, 0, 0, 0, 0]));
        assert!(a.inflate_to(5, 10).is_err());
    }

    #[test]
    fn extract_ap_cases() {
        let a = s(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]);
        assert_eq!(a.extract_ap(5, 2).unwrap(), s(&[2, 7, 12]));
        assert_eq!(a.extract_ap(5, 3).unwrap(), s(&[3, 8]));
        assert_eq!(a.extract_ap(1, 0).unwrap(), a);
        assert!(s(&[1, 2]).extract_ap(5, 3).is_err());
    }

    #[test]
    fn shift_cases() {
        assert_eq!(TruncatedSeries::one(2).shift(1), s(&[0, 1, 0]));
        let a = s(&[1, 2, 3]);
        assert_eq!(a.shift(0), a);
        assert_eq!(a.shift(2), s(&[0, 0, 1]));
        assert_eq!(a.shift(7), TruncatedSeries::zero(2));
    }

    #[test]
    fn alternate_cases() {
        let phi_plus = phi_minus(20).alternate();
        assert_eq!(phi_plus.coeff(1), BigInt::from(2));
        assert_eq!(phi_plus.alternate(), phi_minus(20));
    }

    #[test]
    fn negative_index_reads_zero() {
        let a = s(&[4, 5]);
        assert_eq!(a.coeff(-1), BigInt::zero());
        assert_eq!(a.get(2), None);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // (1 + 2^100 q)^2 has a q^2 coefficient of 2^200: no i128 path survives.
        let big: BigInt = BigInt::one() << 100usize;
        let a = TruncatedSeries::new(vec![BigInt::one(), big.clone(), BigInt::zero()]);
        let sq = a.pow(2);
        assert_eq!(sq.coeff(2), &big * &big);
        let back = sq.div(&a).unwrap();
        assert_eq!(back, a);
        // 1/(1-q)^60 has coefficients C(n+59, 59); C(259, 59) exceeds i128
        let inv = s(&vec![1, -1].into_iter().chain(std::iter::repeat_n(0, 199)).collect::<Vec<_>>())
            .pow(60)
            .invert()
            .unwrap();
        let mut binom = BigInt::one();
        for i in 1..=59u32 {
            binom = binom * BigInt::from(200 + i) / BigInt::from(i);
        }
        assert_eq!(inv.coeff(200), binom);
        assert!(inv.coeff(200).to_i128().is_none());
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(s(&[1, -2, 0]).to_string(), "1 -2 0");
    }
}
